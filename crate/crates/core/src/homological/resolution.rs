use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::free::{FreeComplex, GradedFreeModule, GradedMap, ModulePresentation};
use crate::groebner::syzygy_generators;

/// Removes all unit entries from `maps[k]` by splitting off trivial summands.
///
/// `maps` is a chain with `maps[k]: F_{k+1} -> F_k`; eliminating the unit at `(r, c)` of
/// `maps[k]` deletes column `r` of `maps[k - 1]` and row `c` of `maps[k + 1]`.
pub(crate) fn prune_at(maps: &mut [GradedMap], k: usize) {
    while let Some((r, c)) = maps[k].find_unit() {
        maps[k] = maps[k].eliminate_unit(r, c);
        if k > 0 {
            maps[k - 1] = maps[k - 1].remove_column(r);
        }
        if k + 1 < maps.len() {
            maps[k + 1] = maps[k + 1].remove_row(c);
        }
    }
}

/// Minimal presentation: unit entries eliminated and zero relations dropped. The remaining
/// generators are a minimal generating set.
pub fn minimalize(m: &ModulePresentation) -> ModulePresentation {
    let mut maps = [m.relations().without_zero_columns()];
    prune_at(&mut maps, 0);
    let [rel] = maps;
    ModulePresentation::new(m.ring(), rel.without_zero_columns())
}

/// Graded Betti numbers `b_{ij}`: rank of the degree-`j` part of the `i`-th free module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    entries: Vec<(usize, i64, usize)>,
}

impl BettiTable {
    pub fn from_modules<'a>(modules: impl IntoIterator<Item = &'a GradedFreeModule>) -> Self {
        let mut entries = BTreeMap::new();
        for (i, f) in modules.into_iter().enumerate() {
            for &j in f.twists() {
                *entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        Self { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `max { j - i : b_ij != 0 }`; `None` (−∞) for the zero module.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// `t_i = max { j : b_ij != 0 }`; `None` (−∞) when row `i` is empty.
    pub fn t_index(&self, i: usize) -> Option<i64> {
        self.entries.keys().filter(|&&(k, _)| k == i).map(|&(_, j)| j).max()
    }

    /// Projective dimension; `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `b_i = Σ_j b_ij`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|(&(k, _), _)| k == i).map(|(_, &b)| b).sum()
    }

    /// `{"entries": [[i, j, b_ij], ...]}` in lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BettiJson {
            entries: self.entries().collect(),
        })
        .expect("betti json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        let b: BettiJson = serde_json::from_value(v.clone())?;
        Ok(Self {
            entries: b
                .entries
                .into_iter()
                .filter(|e| e.2 > 0)
                .map(|(i, j, b)| ((i, j), b))
                .collect(),
        })
    }
}

/// Betti diagram: column `i`, row `j - i`, dots for zeros.
impl std::fmt::Display for BettiTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return writeln!(f, "zero module");
        };
        let rows: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let mut lines: Vec<Vec<String>> = Vec::new();
        lines.push(
            std::iter::once(String::new())
                .chain((0..=pd).map(|i| i.to_string()))
                .collect(),
        );
        lines.push(
            std::iter::once("total:".to_string())
                .chain((0..=pd).map(|i| self.total(i).to_string()))
                .collect(),
        );
        for r in lo..=hi {
            let cells = (0..=pd).map(|i| match self.get(i, r + i as i64) {
                0 => ".".to_string(),
                b => b.to_string(),
            });
            lines.push(std::iter::once(format!("{r}:")).chain(cells).collect());
        }
        let widths: Vec<usize> = (0..=pd + 1)
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap())
            .collect();
        for l in &lines {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A minimal graded free resolution `0 -> F_pd -> ... -> F_0` and its Betti table.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: FreeComplex,
    pub betti: BettiTable,
}

impl Resolution {
    pub fn regularity(&self) -> Option<i64> {
        self.betti.regularity()
    }

    pub fn t_index(&self, i: usize) -> Option<i64> {
        self.betti.t_index(i)
    }

    /// `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.betti.projective_dimension()
    }
}

/// Minimal graded free resolution of `m`.
///
/// Iterates syzygies of the last differential and splits off trivial summands after each
/// step, so every differential has entries in the irrelevant ideal.
pub fn minimal_free_resolution(m: &ModulePresentation) -> Resolution {
    let ring = m.ring();
    let pres = minimalize(m);
    let f0 = pres.generators().clone();
    if f0.is_zero() {
        let complex = FreeComplex::concentrated(ring, 0, f0);
        return Resolution {
            complex,
            betti: BettiTable::default(),
        };
    }
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut last = pres.relations().clone();
    // Hilbert's syzygy theorem bounds the length by n; one extra round detects freeness.
    let cap = ring.nvars() + 2;
    while last.ncols() > 0 {
        assert!(maps.len() <= cap, "resolution did not terminate");
        maps.push(last);
        let k = maps.len() - 1;
        prune_at(&mut maps, k);
        let cur = &maps[k];
        if cur.ncols() == 0 {
            maps.pop();
            break;
        }
        last = syzygy_generators(cur).expect("homogeneous differential");
    }
    let mut modules = vec![f0];
    for d in &maps {
        modules.push(d.source().clone());
    }
    let betti = BettiTable::from_modules(&modules);
    let complex = FreeComplex::new(ring, 0, modules, maps).expect("consistent resolution");
    Resolution { complex, betti }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Polynomial, Ring, RingSpec};

    fn ring2() -> Ring {
        RingSpec::new(32003, ["x", "y"]).unwrap()
    }

    fn cyclic(r: &Ring, gens: &[&str]) -> ModulePresentation {
        let ps: Vec<Polynomial> = gens.iter().map(|s| parse_polynomial(s, r).unwrap()).collect();
        ModulePresentation::cyclic(r, &ps).unwrap()
    }

    fn twists(res: &Resolution) -> Vec<Vec<i64>> {
        let (mods, _) = res.complex.parts();
        mods.iter()
            .map(|m| {
                let mut t = m.twists().to_vec();
                t.sort();
                t
            })
            .collect()
    }

    #[test]
    fn koszul_resolution_of_the_maximal_ideal() {
        let r = ring2();
        let res = minimal_free_resolution(&cyclic(&r, &["x", "y"]));
        assert_eq!(twists(&res), vec![vec![0], vec![1, 1], vec![2]]);
        assert_eq!(res.betti.get(0, 0), 1);
        assert_eq!(res.betti.get(1, 1), 2);
        assert_eq!(res.betti.get(2, 2), 1);
        assert!(res.complex.is_complex());
        assert!(res.complex.is_minimal());
    }

    #[test]
    fn non_complete_intersection() {
        let r = ring2();
        let res = minimal_free_resolution(&cyclic(&r, &["x^2", "x*y"]));
        assert_eq!(twists(&res), vec![vec![0], vec![2, 2], vec![3]]);
        assert_eq!(res.regularity(), Some(1));
    }

    #[test]
    fn complete_intersection_invariants() {
        let r = ring2();
        let res = minimal_free_resolution(&cyclic(&r, &["x^2", "y^3"]));
        assert_eq!(twists(&res), vec![vec![0], vec![2, 3], vec![5]]);
        assert_eq!(res.regularity(), Some(3));
        assert_eq!(res.t_index(0), Some(0));
        assert_eq!(res.t_index(1), Some(3));
        assert_eq!(res.t_index(2), Some(5));
        assert_eq!(res.t_index(3), None);
    }

    #[test]
    fn free_module_and_zero_module() {
        let r = ring2();
        let res = minimal_free_resolution(&ModulePresentation::ring_itself(&r));
        assert_eq!(res.regularity(), Some(0));
        assert_eq!(res.t_index(0), Some(0));
        assert_eq!(res.projective_dimension(), Some(0));
        let zero = minimal_free_resolution(&cyclic(&r, &["x", "1"]));
        assert_eq!(zero.regularity(), None);
        assert!(zero.betti.is_empty());
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let r = ring2();
        let res = minimal_free_resolution(&cyclic(&r, &["x", "x^2", "3*x", "y", "x*y"]));
        assert_eq!(twists(&res), vec![vec![0], vec![1, 1], vec![2]]);
    }

    #[test]
    fn betti_json_is_sorted() {
        let r = ring2();
        let res = minimal_free_resolution(&cyclic(&r, &["x^2", "y^3"]));
        let j = res.betti.to_json();
        assert_eq!(j.to_string(), r#"{"entries":[[0,0,1],[1,2,1],[1,3,1],[2,5,1]]}"#);
        assert_eq!(BettiTable::from_json(&j).unwrap(), res.betti);
    }
}
