//! Degreewise linear algebra on presentations: graded pieces `M_d` as explicit quotients
//! of `(F_0)_d`, and Hilbert functions computed from exact ranks over `F_p`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::field::Echelon;
use crate::homological::ModulePresentation;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, Ring};

/// `dim_K M_d` for `d_min <= d <= d_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub d_min: i64,
    pub d_max: i64,
    pub values: Vec<u64>,
}

impl HilbertFunction {
    pub fn new(d_min: i64, values: Vec<u64>) -> Self {
        Self {
            d_min,
            d_max: d_min + values.len() as i64 - 1,
            values,
        }
    }

    pub fn value(&self, d: i64) -> u64 {
        if d < self.d_min || d > self.d_max {
            return 0;
        }
        self.values[(d - self.d_min) as usize]
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Largest degree with a nonzero value.
    pub fn top_degree(&self) -> Option<i64> {
        self.values.iter().rposition(|&v| v != 0).map(|k| self.d_min + k as i64)
    }

    pub fn bottom_degree(&self) -> Option<i64> {
        self.values.iter().position(|&v| v != 0).map(|k| self.d_min + k as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// `M_d = (F_0)_d / (image of the relations)_d`, with explicit coordinates.
#[derive(Clone, Debug)]
pub struct Piece {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    echelon: Echelon,
    // positions of basis elements that are not pivots; they span the quotient
    quotient: Vec<usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    /// Basis elements `(component, monomial)` representing a basis of the quotient.
    pub fn quotient_basis(&self) -> impl Iterator<Item = &(usize, Monomial)> + '_ {
        self.quotient.iter().map(|&k| &self.basis[k])
    }

    /// Dense coordinates of a vector given as `(component, monomial, coefficient)` terms.
    pub fn ambient_vector<'a>(
        &self,
        terms: impl IntoIterator<Item = (usize, &'a Monomial, u32)>,
        field: crate::field::PrimeField,
    ) -> Vec<u32> {
        let mut v = vec![0u32; self.basis.len()];
        for (comp, m, c) in terms {
            let k = self.index[&(comp, m.clone())];
            v[k] = field.add(v[k], c);
        }
        v
    }

    /// Coordinates in the quotient basis of the class of an ambient vector.
    pub fn quotient_coordinates(&self, mut v: Vec<u32>) -> Vec<u32> {
        self.echelon.reduce(&mut v);
        self.quotient.iter().map(|&k| v[k]).collect()
    }
}

/// Lazily computed graded pieces of a presented module.
pub struct GradedPieces {
    ring: Ring,
    presentation: ModulePresentation,
    pieces: BTreeMap<i64, Piece>,
}

impl GradedPieces {
    pub fn new(presentation: &ModulePresentation) -> Self {
        Self {
            ring: presentation.ring().clone(),
            presentation: presentation.clone(),
            pieces: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn piece(&mut self, d: i64) -> &Piece {
        if !self.pieces.contains_key(&d) {
            let p = self.build(d);
            self.pieces.insert(d, p);
        }
        &self.pieces[&d]
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.piece(d).dim()
    }

    fn build(&self, d: i64) -> Piece {
        let n = self.ring.nvars();
        let f = self.ring.field();
        let gens = self.presentation.generators();
        let mut basis = Vec::new();
        for (i, &a) in gens.twists().iter().enumerate() {
            if d - a >= 0 {
                for m in monomials_of_degree(n, (d - a) as u32) {
                    basis.push((i, m));
                }
            }
        }
        let index: HashMap<(usize, Monomial), usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        let mut echelon = Echelon::new(f, basis.len());
        let rel = self.presentation.relations();
        for j in 0..rel.ncols() {
            let b = rel.source().twist(j);
            if d - b < 0 {
                continue;
            }
            let col: Vec<&Polynomial> = (0..rel.nrows()).map(|i| rel.entry(i, j)).collect();
            for m in monomials_of_degree(n, (d - b) as u32) {
                let mut v = vec![0u32; basis.len()];
                for (i, p) in col.iter().enumerate() {
                    for (t, c) in p.terms() {
                        let k = index[&(i, t.mul(&m))];
                        v[k] = f.add(v[k], *c);
                    }
                }
                echelon.insert(v);
                if echelon.rank() == basis.len() {
                    break;
                }
            }
            if echelon.rank() == basis.len() {
                break;
            }
        }
        let pivots = echelon.pivots();
        let quotient = (0..basis.len()).filter(|k| pivots.binary_search(k).is_err()).collect();
        Piece {
            basis,
            index,
            echelon,
            quotient,
        }
    }
}

/// `dim_K M_d` for each `d` in `d_min..=d_max`, by exact rank computations.
pub fn hilbert_function(m: &ModulePresentation, d_min: i64, d_max: i64) -> HilbertFunction {
    let mut pieces = GradedPieces::new(m);
    let values = (d_min..=d_max).map(|d| pieces.dim(d) as u64).collect();
    HilbertFunction::new(d_min, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::GradedFreeModule;
    use crate::poly::{parse_polynomial, RingSpec};

    #[test]
    fn examples() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = ModulePresentation::cyclic(&r, &[p("x^2"), p("y^3")]).unwrap();
        assert_eq!(hilbert_function(&m, 0, 4).values, vec![1, 2, 2, 1, 0]);
        let s = ModulePresentation::ring_itself(&r);
        assert_eq!(hilbert_function(&s, 0, 3).values, vec![1, 2, 3, 4]);
        let k = ModulePresentation::cyclic(&r, &[p("x"), p("y")]).unwrap();
        assert_eq!(hilbert_function(&k, 0, 2).values, vec![1, 0, 0]);
    }

    #[test]
    fn twisted_free_module() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let f = ModulePresentation::free(&r, GradedFreeModule::new(vec![-1, 2]));
        let h = hilbert_function(&f, -2, 3);
        assert_eq!(h.values, vec![0, 1, 2, 3, 5, 7]);
        assert_eq!(h.value(-2), 0);
        assert_eq!(h.value(100), 0);
    }
}
