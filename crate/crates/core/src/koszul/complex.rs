use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::homological::{FreeComplex, GradedFreeModule, GradedMap};
use crate::poly::{Polynomial, Ring};

/// Homogeneous generators `x_1, ..., x_l` sorted so that `|x_1| >= ... >= |x_l|`.
/// Ties keep input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorList {
    ring: Ring,
    elements: Vec<Polynomial>,
    degrees: Vec<i64>,
}

impl GeneratorList {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let mut with_deg = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            let d = match g.homogeneous_degree() {
                Ok(Some(d)) => d as i64,
                Ok(None) => return Err(Error::NotHomogeneous(g.to_string())),
                Err(_) => return Err(Error::Input("generators must be nonzero".into())),
            };
            with_deg.push((d, g));
        }
        // stable: ties keep input order
        with_deg.sort_by_key(|(d, _)| std::cmp::Reverse(*d));
        let (degrees, elements) = with_deg.into_iter().unzip();
        Ok(Self {
            ring: ring.clone(),
            elements,
            degrees,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `|x_1| + ... + |x_m|` over the `m` largest degrees; `None` when `m > l`.
    pub fn top_degree_sum(&self, m: usize) -> Option<i64> {
        (m <= self.len()).then(|| self.degrees[..m].iter().sum())
    }

    /// The list with one more generator, re-sorted.
    pub fn with_extra(&self, g: Polynomial) -> Result<Self> {
        let mut gens = self.elements.clone();
        gens.push(g);
        Self::new(&self.ring, gens)
    }
}

/// All `p`-subsets of `0..l` in lexicographic order.
pub fn subsets(l: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, l: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=l - left {
            cur.push(i);
            rec(i + 1, l, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= l {
        rec(0, l, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul complex `K(x)`: `K_p = ⊕_{|T| = p} S(-Σ_{j∈T} |x_j|)` with
/// `d(e_T) = Σ_{j∈T} (-1)^{pos(j, T)} x_j e_{T \ j}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    generators: GeneratorList,
    subsets: Vec<Vec<Vec<usize>>>,
    complex: FreeComplex,
}

impl KoszulComplex {
    pub fn generators(&self) -> &GeneratorList {
        &self.generators
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    /// Basis of `K_p`, as index subsets.
    pub fn basis(&self, p: usize) -> &[Vec<usize>] {
        &self.subsets[p]
    }
}

pub fn build_koszul(x: &GeneratorList) -> Result<KoszulComplex> {
    let ring = x.ring();
    let l = x.len();
    if l == 0 {
        return Err(Error::Input("the Koszul complex needs at least one generator".into()));
    }
    let all: Vec<Vec<Vec<usize>>> = (0..=l).map(|p| subsets(l, p)).collect();
    let modules: Vec<GradedFreeModule> = all
        .iter()
        .map(|ts| GradedFreeModule::new(ts.iter().map(|t| t.iter().map(|&j| x.degrees()[j]).sum()).collect()))
        .collect();
    let mut maps = Vec::with_capacity(l);
    for p in 1..=l {
        let rows_index: HashMap<&[usize], usize> =
            all[p - 1].iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
        let mut rows = vec![vec![Polynomial::zero(ring); all[p].len()]; all[p - 1].len()];
        for (c, t) in all[p].iter().enumerate() {
            for (pos, &j) in t.iter().enumerate() {
                let rest: Vec<usize> = t.iter().copied().filter(|&i| i != j).collect();
                let r = rows_index[rest.as_slice()];
                let g = &x.elements()[j];
                rows[r][c] = if pos % 2 == 0 { g.clone() } else { g.neg() };
            }
        }
        maps.push(GradedMap::new(ring, modules[p].clone(), modules[p - 1].clone(), rows)?);
    }
    let complex = FreeComplex::new(ring, 0, modules, maps)?;
    Ok(KoszulComplex {
        generators: x.clone(),
        subsets: all,
        complex,
    })
}

/// `Tot(A ⊗ B)` for complexes concentrated in nonnegative degrees, with
/// `d(a ⊗ b) = d(a) ⊗ b + (-1)^p a ⊗ d(b)` for `a` in degree `p`.
///
/// Blocks of `D_m` are ordered by increasing `p`; inside a block the basis is `a`-major.
pub fn tensor_complexes(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.lo() < 0 || b.lo() < 0 {
        return Err(Error::Input(
            "tensor product expects nonnegatively graded complexes".into(),
        ));
    }
    let ring = a.ring();
    let top = a.hi() + b.hi();
    // offsets[m] = list of (p, q, offset)
    let mut offsets: Vec<Vec<(i64, i64, usize)>> = Vec::new();
    let mut modules = Vec::new();
    for m in 0..=top {
        let mut blocks = Vec::new();
        let mut twists = Vec::new();
        for p in 0..=m {
            let q = m - p;
            let (ap, bq) = (a.module(p), b.module(q));
            if ap.is_zero() || bq.is_zero() {
                continue;
            }
            blocks.push((p, q, twists.len()));
            for &s in ap.twists() {
                for &t in bq.twists() {
                    twists.push(s + t);
                }
            }
        }
        offsets.push(blocks);
        modules.push(GradedFreeModule::new(twists));
    }
    let find = |m: i64, p: i64| -> Option<usize> {
        offsets[m as usize]
            .iter()
            .find(|(bp, _, _)| *bp == p)
            .map(|(_, _, o)| *o)
    };
    let mut maps = Vec::new();
    for m in 1..=top {
        let src = &modules[m as usize];
        let tgt = &modules[m as usize - 1];
        let mut rows = vec![vec![Polynomial::zero(ring); src.rank()]; tgt.rank()];
        for &(p, q, off) in &offsets[m as usize] {
            let ap = a.module(p);
            let bq = b.module(q);
            let (ra, rb) = (ap.rank(), bq.rank());
            if p >= 1 {
                if let Some(toff) = find(m - 1, p - 1) {
                    let da = a.differential(p);
                    for s in 0..ra {
                        for s2 in 0..da.nrows() {
                            let e = da.entry(s2, s);
                            if e.is_zero() {
                                continue;
                            }
                            for t in 0..rb {
                                rows[toff + s2 * rb + t][off + s * rb + t] = e.clone();
                            }
                        }
                    }
                }
            }
            if q >= 1 {
                if let Some(toff) = find(m - 1, p) {
                    let db = b.differential(q);
                    let rb_next = db.nrows();
                    for t in 0..rb {
                        for t2 in 0..rb_next {
                            let e = db.entry(t2, t);
                            if e.is_zero() {
                                continue;
                            }
                            let e = if p % 2 == 0 { e.clone() } else { e.neg() };
                            for s in 0..ra {
                                let cell = &mut rows[toff + s * rb_next + t2][off + s * rb + t];
                                *cell = &*cell + &e;
                            }
                        }
                    }
                }
            }
        }
        maps.push(GradedMap::new(ring, src.clone(), tgt.clone(), rows)?);
    }
    FreeComplex::new(ring, 0, modules, maps)
}

/// `D = Tot(K(x) ⊗ F)`.
pub fn total_tensor(k: &KoszulComplex, f: &FreeComplex) -> Result<FreeComplex> {
    tensor_complexes(k.complex(), f)
}
