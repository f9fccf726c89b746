//! Gröbner bases of submodules of graded free modules, syzygies, lifting, Krull dimension
//! of quotients and degreewise Hilbert functions.

mod engine;
mod hilbert;
mod vector;

use std::collections::BTreeMap;

pub use hilbert::{hilbert_function, GradedPieces, HilbertFunction};

use engine::Ambient;
pub(crate) use vector::{ModuleOrder, Term, Vector};

use crate::error::{Error, Result};
use crate::homological::{GradedFreeModule, GradedMap};
use crate::poly::{Monomial, Polynomial, Ring};

/// Element of `⊕ S(-a_i)`, stored sparsely by component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    ring: Ring,
    twists: Vec<i64>,
    components: BTreeMap<usize, Polynomial>,
}

impl FreeVector {
    pub fn new(ring: &Ring, twists: Vec<i64>, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != twists.len() {
            return Err(Error::LengthMismatch {
                expected: twists.len(),
                got: entries.len(),
            });
        }
        let components = entries.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
        Ok(Self {
            ring: ring.clone(),
            twists,
            components,
        })
    }

    /// A polynomial as an element of `S = S(0)`.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let ring = p.ring().clone();
        Self::new(&ring, vec![0], vec![p]).expect("rank one")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn component(&self, i: usize) -> Polynomial {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn components(&self) -> &BTreeMap<usize, Polynomial> {
        &self.components
    }

    pub fn entries(&self) -> Vec<Polynomial> {
        (0..self.rank()).map(|i| self.component(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Internal degree when homogeneous; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for (&i, p) in &self.components {
            let d = match p.homogeneous_degree()? {
                Some(d) => d as i64 + self.twists[i],
                None => return Err(Error::NotHomogeneous(p.to_string())),
            };
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "vector with components of internal degrees {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub(crate) fn to_vector(&self, order: &ModuleOrder) -> Vector {
        vector_from_entries(self.components.iter().map(|(&i, p)| (i, p)), order)
    }

    pub(crate) fn from_vector(ring: &Ring, twists: Vec<i64>, v: &Vector) -> Self {
        let rank = twists.len();
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            buckets[t.comp].push((t.mon.clone(), t.coeff));
        }
        let entries = buckets
            .into_iter()
            .map(|terms| Polynomial::from_terms(ring, terms))
            .collect();
        Self::new(ring, twists, entries).expect("rank")
    }
}

pub(crate) fn vector_from_entries<'a>(
    entries: impl IntoIterator<Item = (usize, &'a Polynomial)>,
    order: &ModuleOrder,
) -> Vector {
    let mut terms = Vec::new();
    for (i, p) in entries {
        for (m, c) in p.terms() {
            terms.push(Term {
                mon: m.clone(),
                comp: i,
                coeff: *c,
            });
        }
    }
    Vector::from_unsorted(terms, order)
}

/// Column `j` of `m`, placed at component offset `offset` of a larger ambient module.
fn column_vector(m: &GradedMap, j: usize, offset: usize, order: &ModuleOrder) -> Vector {
    let col = m.column(j);
    vector_from_entries(col.iter().enumerate().map(|(i, p)| (i + offset, p)), order)
}

/// Gröbner basis of a submodule of `⊕ S(-a_i)` under term-over-position degrevlex.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    ambient: Ambient,
    elements: Vec<Vector>,
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the submodule generated by `gens` inside `⊕ S(-twists_i)`.
    pub fn compute(ring: &Ring, twists: Vec<i64>, gens: &[FreeVector]) -> Result<Self> {
        let ambient = Ambient {
            field: ring.field(),
            twists: twists.clone(),
            order: ModuleOrder::TOP,
        };
        let mut vecs = Vec::with_capacity(gens.len());
        for g in gens {
            if g.twists() != twists.as_slice() {
                return Err(Error::AmbientMismatch(
                    "generator twists differ from the ambient".into(),
                ));
            }
            g.degree()?;
            vecs.push(g.to_vector(&ambient.order));
        }
        let elements = engine::groebner_basis(&ambient, vecs);
        Ok(Self {
            ring: ring.clone(),
            ambient,
            elements,
        })
    }

    /// Gröbner basis of an ideal of `S`.
    pub fn of_ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let vs: Vec<FreeVector> = gens.iter().cloned().map(FreeVector::from_polynomial).collect();
        Self::compute(ring, vec![0], &vs)
    }

    /// Gröbner basis of the image of `m` in its target.
    pub fn of_image(m: &GradedMap) -> Self {
        let ambient = Ambient {
            field: m.ring().field(),
            twists: m.target().twists().to_vec(),
            order: ModuleOrder::TOP,
        };
        let vecs = (0..m.ncols()).map(|j| column_vector(m, j, 0, &ambient.order)).collect();
        let elements = engine::groebner_basis(&ambient, vecs);
        Self {
            ring: m.ring().clone(),
            ambient,
            elements,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.ambient.twists
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Always true: bases are interreduced on construction.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn generators(&self) -> Vec<FreeVector> {
        self.elements
            .iter()
            .map(|v| FreeVector::from_vector(&self.ring, self.ambient.twists.clone(), v))
            .collect()
    }

    /// Generators of an ideal basis as polynomials (component 0).
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators().into_iter().map(|v| v.component(0)).collect()
    }

    /// Leading monomials grouped by component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.ambient.twists.len()];
        for v in &self.elements {
            let l = &v.terms[0];
            out[l.comp].push(l.mon.clone());
        }
        out
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        if v.twists() != self.ambient.twists.as_slice() {
            return Err(Error::AmbientMismatch(
                "vector and basis live in different free modules".into(),
            ));
        }
        let r = engine::normal_form(&self.ambient, &self.elements, v.to_vector(&self.ambient.order));
        Ok(FreeVector::from_vector(&self.ring, self.ambient.twists.clone(), &r))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Checks the Buchberger criterion directly: every S-vector reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let els = &self.elements;
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                if els[i].terms[0].comp != els[j].terms[0].comp {
                    continue;
                }
                let s = engine::s_vector(&self.ambient, &els[i], &els[j]);
                if !engine::normal_form(&self.ambient, els, s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Normal form of `v` with respect to `basis`.
pub fn normal_form(v: &FreeVector, basis: &GroebnerBasis) -> Result<FreeVector> {
    basis.normal_form(v)
}

/// Reduced Gröbner basis of the submodule generated by `gens` (nonempty, common ambient).
pub fn buchberger(gens: &[FreeVector]) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Input("buchberger needs at least one generator".into()))?;
    GroebnerBasis::compute(first.ring(), first.twists().to_vec(), gens)
}

/// Gröbner basis of `{(m_j, e_j)}` in `target ⊕ source` under an order eliminating the
/// target block. It yields syzygies (elements with zero target part) and lifts.
pub(crate) struct Elimination {
    ring: Ring,
    ambient: Ambient,
    split: usize,
    source: GradedFreeModule,
    elements: Vec<Vector>,
}

impl Elimination {
    pub fn new(m: &GradedMap) -> Self {
        let split = m.nrows();
        let mut twists = m.target().twists().to_vec();
        twists.extend_from_slice(m.source().twists());
        let ambient = Ambient {
            field: m.ring().field(),
            twists,
            order: ModuleOrder::eliminating(split),
        };
        let gens = (0..m.ncols())
            .map(|j| {
                let mut v = column_vector(m, j, 0, &ambient.order);
                v.terms.push(Term {
                    mon: Monomial::one(m.ring().nvars()),
                    comp: split + j,
                    coeff: 1,
                });
                v
            })
            .collect();
        let elements = engine::groebner_basis(&ambient, gens);
        Self {
            ring: m.ring().clone(),
            ambient,
            split,
            source: m.source().clone(),
            elements,
        }
    }

    /// Syzygy module generators as `(internal degree, column in source)`.
    pub fn syzygies(&self) -> Vec<(i64, Vec<Polynomial>)> {
        let r = self.source.rank();
        self.elements
            .iter()
            .filter(|v| v.terms[0].comp >= self.split)
            .map(|v| {
                let deg = self.ambient.degree(v).unwrap();
                let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); r];
                for t in &v.terms {
                    buckets[t.comp - self.split].push((t.mon.clone(), t.coeff));
                }
                let col = buckets
                    .into_iter()
                    .map(|ts| Polynomial::from_terms(&self.ring, ts))
                    .collect();
                (deg, col)
            })
            .collect()
    }

    /// Coefficients `c` with `m · c = v`, or `None` when `v` is not in the image.
    pub fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let f = self.ambient.field;
        let start = vector_from_entries(v.iter().enumerate(), &self.ambient.order);
        let r = engine::normal_form(&self.ambient, &self.elements, start);
        if r.terms.first().is_some_and(|t| t.comp < self.split) {
            return None;
        }
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.source.rank()];
        for t in &r.terms {
            buckets[t.comp - self.split].push((t.mon.clone(), f.neg(t.coeff)));
        }
        Some(
            buckets
                .into_iter()
                .map(|ts| Polynomial::from_terms(&self.ring, ts))
                .collect(),
        )
    }
}

/// Generators of `ker m` as a map `Z -> source(m)`; columns are homogeneous and `Z` carries
/// their internal degrees.
pub fn syzygy_generators(m: &GradedMap) -> Result<GradedMap> {
    let syz = Elimination::new(m).syzygies();
    GradedMap::from_twisted_columns(m.ring(), m.source().clone(), syz)
}

/// Solves `m · c = v` for a vector `v` in the image of `m`.
pub fn lift(m: &GradedMap, v: &FreeVector) -> Result<Vec<Polynomial>> {
    if v.twists() != m.target().twists() {
        return Err(Error::AmbientMismatch("vector does not live in the target".into()));
    }
    Elimination::new(m)
        .lift(&v.entries())
        .ok_or_else(|| Error::LiftFailure("vector is not in the image".into()))
}

fn check_homogeneous(gens: &[Polynomial]) -> Result<()> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    Ok(())
}

/// Krull dimension of `S / in(U)_i` maximised over components: the dimension of `F / U`.
pub(crate) fn dimension_from_leads(n: usize, leads: &[Vec<Monomial>]) -> i64 {
    leads
        .iter()
        .map(|ms| monomial_quotient_dimension(n, ms))
        .max()
        .unwrap_or(-1)
}

/// Dimension of `S / (ms)` for monomials `ms`: the largest variable subset containing the
/// support of no generator. `-1` when some generator is 1.
pub(crate) fn monomial_quotient_dimension(n: usize, ms: &[Monomial]) -> i64 {
    if ms.iter().any(Monomial::is_one) {
        return -1;
    }
    let supports: Vec<u32> = ms
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    best
}

/// Krull dimension of `S / I`; `-1` when `I` is the unit ideal.
pub fn dimension_of_quotient(ring: &Ring, gens: &[Polynomial]) -> Result<i64> {
    check_homogeneous(gens)?;
    let gb = GroebnerBasis::of_ideal(ring, gens)?;
    Ok(dimension_from_leads(ring.nvars(), &gb.leading_monomials()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};

    fn ring(vars: &[&str]) -> Ring {
        RingSpec::new(32003, vars.iter().copied()).unwrap()
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_polynomial(t, r).unwrap()).collect()
    }

    fn fv(p: Polynomial) -> FreeVector {
        FreeVector::from_polynomial(p)
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let g = GroebnerBasis::of_ideal(&r, &polys(&r, &["x^2", "x*y"])).unwrap();
        let p = polys(&r, &["x^2*y", "y^3"]);
        assert!(g.normal_form(&fv(p[0].clone())).unwrap().is_zero());
        assert_eq!(g.normal_form(&fv(p[1].clone())).unwrap().component(0), p[1]);
    }

    #[test]
    fn single_division_step() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^2 - y*z", "y^2"]);
        let g = GroebnerBasis::of_ideal(&r, &gens).unwrap();
        let v = parse_polynomial("x^2", &r).unwrap();
        let nf = g.normal_form(&fv(v.clone())).unwrap().component(0);
        assert_eq!(nf, parse_polynomial("y*z", &r).unwrap());
        // v - nf lies in the ideal
        assert!(g.contains(&fv(&v - &nf)).unwrap());
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"]);
        let g = GroebnerBasis::of_ideal(&r, &polys(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(g.polynomials(), polys(&r, &["x^2", "x*y"]));

        let g = GroebnerBasis::of_ideal(&r, &polys(&r, &["x^2 - y^2", "x*y"])).unwrap();
        let mut got = g.polynomials();
        got.sort_by_key(|p| p.to_string());
        let mut want = polys(&r, &["x^2 - y^2", "x*y", "y^3"]);
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
        assert!(g.s_pairs_reduce_to_zero());

        let g = GroebnerBasis::of_ideal(&r, &polys(&r, &["x"])).unwrap();
        assert_eq!(g.polynomials(), polys(&r, &["x"]));
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring(&["x", "y"]);
        assert!(matches!(
            GroebnerBasis::of_ideal(&r, &polys(&r, &["x + y^2"])),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(dimension_of_quotient(&r, &polys(&r, &["x^2 + y"])).is_err());
    }

    #[test]
    fn syzygy_examples() {
        let r = ring(&["x", "y"]);
        let target = GradedFreeModule::new(vec![0]);
        let m = GradedMap::from_columns(
            &r,
            target.clone(),
            polys(&r, &["x", "y"]).into_iter().map(|p| vec![p]).collect(),
        )
        .unwrap();
        let z = syzygy_generators(&m).unwrap();
        assert_eq!(z.ncols(), 1);
        assert_eq!(z.source().twists(), &[2]);
        assert!(m.compose(&z).unwrap().is_zero());
        let col = z.column(0);
        // (y, -x) up to a scalar
        let lead = col[0].leading_term().unwrap().1;
        let f = r.field();
        let inv = f.inv(lead);
        assert_eq!(col[0].scale(inv), polys(&r, &["y"])[0]);
        assert_eq!(col[1].scale(inv), polys(&r, &["-x"])[0]);

        let m = GradedMap::from_columns(
            &r,
            target.clone(),
            polys(&r, &["x^2", "x*y"]).into_iter().map(|p| vec![p]).collect(),
        )
        .unwrap();
        let z = syzygy_generators(&m).unwrap();
        assert_eq!(z.source().twists(), &[3]);
        assert!(m.compose(&z).unwrap().is_zero());

        let m = GradedMap::from_columns(
            &r,
            target,
            polys(&r, &["x", "x"]).into_iter().map(|p| vec![p]).collect(),
        )
        .unwrap();
        let z = syzygy_generators(&m).unwrap();
        assert_eq!(z.source().twists(), &[1]);
        let col = z.column(0);
        assert!(col[0].is_unit());
        assert_eq!(&col[0] + &col[1], Polynomial::zero(&r));
    }

    #[test]
    fn lifting() {
        let r = ring(&["x", "y"]);
        let m = GradedMap::from_columns(
            &r,
            GradedFreeModule::new(vec![0]),
            polys(&r, &["x^2", "x*y"]).into_iter().map(|p| vec![p]).collect(),
        )
        .unwrap();
        let v = fv(parse_polynomial("x^3 + 2*x^2*y", &r).unwrap());
        let c = lift(&m, &v).unwrap();
        let back = &(&c[0] * &m.entry(0, 0).clone()) + &(&c[1] * &m.entry(0, 1).clone());
        assert_eq!(back, v.component(0));
        assert!(lift(&m, &fv(parse_polynomial("y^3", &r).unwrap())).is_err());
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(dimension_of_quotient(&r, &polys(&r, &["x^2", "x*y"])).unwrap(), 1);
        assert_eq!(dimension_of_quotient(&r, &polys(&r, &["x^2", "y^3"])).unwrap(), 0);
        assert_eq!(dimension_of_quotient(&r, &[]).unwrap(), 2);
        assert_eq!(dimension_of_quotient(&r, &polys(&r, &["1"])).unwrap(), -1);
    }
}
