use serde::Serialize;

use super::free::{GradedMap, ModulePresentation};
use super::resolution::{minimal_free_resolution, minimalize, BettiTable};
use crate::error::{Error, Result};
use crate::groebner::{dimension_from_leads, hilbert_function, Elimination, GroebnerBasis, HilbertFunction};
use crate::poly::Polynomial;

/// Numerical invariants of a graded module.
///
/// Sentinels: the zero module has `dim = -1`, `pd = -1`, `length = Some(0)`,
/// `mindeg = None` (+∞) and `reg = None` (−∞).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub dim: i64,
    pub depth: i64,
    pub pd: i64,
    pub grade_codim: i64,
    pub is_cm: bool,
    pub is_perfect: bool,
    pub finite_length: bool,
    /// `None` when the length is infinite.
    pub length: Option<u64>,
    pub mindeg: Option<i64>,
    pub reg: Option<i64>,
    #[serde(skip)]
    pub betti: BettiTable,
}

/// Krull dimension of a presented module from the initial submodule of its relations;
/// `-1` for the zero module.
pub fn module_dimension(m: &ModulePresentation) -> i64 {
    if m.generators().is_zero() {
        return -1;
    }
    let gb = GroebnerBasis::of_image(m.relations());
    dimension_from_leads(m.ring().nvars(), &gb.leading_monomials())
}

/// Full Hilbert function of a finite-length module, from its least generator degree up to
/// the last nonzero degree. Callers guarantee finite length.
pub(crate) fn finite_length_hilbert(m: &ModulePresentation) -> HilbertFunction {
    let Some(lo) = m.generators().mindeg() else {
        return HilbertFunction::new(0, Vec::new());
    };
    let hi_gen = m.generators().maxdeg().unwrap();
    let mut pieces = crate::groebner::GradedPieces::new(m);
    let mut values = Vec::new();
    let mut d = lo;
    loop {
        let v = pieces.dim(d) as u64;
        values.push(v);
        // generated in degrees <= hi_gen, so a vanishing piece above it stays zero
        if v == 0 && d >= hi_gen {
            break;
        }
        d += 1;
    }
    while values.len() > 1 && *values.last().unwrap() == 0 {
        values.pop();
    }
    HilbertFunction::new(lo, values)
}

pub fn module_invariants(m: &ModulePresentation) -> ModuleInvariants {
    let n = m.ring().nvars() as i64;
    let pres = minimalize(m);
    if pres.generators().is_zero() {
        return ModuleInvariants {
            dim: -1,
            depth: n + 1,
            pd: -1,
            grade_codim: n + 1,
            is_cm: false,
            is_perfect: false,
            finite_length: true,
            length: Some(0),
            mindeg: None,
            reg: None,
            betti: BettiTable::default(),
        };
    }
    let res = minimal_free_resolution(&pres);
    let pd = res.projective_dimension().map_or(-1, |p| p as i64);
    let dim = module_dimension(&pres);
    let depth = n - pd;
    let grade_codim = n - dim;
    let finite_length = dim <= 0;
    let length = finite_length.then(|| finite_length_hilbert(&pres).total());
    ModuleInvariants {
        dim,
        depth,
        pd,
        grade_codim,
        is_cm: dim == depth,
        is_perfect: pd == grade_codim,
        finite_length,
        length,
        mindeg: pres.generators().mindeg(),
        reg: res.regularity(),
        betti: res.betti,
    }
}

/// Top nonzero degree of the Hilbert function of a finite-length module, scanning up to
/// `d_cap`; `None` (−∞) for the zero module.
pub fn regularity_finite_length_oracle(m: &ModulePresentation, d_cap: i64) -> Result<Option<i64>> {
    if module_dimension(m) > 0 {
        return Err(Error::NotFiniteLength);
    }
    let pres = minimalize(m);
    let Some(lo) = pres.generators().mindeg() else {
        return Ok(None);
    };
    if d_cap < lo {
        return Ok(None);
    }
    Ok(hilbert_function(&pres, lo, d_cap).top_degree())
}

/// True when `(U : u) = U` for `M = F/U`, i.e. multiplication by `u` is injective on `M`.
pub fn is_regular_element(m: &ModulePresentation, u: &Polynomial) -> Result<bool> {
    let ring = m.ring();
    let gens = m.generators();
    if gens.is_zero() {
        return Ok(true);
    }
    let d = match u.homogeneous_degree()? {
        Some(d) => d as i64,
        None => return Err(Error::NotHomogeneous(u.to_string())),
    };
    // columns u·e_i followed by the relations; syzygies give (U : u) in the first block
    let r = gens.rank();
    let mut cols: Vec<(i64, Vec<Polynomial>)> = (0..r)
        .map(|i| {
            let mut col = vec![Polynomial::zero(ring); r];
            col[i] = u.clone();
            (gens.twist(i) + d, col)
        })
        .collect();
    let rel = m.relations();
    cols.extend((0..rel.ncols()).map(|j| (rel.source().twist(j), rel.column(j))));
    let combined = GradedMap::from_twisted_columns(ring, gens.clone(), cols)?;
    let image = GroebnerBasis::of_image(rel);
    for (_, col) in Elimination::new(&combined).syzygies() {
        let v = crate::groebner::FreeVector::new(ring, gens.twists().to_vec(), col[..r].to_vec())?;
        if !image.contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M / uM` for a linear form `u` that is regular on `M`.
pub fn quotient_by_linear_regular(m: &ModulePresentation, u: &Polynomial) -> Result<ModulePresentation> {
    if u.is_zero() || u.homogeneous_degree()? != Some(1) {
        return Err(Error::Precondition(format!("{u} is not a linear form")));
    }
    if !is_regular_element(m, u)? {
        return Err(Error::ZeroDivisor(u.to_string()));
    }
    let ring = m.ring();
    let gens = m.generators();
    let rel = m.relations();
    let mut cols: Vec<(i64, Vec<Polynomial>)> = (0..rel.ncols())
        .map(|j| (rel.source().twist(j), rel.column(j)))
        .collect();
    for i in 0..gens.rank() {
        let mut col = vec![Polynomial::zero(ring); gens.rank()];
        col[i] = u.clone();
        cols.push((gens.twist(i) + 1, col));
    }
    let rel = GradedMap::from_twisted_columns(ring, gens.clone(), cols)?;
    Ok(minimalize(&ModulePresentation::new(ring, rel)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring, RingSpec};

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn cyclic(r: &Ring, gens: &[&str]) -> ModulePresentation {
        let ps: Vec<Polynomial> = gens.iter().map(|s| p(r, s)).collect();
        ModulePresentation::cyclic(r, &ps).unwrap()
    }

    #[test]
    fn complete_intersection() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let inv = module_invariants(&cyclic(&r, &["x^2", "y^3"]));
        assert_eq!((inv.dim, inv.depth, inv.pd), (0, 0, 2));
        assert!(inv.is_cm && inv.is_perfect && inv.finite_length);
        assert_eq!(inv.grade_codim, 2);
        assert_eq!(inv.length, Some(6));
        assert_eq!(inv.reg, Some(3));
        assert_eq!(inv.mindeg, Some(0));
    }

    #[test]
    fn hypersurface_and_free() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let inv = module_invariants(&cyclic(&r, &["x"]));
        assert_eq!((inv.dim, inv.depth, inv.pd, inv.grade_codim), (1, 1, 1, 1));
        assert!(inv.is_cm && inv.is_perfect && !inv.finite_length);
        assert_eq!(inv.length, None);

        let inv = module_invariants(&ModulePresentation::ring_itself(&r));
        assert_eq!((inv.dim, inv.depth, inv.pd, inv.reg), (2, 2, 0, Some(0)));
    }

    #[test]
    fn zero_module_sentinels() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let inv = module_invariants(&cyclic(&r, &["1"]));
        assert_eq!(inv.dim, -1);
        assert_eq!(inv.reg, None);
        assert_eq!(inv.length, Some(0));
        assert_eq!(inv.mindeg, None);
    }

    #[test]
    fn finite_length_oracle() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        assert_eq!(
            regularity_finite_length_oracle(&cyclic(&r, &["x^2", "y^3"]), 10),
            Ok(Some(3))
        );
        assert_eq!(
            regularity_finite_length_oracle(&cyclic(&r, &["x", "y"]), 10),
            Ok(Some(0))
        );
        assert_eq!(
            regularity_finite_length_oracle(&cyclic(&r, &["x^2", "x*y", "y^2"]), 10),
            Ok(Some(1))
        );
        assert_eq!(
            regularity_finite_length_oracle(&cyclic(&r, &["x"]), 10),
            Err(Error::NotFiniteLength)
        );
    }

    #[test]
    fn quotients_by_regular_linear_forms() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let q = quotient_by_linear_regular(&cyclic(&r, &["x"]), &p(&r, "y")).unwrap();
        let inv = module_invariants(&q);
        assert_eq!((inv.dim, inv.reg), (0, Some(0)));
        let q = quotient_by_linear_regular(&ModulePresentation::ring_itself(&r), &p(&r, "x")).unwrap();
        assert_eq!(module_invariants(&q).reg, Some(0));
        assert!(matches!(
            quotient_by_linear_regular(&cyclic(&r, &["x*y"]), &p(&r, "x")),
            Err(Error::ZeroDivisor(_))
        ));
        assert!(quotient_by_linear_regular(&cyclic(&r, &["x"]), &p(&r, "y^2")).is_err());
    }

    #[test]
    fn rational_normal_scroll_quotient() {
        let r = RingSpec::new(32003, ["x", "y", "z", "w"]).unwrap();
        let m = cyclic(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
        let before = module_invariants(&m);
        assert_eq!(before.reg, Some(1));
        assert_eq!(before.betti.get(1, 2), 3);
        assert_eq!(before.betti.get(2, 3), 2);
        let q = quotient_by_linear_regular(&m, &p(&r, "x + 2*y + 3*z + 5*w")).unwrap();
        assert_eq!(module_invariants(&q).reg, Some(1));
    }
}
