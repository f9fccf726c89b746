use super::free::{FreeComplex, GradedMap, ModulePresentation};
use super::resolution::{minimal_free_resolution, minimalize};
use crate::error::{Error, Result};
use crate::groebner::{syzygy_generators, Elimination};

/// `H_i(C) = ker d_i / im d_{i+1}` as a minimal presentation.
///
/// Generators are the kernel generators of `d_i`. Relations are the `Z`-parts of the
/// syzygies of `[Z | d_{i+1}]`; this covers both the lifted boundaries and the relations
/// among the kernel generators themselves.
pub fn homology_at(c: &FreeComplex, i: i64) -> Result<ModulePresentation> {
    let ring = c.ring();
    let fi = c.module(i);
    if fi.is_zero() {
        return Ok(ModulePresentation::zero_module(ring));
    }
    let d_out = c.differential(i);
    let d_in = c.differential(i + 1);
    let z = if d_out.is_zero() {
        GradedMap::identity(ring, fi)
    } else {
        syzygy_generators(&d_out)?
    };
    if z.ncols() == 0 {
        return Ok(ModulePresentation::zero_module(ring));
    }
    let combined = z.hconcat(&d_in)?;
    let nz = z.ncols();
    let relations: Vec<(i64, Vec<_>)> = Elimination::new(&combined)
        .syzygies()
        .into_iter()
        .map(|(deg, col)| (deg, col.into_iter().take(nz).collect::<Vec<_>>()))
        .filter(|(_, col)| col.iter().any(|p| !p.is_zero()))
        .collect();
    let rel = GradedMap::from_twisted_columns(ring, z.source().clone(), relations)?;
    // every boundary must be a cycle; a failed lift signals d∘d ≠ 0
    if !d_in.is_zero() && !d_out.is_zero() && !d_out.compose(&d_in)?.is_zero() {
        return Err(Error::LiftFailure(format!("boundaries at index {i} are not cycles")));
    }
    Ok(minimalize(&ModulePresentation::new(ring, rel)))
}

/// `Hom(C, S)` stored homologically: position `-i` holds `F_i^*` and the differential
/// into position `-i` is the transpose of `d_i`.
pub fn dualize(c: &FreeComplex) -> FreeComplex {
    let (modules, maps) = c.parts();
    let lo = -c.hi();
    let dual_modules = modules.iter().rev().map(|m| m.dual()).collect();
    // new differential k: position lo+k+1 -> lo+k, i.e. F_{hi-k-1}^* -> F_{hi-k}^*
    let dual_maps = maps.iter().rev().map(GradedMap::dual).collect();
    FreeComplex::new(c.ring(), lo, dual_modules, dual_maps).expect("dual complex")
}

/// `Ext^p_S(M, S)`: cohomology at `p` of the dualized minimal resolution of `M`.
pub fn ext_module(m: &ModulePresentation, p: i64) -> Result<ModulePresentation> {
    let res = minimal_free_resolution(m);
    homology_at(&dualize(&res.complex), -p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::hilbert_function;
    use crate::homological::GradedFreeModule;
    use crate::poly::{parse_polynomial, Polynomial, Ring, RingSpec};

    fn ring2() -> Ring {
        RingSpec::new(32003, ["x", "y"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn koszul_xy(r: &Ring) -> FreeComplex {
        let f0 = GradedFreeModule::new(vec![0]);
        let f1 = GradedFreeModule::new(vec![1, 1]);
        let f2 = GradedFreeModule::new(vec![2]);
        let d1 = GradedMap::new(r, f1.clone(), f0.clone(), vec![vec![p(r, "x"), p(r, "y")]]).unwrap();
        let d2 = GradedMap::new(r, f2.clone(), f1.clone(), vec![vec![p(r, "-y")], vec![p(r, "x")]]).unwrap();
        FreeComplex::new(r, 0, vec![f0, f1, f2], vec![d1, d2]).unwrap()
    }

    #[test]
    fn koszul_complex_homology() {
        let r = ring2();
        let k = koszul_xy(&r);
        let h0 = homology_at(&k, 0).unwrap();
        assert_eq!(hilbert_function(&h0, 0, 2).values, vec![1, 0, 0]);
        assert!(homology_at(&k, 1).unwrap().generators().is_zero());
        assert!(homology_at(&k, 2).unwrap().generators().is_zero());
    }

    #[test]
    fn zero_differentials_give_the_module() {
        let r = ring2();
        let f = GradedFreeModule::new(vec![0, 2]);
        let c = FreeComplex::new(
            &r,
            0,
            vec![f.clone(), f.clone()],
            vec![GradedMap::zero(&r, f.clone(), f.clone())],
        )
        .unwrap();
        let h = homology_at(&c, 1).unwrap();
        assert_eq!(h.generators(), &f);
        assert_eq!(h.relations().ncols(), 0);
    }

    #[test]
    fn ext_examples() {
        let r = ring2();
        let s = ModulePresentation::ring_itself(&r);
        let e0 = ext_module(&s, 0).unwrap();
        assert_eq!(e0.generators().twists(), &[0]);
        assert_eq!(e0.relations().ncols(), 0);

        let sx = ModulePresentation::cyclic(&r, &[p(&r, "x")]).unwrap();
        let e1 = ext_module(&sx, 1).unwrap();
        // (S/(x))(1): generator in degree -1, Hilbert function 1 in every degree >= -1
        assert_eq!(e1.generators().twists(), &[-1]);
        assert_eq!(hilbert_function(&e1, -2, 2).values, vec![0, 1, 1, 1, 1]);

        let ci = ModulePresentation::cyclic(&r, &[p(&r, "x^2"), p(&r, "y^3")]).unwrap();
        let e2 = ext_module(&ci, 2).unwrap();
        assert_eq!(hilbert_function(&e2, -6, -1).values, vec![0, 1, 2, 2, 1, 0]);
        assert!(ext_module(&ci, 1).unwrap().generators().is_zero());
    }
}
