//! Koszul complexes, the total complex `K(x) ⊗ F`, and Koszul homology modules.

mod complex;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use complex::{build_koszul, subsets, tensor_complexes, total_tensor, GeneratorList, KoszulComplex};

use crate::error::{Error, Result};
use crate::field::rank;
use crate::groebner::{GradedPieces, HilbertFunction};
use crate::homological::{homology_at, minimal_free_resolution, FreeComplex, ModulePresentation, Resolution};

/// Everything computed on the way to `H_*(x; M)`.
#[derive(Clone, Debug)]
pub struct KoszulHomology {
    pub koszul: KoszulComplex,
    pub resolution: Resolution,
    /// `D = Tot(K(x) ⊗ F)` with `F` the minimal resolution of `M`.
    pub total: FreeComplex,
    /// `H_k(x; M)` for `k = 0..=l`, minimally presented.
    pub modules: Vec<ModulePresentation>,
}

pub fn koszul_homology_full(x: &GeneratorList, m: &ModulePresentation) -> Result<KoszulHomology> {
    if x.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let koszul = build_koszul(x)?;
    let resolution = minimal_free_resolution(m);
    let total = total_tensor(&koszul, &resolution.complex)?;
    let modules = (0..=x.len() as i64)
        .into_par_iter()
        .map(|k| homology_at(&total, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(KoszulHomology {
        koszul,
        resolution,
        total,
        modules,
    })
}

/// `H_k(x; M)` for `k = 0..=l`, computed as `H_k(K(x) ⊗ F)`.
pub fn koszul_homology(x: &GeneratorList, m: &ModulePresentation) -> Result<Vec<ModulePresentation>> {
    Ok(koszul_homology_full(x, m)?.modules)
}

/// Hilbert functions of `H_k(x; M)`, `k = 0..=l`, on degrees `mindeg M ..= d_max`, by
/// linear algebra on each graded strand of `K(x) ⊗ M`. No resolution is used.
pub fn koszul_homology_hilbert_oracle(
    x: &GeneratorList,
    m: &ModulePresentation,
    d_max: i64,
) -> Result<Vec<HilbertFunction>> {
    let Some(lo) = m.generators().mindeg() else {
        return Ok(vec![HilbertFunction::new(0, Vec::new()); x.len() + 1]);
    };
    koszul_homology_hilbert_range(x, m, lo, d_max)
}

/// As [`koszul_homology_hilbert_oracle`] on an explicit degree window.
pub fn koszul_homology_hilbert_range(
    x: &GeneratorList,
    m: &ModulePresentation,
    d_min: i64,
    d_max: i64,
) -> Result<Vec<HilbertFunction>> {
    if x.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let l = x.len();
    let field = m.ring().field();
    let all: Vec<Vec<Vec<usize>>> = (0..=l).map(|p| subsets(l, p)).collect();
    let deg_of = |t: &[usize]| -> i64 { t.iter().map(|&j| x.degrees()[j]).sum() };
    let mut values = vec![Vec::new(); l + 1];
    let Some(gen_lo) = m.generators().mindeg() else {
        let width = (d_max - d_min + 1).max(0) as usize;
        return Ok(vec![HilbertFunction::new(d_min, vec![0; width]); l + 1]);
    };
    let mut graded = GradedPieces::new(m);
    let mut pieces = BTreeMap::new();
    for e in gen_lo..=d_max {
        pieces.insert(e, graded.piece(e).clone());
    }
    let dim_at = |e: i64| pieces.get(&e).map_or(0, |p| p.dim());
    for d in d_min..=d_max {
        // block offsets of C_p = ⊕_T M_{d - deg T}
        let offsets: Vec<Vec<usize>> = all
            .iter()
            .map(|ts| {
                let mut acc = 0;
                let mut out = Vec::with_capacity(ts.len() + 1);
                for t in ts {
                    out.push(acc);
                    acc += dim_at(d - deg_of(t));
                }
                out.push(acc);
                out
            })
            .collect();
        let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
        let mut ranks = vec![0usize; l + 2];
        for p in 1..=l {
            if dims[p] == 0 || dims[p - 1] == 0 {
                continue;
            }
            let index: BTreeMap<&[usize], usize> =
                all[p - 1].iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
            let mut images = Vec::with_capacity(dims[p]);
            for t in &all[p] {
                let e = d - deg_of(t);
                let Some(src) = pieces.get(&e) else { continue };
                for (comp, mu) in src.quotient_basis() {
                    let mut img = vec![0u32; dims[p - 1]];
                    for (pos, &j) in t.iter().enumerate() {
                        let rest: Vec<usize> = t.iter().copied().filter(|&i| i != j).collect();
                        let r = index[rest.as_slice()];
                        let e2 = e + x.degrees()[j];
                        let Some(tgt) = pieces.get(&e2) else { continue };
                        if tgt.dim() == 0 {
                            continue;
                        }
                        let prods: Vec<_> = x.elements()[j].terms().iter().map(|(m2, c)| (mu.mul(m2), *c)).collect();
                        let amb = tgt.ambient_vector(prods.iter().map(|(m2, c)| (*comp, m2, *c)), field);
                        let coords = tgt.quotient_coordinates(amb);
                        let off = offsets[p - 1][r];
                        for (k, c) in coords.into_iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            let c = if pos % 2 == 0 { c } else { field.neg(c) };
                            img[off + k] = field.add(img[off + k], c);
                        }
                    }
                    images.push(img);
                }
            }
            ranks[p] = rank(field, dims[p - 1], images);
        }
        for p in 0..=l {
            values[p].push((dims[p] - ranks[p] - ranks[p + 1]) as u64);
        }
    }
    Ok(values.into_iter().map(|v| HilbertFunction::new(d_min, v)).collect())
}
