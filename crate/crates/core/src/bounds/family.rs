use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, TheoremId};
use crate::error::{Error, Result};
use crate::groebner::dimension_of_quotient;
use crate::homological::{minimalize, module_dimension, GradedFreeModule, ModulePresentation};
use crate::koszul::GeneratorList;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, Ring, RingSpec, DEFAULT_CHARACTERISTIC};

const MAX_RETRIES: usize = 50;
const MAX_GENERATORS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `n` dense forms of random degrees cutting out a point.
    Ci,
    /// Pure powers plus random monomials.
    ArtinianMonomial,
    /// A complete intersection with multiples of its generators appended.
    CiPlusRedundant,
    /// 2×2 minors of a generic 2×3 matrix in four variables.
    DeterminantalCm,
    /// A random presented module over an artinian complete intersection.
    ModuleOverZeroDim,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        Self::Ci,
        Self::ArtinianMonomial,
        Self::CiPlusRedundant,
        Self::DeterminantalCm,
        Self::ModuleOverZeroDim,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ci => "ci",
            Self::ArtinianMonomial => "artinian-monomial",
            Self::CiPlusRedundant => "ci-plus-redundant",
            Self::DeterminantalCm => "determinantal-cm",
            Self::ModuleOverZeroDim => "module-over-zero-dim",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// Number of variables is drawn from `2..=max_vars` (fixed at 4 for determinantal).
    pub max_vars: usize,
    pub max_deg: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, max_vars: usize, max_deg: u32) -> Self {
        Self {
            kind,
            max_vars,
            max_deg,
        }
    }
}

/// `count` instances, deterministic in `(spec, seed)`. Each instance uses its own stream, so
/// instance `i` does not depend on how many retries earlier instances needed.
pub fn generate_family(spec: &FamilySpec, seed: u64, count: usize) -> Result<Vec<Instance>> {
    if spec.max_vars == 0 || spec.max_deg == 0 {
        return Err(Error::Generation("max_vars and max_deg must be positive".into()));
    }
    if spec.max_vars >= MAX_GENERATORS {
        return Err(Error::Generation(format!("max_vars must be below {MAX_GENERATORS}")));
    }
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let id = format!("{}-{seed}-{i}", spec.kind);
        out.extend(draw(spec, &mut rng, &id)?);
        i += 1;
    }
    out.truncate(count);
    Ok(out)
}

fn draw(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Vec<Instance>> {
    for _ in 0..MAX_RETRIES {
        let attempt = match spec.kind {
            FamilyKind::Ci => ci(spec, rng, id)?,
            FamilyKind::ArtinianMonomial => artinian_monomial(spec, rng, id)?,
            FamilyKind::CiPlusRedundant => ci_plus_redundant(spec, rng, id)?,
            FamilyKind::DeterminantalCm => determinantal(spec, rng, id)?,
            FamilyKind::ModuleOverZeroDim => module_over_zero_dim(spec, rng, id)?,
        };
        if let Some(v) = attempt {
            return Ok(v);
        }
    }
    Err(Error::Generation(format!(
        "{id}: retry limit of {MAX_RETRIES} exceeded"
    )))
}

const ALL_ON_S: [TheoremId; 5] = [
    TheoremId::Thm12,
    TheoremId::Cor13,
    TheoremId::Cor43,
    TheoremId::Cor14,
    TheoremId::Thm15,
];

fn ring_with(rng: &mut ChaCha8Rng, max_vars: usize) -> Result<Ring> {
    let n = if max_vars <= 2 {
        max_vars
    } else {
        rng.random_range(2..=max_vars)
    };
    RingSpec::standard(DEFAULT_CHARACTERISTIC as u64, n)
}

fn coefficient(rng: &mut ChaCha8Rng, ring: &Ring) -> u32 {
    rng.random_range(1..ring.characteristic())
}

/// A form of degree `d` with every coefficient drawn uniformly from `F_p \ {0}`.
fn dense_form(rng: &mut ChaCha8Rng, ring: &Ring, d: u32) -> Polynomial {
    let terms: Vec<(Monomial, u32)> = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, coefficient(rng, ring)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..d {
        e[rng.random_range(0..n)] += 1;
    }
    Monomial::new(e)
}

fn dense_ci(spec: &FamilySpec, rng: &mut ChaCha8Rng, ring: &Ring, max_deg: u32) -> Result<Option<Vec<Polynomial>>> {
    let gens: Vec<Polynomial> = (0..ring.nvars())
        .map(|_| {
            let d = rng.random_range(1..=max_deg.min(spec.max_deg));
            dense_form(rng, ring, d)
        })
        .collect();
    Ok((dimension_of_quotient(ring, &gens)? == 0).then_some(gens))
}

fn ci(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Option<Vec<Instance>>> {
    let ring = ring_with(rng, spec.max_vars)?;
    let Some(gens) = dense_ci(spec, rng, &ring, spec.max_deg)? else {
        return Ok(None);
    };
    let x = GeneratorList::new(&ring, gens)?;
    Ok(Some(vec![Instance::new(id, x, None, ALL_ON_S.to_vec())?]))
}

fn artinian_monomial(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Option<Vec<Instance>>> {
    let ring = ring_with(rng, spec.max_vars)?;
    let n = ring.nvars();
    let mut gens: Vec<Polynomial> = (0..n)
        .map(|i| {
            let a = rng.random_range(1..=spec.max_deg) as u16;
            let mut e = vec![0u16; n];
            e[i] = a;
            Polynomial::monomial(&ring, Monomial::new(e), 1)
        })
        .collect();
    let extra = rng.random_range(1..=2usize.min(MAX_GENERATORS - n).max(1));
    for _ in 0..extra {
        let d = rng.random_range(1..=spec.max_deg);
        let m = random_monomial(rng, n, d);
        gens.push(Polynomial::monomial(&ring, m, 1));
    }
    let x = GeneratorList::new(&ring, gens)?;
    Ok(Some(vec![Instance::new(id, x, None, ALL_ON_S.to_vec())?]))
}

fn ci_plus_redundant(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Option<Vec<Instance>>> {
    let ring = ring_with(rng, spec.max_vars)?;
    let n = ring.nvars();
    // keep the base degrees below the cap so that the multiples stay within it
    let Some(mut gens) = dense_ci(spec, rng, &ring, spec.max_deg.saturating_sub(1).max(1))? else {
        return Ok(None);
    };
    let extra = rng.random_range(1..=2usize.min(MAX_GENERATORS - n).max(1));
    for _ in 0..extra {
        let i = rng.random_range(0..n);
        let d = rng.random_range(0..=1);
        let f = dense_form(rng, &ring, d);
        gens.push(&gens[i] * &f);
    }
    let x = GeneratorList::new(&ring, gens)?;
    Ok(Some(vec![Instance::new(id, x, None, ALL_ON_S.to_vec())?]))
}

/// Emits the ideal twice: over `S`, and with `M = S/(l_1, l_2)` for two generic linear
/// forms, which is perfect of grade `n - g = 2` with `M/IM` of finite length.
fn determinantal(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Option<Vec<Instance>>> {
    let ring = RingSpec::standard(DEFAULT_CHARACTERISTIC as u64, 4)?;
    let e = if spec.max_deg >= 3 { rng.random_range(1..=2) } else { 1 };
    let row0: Vec<Polynomial> = (0..3).map(|_| dense_form(rng, &ring, 1)).collect();
    let row1: Vec<Polynomial> = (0..3).map(|_| dense_form(rng, &ring, e)).collect();
    let minors: Vec<Polynomial> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| &(&row0[a] * &row1[b]) - &(&row0[b] * &row1[a]))
        .collect();
    if minors.iter().any(Polynomial::is_zero) || dimension_of_quotient(&ring, &minors)? != 2 {
        return Ok(None);
    }
    let x = GeneratorList::new(&ring, minors.clone())?;
    let lin: Vec<Polynomial> = (0..2).map(|_| dense_form(rng, &ring, 1)).collect();
    let m = ModulePresentation::cyclic(&ring, &lin)?;
    let mut all = minors;
    all.extend(lin);
    if dimension_of_quotient(&ring, &all)? != 0 {
        return Ok(None);
    }
    Ok(Some(vec![
        Instance::new(
            format!("{id}-s"),
            x.clone(),
            None,
            vec![TheoremId::Cor13, TheoremId::Cor14],
        )?,
        Instance::new(format!("{id}-m"), x, Some(m), vec![TheoremId::Thm12])?,
    ]))
}

fn module_over_zero_dim(spec: &FamilySpec, rng: &mut ChaCha8Rng, id: &str) -> Result<Option<Vec<Instance>>> {
    let ring = ring_with(rng, spec.max_vars)?;
    let Some(gens) = dense_ci(spec, rng, &ring, spec.max_deg.min(3))? else {
        return Ok(None);
    };
    let r0 = rng.random_range(1..=2usize);
    let twists: Vec<i64> = (0..r0).map(|_| rng.random_range(0..=1)).collect();
    let top = *twists.iter().max().unwrap();
    let ncols = rng.random_range(1..=2usize);
    let cols: Vec<Vec<Polynomial>> = (0..ncols)
        .map(|_| {
            let deg = top + rng.random_range(1..=2);
            twists
                .iter()
                .map(|&t| dense_form(rng, &ring, (deg - t) as u32))
                .collect()
        })
        .collect();
    let m = minimalize(&ModulePresentation::from_parts(
        &ring,
        GradedFreeModule::new(twists),
        cols,
    )?);
    if m.generators().is_zero() || module_dimension(&m) < 0 {
        return Ok(None);
    }
    let x = GeneratorList::new(&ring, gens)?;
    Ok(Some(vec![Instance::new(id, x, Some(m), vec![TheoremId::Thm15])?]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{FreeVector, GroebnerBasis};

    #[test]
    fn ci_draws_are_zero_dimensional_and_deterministic() {
        let spec = FamilySpec::new(FamilyKind::Ci, 2, 4);
        let a = generate_family(&spec, 42, 5).unwrap();
        let b = generate_family(&spec, 42, 5).unwrap();
        assert_eq!(a.len(), 5);
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.generators, q.generators);
            assert_eq!(dimension_of_quotient(p.ring(), p.generators.elements()).unwrap(), 0);
        }
        let c = generate_family(&spec, 43, 5).unwrap();
        assert!(a.iter().zip(&c).any(|(p, q)| p.generators != q.generators));
    }

    #[test]
    fn monomial_draws_contain_pure_powers() {
        let spec = FamilySpec::new(FamilyKind::ArtinianMonomial, 3, 3);
        for inst in generate_family(&spec, 7, 10).unwrap() {
            let n = inst.ring().nvars();
            for i in 0..n {
                assert!(inst.generators.elements().iter().any(|g| {
                    let m = &g.terms()[0].0;
                    g.num_terms() == 1 && m.support().eq([i])
                }));
            }
        }
    }

    #[test]
    fn redundant_elements_lie_in_the_base_ideal() {
        let spec = FamilySpec::new(FamilyKind::CiPlusRedundant, 3, 3);
        for inst in generate_family(&spec, 3, 6).unwrap() {
            let n = inst.ring().nvars();
            let l = inst.generators.len();
            assert!(l > n && l <= MAX_GENERATORS);
            let gb = GroebnerBasis::of_ideal(inst.ring(), inst.generators.elements()).unwrap();
            for g in inst.generators.elements() {
                assert!(gb.contains(&FreeVector::from_polynomial(g.clone())).unwrap());
            }
            assert_eq!(
                dimension_of_quotient(inst.ring(), inst.generators.elements()).unwrap(),
                0
            );
        }
    }

    #[test]
    fn determinantal_and_module_draws() {
        let spec = FamilySpec::new(FamilyKind::DeterminantalCm, 4, 2);
        let v = generate_family(&spec, 1, 4).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v[0].module.is_none() && v[1].module.is_some());
        let spec = FamilySpec::new(FamilyKind::ModuleOverZeroDim, 3, 3);
        for inst in generate_family(&spec, 5, 4).unwrap() {
            assert!(!inst.module.as_ref().unwrap().generators().is_zero());
        }
        assert!("nope".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn rejects_out_of_range_specs() {
        for (vars, deg) in [(0, 2), (3, 0), (6, 2)] {
            let spec = FamilySpec::new(FamilyKind::Ci, vars, deg);
            assert!(matches!(generate_family(&spec, 0, 1), Err(Error::Generation(_))));
        }
    }
}
