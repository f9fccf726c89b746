//! Regularity bounds for Koszul homology: bound evaluation, precondition checks, duality
//! checks, deterministic case generation and JSON reports.

mod family;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use family::{generate_family, FamilyKind, FamilySpec};
pub use report::{BoundReport, BoundRow, ModuleJson, RingJson, Verdict, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::groebner::{dimension_of_quotient, hilbert_function, FreeVector, GroebnerBasis};
use crate::homological::{
    dualize, ext_module, finite_length_hilbert, homology_at, minimalize, module_dimension, module_invariants,
    GradedMap, ModuleInvariants, ModulePresentation,
};
use crate::koszul::{
    koszul_homology, koszul_homology_full, koszul_homology_hilbert_range, GeneratorList, KoszulHomology,
};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Thm12,
    Cor13,
    Cor43,
    Cor14,
    Thm15,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [Self::Thm12, Self::Cor13, Self::Cor43, Self::Cor14, Self::Thm15];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Thm12 => "thm12",
            Self::Cor13 => "cor13",
            Self::Cor43 => "cor43",
            Self::Cor14 => "cor14",
            Self::Thm15 => "thm15",
        }
    }

    /// Theorems stated for `H_k(x)` over `S` itself.
    pub fn requires_free_module(self) -> bool {
        matches!(self, Self::Cor13 | Self::Cor43 | Self::Cor14)
    }

    fn required_flags(self) -> &'static [Flag] {
        match self {
            Self::Thm12 => &[Flag::PerfectOfGrade, Flag::FiniteColength],
            Self::Cor13 => &[Flag::StronglyCm],
            Self::Cor43 | Self::Thm15 => &[Flag::ZeroDimensional],
            Self::Cor14 => &[Flag::CmIdeal],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Flag {
    ZeroDimensional,
    StronglyCm,
    CmIdeal,
    PerfectOfGrade,
    FiniteColength,
}

impl Flag {
    fn name(self) -> &'static str {
        match self {
            Self::ZeroDimensional => "is_zero_dimensional",
            Self::StronglyCm => "is_strongly_cm",
            Self::CmIdeal => "is_cm_ideal",
            Self::PerfectOfGrade => "is_perfect_of_grade",
            Self::FiniteColength => "finite_colength",
        }
    }
}

/// An ideal `I = (x_1, ..., x_l)`, a module `M` (`None` for `S`) and the theorems to check.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub generators: GeneratorList,
    pub module: Option<ModulePresentation>,
    pub theorems: Vec<TheoremId>,
}

/// One theorem applied to one `(I, M)`.
#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub id: String,
    pub generators: GeneratorList,
    pub module: Option<ModulePresentation>,
    pub theorem: TheoremId,
}

impl Instance {
    pub fn new(
        id: impl Into<String>,
        generators: GeneratorList,
        module: Option<ModulePresentation>,
        theorems: Vec<TheoremId>,
    ) -> Result<Self> {
        if let Some(m) = &module {
            if m.ring() != generators.ring() {
                return Err(Error::RingMismatch);
            }
        }
        for t in &theorems {
            if t.requires_free_module() && module.is_some() {
                return Err(Error::Input(format!(
                    "{t} concerns H_k(x) over S; the module must be null"
                )));
            }
        }
        Ok(Self {
            id: id.into(),
            generators,
            module,
            theorems,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.generators.ring()
    }

    /// `M`, with `S` for a missing module.
    pub fn module(&self) -> ModulePresentation {
        self.module
            .clone()
            .unwrap_or_else(|| ModulePresentation::ring_itself(self.ring()))
    }

    pub fn cases(&self) -> Vec<TheoremCase> {
        self.theorems
            .iter()
            .map(|&theorem| TheoremCase {
                id: self.id.clone(),
                generators: self.generators.clone(),
                module: self.module.clone(),
                theorem,
            })
            .collect()
    }
}

impl TheoremCase {
    pub fn new(
        id: impl Into<String>,
        generators: GeneratorList,
        module: Option<ModulePresentation>,
        theorem: TheoremId,
    ) -> Result<Self> {
        let inst = Instance::new(id, generators, module, vec![theorem])?;
        Ok(inst.cases().remove(0))
    }

    fn instance(&self) -> Instance {
        Instance {
            id: self.id.clone(),
            generators: self.generators.clone(),
            module: self.module.clone(),
            theorems: vec![self.theorem],
        }
    }
}

// Bound arithmetic. `degrees` are sorted in descending order; `None` when the index range
// exceeds the number of generators.

pub fn thm12_bound(degrees: &[i64], g: usize, k: usize, t: i64, n: usize) -> Option<i64> {
    top_sum(degrees, g + k).map(|s| s + t - n as i64)
}

pub fn cor13_bound(degrees: &[i64], g: usize, k: usize) -> Option<i64> {
    top_sum(degrees, g + k).map(|s| s - g as i64)
}

pub fn cor43_bound(degrees: &[i64], n: usize, k: usize) -> Option<i64> {
    top_sum(degrees, n + k).map(|s| s - n as i64)
}

pub fn cor14_bound(degrees: &[i64], g: usize) -> Option<i64> {
    top_sum(degrees, g).map(|s| s - g as i64)
}

pub fn thm15_bound(degrees: &[i64], n: usize, t: i64) -> Option<i64> {
    top_sum(degrees, n).map(|s| s + t - n as i64)
}

fn top_sum(degrees: &[i64], m: usize) -> Option<i64> {
    (m <= degrees.len()).then(|| degrees[..m].iter().sum())
}

/// `grade I = n - dim S/I`; `None` for the unit ideal.
pub fn grade(x: &GeneratorList) -> Result<Option<usize>> {
    let n = x.ring().nvars() as i64;
    let dim = dimension_of_quotient(x.ring(), x.elements())?;
    Ok((dim >= 0).then(|| (n - dim) as usize))
}

pub fn bound_thm_1_2(case: &TheoremCase, k: usize) -> Result<Option<i64>> {
    let n = case.generators.ring().nvars();
    let Some(g) = grade(&case.generators)? else {
        return Ok(None);
    };
    let m = module_invariants(&case.instance().module());
    let Some(t) = m.betti.t_index(n - g) else {
        return Ok(None);
    };
    Ok(thm12_bound(case.generators.degrees(), g, k, t, n))
}

pub fn bound_cor_1_3(case: &TheoremCase, k: usize) -> Result<Option<i64>> {
    let Some(g) = grade(&case.generators)? else {
        return Ok(None);
    };
    Ok(cor13_bound(case.generators.degrees(), g, k))
}

pub fn bound_cor_zero_dim(case: &TheoremCase, k: usize) -> Result<Option<i64>> {
    let n = case.generators.ring().nvars();
    Ok(cor43_bound(case.generators.degrees(), n, k))
}

pub fn bound_cor_1_4(case: &TheoremCase) -> Result<Option<i64>> {
    let Some(g) = grade(&case.generators)? else {
        return Ok(None);
    };
    Ok(cor14_bound(case.generators.degrees(), g))
}

pub fn bound_thm_1_5(case: &TheoremCase, k: usize) -> Result<Option<i64>> {
    let n = case.generators.ring().nvars();
    let m = module_invariants(&case.instance().module());
    let Some(t) = m.betti.t_index(k) else { return Ok(None) };
    Ok(thm15_bound(case.generators.degrees(), n, t))
}

/// `M / IM`.
pub fn quotient_by_ideal(m: &ModulePresentation, x: &GeneratorList) -> Result<ModulePresentation> {
    let ring = m.ring();
    let gens = m.generators();
    let rel = m.relations();
    let mut cols: Vec<(i64, Vec<Polynomial>)> = (0..rel.ncols())
        .map(|j| (rel.source().twist(j), rel.column(j)))
        .collect();
    for (g, &dg) in x.elements().iter().zip(x.degrees()) {
        for i in 0..gens.rank() {
            let mut col = vec![Polynomial::zero(ring); gens.rank()];
            col[i] = g.clone();
            cols.push((gens.twist(i) + dg, col));
        }
    }
    let rel = GradedMap::from_twisted_columns(ring, gens.clone(), cols)?;
    Ok(minimalize(&ModulePresentation::new(ring, rel)))
}

/// An irredundant subset of the generators: each one not in the ideal of the others.
pub fn minimal_generators(x: &GeneratorList) -> Result<GeneratorList> {
    let ring = x.ring();
    let mut kept: Vec<Polynomial> = x.elements().to_vec();
    // drop from the highest degree down
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let redundant = !others.is_empty()
            && GroebnerBasis::of_ideal(ring, &others)?.contains(&FreeVector::from_polynomial(kept[i].clone()))?;
        if redundant {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    GeneratorList::new(ring, kept)
}

/// Precondition flags for every theorem, all computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreconditionFlags {
    pub is_zero_dimensional: bool,
    pub is_cm_ideal: bool,
    pub is_strongly_cm: bool,
    pub is_perfect_of_grade: bool,
    pub finite_colength: bool,
}

pub fn check_preconditions(case: &TheoremCase) -> Result<PreconditionFlags> {
    let inst = case.instance();
    let ctx = Context::new(&inst, false)?;
    Ok(PreconditionFlags {
        is_zero_dimensional: ctx.flag(Flag::ZeroDimensional)?,
        is_cm_ideal: ctx.flag(Flag::CmIdeal)?,
        is_strongly_cm: ctx.flag(Flag::StronglyCm)?,
        is_perfect_of_grade: ctx.flag(Flag::PerfectOfGrade)?,
        finite_colength: ctx.flag(Flag::FiniteColength)?,
    })
}

/// Checks both numerical shadows of `Ext^n(H_k(x, M), S) = H^{n+k}(D^*)`.
pub fn verify_duality_dagger(case: &TheoremCase, k: usize) -> Result<bool> {
    let kh = koszul_homology_full(&case.generators, &case.instance().module())?;
    let hk = kh
        .modules
        .get(k)
        .ok_or_else(|| Error::Input(format!("k = {k} exceeds l")))?;
    if module_dimension(hk) > 0 {
        return Err(Error::NotFiniteLength);
    }
    let inv = module_invariants(hk);
    duality_at(&kh, k, &inv)
}

fn duality_at(kh: &KoszulHomology, k: usize, inv: &ModuleInvariants) -> Result<bool> {
    let hk = &kh.modules[k];
    let n = hk.ring().nvars() as i64;
    let ext = ext_module(hk, n)?;
    let from_ext = ext.generators().mindeg().map(|m| -m - n);
    if from_ext != inv.reg {
        return Ok(false);
    }
    let dual = homology_at(&dualize(&kh.total), -(n + k as i64))?;
    if module_dimension(&dual) > 0 || module_dimension(&ext) > 0 {
        return Ok(false);
    }
    Ok(same_hilbert(
        &finite_length_hilbert(&ext),
        &finite_length_hilbert(&dual),
    ))
}

fn same_hilbert(a: &crate::groebner::HilbertFunction, b: &crate::groebner::HilbertFunction) -> bool {
    let lo = a.d_min.min(b.d_min);
    let hi = (a.d_min + a.values.len() as i64).max(b.d_min + b.values.len() as i64);
    (lo..hi).all(|d| a.value(d) == b.value(d))
}

/// Which extra checks `evaluate` runs beside the bound rows.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Upper end of the oracle window; defaults to the largest bound plus two.
    pub dmax: Option<i64>,
    pub duality: bool,
    pub oracle: bool,
    pub cross_check: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            dmax: None,
            duality: true,
            oracle: true,
            cross_check: true,
        }
    }
}

/// Shared computations for all theorems of an instance.
struct Context<'a> {
    inst: &'a Instance,
    module: ModulePresentation,
    n: usize,
    dim_quotient: i64,
    m_inv: ModuleInvariants,
    kh: Option<KoszulHomology>,
    hk_inv: Vec<ModuleInvariants>,
    flags: std::cell::RefCell<BTreeMap<Flag, bool>>,
}

impl<'a> Context<'a> {
    fn new(inst: &'a Instance, with_homology: bool) -> Result<Self> {
        let module = inst.module();
        let n = inst.ring().nvars();
        let dim_quotient = dimension_of_quotient(inst.ring(), inst.generators.elements())?;
        let m_inv = module_invariants(&module);
        let (kh, hk_inv) = if with_homology {
            let kh = koszul_homology_full(&inst.generators, &module)?;
            let inv = kh.modules.par_iter().map(module_invariants).collect();
            (Some(kh), inv)
        } else {
            (None, Vec::new())
        };
        Ok(Self {
            inst,
            module,
            n,
            dim_quotient,
            m_inv,
            kh,
            hk_inv,
            flags: Default::default(),
        })
    }

    fn grade(&self) -> Option<usize> {
        (self.dim_quotient >= 0).then(|| (self.n as i64 - self.dim_quotient) as usize)
    }

    fn flag(&self, f: Flag) -> Result<bool> {
        if let Some(&v) = self.flags.borrow().get(&f) {
            return Ok(v);
        }
        let ring = self.inst.ring();
        let v = match f {
            Flag::ZeroDimensional => self.dim_quotient == 0,
            Flag::CmIdeal => {
                let s_mod_i = ModulePresentation::cyclic(ring, self.inst.generators.elements())?;
                module_invariants(&s_mod_i).is_cm
            }
            Flag::StronglyCm => {
                if self.dim_quotient == 0 {
                    true
                } else if self.dim_quotient < 0 {
                    false
                } else {
                    let min = minimal_generators(&self.inst.generators)?;
                    koszul_homology(&min, &ModulePresentation::ring_itself(ring))?
                        .iter()
                        .map(module_invariants)
                        .all(|inv| inv.dim < 0 || inv.is_cm)
                }
            }
            Flag::PerfectOfGrade => match self.grade() {
                Some(g) => self.m_inv.dim >= 0 && self.m_inv.is_perfect && self.m_inv.dim == g as i64,
                None => false,
            },
            Flag::FiniteColength => {
                let q = quotient_by_ideal(&self.module, &self.inst.generators)?;
                module_dimension(&q) <= 0
            }
        };
        self.flags.borrow_mut().insert(f, v);
        Ok(v)
    }

    fn rows(&self, theorem: TheoremId) -> Vec<BoundRow> {
        let x = &self.inst.generators;
        let degs = x.degrees();
        let n = self.n;
        let g = self.grade();
        let ks: Vec<usize> = if theorem == TheoremId::Cor14 {
            vec![0]
        } else {
            (0..=x.len()).collect()
        };
        let codim_m = n as i64 - self.m_inv.dim;
        ks.into_iter()
            .map(|k| {
                let reg = self.hk_inv[k].reg;
                let (bound, in_scope) = match theorem {
                    TheoremId::Thm12 => {
                        let b = g.and_then(|g| {
                            let t = self.m_inv.betti.t_index(n.checked_sub(g)?)?;
                            thm12_bound(degs, g, k, t, n)
                        });
                        (b, None)
                    }
                    TheoremId::Cor13 => (g.and_then(|g| cor13_bound(degs, g, k)), None),
                    TheoremId::Cor43 => (cor43_bound(degs, n, k), None),
                    TheoremId::Cor14 => (g.and_then(|g| cor14_bound(degs, g)), None),
                    TheoremId::Thm15 => {
                        let b = self.m_inv.betti.t_index(k).and_then(|t| thm15_bound(degs, n, t));
                        (b, Some(k as i64 <= codim_m))
                    }
                };
                BoundRow::new(k, reg, bound, in_scope)
            })
            .collect()
    }

    fn duality(&self) -> Result<Option<bool>> {
        if !self.flag(Flag::FiniteColength)? {
            return Ok(None);
        }
        let kh = self.kh.as_ref().expect("homology computed");
        let hk_inv = &self.hk_inv;
        let all = (0..kh.modules.len())
            .into_par_iter()
            .map(|k| duality_at(kh, k, &hk_inv[k]))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Some(all.into_iter().all(|b| b)))
    }

    fn oracle(&self, d_max: i64) -> Result<Option<bool>> {
        let Some(lo) = self.module.generators().mindeg() else {
            return Ok(None);
        };
        let kh = self.kh.as_ref().expect("homology computed");
        let oracle = koszul_homology_hilbert_range(&self.inst.generators, &self.module, lo, d_max)?;
        Ok(Some(
            kh.modules
                .iter()
                .zip(&oracle)
                .all(|(hk, hf)| hilbert_function(hk, lo, d_max) == *hf),
        ))
    }

    fn cross_check(&self) -> Option<bool> {
        let kh = self.kh.as_ref().expect("homology computed");
        let mut checked = false;
        let mut ok = true;
        let pairs = kh
            .modules
            .iter()
            .zip(&self.hk_inv)
            .chain(std::iter::once((&self.module, &self.m_inv)));
        for (m, inv) in pairs {
            if inv.finite_length {
                checked = true;
                ok &= inv.reg == finite_length_hilbert(&minimalize(m)).top_degree();
            }
        }
        checked.then_some(ok)
    }
}

/// Evaluates every theorem of an instance; reports come in the order of `inst.theorems`.
pub fn evaluate_instance(inst: &Instance, opts: &EvalOptions) -> Result<Vec<BoundReport>> {
    let ctx = Context::new(inst, true)?;
    let duality = if opts.duality { ctx.duality()? } else { None };
    let cross = if opts.cross_check { ctx.cross_check() } else { None };
    let mut out = Vec::new();
    let mut oracle_cache: BTreeMap<i64, Option<bool>> = BTreeMap::new();
    for &theorem in &inst.theorems {
        let mut preconditions = BTreeMap::new();
        for &f in theorem.required_flags() {
            preconditions.insert(f.name().to_string(), ctx.flag(f)?);
        }
        let rows = ctx.rows(theorem);
        let oracle_checked = if opts.oracle {
            let d_max = opts.dmax.or_else(|| {
                rows.iter()
                    .filter_map(|r| r.bound)
                    .max()
                    .or_else(|| ctx.hk_inv.iter().filter_map(|i| i.reg).max())
                    .map(|d| d + 2)
            });
            match d_max {
                Some(d) => match oracle_cache.get(&d) {
                    Some(&v) => v,
                    None => {
                        let v = ctx.oracle(d)?;
                        oracle_cache.insert(d, v);
                        v
                    }
                },
                None => None,
            }
        } else {
            None
        };
        let all_pre = preconditions.values().all(|&b| b);
        out.push(BoundReport::new(
            &inst.id,
            &inst.generators,
            inst.module.as_ref(),
            theorem,
            preconditions,
            rows,
            duality,
            oracle_checked,
            cross,
            all_pre,
        ));
    }
    Ok(out)
}

pub fn evaluate(case: &TheoremCase, opts: &EvalOptions) -> Result<BoundReport> {
    Ok(evaluate_instance(&case.instance(), opts)?.remove(0))
}

/// Evaluates instances in parallel; results keep the input order.
pub fn evaluate_batch(insts: &[Instance], opts: &EvalOptions) -> Vec<Result<Vec<BoundReport>>> {
    insts.par_iter().map(|i| evaluate_instance(i, opts)).collect()
}
