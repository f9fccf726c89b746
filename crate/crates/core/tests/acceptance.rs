//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use koszulreg::bounds::{
    evaluate, evaluate_batch, generate_family, BoundReport, EvalOptions, FamilyKind, FamilySpec, Instance, TheoremCase,
    TheoremId, Verdict,
};
use koszulreg::groebner::{hilbert_function, GroebnerBasis};
use koszulreg::homological::{
    is_regular_element, minimal_free_resolution, module_invariants, quotient_by_linear_regular, FreeComplex,
    GradedFreeModule, GradedMap, ModulePresentation,
};
use koszulreg::koszul::{koszul_homology_full, GeneratorList};
use koszulreg::poly::{monomials_of_degree, parse_polynomial, Polynomial, Ring, RingSpec};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CI_LIMIT: Duration = Duration::from_secs(1);
const REDUNDANT_LIMIT: Duration = Duration::from_secs(2);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const SWEEP_MIN_CASES: usize = 200;
const DUALITY_MIN_CASES: usize = 25;
const REGULAR_PAIRS: usize = 10;

/// `(family, max_vars, max_deg, seed, count)`
const SWEEP: [(FamilyKind, usize, u32, u64, usize); 5] = [
    (FamilyKind::Ci, 4, 3, 101, 45),
    (FamilyKind::ArtinianMonomial, 3, 4, 202, 45),
    (FamilyKind::CiPlusRedundant, 3, 3, 303, 45),
    (FamilyKind::DeterminantalCm, 4, 2, 404, 45),
    (FamilyKind::ModuleOverZeroDim, 3, 3, 505, 45),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn ring(vars: &[&str]) -> Ring {
    RingSpec::with_default_field(vars.iter().copied()).unwrap()
}

fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|t| parse_polynomial(t, r).unwrap()).collect()
}

fn case(vars: &[&str], ideal: &[&str], module: Option<&[&str]>, theorem: TheoremId) -> TheoremCase {
    let r = ring(vars);
    let x = GeneratorList::new(&r, polys(&r, ideal)).unwrap();
    let m = module.map(|rel| ModulePresentation::cyclic(&r, &polys(&r, rel)).unwrap());
    TheoremCase::new("acceptance", x, m, theorem).unwrap()
}

fn row_is(report: &BoundReport, k: usize, reg: i64, bound: i64) -> bool {
    let row = &report.rows[k];
    row.reg == Some(reg) && row.bound == Some(bound) && row.slack == Some(bound - reg)
}

fn timed_row(c: &TheoremCase, k: usize, reg: i64, bound: i64, limit: Duration) -> Outcome {
    let start = Instant::now();
    let report = evaluate(c, &EvalOptions::default()).unwrap();
    let took = start.elapsed();
    let row = &report.rows[k];
    Outcome::new(
        row_is(&report, k, reg, bound) && report.verdict == Verdict::Verified && took < limit,
        format!(
            "k={k} reg {:?} bound {:?} slack {:?} (want {reg}/{bound}/0), {} ms (limit {} ms)",
            row.reg,
            row.bound,
            row.slack,
            took.as_millis(),
            limit.as_millis()
        ),
    )
}

fn ci_tightness() -> Outcome {
    timed_row(
        &case(&["x", "y"], &["x^2", "y^3"], None, TheoremId::Cor13),
        0,
        3,
        3,
        CI_LIMIT,
    )
}

fn redundant_tightness() -> Outcome {
    timed_row(
        &case(&["x", "y"], &["x^2", "y^3", "x^3"], None, TheoremId::Cor43),
        1,
        6,
        6,
        REDUNDANT_LIMIT,
    )
}

fn witnesses() -> Outcome {
    let opts = EvalOptions::default();
    let a = evaluate(&case(&["x", "y"], &["x"], Some(&["y^3"]), TheoremId::Thm12), &opts).unwrap();
    let b = evaluate(
        &case(&["x", "y"], &["x^2", "y^2"], Some(&["x"]), TheoremId::Thm15),
        &opts,
    )
    .unwrap();
    let ok_a = row_is(&a, 0, 2, 2) && a.verdict == Verdict::Verified;
    let ok_b = row_is(&b, 1, 3, 3) && b.rows[1].in_scope == Some(true) && b.verdict == Verdict::Verified;
    Outcome::new(
        ok_a && ok_b,
        format!(
            "thm12 k=0 reg {:?} bound {:?}; thm15 k=1 reg {:?} bound {:?} (want 2/2, 3/3)",
            a.rows[0].reg, a.rows[0].bound, b.rows[1].reg, b.rows[1].bound
        ),
    )
}

struct Sweep {
    instances: Vec<Instance>,
    reports: Vec<BoundReport>,
    errors: Vec<String>,
    took: Duration,
}

fn run_sweep() -> Sweep {
    let start = Instant::now();
    let mut instances = Vec::new();
    let mut errors = Vec::new();
    for (kind, vars, deg, seed, count) in SWEEP {
        match generate_family(&FamilySpec::new(kind, vars, deg), seed, count) {
            Ok(v) => instances.extend(v),
            Err(e) => errors.push(format!("{kind}: {e}")),
        }
    }
    let mut reports = Vec::new();
    for (inst, r) in instances
        .iter()
        .zip(evaluate_batch(&instances, &EvalOptions::default()))
    {
        match r {
            Ok(v) => reports.extend(v),
            Err(e) => errors.push(format!("{}: {e}", inst.id)),
        }
    }
    Sweep {
        instances,
        reports,
        errors,
        took: start.elapsed(),
    }
}

fn soundness(s: &Sweep) -> Outcome {
    let violations: Vec<&str> = s
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Violation)
        .map(|r| r.case_id.as_str())
        .collect();
    let verified = s.reports.iter().filter(|r| r.verdict == Verdict::Verified).count();
    let vacuous: usize = s.reports.iter().map(BoundReport::vacuous_rows).sum();
    Outcome::new(
        s.instances.len() >= SWEEP_MIN_CASES && violations.is_empty() && s.errors.is_empty() && s.took < SWEEP_LIMIT,
        format!(
            "{} cases, {} reports, {verified} verified, {vacuous} vacuous rows, {} violations {:?}, {} errors {:?}, {:.1} s (limit {} s)",
            s.instances.len(),
            s.reports.len(),
            violations.len(),
            violations,
            s.errors.len(),
            s.errors,
            s.took.as_secs_f64(),
            SWEEP_LIMIT.as_secs()
        ),
    )
}

fn oracle(s: &Sweep) -> Outcome {
    let bad: Vec<String> = s
        .reports
        .iter()
        .filter(|r| r.oracle_checked != Some(true))
        .map(|r| format!("{}/{}", r.case_id, r.theorem))
        .collect();
    Outcome::new(
        bad.is_empty() && !s.reports.is_empty(),
        format!(
            "{} reports checked up to bound+2, mismatches or skips {:?}",
            s.reports.len(),
            bad
        ),
    )
}

fn reg_cross_check(s: &Sweep) -> Outcome {
    let checked = s.reports.iter().filter(|r| r.reg_cross_checked.is_some()).count();
    let bad: Vec<&str> = s
        .reports
        .iter()
        .filter(|r| r.reg_cross_checked == Some(false))
        .map(|r| r.case_id.as_str())
        .collect();
    Outcome::new(
        checked > 0 && bad.is_empty(),
        format!("{checked} reports with finite-length modules, mismatches {bad:?}"),
    )
}

fn duality(s: &Sweep) -> Outcome {
    // one verdict per instance: every theorem of an instance shares the check
    let mut seen = std::collections::BTreeMap::new();
    for r in &s.reports {
        if let Some(v) = r.duality_checked {
            seen.insert(r.case_id.clone(), v);
        }
    }
    let bad: Vec<&String> = seen.iter().filter(|(_, &v)| !v).map(|(k, _)| k).collect();
    Outcome::new(
        seen.len() >= DUALITY_MIN_CASES && bad.is_empty(),
        format!(
            "{} instances checked (need {DUALITY_MIN_CASES}), failures {bad:?}",
            seen.len()
        ),
    )
}

/// `Σ (−1)^i HF(F_i)_d = HF(M)_d` on degrees up to one past the top twist.
fn euler_holds(m: &ModulePresentation, res: &FreeComplex) -> bool {
    let n = m.ring().nvars();
    let Some(lo) = m.generators().mindeg() else { return true };
    let hi = (0..=res.hi())
        .filter_map(|i| res.module(i).maxdeg())
        .max()
        .unwrap_or(lo)
        + 1;
    let hf = hilbert_function(m, lo, hi);
    (lo..=hi).all(|d| {
        let alt: i64 = (0..=res.hi())
            .map(|i| {
                let v = res.module(i).hilbert(n, d) as i64;
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        alt == hf.value(d) as i64
    })
}

fn image_gb_ok(map: &GradedMap) -> bool {
    map.ncols() == 0 || GroebnerBasis::of_image(map).s_pairs_reduce_to_zero()
}

/// Complexes, resolutions and bases rebuilt for one instance; returns the failures.
fn self_check(inst: &Instance) -> Vec<String> {
    let mut fail = Vec::new();
    let m = inst.module();
    let kh = match koszul_homology_full(&inst.generators, &m) {
        Ok(kh) => kh,
        Err(e) => return vec![format!("{}: {e}", inst.id)],
    };
    let mut note = |ok: bool, what: &str| {
        if !ok {
            fail.push(format!("{}: {what}", inst.id));
        }
    };
    note(kh.koszul.complex().is_complex(), "K(x) d∘d");
    note(kh.total.is_complex(), "Tot d∘d");
    let gb = GroebnerBasis::of_ideal(inst.ring(), inst.generators.elements()).unwrap();
    note(gb.s_pairs_reduce_to_zero(), "GB of I");
    note(image_gb_ok(m.relations()), "GB of M");
    let mut modules = vec![(m.clone(), kh.resolution.complex.clone())];
    for hk in &kh.modules {
        modules.push((hk.clone(), minimal_free_resolution(hk).complex));
    }
    for (i, (module, res)) in modules.iter().enumerate() {
        note(res.is_complex(), &format!("resolution {i} d∘d"));
        note(res.is_minimal(), &format!("resolution {i} minimal"));
        note(euler_holds(module, res), &format!("resolution {i} Euler"));
        note(image_gb_ok(module.relations()), &format!("GB of module {i}"));
        for d in (res.lo() + 1)..=res.hi() {
            note(
                image_gb_ok(&res.differential(d)),
                &format!("GB of resolution {i} map {d}"),
            );
        }
    }
    fail
}

fn homological(s: &Sweep) -> Outcome {
    let fails: Vec<String> = s.instances.par_iter().flat_map(self_check).collect();
    Outcome::new(
        fails.is_empty(),
        format!(
            "{} instances: d∘d, minimality, Euler identity, S-pairs; failures {:?}",
            s.instances.len(),
            fails
        ),
    )
}

fn random_form(rng: &mut ChaCha8Rng, r: &Ring, d: u32) -> Polynomial {
    let p = r.characteristic();
    let terms = monomials_of_degree(r.nvars(), d)
        .into_iter()
        .map(|m| (m, rng.random_range(0..p)));
    Polynomial::from_terms(r, terms)
}

/// A module of positive depth: a cyclic quotient by at most two forms or the cokernel of one column.
fn random_module(rng: &mut ChaCha8Rng, r: &Ring, i: usize) -> ModulePresentation {
    if i.is_multiple_of(2) {
        let count = rng.random_range(1..=2usize);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| {
                let d = rng.random_range(2..=3u32);
                random_form(rng, r, d)
            })
            .collect();
        ModulePresentation::cyclic(r, &gens).unwrap()
    } else {
        let col = vec![random_form(rng, r, 2), random_form(rng, r, 1)];
        ModulePresentation::from_parts(r, GradedFreeModule::new(vec![0, 1]), vec![col]).unwrap()
    }
}

fn regular_quotient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2202);
    let mut pairs = Vec::new();
    let mut bad = Vec::new();
    let mut attempts = 0;
    while pairs.len() < REGULAR_PAIRS && attempts < 5 * REGULAR_PAIRS {
        let r = RingSpec::standard(32003, 3 + attempts % 2).unwrap();
        let m = random_module(&mut rng, &r, attempts);
        let u = random_form(&mut rng, &r, 1);
        attempts += 1;
        if u.is_zero() || !is_regular_element(&m, &u).unwrap() {
            continue;
        }
        let before = module_invariants(&m).reg;
        let after = module_invariants(&quotient_by_linear_regular(&m, &u).unwrap()).reg;
        if before != after {
            bad.push(format!("{before:?} vs {after:?}"));
        }
        pairs.push((before, after));
    }
    Outcome::new(
        pairs.len() == REGULAR_PAIRS && bad.is_empty(),
        format!(
            "{} pairs (need {REGULAR_PAIRS}) in {attempts} draws, regs {:?}, mismatches {bad:?}",
            pairs.len(),
            pairs.iter().map(|p| p.0).collect::<Vec<_>>()
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("ci-tightness", ci_tightness()),
        ("redundant-tightness", redundant_tightness()),
        ("witnesses", witnesses()),
    ];
    let sweep = run_sweep();
    results.push(("soundness-sweep", soundness(&sweep)));
    results.push(("oracle-equivalence", oracle(&sweep)));
    results.push(("regularity-cross-check", reg_cross_check(&sweep)));
    results.push(("duality", duality(&sweep)));
    results.push(("homological-self-checks", homological(&sweep)));
    results.push(("regular-linear-quotient", regular_quotient()));

    let mut failed = 0;
    for (name, o) in &results {
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
