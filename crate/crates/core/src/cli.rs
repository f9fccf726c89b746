//! Command-line front end: case files in, JSON reports out.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{
    evaluate_batch, evaluate_instance, generate_family, quotient_by_ideal, BoundReport, EvalOptions, FamilyKind,
    FamilySpec, Instance, ModuleJson, RingJson, TheoremId, Verdict, SCHEMA_VERSION,
};
use crate::error::Error;
use crate::groebner::hilbert_function;
use crate::homological::{minimal_free_resolution, minimalize, module_invariants, ModulePresentation};
use crate::koszul::{koszul_homology, GeneratorList};
use crate::poly::{parse_polynomial, Ring};

pub mod exit {
    pub const VERIFIED: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const SEMANTIC: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    pub const VIOLATION: i32 = 5;
    pub const GENERATION: i32 = 6;
}

/// Input file for `compute` and `check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub schema_version: u32,
    pub ring: RingJson,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub module: Option<ModuleJson>,
    #[serde(default)]
    pub theorem: Option<String>,
    #[serde(default)]
    pub options: CaseOptions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseOptions {
    #[serde(default)]
    pub dmax: Option<i64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A parsed case file.
#[derive(Clone, Debug)]
pub struct ParsedCase {
    pub ring: Ring,
    pub ideal: Vec<crate::poly::Polynomial>,
    pub module: Option<ModulePresentation>,
    pub theorem: Option<TheoremId>,
    pub options: CaseOptions,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) => exit::PARSE,
            Error::Generation(_) => exit::GENERATION,
            _ => exit::SEMANTIC,
        };
        Self::new(code, e.to_string())
    }
}

impl CaseFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::new(exit::PARSE, format!("case file: {e}")))
    }

    pub fn parse(&self) -> Result<ParsedCase, CliError> {
        if self.schema_version != 1 {
            return Err(CliError::new(
                exit::SEMANTIC,
                format!("unsupported schema_version {}", self.schema_version),
            ));
        }
        let ring = self.ring.to_ring()?;
        let ideal = self
            .ideal
            .iter()
            .map(|s| parse_polynomial(s, &ring))
            .collect::<crate::Result<Vec<_>>>()?;
        let module = self.module.as_ref().map(|m| m.to_presentation(&ring)).transpose()?;
        let theorem = self.theorem.as_deref().map(str::parse).transpose()?;
        Ok(ParsedCase {
            ring,
            ideal,
            module,
            theorem,
            options: self.options.clone(),
        })
    }
}

impl ParsedCase {
    pub fn generators(&self) -> crate::Result<GeneratorList> {
        GeneratorList::new(&self.ring, self.ideal.clone())
    }

    pub fn module(&self) -> ModulePresentation {
        self.module
            .clone()
            .unwrap_or_else(|| ModulePresentation::ring_itself(&self.ring))
    }

    /// `M / IM`; `S / I` without a module.
    pub fn quotient(&self) -> crate::Result<ModulePresentation> {
        quotient_by_ideal(&self.module(), &self.generators()?)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "koszulreg",
    version,
    about = "Koszul homology and regularity bounds over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolution, regularity, Koszul homology or Hilbert function of a case.
    Compute {
        what: What,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dmax: Option<i64>,
        /// Human-readable output instead of JSON.
        #[arg(long)]
        text: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a theorem on a case and writes a bound report.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long)]
        dmax: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generates a family of cases and checks every applicable theorem.
    Fuzz {
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Resolve,
    Reg,
    Koszul,
    Hilbert,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::PARSE } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok((code, output, out)) => match write_output(out.as_deref(), &output) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                exit::SEMANTIC
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

type Outcome = (i32, String, Option<PathBuf>);

fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Compute {
            what,
            input,
            dmax,
            text,
            out,
        } => {
            let case = load(input)?;
            let dmax = dmax.or(case.options.dmax);
            let body = if *text {
                compute_text(&case, *what, dmax)?
            } else {
                pretty(&compute(&case, *what, dmax)?)
            };
            Ok((exit::VERIFIED, body, out.clone()))
        }
        Command::Check {
            input,
            theorem,
            dmax,
            out,
        } => {
            let case = load(input)?;
            let report = check(&case, &case_id(input), theorem.as_deref(), dmax.or(case.options.dmax))?;
            let code = match report.verdict {
                Verdict::Verified => exit::VERIFIED,
                Verdict::PreconditionFailed => exit::PRECONDITION,
                Verdict::Violation => exit::VIOLATION,
            };
            Ok((code, report.to_json() + "\n", out.clone()))
        }
        Command::Fuzz {
            family,
            seed,
            count,
            max_vars,
            max_deg,
            out,
        } => {
            let kind: FamilyKind = family
                .parse()
                .map_err(|e: Error| CliError::new(exit::SEMANTIC, e.to_string()))?;
            let (code, value) = fuzz(&FamilySpec::new(kind, *max_vars, *max_deg), *seed, *count)?;
            Ok((code, pretty(&value), out.clone()))
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn case_id(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "case".to_string(), |s| s.to_string_lossy().into_owned())
}

pub fn load(path: &Path) -> Result<ParsedCase, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(exit::PARSE, format!("cannot read {}: {e}", path.display())))?;
    CaseFile::from_json(&text)?.parse()
}

fn reg_json(r: Option<i64>) -> Value {
    r.map_or(json!("-inf"), |v| json!(v))
}

/// Degree window `mindeg ..= dmax`, with `dmax` defaulting to `reg + 2`.
fn window(m: &ModulePresentation, reg: Option<i64>, dmax: Option<i64>) -> (i64, i64) {
    let lo = m.generators().mindeg().unwrap_or(0);
    let hi = dmax.or(reg.map(|r| r + 2)).unwrap_or(lo);
    (lo, hi.max(lo - 1))
}

pub fn compute(case: &ParsedCase, what: What, dmax: Option<i64>) -> Result<Value, CliError> {
    let body = match what {
        What::Resolve => {
            let res = minimal_free_resolution(&case.quotient()?);
            json!({
                "betti": res.betti.to_json(),
                "ranks": res.complex.ranks(),
                "pd": res.projective_dimension().map_or(json!(-1), |p| json!(p)),
                "reg": reg_json(res.regularity()),
            })
        }
        What::Reg => {
            let res = minimal_free_resolution(&case.quotient()?);
            let t: Vec<Value> = match res.projective_dimension() {
                Some(p) => (0..=p).map(|i| reg_json(res.t_index(i))).collect(),
                None => Vec::new(),
            };
            json!({ "reg": reg_json(res.regularity()), "t": t })
        }
        What::Hilbert => {
            let q = minimalize(&case.quotient()?);
            let reg = minimal_free_resolution(&q).regularity();
            let (lo, hi) = window(&q, reg, dmax);
            serde_json::to_value(hilbert_function(&q, lo, hi)).expect("json")
        }
        What::Koszul => {
            let x = case.generators()?;
            let m = case.module();
            let hs = koszul_homology(&x, &m)?;
            let invs: Vec<_> = hs.iter().map(module_invariants).collect();
            let top = invs.iter().filter_map(|i| i.reg).max();
            let (lo, hi) = window(&m, top, dmax);
            let rows: Vec<Value> = hs
                .iter()
                .zip(&invs)
                .enumerate()
                .map(|(k, (h, inv))| {
                    json!({
                        "k": k,
                        "zero": h.generators().is_zero(),
                        "reg": reg_json(inv.reg),
                        "generator_degrees": h.generators().twists(),
                        "hilbert": hilbert_function(h, lo, hi),
                    })
                })
                .collect();
            json!({ "ideal": x.elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "homology": rows })
        }
    };
    let mut obj = serde_json::Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("what".into(), json!(format!("{what:?}").to_lowercase()));
    if let Value::Object(m) = body {
        obj.extend(m);
    }
    Ok(Value::Object(obj))
}

fn compute_text(case: &ParsedCase, what: What, dmax: Option<i64>) -> Result<String, CliError> {
    match what {
        What::Resolve | What::Reg => {
            let res = minimal_free_resolution(&case.quotient()?);
            let reg = res.regularity().map_or("-inf".to_string(), |r| r.to_string());
            Ok(format!("{}reg = {reg}\n", res.betti))
        }
        What::Hilbert | What::Koszul => {
            let v = compute(case, what, dmax)?;
            Ok(pretty(&v))
        }
    }
}

pub fn check(case: &ParsedCase, id: &str, theorem: Option<&str>, dmax: Option<i64>) -> Result<BoundReport, CliError> {
    let theorem = match theorem {
        Some(t) => t.parse::<TheoremId>()?,
        None => case
            .theorem
            .ok_or_else(|| CliError::new(exit::SEMANTIC, "no theorem given (use --theorem or the case file)"))?,
    };
    let inst = Instance::new(id, case.generators()?, case.module.clone(), vec![theorem])?;
    let opts = EvalOptions {
        dmax,
        ..EvalOptions::default()
    };
    Ok(evaluate_instance(&inst, &opts)?.remove(0))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub cases: usize,
    pub reports: usize,
    pub verified: usize,
    pub precondition_failed: usize,
    pub vacuous_rows: usize,
    pub violations: usize,
}

impl FuzzSummary {
    pub fn add(&mut self, r: &BoundReport) {
        self.reports += 1;
        self.vacuous_rows += r.vacuous_rows();
        match r.verdict {
            Verdict::Verified => self.verified += 1,
            Verdict::PreconditionFailed => self.precondition_failed += 1,
            Verdict::Violation => self.violations += 1,
        }
    }
}

pub fn fuzz(spec: &FamilySpec, seed: u64, count: usize) -> Result<(i32, Value), CliError> {
    let insts = generate_family(spec, seed, count)?;
    let mut summary = FuzzSummary {
        cases: insts.len(),
        ..Default::default()
    };
    let mut reports = Vec::new();
    for r in evaluate_batch(&insts, &EvalOptions::default()) {
        for rep in r? {
            summary.add(&rep);
            reports.push(rep);
        }
    }
    let code = if summary.violations > 0 {
        exit::VIOLATION
    } else {
        exit::VERIFIED
    };
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "family": spec.kind.as_str(),
        "seed": seed,
        "max_vars": spec.max_vars,
        "max_deg": spec.max_deg,
        "summary": summary,
        "reports": reports,
    });
    Ok((code, value))
}
