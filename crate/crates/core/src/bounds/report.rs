use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use super::TheoremId;
use crate::error::{Error, Result};
use crate::homological::{GradedFreeModule, ModulePresentation};
use crate::koszul::GeneratorList;
use crate::poly::{parse_polynomial, Polynomial, Ring, RingSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "precondition_failed")]
    PreconditionFailed,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Verified => "verified",
            Self::PreconditionFailed => "precondition_failed",
            Self::Violation => "VIOLATION",
        }
    }
}

/// One value of `k`. `reg = None` is −∞; `slack = None` marks a vacuous row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    #[serde(serialize_with = "ser_reg")]
    pub reg: Option<i64>,
    pub bound: Option<i64>,
    #[serde(serialize_with = "ser_slack")]
    pub slack: Option<i64>,
    pub vacuous: bool,
    /// Only for theorems with a restricted range of `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_scope: Option<bool>,
}

fn ser_reg<S: Serializer>(v: &Option<i64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_i64(*r),
        None => s.serialize_str("-inf"),
    }
}

fn ser_slack<S: Serializer>(v: &Option<i64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_i64(*r),
        None => s.serialize_str("vacuous"),
    }
}

impl BoundRow {
    pub fn new(k: usize, reg: Option<i64>, bound: Option<i64>, in_scope: Option<bool>) -> Self {
        let slack = match (reg, bound) {
            (Some(r), Some(b)) => Some(b - r),
            _ => None,
        };
        Self {
            k,
            reg,
            bound,
            slack,
            vacuous: slack.is_none(),
            in_scope,
        }
    }

    /// A failed inequality that the theorem actually claims.
    pub fn violates(&self) -> bool {
        self.in_scope != Some(false) && self.slack.is_some_and(|s| s < 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub char: u64,
    pub vars: Vec<String>,
}

impl RingJson {
    pub fn of(ring: &Ring) -> Self {
        Self {
            char: ring.characteristic() as u64,
            vars: ring.variables().to_vec(),
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        RingSpec::new(self.char, self.vars.iter().cloned())
    }
}

/// A presentation as generator twists and relation columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub twists: Vec<i64>,
    pub relations: Vec<Vec<String>>,
}

impl ModuleJson {
    pub fn of(m: &ModulePresentation) -> Self {
        Self {
            twists: m.generators().twists().to_vec(),
            relations: m
                .relations()
                .columns()
                .iter()
                .map(|c| c.iter().map(Polynomial::to_string).collect())
                .collect(),
        }
    }

    pub fn to_presentation(&self, ring: &Ring) -> Result<ModulePresentation> {
        let gens = GradedFreeModule::new(self.twists.clone());
        let mut cols = Vec::with_capacity(self.relations.len());
        for col in &self.relations {
            if col.len() != self.twists.len() {
                return Err(Error::LengthMismatch {
                    expected: self.twists.len(),
                    got: col.len(),
                });
            }
            cols.push(
                col.iter()
                    .map(|s| parse_polynomial(s, ring))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        ModulePresentation::from_parts(ring, gens, cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ModuleField {
    Presented(ModuleJson),
    Free(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub case_id: String,
    pub ring: RingJson,
    pub ideal: Vec<String>,
    pub module: ModuleField,
    pub theorem: TheoremId,
    pub preconditions: BTreeMap<String, bool>,
    pub rows: Vec<BoundRow>,
    pub duality_checked: Option<bool>,
    pub oracle_checked: Option<bool>,
    pub reg_cross_checked: Option<bool>,
    pub verdict: Verdict,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        id: &str,
        x: &GeneratorList,
        module: Option<&ModulePresentation>,
        theorem: TheoremId,
        preconditions: BTreeMap<String, bool>,
        rows: Vec<BoundRow>,
        duality_checked: Option<bool>,
        oracle_checked: Option<bool>,
        reg_cross_checked: Option<bool>,
        preconditions_hold: bool,
    ) -> Self {
        let verdict = if !preconditions_hold {
            Verdict::PreconditionFailed
        } else if rows.iter().any(BoundRow::violates) {
            Verdict::Violation
        } else {
            Verdict::Verified
        };
        Self {
            schema_version: SCHEMA_VERSION,
            case_id: id.to_string(),
            ring: RingJson::of(x.ring()),
            ideal: x.elements().iter().map(Polynomial::to_string).collect(),
            module: module.map_or(ModuleField::Free("S"), |m| ModuleField::Presented(ModuleJson::of(m))),
            theorem,
            preconditions,
            rows,
            duality_checked,
            oracle_checked,
            reg_cross_checked,
            verdict,
        }
    }

    /// Rows that hold for a trivial reason.
    pub fn vacuous_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.vacuous).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
