use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};

/// Default characteristic for generated examples.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// A standard-graded polynomial ring `F_p[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    field: PrimeField,
    variables: Vec<String>,
}

pub type Ring = Arc<RingSpec>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<S: Into<String>>(characteristic: u64, variables: impl IntoIterator<Item = S>) -> Result<Ring> {
        if characteristic == 0 {
            return Err(Error::CharacteristicZero);
        }
        if characteristic >= 1 << 31 || !is_prime(characteristic as u32) {
            return Err(Error::InvalidRing(format!(
                "characteristic {characteristic} is not a prime below 2^31"
            )));
        }
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Self {
            field: PrimeField::new(characteristic as u32),
            variables,
        }))
    }

    /// `F_32003` on the given variables.
    pub fn with_default_field<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Ring> {
        Self::new(DEFAULT_CHARACTERISTIC as u64, variables)
    }

    /// Variables `x1..xn`, or `x, y, z, w` for `n <= 4`.
    pub fn standard(characteristic: u64, n: usize) -> Result<Ring> {
        const SHORT: [&str; 4] = ["x", "y", "z", "w"];
        if n <= 4 {
            Self::new(characteristic, SHORT[..n].iter().copied())
        } else {
            Self::new(characteristic, (1..=n).map(|i| format!("x{i}")))
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert_eq!(RingSpec::new(0, ["x"]), Err(Error::CharacteristicZero));
        assert!(RingSpec::new(4, ["x"]).is_err());
        assert!(RingSpec::new(7, Vec::<String>::new()).is_err());
        assert!(RingSpec::new(7, ["x", "x"]).is_err());
        assert!(RingSpec::new(7, ["1x"]).is_err());
        assert!(RingSpec::new(7, ["x_1", "Y2"]).is_ok());
    }
}
