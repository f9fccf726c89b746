use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn new(exponents: impl IntoIterator<Item = u16>) -> Self {
        Self(exponents.into_iter().collect())
    }

    pub fn one(n: usize) -> Self {
        Self(SmallVec::from_elem(0, n))
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Degree reverse lexicographic comparison; variables are ranked in ring order.
#[inline]
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable is the larger monomial
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Monomial orders. Only degree reverse lexicographic is supported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    #[default]
    Degrevlex,
}

impl TermOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(match self {
            TermOrder::Degrevlex => degrevlex(a, b),
        })
    }
}

/// All monomials of total degree `d` in `n` variables, descending in degrevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; n];
    fn rec(i: usize, left: u32, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = current.len();
        if i + 1 == n {
            current[i] = left as u16;
            out.push(Monomial::new(current.iter().copied()));
            current[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            current[i] = e as u16;
            rec(i + 1, left - e, current, out);
        }
        current[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut current, &mut out);
    out.sort_by(|a, b| degrevlex(b, a));
    out
}

/// Number of monomials of degree `d` in `n` variables, zero for negative `d`.
pub fn monomial_count(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return u64::from(d == 0);
    }
    // C(d + n - 1, n - 1)
    let k = (n - 1) as u64;
    let top = d as u64 + k;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}
