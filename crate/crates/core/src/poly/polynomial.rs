use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{degrevlex, Monomial};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Sparse polynomial over `F_p`. Terms are stored in descending degrevlex order with
/// nonzero coefficients, which makes the representation canonical.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn variable(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Common total degree of all terms, `None` when terms disagree.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let Some((first, _)) = self.terms.first() else {
            return Err(Error::ZeroPolynomial);
        };
        let d = first.degree();
        Ok(self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || matches!(self.homogeneous_degree(), Ok(Some(_)))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let b_coeff = |c: u32| if negate_other { f.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match degrevlex(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), b_coeff(*cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(*ca, b_coeff(*cb));
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), b_coeff(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c.is_multiple_of(f.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.neg(*a))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of a given monomial.
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| degrevlex(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }
}

/// Binary operation selector for [`poly_arithmetic`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Scale(u32),
}

/// Applies one arithmetic operation, checking that operands share a ring.
pub fn poly_arithmetic(a: &Polynomial, op: ArithOp<'_>) -> Result<Polynomial> {
    match op {
        ArithOp::Add(b) => a.try_add(b),
        ArithOp::Sub(b) => a.try_sub(b),
        ArithOp::Mul(b) => a.try_mul(b),
        ArithOp::Scale(c) => Ok(a.scale(c)),
    }
}

macro_rules! impl_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

impl_op!(Add, add, try_add);
impl_op!(Sub, sub, try_sub);
impl_op!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending degrevlex, coefficients as least nonnegative residues,
    /// explicit `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};

    fn p(ring: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = RingSpec::new(32003, ["x", "y"]).unwrap();
        let a = p(&r, "x + y");
        let b = p(&r, "x - y");
        assert_eq!(&a * &b, p(&r, "x^2 - y^2"));
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = RingSpec::new(2, ["x", "y"]).unwrap();
        let a = p(&r, "x + y");
        assert_eq!(&a * &a, p(&r, "x^2 + y^2"));
    }

    #[test]
    fn additive_identity_and_scale() {
        let r = RingSpec::new(7, ["x", "y"]).unwrap();
        let x = p(&r, "x");
        assert_eq!(&x + &Polynomial::zero(&r), x);
        assert!(x.scale(7).is_zero());
        assert_eq!(poly_arithmetic(&x, ArithOp::Scale(3)).unwrap(), p(&r, "3*x"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = RingSpec::new(7, ["x", "y"]).unwrap();
        let r2 = RingSpec::new(11, ["x", "y"]).unwrap();
        assert_eq!(p(&r1, "x").try_add(&p(&r2, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn homogeneity() {
        let r = RingSpec::new(32003, ["x", "y", "z"]).unwrap();
        assert_eq!(p(&r, "x^2 + y*z").homogeneous_degree(), Ok(Some(2)));
        assert_eq!(p(&r, "x + y^2").homogeneous_degree(), Ok(None));
        assert_eq!(p(&r, "5").homogeneous_degree(), Ok(Some(0)));
        assert_eq!(Polynomial::zero(&r).homogeneous_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_display() {
        let r = RingSpec::new(7, ["x", "y", "z"]).unwrap();
        let f = p(&r, "3*y*z + x^2 - 1");
        assert_eq!(f.to_string(), "x^2 + 3*y*z + 6");
    }
}
