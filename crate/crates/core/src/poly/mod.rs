//! Sparse polynomials over prime fields with the standard grading.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{degrevlex, monomial_count, monomials_of_degree, Monomial, TermOrder};
pub use parse::parse_polynomial;
pub use polynomial::{poly_arithmetic, ArithOp, Polynomial};
pub use ring::{Ring, RingSpec, DEFAULT_CHARACTERISTIC};

/// Common total degree of a nonzero polynomial, or `None` when it is not homogeneous.
pub fn homogeneous_degree(f: &Polynomial) -> crate::Result<Option<u32>> {
    f.homogeneous_degree()
}

/// Parses a homogeneous nonzero polynomial and returns it with its degree.
pub fn parse_form(text: &str, ring: &Ring) -> crate::Result<(Polynomial, u32)> {
    let f = parse_polynomial(text, ring)?;
    match f.homogeneous_degree()? {
        Some(d) => Ok((f, d)),
        None => Err(crate::Error::NotHomogeneous(text.to_string())),
    }
}
