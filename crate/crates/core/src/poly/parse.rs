//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := term { ("+"|"-") term } | "-" term { ("+"|"-") term }
//! term    := factor { "*" factor }
//! factor  := integer | primary [ "^" natural ]
//! primary := identifier | "(" expr ")"
//! ```
//!
//! Whitespace is insignificant and multiplication is always explicit.

use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    Int(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(&text[start..i])));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(&text[start..i])));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if let Some(Token::Int(digits)) = self.peek() {
            let c = self.ring.field().from_decimal(digits);
            self.pos += 1;
            if self.peek() == Some(&Token::Caret) {
                return self.error("exponent on an integer literal");
            }
            return Ok(Polynomial::constant(self.ring, c as i64));
        }
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Token::Int(digits)) => {
                    let e: u32 = digits.parse().or_else(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.error("expected a natural number exponent"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                let Some(i) = self.ring.variable_index(name) else {
                    return Err(Error::UnknownVariable(name.to_string()));
                };
                self.pos += 1;
                Ok(Polynomial::variable(self.ring, i))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`; literals are reduced mod p.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, RingSpec};

    #[test]
    fn reads_terms() {
        let r = RingSpec::new(7, ["x", "y", "z"]).unwrap();
        let f = parse_polynomial("x^2 + 3*y*z", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial::new([2, 0, 0])), 1);
        assert_eq!(f.coefficient(&Monomial::new([0, 1, 1])), 3);
    }

    #[test]
    fn cancellation_and_reduction() {
        let r = RingSpec::new(7, ["x", "y", "z"]).unwrap();
        assert!(parse_polynomial("x - x", &r).unwrap().is_zero());
        assert!(parse_polynomial("7*x", &r).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("-(x+y)^2", &r).unwrap(),
            parse_polynomial("6*x^2 + 5*x*y + 6*y^2", &r).unwrap()
        );
    }

    #[test]
    fn errors() {
        let r = RingSpec::new(7, ["x", "y"]).unwrap();
        assert_eq!(parse_polynomial("x + q", &r), Err(Error::UnknownVariable("q".into())));
        assert!(matches!(
            parse_polynomial("2xy", &r),
            Err(Error::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("x +", &r),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(parse_polynomial("(x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_polynomial("x $ y", &r),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_polynomial("2^3", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^y", &r), Err(Error::Syntax { .. })));
    }
}
