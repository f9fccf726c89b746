//! Term-list representation of free-module elements used inside the Gröbner routines.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::poly::{degrevlex, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub comp: usize,
    pub coeff: u32,
}

/// Module monomial order: term-over-position degrevlex, optionally refined by an elimination
/// block. Components `< split` dominate every component `>= split`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub split: usize,
}

impl ModuleOrder {
    pub const TOP: ModuleOrder = ModuleOrder { split: 0 };

    pub fn eliminating(split: usize) -> Self {
        Self { split }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: usize, bm: &Monomial, bc: usize) -> Ordering {
        if self.split > 0 {
            let ba = ac >= self.split;
            let bb = bc >= self.split;
            if ba != bb {
                return bb.cmp(&ba);
            }
        }
        match degrevlex(am, bm) {
            Ordering::Equal => bc.cmp(&ac),
            o => o,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mon, a.comp, &b.mon, b.comp)
    }
}

/// Sorted (descending) list of terms with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn from_unsorted(mut terms: Vec<Term>, order: &ModuleOrder) -> Self {
        terms.retain(|t| t.coeff != 0);
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        debug_assert!(terms
            .windows(2)
            .all(|w| order.cmp_terms(&w[0], &w[1]) == Ordering::Greater));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn make_monic(&mut self, f: PrimeField) {
        if let Some(lead) = self.terms.first() {
            if lead.coeff != 1 {
                let inv = f.inv(lead.coeff);
                for t in &mut self.terms {
                    t.coeff = f.mul(t.coeff, inv);
                }
            }
        }
    }

    /// `self - c * m * other`, assuming `m * other` keeps `other`'s term order.
    pub fn sub_scaled(&self, other: &Vector, c: u32, m: &Monomial, order: &ModuleOrder, f: PrimeField) -> Vector {
        self.sub_scaled_from(0, other, c, m, order, f)
    }

    /// Like [`Vector::sub_scaled`] but skipping the first `skip` terms of `self`, which the
    /// caller knows are all greater than `m * other`'s lead.
    pub fn sub_scaled_from(
        &self,
        skip: usize,
        other: &Vector,
        c: u32,
        m: &Monomial,
        order: &ModuleOrder,
        f: PrimeField,
    ) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() - skip + other.terms.len());
        out.extend_from_slice(&self.terms[..skip]);
        let mut i = skip;
        let mut shifted = other.terms.iter().map(|t| Term {
            mon: t.mon.mul(m),
            comp: t.comp,
            coeff: f.neg(f.mul(c, t.coeff)),
        });
        let mut next = shifted.next();
        while let Some(b) = next.take() {
            if i >= self.terms.len() {
                out.push(b);
                out.extend(shifted);
                break;
            }
            let a = &self.terms[i];
            match order.cmp_terms(a, &b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                    next = Some(b);
                }
                Ordering::Less => {
                    out.push(b);
                    next = shifted.next();
                }
                Ordering::Equal => {
                    let s = f.add(a.coeff, b.coeff);
                    if s != 0 {
                        out.push(Term {
                            mon: b.mon,
                            comp: b.comp,
                            coeff: s,
                        });
                    }
                    i += 1;
                    next = shifted.next();
                }
            }
        }
        if i < self.terms.len() {
            out.extend_from_slice(&self.terms[i..]);
        }
        Vector { terms: out }
    }
}
