//! Homogeneous Buchberger algorithm on term vectors.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::vector::{ModuleOrder, Term, Vector};
use crate::field::PrimeField;
use crate::poly::Monomial;

/// Free module `⊕ S(-twist_i)` together with the order used on it.
#[derive(Clone, Debug)]
pub(crate) struct Ambient {
    pub field: PrimeField,
    pub twists: Vec<i64>,
    pub order: ModuleOrder,
}

impl Ambient {
    pub fn term_degree(&self, t: &Term) -> i64 {
        t.mon.degree() as i64 + self.twists[t.comp]
    }

    pub fn degree(&self, v: &Vector) -> Option<i64> {
        v.lead().map(|t| self.term_degree(t))
    }
}

/// Leading-term index: basis elements grouped by leading component.
struct LeadIndex {
    by_comp: Vec<Vec<usize>>,
}

impl LeadIndex {
    fn new(rank: usize) -> Self {
        Self {
            by_comp: vec![Vec::new(); rank],
        }
    }

    fn push(&mut self, comp: usize, idx: usize) {
        self.by_comp[comp].push(idx);
    }

    fn find_divisor<'a>(&self, basis: &'a [Vector], t: &Term) -> Option<(&'a Vector, Monomial)> {
        for &k in &self.by_comp[t.comp] {
            let lead = &basis[k].terms[0];
            if let Some(q) = lead.mon.quotient_of(&t.mon) {
                return Some((&basis[k], q));
            }
        }
        None
    }
}

/// Full reduction of `v` by a set of monic vectors whose leads are indexed by `index`.
fn reduce_with(amb: &Ambient, basis: &[Vector], index: &LeadIndex, v: Vector) -> Vector {
    let f = amb.field;
    let mut work = v;
    // terms before `pos` are irreducible and final
    let mut pos = 0;
    while pos < work.terms.len() {
        let t = &work.terms[pos];
        match index.find_divisor(basis, t) {
            Some((g, q)) => {
                let c = t.coeff;
                work = work.sub_scaled_from(pos, g, c, &q, &amb.order, f);
            }
            None => pos += 1,
        }
    }
    work
}

/// Reduces `v` fully against `basis` (monic, arbitrary leads).
pub(crate) fn normal_form(amb: &Ambient, basis: &[Vector], v: Vector) -> Vector {
    let mut index = LeadIndex::new(amb.twists.len());
    for (k, g) in basis.iter().enumerate() {
        if let Some(l) = g.lead() {
            index.push(l.comp, k);
        }
    }
    reduce_with(amb, basis, &index, v)
}

/// S-vector of two monic vectors with the same leading component.
pub(crate) fn s_vector(amb: &Ambient, a: &Vector, b: &Vector) -> Vector {
    let la = &a.terms[0];
    let lb = &b.terms[0];
    let l = la.mon.lcm(&lb.mon);
    let qa = la.mon.quotient_of(&l).expect("lcm");
    let qb = lb.mon.quotient_of(&l).expect("lcm");
    let scaled_a = Vector::default().sub_scaled(a, amb.field.neg(1), &qa, &amb.order, amb.field);
    scaled_a.sub_scaled(b, 1, &qb, &amb.order, amb.field)
}

/// Computes a reduced Gröbner basis of the submodule generated by homogeneous `gens`.
///
/// Pairs are processed degree by degree (normal selection strategy). The chain criterion is
/// applied always; the coprime-leads criterion only in rank one, where it is valid.
///
/// Under an eliminating order no pairs are formed between two elements leading in the
/// eliminated block. The elements leading in the first block are then a reduced Gröbner
/// basis of the projected module, and those leading in the second block generate (without
/// forming a Gröbner basis) the intersection with the second block.
pub(crate) fn groebner_basis(amb: &Ambient, gens: Vec<Vector>) -> Vec<Vector> {
    let f = amb.field;
    let rank = amb.twists.len();
    let split = amb.order.split;
    let product_criterion = rank == 1 && split == 0;

    let mut pending_gens: Vec<(i64, Vector)> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| (amb.degree(&g).unwrap(), g))
        .collect();
    pending_gens.sort_by_key(|(d, _)| Reverse(*d));

    let mut basis: Vec<Vector> = Vec::new();
    let mut index = LeadIndex::new(rank);
    let mut heap: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();
    let mut pending_pairs: HashSet<(usize, usize)> = HashSet::new();

    loop {
        let next_pair = heap.peek().map(|Reverse((d, _, _))| *d);
        let next_gen = pending_gens.last().map(|(d, _)| *d);
        let d = match (next_pair, next_gen) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };

        let mut candidates: Vec<Vector> = Vec::new();
        while let Some(Reverse((pd, i, j))) = heap.peek().copied() {
            if pd != d {
                break;
            }
            heap.pop();
            pending_pairs.remove(&(i, j));
            if chain_criterion(&basis, &index, &pending_pairs, i, j) {
                continue;
            }
            candidates.push(s_vector(amb, &basis[i], &basis[j]));
        }
        while pending_gens.last().is_some_and(|(gd, _)| *gd == d) {
            candidates.push(pending_gens.pop().unwrap().1);
        }

        for c in candidates {
            let mut r = reduce_with(amb, &basis, &index, c);
            if r.is_zero() {
                continue;
            }
            r.make_monic(f);
            let new = basis.len();
            let lead = r.terms[0].clone();
            let pairs: &[usize] = if split > 0 && lead.comp >= split {
                &[]
            } else {
                &index.by_comp[lead.comp]
            };
            for &k in pairs {
                let lk = &basis[k].terms[0];
                if product_criterion && lk.mon.is_coprime(&lead.mon) {
                    continue;
                }
                let l = lk.mon.lcm(&lead.mon);
                let pd = l.degree() as i64 + amb.twists[lead.comp];
                heap.push(Reverse((pd, k, new)));
                pending_pairs.insert((k, new));
            }
            index.push(lead.comp, new);
            basis.push(r);
        }
    }

    if split == 0 {
        return interreduce(amb, basis);
    }
    let (first, second): (Vec<Vector>, Vec<Vector>) = basis.into_iter().partition(|v| v.terms[0].comp < split);
    let mut out = interreduce(amb, first);
    out.extend(second);
    out
}

fn chain_criterion(basis: &[Vector], index: &LeadIndex, pending: &HashSet<(usize, usize)>, i: usize, j: usize) -> bool {
    let li = &basis[i].terms[0];
    let lj = &basis[j].terms[0];
    let l = li.mon.lcm(&lj.mon);
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    index.by_comp[li.comp].iter().any(|&k| {
        k != i
            && k != j
            && basis[k].terms[0].mon.divides(&l)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

/// Removes redundant leads and tail-reduces; input must be a Gröbner basis of monic vectors.
fn interreduce(amb: &Ambient, basis: Vec<Vector>) -> Vec<Vector> {
    let mut keep: Vec<Vector> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = &g.terms[0];
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            let lh = &h.terms[0];
            m != k && lh.comp == lg.comp && lh.mon.divides(&lg.mon) && (lh.mon != lg.mon || m < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // Every term of a homogeneous vector in the lead's component has the lead's monomial
    // degree, so a vector's own lead never divides its tail and the full index is safe.
    let mut index = LeadIndex::new(amb.twists.len());
    for (k, g) in keep.iter().enumerate() {
        index.push(g.terms[0].comp, k);
    }
    let mut out = Vec::with_capacity(keep.len());
    for g in &keep {
        let tail = Vector {
            terms: g.terms[1..].to_vec(),
        };
        let tail = reduce_with(amb, &keep, &index, tail);
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail.terms);
        out.push(Vector { terms });
    }
    out.sort_by(|a, b| amb.order.cmp_terms(&b.terms[0], &a.terms[0]));
    out
}
