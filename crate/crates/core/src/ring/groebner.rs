//! Buchberger's algorithm on vectors of polynomials.
//!
//! Ideals are the rank-one case. Vectors are compared position-over-term:
//! a lower position index is larger, ties broken by the ring order.

use std::cmp::Ordering;
use std::collections::HashSet;


use super::{Monomial, PolyRing};
use crate::field::Field;

/// Sparse vector of polynomials: `(position, monomial, coefficient)` terms,
/// strictly descending.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SVec<C: Field> {
    pub terms: Vec<(usize, Monomial, C)>,
}

pub(crate) fn term_cmp(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp(a.1, b.1))
}

impl<C: Field> SVec<C> {
    pub fn zero() -> Self {
        SVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_pos(&self) -> usize {
        self.terms[0].0
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, _, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = C::one() / c;
                for t in &mut self.terms {
                    t.2 = t.2.clone() * &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * g`.
    pub fn sub_scaled(&self, ring: &PolyRing, c: &C, m: &Monomial, g: &SVec<C>) -> SVec<C> {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].1.mul(m);
            match term_cmp(ring, (a[i].0, &a[i].1), (b[j].0, &bm)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, bm, -(b[j].2.clone() * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].2.clone() - &(b[j].2.clone() * c);
                    if !v.is_zero() {
                        out.push((a[i].0, bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, t.1.mul(m), -(t.2.clone() * c)));
        }
        SVec { terms: out }
    }
}

fn find_reducer<'a, C: Field>(basis: &'a [SVec<C>], pos: usize, m: &Monomial) -> Option<&'a SVec<C>> {
    basis.iter().find(|g| {
        let (gp, gm, _) = &g.terms[0];
        *gp == pos && gm.divides(m)
    })
}

/// Full reduction of `f` by `basis` (every term of the result is irreducible).
pub(crate) fn reduce<C: Field>(ring: &PolyRing, f: &SVec<C>, basis: &[SVec<C>]) -> SVec<C> {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((pos, m, c)) = p.terms.first() {
        match find_reducer(basis, *pos, m) {
            Some(g) => {
                let (_, gm, gc) = &g.terms[0];
                let q = gm.quotient_of(m);
                let coef = c.clone() / gc;
                p = p.sub_scaled(ring, &coef, &q, g);
            }
            None => rem.push(p.terms.remove(0)),
        }
    }
    SVec { terms: rem }
}

fn s_vector<C: Field>(ring: &PolyRing, f: &SVec<C>, g: &SVec<C>) -> SVec<C> {
    let (_, fm, fc) = &f.terms[0];
    let (_, gm, gc) = &g.terms[0];
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l);
    let b = gm.quotient_of(&l);
    let fa = SVec::zero().sub_scaled(ring, &(-(C::one() / fc)), &a, f);
    fa.sub_scaled(ring, &(C::one() / gc), &b, g)
}

/// Reduced Gröbner basis of the submodule generated by `input`.
///
/// `pos_degrees` shifts the degree of each position when choosing the next
/// pair (normal strategy); it only affects speed.
pub(crate) fn groebner<C: Field>(ring: &PolyRing, input: Vec<SVec<C>>, pos_degrees: Option<&[i64]>) -> Vec<SVec<C>> {
    let ideal_case = input.iter().all(|v| v.terms.iter().all(|t| t.0 == 0));
    let mut basis: Vec<SVec<C>> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(i64, usize, usize)> = Vec::new();

    let key = |basis: &[SVec<C>], i: usize, j: usize| -> i64 {
        let (p, a, _) = &basis[i].terms[0];
        let (_, b, _) = &basis[j].terms[0];
        ring.weighted_degree(&a.lcm(b)) + pos_degrees.map_or(0, |d| d.get(*p).copied().unwrap_or(0))
    };

    let push = |g: SVec<C>, basis: &mut Vec<SVec<C>>, queue: &mut Vec<(i64, usize, usize)>, pending: &mut HashSet<(usize, usize)>| {
        let idx = basis.len();
        let pos = g.lead_pos();
        basis.push(g);
        for i in 0..idx {
            if basis[i].lead_pos() == pos {
                queue.push((key(basis, i, idx), i, idx));
                pending.insert((i, idx));
            }
        }
    };

    for f in input {
        let r = reduce(ring, &f, &basis);
        if !r.is_zero() {
            push(r.monic(), &mut basis, &mut queue, &mut pending);
        }
    }

    while !queue.is_empty() {
        let mut best = 0;
        for k in 1..queue.len() {
            if (queue[k].0, queue[k].2, queue[k].1) < (queue[best].0, queue[best].2, queue[best].1) {
                best = k;
            }
        }
        let (_, i, j) = queue.swap_remove(best);
        pending.remove(&(i, j));
        let (_, mi, _) = &basis[i].terms[0];
        let (pj, mj, _) = &basis[j].terms[0];
        if ideal_case && mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pk, mk, _) = &basis[k].terms[0];
            pk == pj
                && mk.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_vector(ring, &basis[i], &basis[j]);
        let r = reduce(ring, &s, &basis);
        if !r.is_zero() {
            push(r.monic(), &mut basis, &mut queue, &mut pending);
        }
    }
    interreduce(ring, basis)
}

fn interreduce<C: Field>(ring: &PolyRing, basis: Vec<SVec<C>>) -> Vec<SVec<C>> {
    let mut keep: Vec<SVec<C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (gp, gm, _) = &g.terms[0];
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let (hp, hm, _) = &h.terms[0];
            k != i && hp == gp && hm.divides(gm) && (hm != gm || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<SVec<C>> = keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
        let head = SVec { terms: vec![keep[i].terms[0].clone()] };
        let tail = SVec { terms: keep[i].terms[1..].to_vec() };
        let mut red = reduce(ring, &tail, &others);
        let mut terms = head.terms;
        terms.append(&mut red.terms);
        out.push(SVec { terms }.monic());
    }
    out.sort_by(|a, b| {
        let (ap, am, _) = &a.terms[0];
        let (bp, bm, _) = &b.terms[0];
        term_cmp(ring, (*bp, bm), (*ap, am))
    });
    out
}

