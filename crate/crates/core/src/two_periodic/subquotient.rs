//! Complexes whose terms are subquotients of free modules.

use super::{sum_ideals, Frame, Parity, TwoPeriodicComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{ideal_multiples, kernel, subquotient_with, unit_vector, zero_vector, GradedFreeModule, Matrix, PresentedModule, Vector};
use crate::ring::{Ideal, Polynomial, Ring};

/// Terms `span(S_±) / N_±` inside free modules `F_±`, with the differentials
/// of `F` restricted to them and everything taken modulo `J`.
#[derive(Clone, Debug)]
pub struct SubquotientComplex<C: Field> {
    frame: Frame<C>,
    gens: [Vec<Vector<C>>; 2],
    rels: [Vec<Vector<C>>; 2],
    base: Ideal<C>,
    free: bool,
}

fn idx(p: Parity) -> usize {
    match p {
        Parity::Plus => 0,
        Parity::Minus => 1,
    }
}

fn units<C: Field>(ring: &Ring, n: usize) -> Vec<Vector<C>> {
    (0..n).map(|i| unit_vector(ring, n, i)).collect()
}

pub(crate) fn combine<C: Field>(ring: &Ring, coeffs: &[Polynomial<C>], vectors: &[Vector<C>], len: usize) -> Vector<C> {
    let mut out = zero_vector(ring, len);
    for (a, v) in coeffs.iter().zip(vectors) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.add(&a.mul(x));
            }
        }
    }
    out
}

impl<C: Field> SubquotientComplex<C> {
    pub(crate) fn from_parts(frame: Frame<C>, gens: [Vec<Vector<C>>; 2], rels: [Vec<Vector<C>>; 2], base: Ideal<C>) -> Self {
        SubquotientComplex { frame, gens, rels, base, free: false }
    }

    /// The complex itself, with every generator kept and no relations.
    pub fn from_free(e: &TwoPeriodicComplex<C>) -> Self {
        let frame = e.frame().clone();
        let ring = frame.ring().clone();
        let gens = [units(&ring, frame.plus.rank()), units(&ring, frame.minus.rank())];
        SubquotientComplex { frame, gens, rels: [Vec::new(), Vec::new()], base: e.base().clone(), free: true }
    }

    /// `Υ(G)`: `G` in the even component, zero in the odd one.
    pub fn fold_module(g: &PresentedModule<C>) -> Self {
        let ring = g.ring().clone();
        let n = g.ngens();
        let frame = Frame {
            plus: g.ambient(),
            minus: GradedFreeModule::zero(&ring),
            d_plus: Matrix::zero(&ring, 0, n),
            d_minus: Matrix::zero(&ring, n, 0),
            p: 0,
            q: 0,
        };
        SubquotientComplex {
            frame,
            gens: [units(&ring, n), Vec::new()],
            rels: [g.relations().to_vec(), Vec::new()],
            base: Ideal::zero(&ring),
            free: g.relations().is_empty(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.frame.ring()
    }

    pub fn base(&self) -> &Ideal<C> {
        &self.base
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.frame.p, self.frame.q)
    }

    pub fn ambient(&self, parity: Parity) -> &GradedFreeModule {
        self.frame.module(parity)
    }

    pub fn generators(&self, parity: Parity) -> &[Vector<C>] {
        &self.gens[idx(parity)]
    }

    pub fn relations(&self, parity: Parity) -> &[Vector<C>] {
        &self.rels[idx(parity)]
    }

    /// The same complex over a ring extending this one by appended variables.
    pub fn embed(&self, target: &Ring) -> Self {
        let lift = |vs: &Vec<Vector<C>>| -> Vec<Vector<C>> { vs.iter().map(|v| v.iter().map(|p| p.embed(target)).collect()).collect() };
        SubquotientComplex {
            frame: self.frame.embed(target),
            gens: [lift(&self.gens[0]), lift(&self.gens[1])],
            rels: [lift(&self.rels[0]), lift(&self.rels[1])],
            base: self.base.embed(target),
            free: self.free,
        }
    }

    pub(crate) fn frame(&self) -> &Frame<C> {
        &self.frame
    }

    pub fn shift(&self) -> Self {
        SubquotientComplex {
            frame: self.frame.shift(),
            gens: [self.gens[1].clone(), self.gens[0].clone()],
            rels: [self.rels[1].clone(), self.rels[0].clone()],
            base: self.base.clone(),
            free: self.free,
        }
    }

    /// Tensor product; at least one factor must be a free complex.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !self.free && !other.free {
            return Err(Error::Invalid("tensor product of two subquotient complexes needs a free factor".into()));
        }
        let (frame, layout) = self.frame.tensor(&other.frame)?;
        let ring = frame.ring().clone();
        let lens = [frame.plus.rank(), frame.minus.rank()];
        let mut gens: [Vec<Vector<C>>; 2] = [Vec::new(), Vec::new()];
        let mut rels: [Vec<Vector<C>>; 2] = [Vec::new(), Vec::new()];
        for a in [Parity::Plus, Parity::Minus] {
            for b in [Parity::Plus, Parity::Minus] {
                let (land, _) = layout.place(a, 0, b, 0);
                let len = lens[idx(land)];
                for s in self.generators(a) {
                    for t in other.generators(b) {
                        gens[idx(land)].push(layout.tensor_vectors(&ring, a, s, b, t, len));
                    }
                }
                let other_units = units::<C>(&ring, other.ambient(b).rank());
                for n in self.relations(a) {
                    for e in &other_units {
                        rels[idx(land)].push(layout.tensor_vectors(&ring, a, n, b, e, len));
                    }
                }
                let self_units = units::<C>(&ring, self.ambient(a).rank());
                for n in other.relations(b) {
                    for e in &self_units {
                        rels[idx(land)].push(layout.tensor_vectors(&ring, a, e, b, n, len));
                    }
                }
            }
        }
        Ok(SubquotientComplex {
            frame,
            gens,
            rels,
            base: sum_ideals(&self.base, &other.base)?,
            free: self.free && other.free,
        })
    }

    /// `(H_+, H_-)`, each presented on cycles of the ambient free module.
    pub fn homology(&self) -> Result<(PresentedModule<C>, PresentedModule<C>)> {
        Ok((self.homology_at(Parity::Plus)?, self.homology_at(Parity::Minus)?))
    }

    /// `N_a + J·F_a`: everything that is zero in the term of parity `a`.
    pub(crate) fn zero_part(&self, a: Parity) -> Vec<Vector<C>> {
        let mut out = self.relations(a).to_vec();
        out.extend(ideal_multiples(&self.base, self.ambient(a).rank()));
        out
    }

    /// Generators of the cycles of parity `a`, as vectors of `F_a`.
    pub(crate) fn cycles(&self, a: Parity) -> Vec<Vector<C>> {
        let ring = self.ring();
        let (amb_a, amb_b) = (self.ambient(a), self.ambient(a.flip()));
        let gens_a = self.generators(a);
        if amb_b.rank() == 0 {
            return gens_a.to_vec();
        }
        let d_a = self.frame.differential(a);
        let columns: Vec<Vector<C>> = gens_a.iter().map(|s| d_a.apply(s)).collect();
        kernel(ring, amb_b.twists(), &columns, &self.zero_part(a.flip()))
            .iter()
            .map(|c| combine(ring, c, gens_a, amb_a.rank()))
            .collect()
    }

    /// Images of the generators of parity `a`, as vectors of `F_{-a}`.
    pub(crate) fn boundaries_from(&self, a: Parity) -> Vec<Vector<C>> {
        let d = self.frame.differential(a);
        self.generators(a).iter().map(|s| d.apply(s)).collect()
    }

    pub fn homology_at(&self, a: Parity) -> Result<PresentedModule<C>> {
        subquotient_with(self.ambient(a), &self.cycles(a), &self.boundaries_from(a.flip()), &self.zero_part(a))
    }
}
