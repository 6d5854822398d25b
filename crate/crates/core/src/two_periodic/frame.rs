//! Free modules and differentials shared by free and subquotient complexes.

use super::Parity;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{GradedFreeModule, Matrix, Vector};
use crate::ring::{Polynomial, Ring};

/// `F_+ ⇄ F_-` with `d_+` of degree `p` and `d_-` of degree `q`; nothing is
/// assumed about `d ∘ d`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Frame<C: Field> {
    pub plus: GradedFreeModule,
    pub minus: GradedFreeModule,
    pub d_plus: Matrix<C>,
    pub d_minus: Matrix<C>,
    pub p: i64,
    pub q: i64,
}

/// Offsets of the two summands of a tensor product in each parity.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    /// Ranks `(x+, x-, y+, y-)` of the factors.
    pub ranks: (usize, usize, usize, usize),
}

impl Layout {
    /// Position of `e_i ⊗ f_j` for `e_i ∈ X_a`, `f_j ∈ Y_b`, and the parity it lands in.
    pub fn place(&self, a: Parity, i: usize, b: Parity, j: usize) -> (Parity, usize) {
        let (xp, _, yp, ym) = self.ranks;
        match (a, b) {
            (Parity::Plus, Parity::Plus) => (Parity::Plus, i * yp + j),
            (Parity::Minus, Parity::Minus) => (Parity::Plus, xp * yp + i * ym + j),
            (Parity::Plus, Parity::Minus) => (Parity::Minus, i * ym + j),
            (Parity::Minus, Parity::Plus) => (Parity::Minus, xp * ym + i * yp + j),
        }
    }

    /// `v ⊗ w` placed in the tensor complex.
    pub fn tensor_vectors<C: Field>(
        &self,
        ring: &Ring,
        a: Parity,
        v: &[Polynomial<C>],
        b: Parity,
        w: &[Polynomial<C>],
        len: usize,
    ) -> Vector<C> {
        let mut out = vec![Polynomial::zero(ring); len];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in w.iter().enumerate() {
                if !y.is_zero() {
                    let (_, k) = self.place(a, i, b, j);
                    out[k] = x.mul(y);
                }
            }
        }
        out
    }
}

impl<C: Field> Frame<C> {
    pub fn ring(&self) -> &Ring {
        self.plus.ring()
    }

    pub fn module(&self, parity: Parity) -> &GradedFreeModule {
        match parity {
            Parity::Plus => &self.plus,
            Parity::Minus => &self.minus,
        }
    }

    pub fn differential(&self, parity: Parity) -> &Matrix<C> {
        match parity {
            Parity::Plus => &self.d_plus,
            Parity::Minus => &self.d_minus,
        }
    }

    /// `[1]`: swap parities, negate both differentials.
    pub fn shift(&self) -> Self {
        Frame {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
            d_plus: self.d_minus.neg(),
            d_minus: self.d_plus.neg(),
            p: self.q,
            q: self.p,
        }
    }

    /// Adds `s_plus`, `s_minus` to the twists of the two components.
    pub fn retwist(&self, s_plus: i64, s_minus: i64) -> Self {
        Frame {
            plus: self.plus.shifted(s_plus),
            minus: self.minus.shifted(s_minus),
            d_plus: self.d_plus.clone(),
            d_minus: self.d_minus.clone(),
            p: self.p - s_plus + s_minus,
            q: self.q - s_minus + s_plus,
        }
    }

    /// Tensor product with the block differentials
    /// `d_+ = [[1⊗d_+, d_-⊗1], [-d_+⊗1, 1⊗d_-]]`,
    /// `d_- = [[1⊗d_-, -d_-⊗1], [d_+⊗1, 1⊗d_+]]`.
    ///
    /// Grading requires `p_E + q_E = p_F + q_F`; the degree of a zero
    /// differential is adjusted when needed.
    pub fn tensor(&self, other: &Self) -> Result<(Self, Layout)> {
        let (mut pe, mut qe, mut pf, qf) = (self.p, self.q, other.p, other.q);
        if pe + qe != pf + qf && !other.d_minus.is_zero() {
            if other.d_plus.is_zero() {
                pf = pe + qe - qf;
            } else if self.d_minus.is_zero() {
                qe = pf + qf - pe;
            } else if self.d_plus.is_zero() {
                pe = pf + qf - qe;
            } else {
                return Err(Error::GradingMismatch(format!(
                    "degrees ({pe}, {qe}) and ({pf}, {qf}) have different sums"
                )));
            }
        }
        let s = qe - pf;
        let u = pe - pf;
        let ring = self.ring();
        let (ep, em, fp, fm) = (&self.plus, &self.minus, &other.plus, &other.minus);
        let plus = ep.tensor(fp).direct_sum(&em.tensor(fm).shifted(s));
        let minus = ep.tensor(fm).shifted(u).direct_sum(&em.tensor(fp));
        let id = |m: &GradedFreeModule| Matrix::identity(ring, m.rank());
        let d_plus = Matrix::block(
            &id(ep).kron(&other.d_plus),
            &self.d_minus.kron(&id(fm)),
            &self.d_plus.kron(&id(fp)).neg(),
            &id(em).kron(&other.d_minus),
        );
        let d_minus = Matrix::block(
            &id(ep).kron(&other.d_minus),
            &self.d_minus.kron(&id(fp)).neg(),
            &self.d_plus.kron(&id(fm)),
            &id(em).kron(&other.d_plus),
        );
        let layout = Layout { ranks: (ep.rank(), em.rank(), fp.rank(), fm.rank()) };
        Ok((Frame { plus, minus, d_plus, d_minus, p: pe, q: qe }, layout))
    }
}

/// Makes the degrees of two frames agree, moving the degree of a zero
/// differential when they differ.
pub(crate) fn align<C: Field>(a: &mut Frame<C>, b: &mut Frame<C>) -> Result<()> {
    if a.p != b.p {
        if b.d_plus.is_zero() {
            b.p = a.p;
        } else if a.d_plus.is_zero() {
            a.p = b.p;
        } else {
            return Err(Error::GradingMismatch(format!("d_+ degrees {} and {}", a.p, b.p)));
        }
    }
    if a.q != b.q {
        if b.d_minus.is_zero() {
            b.q = a.q;
        } else if a.d_minus.is_zero() {
            a.q = b.q;
        } else {
            return Err(Error::GradingMismatch(format!("d_- degrees {} and {}", a.q, b.q)));
        }
    }
    Ok(())
}

impl<C: Field> Frame<C> {
    /// The same frame over a ring extending this one by appended variables.
    pub fn embed(&self, target: &Ring) -> Self {
        Frame {
            plus: self.plus.with_ring(target),
            minus: self.minus.with_ring(target),
            d_plus: self.d_plus.map_into(target, |p| p.embed(target)),
            d_minus: self.d_minus.map_into(target, |p| p.embed(target)),
            p: self.p,
            q: self.q,
        }
    }
}
