//! Deformation of a 2-periodic complex to its homology over the affine line.

use super::{complex_class, fiber_class, slice_complex, with_parameter, KClass};
use crate::error::Result;
use crate::field::Field;
use crate::module::{kernel, Matrix, Vector};
use crate::ring::{Ideal, Polynomial, Ring};
use crate::two_periodic::{combine, Frame, Parity, SubquotientComplex};

/// The family `𝒜 = ker(f : B[t] → I[t])` together with its fiber classes.
#[derive(Clone, Debug)]
pub struct DeformationFamily<C: Field> {
    /// `R[t]`; the parameter is the last variable.
    pub ring: Ring,
    pub family: SubquotientComplex<C>,
    /// `C = Cone(I[1] → K)`, whose homology is that of `A`.
    pub central: SubquotientComplex<C>,
    pub central_class: KClass<C>,
    pub original_class: KClass<C>,
    /// `(λ, class of λ^! 𝒜)`, starting with `λ = 0`.
    pub fibers: Vec<(C, KClass<C>)>,
}

impl<C: Field> DeformationFamily<C> {
    /// `class(0^! 𝒜) = class(C)` and `class(λ^! 𝒜) = class(A)` for `λ ≠ 0`.
    pub fn endpoints_agree(&self) -> bool {
        self.fibers.iter().all(|(l, c)| if l.is_zero() { *c == self.central_class } else { *c == self.original_class })
    }
}

fn pad<C: Field>(ring: &Ring, v: &[Polynomial<C>], before: usize, after: usize) -> Vector<C> {
    let mut out = vec![Polynomial::zero(ring); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat_with(|| Polynomial::zero(ring)).take(after));
    out
}

/// `F_± ⊕ F_∓` with the second block retwisted so that `[[D, id], [0, 0]]`
/// has the degrees of `A`.
fn doubled_frame<C: Field>(a: &Frame<C>, d_plus: Matrix<C>, d_minus: Matrix<C>) -> Frame<C> {
    let ring = a.ring();
    let (np, nm) = (a.plus.rank(), a.minus.rank());
    let id = |n: usize| Matrix::identity(ring, n);
    Frame {
        plus: a.plus.direct_sum(&a.minus.shifted(-a.p)),
        minus: a.minus.direct_sum(&a.plus.shifted(-a.q)),
        d_plus: Matrix::block(&d_plus, &id(nm), &Matrix::zero(ring, np, np), &Matrix::zero(ring, np, nm)),
        d_minus: Matrix::block(&d_minus, &id(np), &Matrix::zero(ring, nm, nm), &Matrix::zero(ring, nm, np)),
        p: a.p,
        q: a.q,
    }
}

fn doubled_relations<C: Field>(a: &SubquotientComplex<C>, parity: Parity) -> Vec<Vector<C>> {
    let ring = a.ring();
    let (n, m) = (a.ambient(parity).rank(), a.ambient(parity.flip()).rank());
    let mut out: Vec<Vector<C>> = a.zero_part(parity).iter().map(|v| pad(ring, v, 0, m)).collect();
    out.extend(a.zero_part(parity.flip()).iter().map(|v| pad(ring, v, n, 0)));
    out
}

/// `𝒜_± = {(a, y) ∈ A_±[t] ⊕ I_±[t] : d_± a = t y}` for `A` with homology
/// supported on `V(support)`; fibers are computed at `0` and each of `lambdas`.
pub fn deformation_family<C: Field>(a: &SubquotientComplex<C>, support: &Ideal<C>, lambdas: &[C]) -> Result<DeformationFamily<C>> {
    let base_ring = a.ring().clone();
    let original_class = complex_class(a, support)?;

    let frame = a.frame().clone();
    let zero_d = |p: Parity| Matrix::zero(&base_ring, frame.module(p.flip()).rank(), frame.module(p).rank());
    let central_frame = doubled_frame(&frame, zero_d(Parity::Plus), zero_d(Parity::Minus));
    let mut central_gens: [Vec<Vector<C>>; 2] = [Vec::new(), Vec::new()];
    for (k, parity) in [Parity::Plus, Parity::Minus].into_iter().enumerate() {
        let (n, m) = (frame.module(parity).rank(), frame.module(parity.flip()).rank());
        central_gens[k] = a.cycles(parity).iter().map(|v| pad(&base_ring, v, 0, m)).collect();
        central_gens[k].extend(a.boundaries_from(parity).iter().map(|v| pad(&base_ring, v, n, 0)));
    }
    let central = SubquotientComplex::from_parts(
        central_frame,
        central_gens,
        [doubled_relations(a, Parity::Plus), doubled_relations(a, Parity::Minus)],
        a.base().clone(),
    );
    let central_class = complex_class(&central, support)?;

    let (ring, t) = with_parameter(&base_ring)?;
    let lifted = a.embed(&ring);
    let lframe = lifted.frame().clone();
    let tv = Polynomial::var(&ring, t);
    let mut gens: [Vec<Vector<C>>; 2] = [Vec::new(), Vec::new()];
    for (k, parity) in [Parity::Plus, Parity::Minus].into_iter().enumerate() {
        let src = lifted.generators(parity);
        let images = lifted.boundaries_from(parity);
        let target = lframe.module(parity.flip());
        let mut columns: Vec<Vector<C>> = images.clone();
        columns.extend(images.iter().map(|v| v.iter().map(|p| p.mul(&tv).neg()).collect::<Vector<C>>()));
        let (n, m) = (lframe.module(parity).rank(), target.rank());
        for c in kernel(&ring, target.twists(), &columns, &lifted.zero_part(parity.flip())) {
            let (cs, cy) = c.split_at(src.len());
            let mut v = combine(&ring, cs, src, n);
            v.extend(combine(&ring, cy, &images, m));
            gens[k].push(v);
        }
    }
    let family = SubquotientComplex::from_parts(
        doubled_frame(&lframe, lframe.d_plus.clone(), lframe.d_minus.clone()),
        gens,
        [doubled_relations(&lifted, Parity::Plus), doubled_relations(&lifted, Parity::Minus)],
        lifted.base().clone(),
    );

    let mut fibers = Vec::with_capacity(lambdas.len() + 1);
    for lambda in std::iter::once(C::zero()).chain(lambdas.iter().cloned()) {
        let slice = SubquotientComplex::from_free(&slice_complex(&ring, t, &lambda)?);
        let class = fiber_class(&family.tensor(&slice)?, t, &lambda, support)?;
        fibers.push((lambda, class));
    }
    Ok(DeformationFamily { ring, family, central, central_class, original_class, fibers })
}
