//! 2-periodic complexes of graded free modules and the operations on them.

mod bounded;
mod frame;
mod subquotient;

pub use bounded::BoundedComplex;
pub use subquotient::SubquotientComplex;

pub(crate) use frame::{align, Frame};
pub(crate) use subquotient::combine;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{check_homogeneous, infer_degree, GradedFreeModule, Matrix, ModuleMap, PresentedModule};
use crate::ring::{same_ring, Ideal, Ring};

/// The two components of a 2-periodic complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }

    /// Parity of an integer degree.
    pub fn of(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

/// `E_+ ⇄ E_-` with `d_- ∘ d_+ = 0` and `d_+ ∘ d_- = 0` modulo the base ideal.
#[derive(Clone, Debug)]
pub struct TwoPeriodicComplex<C: Field> {
    frame: Frame<C>,
    base: Ideal<C>,
}

fn sum_ideals<C: Field>(a: &Ideal<C>, b: &Ideal<C>) -> Result<Ideal<C>> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    a.sum(b)
}

pub(crate) fn check_square_zero<C: Field>(frame: &Frame<C>, base: &Ideal<C>) -> Result<()> {
    for (which, m) in [
        ("d_minus * d_plus", frame.d_minus.mul(&frame.d_plus)),
        ("d_plus * d_minus", frame.d_plus.mul(&frame.d_minus)),
    ] {
        if let Some((row, col, value)) = m.first_nonzero_mod(base) {
            return Err(Error::NotSquareZero { which: which.into(), row, col, value: value.to_string() });
        }
    }
    Ok(())
}

impl<C: Field> TwoPeriodicComplex<C> {
    /// Checks shapes, homogeneity and `d ∘ d = 0`; degrees are inferred.
    pub fn new(plus: &GradedFreeModule, minus: &GradedFreeModule, d_plus: Matrix<C>, d_minus: Matrix<C>) -> Result<Self> {
        Self::with_base(&Ideal::zero(plus.ring()), plus, minus, d_plus, d_minus)
    }

    /// As [`TwoPeriodicComplex::new`], with `d ∘ d = 0` checked modulo `base`.
    pub fn with_base(
        base: &Ideal<C>,
        plus: &GradedFreeModule,
        minus: &GradedFreeModule,
        d_plus: Matrix<C>,
        d_minus: Matrix<C>,
    ) -> Result<Self> {
        let p = infer_degree(&d_plus, plus.twists(), minus.twists()).unwrap_or(0);
        let q = infer_degree(&d_minus, minus.twists(), plus.twists()).unwrap_or(0);
        Self::with_degrees(base, plus, minus, d_plus, d_minus, p, q)
    }

    /// As [`TwoPeriodicComplex::with_base`] with explicit differential degrees.
    pub fn with_degrees(
        base: &Ideal<C>,
        plus: &GradedFreeModule,
        minus: &GradedFreeModule,
        d_plus: Matrix<C>,
        d_minus: Matrix<C>,
        p: i64,
        q: i64,
    ) -> Result<Self> {
        let ring = plus.ring();
        if !same_ring(ring, minus.ring()) || !same_ring(ring, base.ring()) || !same_ring(ring, d_plus.ring()) {
            return Err(Error::MixedRings);
        }
        let plus_map = ModuleMap::new(plus, minus, d_plus, p)?;
        let minus_map = ModuleMap::new(minus, plus, d_minus, q)?;
        let frame = Frame {
            plus: plus.clone(),
            minus: minus.clone(),
            d_plus: plus_map.matrix().clone(),
            d_minus: minus_map.matrix().clone(),
            p,
            q,
        };
        check_square_zero(&frame, base)?;
        Ok(TwoPeriodicComplex { frame, base: base.clone() })
    }

    pub(crate) fn from_frame(frame: Frame<C>, base: Ideal<C>) -> Self {
        TwoPeriodicComplex { frame, base }
    }

    pub(crate) fn frame(&self) -> &Frame<C> {
        &self.frame
    }

    pub fn zero(ring: &Ring) -> Self {
        let z = GradedFreeModule::zero(ring);
        Self::new(&z, &z, Matrix::zero(ring, 0, 0), Matrix::zero(ring, 0, 0)).expect("zero complex")
    }

    /// The fold of `R` in degree 0.
    pub fn unit(ring: &Ring) -> Self {
        BoundedComplex::single(&GradedFreeModule::free(ring, 1)).fold()
    }

    pub fn ring(&self) -> &Ring {
        self.frame.ring()
    }

    pub fn plus(&self) -> &GradedFreeModule {
        &self.frame.plus
    }

    pub fn minus(&self) -> &GradedFreeModule {
        &self.frame.minus
    }

    pub fn d_plus(&self) -> &Matrix<C> {
        &self.frame.d_plus
    }

    pub fn d_minus(&self) -> &Matrix<C> {
        &self.frame.d_minus
    }

    /// Degrees `(p, q)` of `d_+` and `d_-`.
    pub fn degrees(&self) -> (i64, i64) {
        (self.frame.p, self.frame.q)
    }

    pub fn base(&self) -> &Ideal<C> {
        &self.base
    }

    pub fn module(&self, parity: Parity) -> &GradedFreeModule {
        self.frame.module(parity)
    }

    pub fn differential(&self, parity: Parity) -> &Matrix<C> {
        self.frame.differential(parity)
    }

    pub fn is_zero(&self) -> bool {
        self.plus().rank() == 0 && self.minus().rank() == 0
    }

    /// `[1]`: swaps the components and negates both differentials.
    pub fn shift(&self) -> Self {
        TwoPeriodicComplex { frame: self.frame.shift(), base: self.base.clone() }
    }

    /// Adds constants to the twists of `E_+` and `E_-`.
    pub fn retwist(&self, s_plus: i64, s_minus: i64) -> Self {
        TwoPeriodicComplex { frame: self.frame.retwist(s_plus, s_minus), base: self.base.clone() }
    }

    /// `E ⊗ F` with components `E_+F_+ ⊕ E_-F_-` and `E_+F_- ⊕ E_-F_+`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::MixedRings);
        }
        let (frame, _) = self.frame.tensor(&other.frame)?;
        Ok(TwoPeriodicComplex { frame, base: sum_ideals(&self.base, &other.base)? })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.frame.clone(), other.frame.clone());
        align(&mut a, &mut b)?;
        let frame = Frame {
            plus: a.plus.direct_sum(&b.plus),
            minus: a.minus.direct_sum(&b.minus),
            d_plus: a.d_plus.direct_sum(&b.d_plus),
            d_minus: a.d_minus.direct_sum(&b.d_minus),
            p: a.p,
            q: a.q,
        };
        Ok(TwoPeriodicComplex { frame, base: sum_ideals(&self.base, &other.base)? })
    }

    /// The pullback to `R / J`: entries reduced and `J` added to the base.
    pub fn restrict(&self, ideal: &Ideal<C>) -> Result<Self> {
        let base = sum_ideals(&self.base, ideal)?;
        let mut frame = self.frame.clone();
        frame.d_plus = frame.d_plus.reduce(&base);
        frame.d_minus = frame.d_minus.reduce(&base);
        Ok(TwoPeriodicComplex { frame, base })
    }

    /// The same complex over a ring extending this one by appended variables.
    pub fn embed(&self, target: &Ring) -> Self {
        TwoPeriodicComplex { frame: self.frame.embed(target), base: self.base.embed(target) }
    }

    /// `(H_+, H_-)`.
    pub fn homology(&self) -> Result<(PresentedModule<C>, PresentedModule<C>)> {
        SubquotientComplex::from_free(self).homology()
    }

    /// `(H_+, H_-)` of `E ⊗ Υ(G)`.
    pub fn homology_with(&self, coefficients: &PresentedModule<C>) -> Result<(PresentedModule<C>, PresentedModule<C>)> {
        self.with_coefficients(coefficients)?.homology()
    }

    /// `E ⊗ Υ(G)`.
    pub fn with_coefficients(&self, coefficients: &PresentedModule<C>) -> Result<SubquotientComplex<C>> {
        SubquotientComplex::from_free(self).tensor(&SubquotientComplex::fold_module(coefficients))
    }

    /// True when both homology modules (with optional coefficients) are
    /// supported on `V(ideal)`.
    pub fn is_cohomologically_acyclic_off(&self, ideal: &Ideal<C>, coefficients: Option<&PresentedModule<C>>) -> Result<bool> {
        let (hp, hm) = match coefficients {
            Some(g) => self.homology_with(g)?,
            None => self.homology()?,
        };
        Ok(hp.is_supported_on(ideal) && hm.is_supported_on(ideal))
    }
}

impl<C: Field> PartialEq for TwoPeriodicComplex<C> {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.base == other.base
    }
}

impl<C: Field> fmt::Display for TwoPeriodicComplex<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "plus {} minus {} dplus {} dminus {}",
            self.plus(),
            self.minus(),
            self.d_plus(),
            self.d_minus()
        )?;
        if !self.base.is_zero() {
            let gens: Vec<String> = self.base.gens().iter().map(|g| g.to_string()).collect();
            write!(f, " base {}", gens.join(", "))?;
        }
        Ok(())
    }
}

/// A homogeneous map of 2-periodic complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap<C: Field> {
    source: TwoPeriodicComplex<C>,
    target: TwoPeriodicComplex<C>,
    f_plus: Matrix<C>,
    f_minus: Matrix<C>,
    degree: i64,
}

impl<C: Field> ChainMap<C> {
    /// Checks shapes, homogeneity and `f ∘ d = d ∘ f` modulo both base ideals.
    pub fn new(source: &TwoPeriodicComplex<C>, target: &TwoPeriodicComplex<C>, f_plus: Matrix<C>, f_minus: Matrix<C>) -> Result<Self> {
        let degree = infer_degree(&f_plus, source.plus().twists(), target.plus().twists())
            .or_else(|| infer_degree(&f_minus, source.minus().twists(), target.minus().twists()))
            .unwrap_or(0);
        Self::with_degree(source, target, f_plus, f_minus, degree)
    }

    pub fn with_degree(
        source: &TwoPeriodicComplex<C>,
        target: &TwoPeriodicComplex<C>,
        f_plus: Matrix<C>,
        f_minus: Matrix<C>,
        degree: i64,
    ) -> Result<Self> {
        if f_plus.rows() != target.plus().rank()
            || f_plus.cols() != source.plus().rank()
            || f_minus.rows() != target.minus().rank()
            || f_minus.cols() != source.minus().rank()
        {
            return Err(Error::Shape("chain map blocks do not match the complexes".into()));
        }
        check_homogeneous(&f_plus, source.plus().twists(), target.plus().twists(), degree)?;
        check_homogeneous(&f_minus, source.minus().twists(), target.minus().twists(), degree)?;
        let base = sum_ideals(source.base(), target.base())?;
        let lhs = f_minus.mul(source.d_plus()).sub(&target.d_plus().mul(&f_plus));
        if let Some((i, j, v)) = lhs.first_nonzero_mod(&base) {
            return Err(Error::NotChainMap(format!("f_- d_+ - d_+ f_+ has entry ({i}, {j}) = {v}")));
        }
        let lhs = f_plus.mul(source.d_minus()).sub(&target.d_minus().mul(&f_minus));
        if let Some((i, j, v)) = lhs.first_nonzero_mod(&base) {
            return Err(Error::NotChainMap(format!("f_+ d_- - d_- f_- has entry ({i}, {j}) = {v}")));
        }
        Ok(ChainMap { source: source.clone(), target: target.clone(), f_plus, f_minus, degree })
    }

    pub fn identity(e: &TwoPeriodicComplex<C>) -> Self {
        let ring = e.ring();
        Self::with_degree(e, e, Matrix::identity(ring, e.plus().rank()), Matrix::identity(ring, e.minus().rank()), 0)
            .expect("identity is a chain map")
    }

    pub fn zero(source: &TwoPeriodicComplex<C>, target: &TwoPeriodicComplex<C>) -> Self {
        let ring = source.ring();
        let fp = Matrix::zero(ring, target.plus().rank(), source.plus().rank());
        let fm = Matrix::zero(ring, target.minus().rank(), source.minus().rank());
        Self::with_degree(source, target, fp, fm, 0).expect("zero is a chain map")
    }

    pub fn source(&self) -> &TwoPeriodicComplex<C> {
        &self.source
    }

    pub fn target(&self) -> &TwoPeriodicComplex<C> {
        &self.target
    }

    pub fn f_plus(&self) -> &Matrix<C> {
        &self.f_plus
    }

    pub fn f_minus(&self) -> &Matrix<C> {
        &self.f_minus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
}

/// A mapping cone with the maps of its degreewise split sequence
/// `0 → B → Cone(f) → A[1] → 0`.
#[derive(Clone, Debug)]
pub struct Cone<C: Field> {
    pub cone: TwoPeriodicComplex<C>,
    /// `A[1]`, retwisted so that the projection has degree 0.
    pub shifted_source: TwoPeriodicComplex<C>,
    pub inclusion: ChainMap<C>,
    pub projection: ChainMap<C>,
}

/// `Cone(f)_± = B_± ⊕ A_∓` with differential `[[d_B, f], [0, -d_A]]`.
pub fn cone<C: Field>(f: &ChainMap<C>) -> Result<Cone<C>> {
    let (mut a, mut b) = (f.source.frame.clone(), f.target.frame.clone());
    align(&mut a, &mut b)?;
    let ring = a.ring().clone();
    let phi = f.degree;
    let sigma = phi - b.p;
    let tau = phi - b.q;
    let a_minus = a.minus.shifted(sigma);
    let a_plus = a.plus.shifted(tau);
    let frame = Frame {
        plus: b.plus.direct_sum(&a_minus),
        minus: b.minus.direct_sum(&a_plus),
        d_plus: Matrix::block(&b.d_plus, &f.f_minus, &Matrix::zero(&ring, a.plus.rank(), b.plus.rank()), &a.d_minus.neg()),
        d_minus: Matrix::block(&b.d_minus, &f.f_plus, &Matrix::zero(&ring, a.minus.rank(), b.minus.rank()), &a.d_plus.neg()),
        p: b.p,
        q: b.q,
    };
    let base = sum_ideals(f.source.base(), f.target.base())?;
    check_square_zero(&frame, &base)?;
    let cone = TwoPeriodicComplex { frame, base: base.clone() };
    let shifted = TwoPeriodicComplex { frame: a.shift().retwist(sigma, tau), base };
    let (bp, bm) = (b.plus.rank(), b.minus.rank());
    let (am, ap) = (a.minus.rank(), a.plus.rank());
    let inclusion = ChainMap::with_degree(
        &f.target,
        &cone,
        Matrix::block(&Matrix::identity(&ring, bp), &Matrix::zero(&ring, bp, 0), &Matrix::zero(&ring, am, bp), &Matrix::zero(&ring, am, 0)),
        Matrix::block(&Matrix::identity(&ring, bm), &Matrix::zero(&ring, bm, 0), &Matrix::zero(&ring, ap, bm), &Matrix::zero(&ring, ap, 0)),
        0,
    )?;
    let projection = ChainMap::with_degree(
        &cone,
        &shifted,
        Matrix::block(&Matrix::zero(&ring, am, bp), &Matrix::identity(&ring, am), &Matrix::zero(&ring, 0, bp), &Matrix::zero(&ring, 0, am)),
        Matrix::block(&Matrix::zero(&ring, ap, bm), &Matrix::identity(&ring, ap), &Matrix::zero(&ring, 0, bm), &Matrix::zero(&ring, 0, ap)),
        0,
    )?;
    Ok(Cone { cone, shifted_source: shifted, inclusion, projection })
}

/// Maps `h_+ : E_+ → E_-` and `h_- : E_- → E_+` against the differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy<C: Field> {
    pub h_plus: Matrix<C>,
    pub h_minus: Matrix<C>,
}

impl<C: Field> Homotopy<C> {
    /// The standard contraction `[[0, 0], [1, 0]]` of `Cone(id_X)`.
    pub fn cone_of_identity(x: &TwoPeriodicComplex<C>) -> Self {
        let ring = x.ring();
        let (n, m) = (x.plus().rank(), x.minus().rank());
        let h = |a: usize, b: usize| {
            Matrix::block(&Matrix::zero(ring, b, a), &Matrix::zero(ring, b, b), &Matrix::identity(ring, a), &Matrix::zero(ring, a, b))
        };
        Homotopy { h_plus: h(n, m), h_minus: h(m, n) }
    }
}

/// True when `d h + h d = id` on both components (modulo the base ideal).
pub fn check_contraction<C: Field>(e: &TwoPeriodicComplex<C>, h: &Homotopy<C>) -> bool {
    let (n, m) = (e.plus().rank(), e.minus().rank());
    if (h.h_plus.rows(), h.h_plus.cols(), h.h_minus.rows(), h.h_minus.cols()) != (m, n, n, m) {
        return false;
    }
    let ring = e.ring();
    let on_plus = e.d_minus().mul(&h.h_plus).add(&h.h_minus.mul(e.d_plus())).sub(&Matrix::identity(ring, n));
    let on_minus = e.d_plus().mul(&h.h_minus).add(&h.h_plus.mul(e.d_minus())).sub(&Matrix::identity(ring, m));
    on_plus.first_nonzero_mod(e.base()).is_none() && on_minus.first_nonzero_mod(e.base()).is_none()
}

/// A contraction of `E ⊗ F` from a contraction `h` of `E`:
/// `h'_+ = [[0, h_-⊗1], [-h_+⊗1, 0]]`, `h'_- = [[0, -h_-⊗1], [h_+⊗1, 0]]`.
pub fn tensor_contraction<C: Field>(e: &TwoPeriodicComplex<C>, h: &Homotopy<C>, f: &TwoPeriodicComplex<C>) -> Result<Homotopy<C>> {
    if !check_contraction(e, h) {
        return Err(Error::NotContraction);
    }
    let ring = e.ring();
    let (ep, em, fp, fm) = (e.plus().rank(), e.minus().rank(), f.plus().rank(), f.minus().rank());
    let id = |k: usize| Matrix::identity(ring, k);
    let h_plus = Matrix::block(
        &Matrix::zero(ring, ep * fm, ep * fp),
        &h.h_minus.kron(&id(fm)),
        &h.h_plus.kron(&id(fp)).neg(),
        &Matrix::zero(ring, em * fp, em * fm),
    );
    let h_minus = Matrix::block(
        &Matrix::zero(ring, ep * fp, ep * fm),
        &h.h_minus.kron(&id(fp)).neg(),
        &h.h_plus.kron(&id(fm)),
        &Matrix::zero(ring, em * fm, em * fp),
    );
    let out = Homotopy { h_plus, h_minus };
    if !check_contraction(&e.tensor(f)?, &out) {
        return Err(Error::NotContraction);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
