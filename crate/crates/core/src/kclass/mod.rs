//! Localized classes `[H_+] - [H_-]`, Gysin maps along a parameter, and the
//! identities they satisfy.

mod deformation;
mod pushforward;

pub use deformation::{deformation_family, DeformationFamily};
pub use pushforward::{proper_pushforward_check, pushforward_closed, pushforward_finite, FiniteExtension};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{kernel, subquotient_with, HilbertSeries, LaurentPolynomial, Length, PresentedModule, Vector};
use crate::ring::{Ideal, Polynomial, Ring};
use crate::two_periodic::{cone, BoundedComplex, ChainMap, SubquotientComplex, TwoPeriodicComplex};

/// `[H_+] - [H_-]` represented by its Hilbert series (when the ring is graded)
/// and its length (when both sides have finite length).
#[derive(Clone, Debug)]
pub struct KClass<C: Field> {
    support: Ideal<C>,
    series: Option<HilbertSeries>,
    length: Option<i64>,
}

impl<C: Field> KClass<C> {
    pub fn zero(support: &Ideal<C>) -> Self {
        KClass {
            support: support.clone(),
            series: graded(support.ring()).then(|| HilbertSeries::zero(support.ring().weights().to_vec())),
            length: Some(0),
        }
    }

    /// `Σ [plus] - Σ [minus]`, after checking every module is supported on `V(support)`.
    pub fn from_modules(plus: &[PresentedModule<C>], minus: &[PresentedModule<C>], support: &Ideal<C>) -> Result<Self> {
        let mut class = Self::zero(support);
        for (parity, modules) in [('+', plus), ('-', minus)] {
            for m in modules {
                if let Some(g) = m.unsupported_generator(support) {
                    return Err(Error::SupportViolation { parity, generator: g.to_string() });
                }
                let term = Self::of_module(m, support)?;
                class = if parity == '+' { class.add(&term) } else { class.sub(&term) };
            }
        }
        Ok(class)
    }

    fn of_module(m: &PresentedModule<C>, support: &Ideal<C>) -> Result<Self> {
        let series = if graded(m.ring()) { Some(m.hilbert_series()?) } else { None };
        let length = match m.length() {
            Length::Finite(n) => i64::try_from(n).ok(),
            Length::Infinite => None,
        };
        Ok(KClass { support: support.clone(), series, length })
    }

    pub fn support(&self) -> &Ideal<C> {
        &self.support
    }

    /// The Hilbert series difference, absent over rings with a live parameter.
    pub fn series(&self) -> Option<&HilbertSeries> {
        self.series.as_ref()
    }

    /// Numerator over `∏ (1 - t^{w_i})`.
    pub fn numerator(&self) -> Option<&LaurentPolynomial> {
        self.series.as_ref().map(|s| s.numerator())
    }

    /// The series as a Laurent polynomial, when it is one.
    pub fn polynomial(&self) -> Option<LaurentPolynomial> {
        self.series.as_ref().and_then(|s| s.as_polynomial())
    }

    /// Length difference, when both sides have finite length.
    pub fn length(&self) -> Option<i64> {
        self.length
    }

    pub fn is_zero(&self) -> bool {
        self.series.as_ref().is_none_or(|s| s.numerator().is_zero()) && self.length.is_none_or(|l| l == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        KClass {
            support: self.support.clone(),
            series: self.series.as_ref().zip(other.series.as_ref()).map(|(a, b)| a.add(b)),
            length: self.length.zip(other.length).map(|(a, b)| a + b),
        }
    }

    pub fn neg(&self) -> Self {
        KClass { support: self.support.clone(), series: self.series.as_ref().map(|s| s.neg()), length: self.length.map(|l| -l) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

fn graded(ring: &Ring) -> bool {
    !ring.has_live_parameter()
}

impl<C: Field> PartialEq for KClass<C> {
    /// Equal representatives; the support ideal is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series && self.length == other.length
    }
}

impl<C: Field> fmt::Display for KClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.series {
            Some(s) => write!(f, "series {s}")?,
            None => write!(f, "series UNAVAILABLE")?,
        }
        match self.length {
            Some(l) => write!(f, "; length {l}"),
            None => write!(f, "; length UNAVAILABLE"),
        }
    }
}

/// Both sides of an identity between classes.
#[derive(Clone, Debug)]
pub struct Verdict<C: Field> {
    pub lhs: KClass<C>,
    pub rhs: KClass<C>,
}

impl<C: Field> Verdict<C> {
    /// Series agree, and lengths agree wherever both are available.
    pub fn holds(&self) -> bool {
        self.lhs.series == self.rhs.series && self.lhs.length.zip(self.rhs.length).is_none_or(|(a, b)| a == b)
    }
}

/// The class of a (subquotient) complex's homology.
pub fn complex_class<C: Field>(e: &SubquotientComplex<C>, support: &Ideal<C>) -> Result<KClass<C>> {
    let (hp, hm) = e.homology()?;
    KClass::from_modules(&[hp], &[hm], support)
}

/// `h(E)(G) = [H_+(E ⊗ Υ(G))] - [H_-(E ⊗ Υ(G))]`.
pub fn localized_class<C: Field>(e: &TwoPeriodicComplex<C>, coefficients: &PresentedModule<C>, support: &Ideal<C>) -> Result<KClass<C>> {
    complex_class(&e.with_coefficients(coefficients)?, support)
}

/// `class(Cone f) = class(B) + class(A[1])` for `f : A → B`.
pub fn class_additivity_check<C: Field>(f: &ChainMap<C>, coefficients: &PresentedModule<C>, support: &Ideal<C>) -> Result<Verdict<C>> {
    let c = cone(f)?;
    let lhs = localized_class(&c.cone, coefficients, support)?;
    let b = localized_class(f.target(), coefficients, support)?;
    let a1 = localized_class(&c.shifted_source, coefficients, support)?;
    Ok(Verdict { lhs, rhs: b.add(&a1) })
}

/// `E ⊗ Υ(R[t] --(t-λ)--> R[t])`, with `t` the variable at index `t`.
pub fn gysin_fiber<C: Field>(e: &TwoPeriodicComplex<C>, t: usize, lambda: &C) -> Result<TwoPeriodicComplex<C>> {
    e.tensor(&slice_complex(e.ring(), t, lambda)?)
}

pub(crate) fn slice_complex<C: Field>(ring: &Ring, t: usize, lambda: &C) -> Result<TwoPeriodicComplex<C>> {
    if t >= ring.nvars() || !ring.is_parameter(t) {
        return Err(Error::Invalid(format!("variable {t} is not a deformation parameter")));
    }
    let f = Polynomial::var(ring, t).sub(&Polynomial::constant(ring, lambda.clone()));
    let r = crate::module::GradedFreeModule::free(ring, 1);
    Ok(BoundedComplex::new(-1, vec![r.clone(), r], vec![crate::module::Matrix::scalar(ring, 1, &f)])?.fold())
}

/// Pieces `(t-λ)^i M / (t-λ)^{i+1} M` of a module killed by a power of
/// `t - λ`, specialised to `t = λ`.
pub fn fiber_pieces<C: Field>(m: &PresentedModule<C>, t: usize, lambda: &C) -> Result<Vec<PresentedModule<C>>> {
    const MAX_POWER: u32 = 64;
    let ring = m.ring();
    let f = Polynomial::var(ring, t).sub(&Polynomial::constant(ring, lambda.clone()));
    let n = m.ngens();
    let ambient = m.ambient();
    let mut out = Vec::new();
    let mut power = Polynomial::one(ring);
    for _ in 0..MAX_POWER {
        if m.is_killed_by(&power) {
            return Ok(out);
        }
        let next = power.mul(&f);
        let gens: Vec<Vector<C>> = (0..n).map(|i| scaled_unit(ring, n, i, &power)).collect();
        let img: Vec<Vector<C>> = (0..n).map(|i| scaled_unit(ring, n, i, &next)).collect();
        let piece = subquotient_with(&ambient, &gens, &[], &with_relations(&img, m.relations()))?;
        out.push(piece.specialize(t, lambda)?);
        power = next;
    }
    Err(Error::NotAnnihilated(format!("({f})^{MAX_POWER}")))
}

fn scaled_unit<C: Field>(ring: &Ring, n: usize, i: usize, p: &Polynomial<C>) -> Vector<C> {
    let mut v = vec![Polynomial::zero(ring); n];
    v[i] = p.clone();
    v
}

fn with_relations<C: Field>(a: &[Vector<C>], b: &[Vector<C>]) -> Vec<Vector<C>> {
    let mut out = a.to_vec();
    out.extend(b.iter().cloned());
    out
}

/// The class over `R` of a complex over `R[t]` whose homology is killed by a
/// power of `t - λ`.
pub fn fiber_class<C: Field>(e: &SubquotientComplex<C>, t: usize, lambda: &C, support: &Ideal<C>) -> Result<KClass<C>> {
    let (hp, hm) = e.homology()?;
    KClass::from_modules(&fiber_pieces(&hp, t, lambda)?, &fiber_pieces(&hm, t, lambda)?, support)
}

/// `M / tM` and `ann_M(t)`, both specialised to `t = 0`.
pub fn koszul_gysin_pieces<C: Field>(m: &PresentedModule<C>, t: usize) -> Result<(PresentedModule<C>, PresentedModule<C>)> {
    let ring = m.ring();
    let n = m.ngens();
    let tv = Polynomial::var(ring, t);
    let ambient = m.ambient();
    let units: Vec<Vector<C>> = (0..n).map(|i| scaled_unit(ring, n, i, &Polynomial::one(ring))).collect();
    let t_units: Vec<Vector<C>> = (0..n).map(|i| scaled_unit(ring, n, i, &tv)).collect();
    let quotient = subquotient_with(&ambient, &units, &[], &with_relations(&t_units, m.relations()))?;
    let torsion: Vec<Vector<C>> = if n == 0 { Vec::new() } else { kernel(ring, m.twists(), &t_units, m.relations()) };
    let annihilated = subquotient_with(&ambient, &torsion, &[], m.relations())?;
    let zero = C::zero();
    Ok((quotient.specialize(t, &zero)?, annihilated.specialize(t, &zero)?))
}

/// `0^!([H_+(E)] - [H_-(E)])` against `[H_±(0^! E)]` for `E` over `R[t]`;
/// `support` lives in `R`.
pub fn gysin_commutes_check<C: Field>(e: &TwoPeriodicComplex<C>, t: usize, support: &Ideal<C>) -> Result<Verdict<C>> {
    let (hp, hm) = e.homology()?;
    let (qp, ap) = koszul_gysin_pieces(&hp, t)?;
    let (qm, am) = koszul_gysin_pieces(&hm, t)?;
    let lhs = KClass::from_modules(&[qp, am], &[ap, qm], support)?;
    let zero = C::zero();
    let rhs = fiber_class(&SubquotientComplex::from_free(&gysin_fiber(e, t, &zero)?), t, &zero, support)?;
    Ok(Verdict { lhs, rhs })
}

/// `h(E¹ ⊗ E²)(G)` against `h(E²)(H_+(E¹ ⊗ Υ(G))) - h(E²)(H_-(E¹ ⊗ Υ(G)))`.
pub fn multiplicativity_check<C: Field>(
    first: &TwoPeriodicComplex<C>,
    second: &TwoPeriodicComplex<C>,
    coefficients: &PresentedModule<C>,
    inner_support: &Ideal<C>,
    support: &Ideal<C>,
) -> Result<Verdict<C>> {
    let lhs = localized_class(&first.tensor(second)?, coefficients, support)?;
    let (hp, hm) = first.homology_with(coefficients)?;
    KClass::from_modules(std::slice::from_ref(&hp), std::slice::from_ref(&hm), inner_support)?;
    let rhs = localized_class(second, &hp, support)?.sub(&localized_class(second, &hm, support)?);
    Ok(Verdict { lhs, rhs })
}

/// Adjoins a fresh deformation parameter `t` of weight 0.
pub fn with_parameter(ring: &Ring) -> Result<(Ring, usize)> {
    let name = ring.fresh_name("t");
    Ok((ring.extend(&[name], &[0], &[true])?, ring.nvars()))
}

#[cfg(test)]
mod tests;
