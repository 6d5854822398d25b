//! Laurent polynomials with integer coefficients and Hilbert series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::Monomial;

/// `Σ c_k t^(low + k)` with no zero coefficients at either end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(k: i64, c: BigInt) -> Self {
        Self::new(k, vec![c])
    }

    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.normalize();
        p
    }

    /// Builds from small integer coefficients, lowest degree first.
    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        if self.is_zero() {
            return if sign < 0 { other.neg() } else { other.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high)
            .map(|k| {
                let b = other.coeff(k);
                self.coeff(k) + if sign < 0 { -b } else { b }
            })
            .collect();
        Self::new(low, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.low + other.low, coeffs)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `1 - t^w`.
    pub fn one_minus_power(w: u32) -> Self {
        Self::one().sub(&Self::monomial(i64::from(w), BigInt::one()))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by `1 - t^w`, if it exists.
    pub fn div_one_minus_power(&self, w: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let w = w as usize;
        let len = self.coeffs.len().checked_sub(w)?;
        let mut q: Vec<BigInt> = Vec::with_capacity(len);
        for k in 0..len {
            let prev = if k >= w { q[k - w].clone() } else { BigInt::zero() };
            q.push(&self.coeffs[k] + prev);
        }
        let q = Self::new(self.low, q);
        (q.mul(&Self::one_minus_power(w as u32)) == *self).then_some(q)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            match (a.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => write!(f, "{var}")?,
                (false, false) => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / ∏ (1 - t^w)` over the ring's variable weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: LaurentPolynomial,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPolynomial, weights: Vec<u32>) -> Self {
        HilbertSeries { numerator, weights }
    }

    pub fn zero(weights: Vec<u32>) -> Self {
        Self::new(LaurentPolynomial::zero(), weights)
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn denominator(&self) -> LaurentPolynomial {
        self.weights.iter().fold(LaurentPolynomial::one(), |acc, &w| acc.mul(&LaurentPolynomial::one_minus_power(w)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weights, other.weights, "Hilbert series over different rings");
        Self::new(self.numerator.add(&other.numerator), self.weights.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.weights, other.weights, "Hilbert series over different rings");
        Self::new(self.numerator.sub(&other.numerator), self.weights.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.numerator.neg(), self.weights.clone())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.numerator.shift(k), self.weights.clone())
    }

    /// Series coefficients of `t^from ..= t^to`.
    pub fn coefficients(&self, from: i64, to: i64) -> Vec<BigInt> {
        if to < from {
            return Vec::new();
        }
        let start = self.numerator.low().min(from);
        let len = (to - start + 1) as usize;
        let mut c: Vec<BigInt> = (0..len).map(|i| self.numerator.coeff(start + i as i64)).collect();
        for &w in &self.weights {
            let w = w as usize;
            for i in w..len {
                let prev = c[i - w].clone();
                c[i] += prev;
            }
        }
        c.split_off((from - start) as usize)
    }

    /// The series itself when it is a Laurent polynomial (finite length).
    pub fn as_polynomial(&self) -> Option<LaurentPolynomial> {
        self.weights.iter().try_fold(self.numerator.clone(), |acc, &w| acc.div_one_minus_power(w))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den: Vec<String> = self
            .weights
            .iter()
            .map(|&w| if w == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{w})") })
            .collect();
        if den.is_empty() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / {}", self.numerator, den.join("*"))
        }
    }
}

fn weighted(weights: &[u32], m: &Monomial) -> i64 {
    m.exponents().iter().zip(weights).map(|(&e, &w)| i64::from(e) * i64::from(w)).sum()
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `R / (gens)` for a monomial ideal,
/// by pivoting: `N(L) = N(L + p) + t^deg(p) N(L : p)`.
pub(crate) fn monomial_numerator(weights: &[u32], gens: &[Monomial]) -> LaurentPolynomial {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return LaurentPolynomial::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return LaurentPolynomial::zero();
    }
    let support = |m: &Monomial| m.exponents().iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|g| support(g) == 1) {
        return gens.iter().fold(LaurentPolynomial::one(), |acc, g| {
            acc.sub(&acc.shift(weighted(weights, g)))
        });
    }
    let n = weights.len();
    let var = (0..n)
        .max_by_key(|&i| (gens.iter().filter(|g| support(g) > 1 && g.exponents()[i] > 0).count(), std::cmp::Reverse(i)))
        .expect("nonempty ring");
    let mut exps: Vec<u32> =
        gens.iter().filter(|g| support(g) > 1).map(|g| g.exponents()[var]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut v = vec![0; n];
    v[var] = e;
    let p = Monomial::from_exponents(&v);
    let mut sum = gens.clone();
    sum.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&p)).collect();
    monomial_numerator(weights, &sum).add(&monomial_numerator(weights, &colon).shift(weighted(weights, &p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn laurent_arithmetic() {
        let a = LaurentPolynomial::from_i64(-1, &[1, 0, 2]);
        assert_eq!(a.to_string(), "t^-1 + 2*t");
        assert_eq!(a.sub(&a), LaurentPolynomial::zero());
        let sq = LaurentPolynomial::one_minus_power(1).mul(&LaurentPolynomial::one_minus_power(1));
        assert_eq!(sq, LaurentPolynomial::from_i64(0, &[1, -2, 1]));
        assert_eq!(sq.div_one_minus_power(1), Some(LaurentPolynomial::one_minus_power(1)));
        assert_eq!(LaurentPolynomial::one().div_one_minus_power(1), None);
    }

    #[test]
    fn staircase_numerators() {
        // origin of A^2
        assert_eq!(monomial_numerator(&[1, 1], &[m(&[1, 0]), m(&[0, 1])]), LaurentPolynomial::from_i64(0, &[1, -2, 1]));
        // (x^2, xy, y^2): series 1 + 2t
        let n = monomial_numerator(&[1, 1], &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        let hs = HilbertSeries::new(n, vec![1, 1]);
        assert_eq!(hs.as_polynomial(), Some(LaurentPolynomial::from_i64(0, &[1, 2])));
        assert_eq!(monomial_numerator(&[1], &[m(&[0])]), LaurentPolynomial::zero());
    }

    #[test]
    fn series_expansion() {
        let hs = HilbertSeries::new(LaurentPolynomial::one(), vec![1, 1]);
        let c: Vec<i64> = hs.coefficients(0, 4).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(c, vec![1, 2, 3, 4, 5]);
        let w = HilbertSeries::new(LaurentPolynomial::one(), vec![2]);
        let c: Vec<i64> = w.coefficients(-1, 4).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(c, vec![0, 1, 0, 1, 0, 1]);
    }
}
