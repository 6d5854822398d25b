//! Sparse polynomials with exact coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{same_ring, Monomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial: terms sorted strictly descending in the ring order, no
/// zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<C: Field> {
    ring: Ring,
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, C::from_i64(n))
    }

    pub fn term(ring: &Ring, c: C, m: Monomial) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, C::one(), Monomial::var(ring.nvars(), i))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.clone() + &c;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, C)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(C::zero))
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// Weighted degree of a homogeneous polynomial; `None` for zero or
    /// inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.clone() - &b[j].1 } else { a[i].1.clone() + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.clone() * c)).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) => self.scale(&(C::one() / c)),
            None => self.clone(),
        }
    }

    /// Substitutes `value` for variable `var`, landing in `target`, the ring
    /// with that variable removed.
    pub fn specialize(&self, var: usize, value: &C, target: &Ring) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff * value;
            }
            let mut exps = m.0.clone();
            exps.remove(var);
            terms.push((Monomial(exps), coeff));
        }
        Self::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` of `target`.
    pub fn map_into(&self, target: &Ring, var_map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(target.nvars());
                for (i, &x) in m.0.iter().enumerate() {
                    e.0[var_map[i]] += x;
                }
                (e, c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Embeds into a ring that extends this one by appended variables.
    pub fn embed(&self, target: &Ring) -> Self {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_into(target, &map)
    }

    /// Parses the grammar `term (('+'|'-') term)*` with
    /// `term = [coeff] ['*'] var['^'nat] ('*' var['^'nat])*`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        Parser { ring, src: text.as_bytes(), pos: 0 }.polynomial()
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            if self.pos == start && self.src[self.pos].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn polynomial<C: Field>(mut self) -> Result<Polynomial<C>> {
        let mut terms = Vec::new();
        let mut sign = false;
        match self.peek() {
            Some(b'-') => {
                sign = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (m, mut c) = self.term::<C>()?;
            if sign {
                c = -c;
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = true;
                    self.pos += 1;
                }
                Some(ch) => return self.err(format!("unexpected character {:?}", ch as char)),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term<C: Field>(&mut self) -> Result<(Monomial, C)> {
        let mut coeff = C::one();
        let mut mono = Monomial::one(self.ring.nvars());
        let mut expect_factor = true;
        if let Some(n) = self.number() {
            let mut d = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                match self.number() {
                    Some(x) if !x.is_zero() => d = x,
                    Some(_) => return self.err("zero denominator"),
                    None => return self.err("expected denominator"),
                }
            }
            coeff = match C::from_ratio(&n, &d) {
                Some(c) => c,
                None => return self.err("coefficient out of range"),
            };
            if self.peek() == Some(b'*') {
                self.pos += 1;
                expect_factor = true;
            } else {
                return Ok((mono, coeff));
            }
        }
        loop {
            let at = self.pos;
            let Some(name) = self.ident() else {
                if expect_factor {
                    return self.err("expected a variable or a number");
                }
                break;
            };
            let Some(i) = self.ring.var_index(name) else {
                self.pos = at;
                self.skip_ws();
                return self.err(format!("unknown variable {name}"));
            };
            let mut e: u32 = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                e = match self.number().and_then(|n| u32::try_from(n).ok()) {
                    Some(e) => e,
                    None => return self.err("expected a natural exponent"),
                };
            }
            mono.0[i] += e;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                expect_factor = true;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }
}

fn fmt_coeff<C: Field>(c: &C) -> String {
    let (n, d) = c.abs().to_ratio();
    if d == BigInt::one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

impl<C: Field> fmt::Display for Polynomial<C> {
    /// Canonical form: descending terms, reduced fractions, explicit `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = c.abs().is_one();
            if m.is_one() {
                write!(f, "{}", fmt_coeff(c))?;
            } else if unit {
                write!(f, "{}", self.ring.fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(c), self.ring.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::Q;

    fn p(r: &Ring, s: &str) -> Polynomial<Q> {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = PolyRing::standard(&["x", "y"]);
        assert_eq!(p(&r, "y^2 + x*y - 1/2").to_string(), "x*y + y^2 - 1/2");
        assert_eq!(p(&r, "-3/6*x^2*y + 2").to_string(), "-1/2*x^2*y + 2");
        assert_eq!(p(&r, "x - x").to_string(), "0");
        assert_eq!(p(&r, "0").to_string(), "0");
        assert_eq!(p(&r, "2*x*x").to_string(), "2*x^2");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let r = PolyRing::standard(&["x", "y"]);
        let e = Polynomial::<Q>::parse(&r, "x + z").unwrap_err();
        assert_eq!(e, Error::Parse { column: 5, message: "unknown variable z".into() });
        assert!(Polynomial::<Q>::parse(&r, "x +").is_err());
        assert!(Polynomial::<Q>::parse(&r, "1/0").is_err());
        assert!(Polynomial::<Q>::parse(&r, "x y").is_err());
    }

    #[test]
    fn arithmetic() {
        let r = PolyRing::standard(&["x", "y"]);
        let a = p(&r, "x + y");
        let b = p(&r, "x - y");
        assert_eq!(a.mul(&b), p(&r, "x^2 - y^2"));
        assert_eq!(a.pow(3), p(&r, "x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
        assert_eq!(a.sub(&a), Polynomial::zero(&r));
        assert_eq!(a.homogeneous_degree(), Some(1));
        assert_eq!(p(&r, "x + 1").homogeneous_degree(), None);
    }

    #[test]
    fn specialize_and_embed() {
        let r = PolyRing::with_parameters(&["x", "t"], &[1, 0], &[false, true], Default::default()).unwrap();
        let base = r.without_var(1);
        let f = p(&r, "x*t^2 - 3*x*t + x");
        assert_eq!(f.specialize(1, &Q::from_i64(1), &base), Polynomial::parse(&base, "-x").unwrap());
        let g = Polynomial::<Q>::parse(&base, "x^2").unwrap();
        assert_eq!(g.embed(&r), p(&r, "x^2"));
    }
}
