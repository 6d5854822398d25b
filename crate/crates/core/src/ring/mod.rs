//! Polynomial rings, monomials and monomial orders.

mod groebner;
mod ideal;
mod poly;

pub use ideal::{buchberger, radical_membership, Ideal};
pub use poly::Polynomial;

pub(crate) use groebner::{groebner, reduce, SVec};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Monomial orders. Both are well-orders compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted degree, then total degree, then reverse lexicographic.
    ///
    /// The total-degree tie-break keeps the order a well-order when a
    /// weight-0 parameter is present.
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Monomial colon `self : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }
}

/// A polynomial ring `k[x_1, .., x_n]` with positive weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    parameters: Vec<bool>,
    order: MonomialOrder,
}

/// Shared handle to a ring; polynomials keep one.
pub type Ring = Arc<PolyRing>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Ring with the given variables and weights; no deformation parameters.
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32], order: MonomialOrder) -> Result<Ring> {
        Self::with_parameters(names, weights, &vec![false; names.len()], order)
    }

    /// Ring with unit weights and degrevlex.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Ring {
        Self::new(names, &vec![1; names.len()], MonomialOrder::DegRevLex).expect("valid standard ring")
    }

    /// Ring where `parameters[i]` flags `x_i` as a deformation parameter;
    /// only flagged variables may carry weight 0.
    pub fn with_parameters<S: AsRef<str>>(
        names: &[S],
        weights: &[u32],
        parameters: &[bool],
        order: MonomialOrder,
    ) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if weights.len() != names.len() || parameters.len() != names.len() {
            return Err(Error::InvalidRing("one weight and one flag per variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(Error::InvalidRing(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::NameCollision(n.clone()));
            }
            if weights[i] == 0 && !parameters[i] {
                return Err(Error::InvalidRing(format!(
                    "variable {n} has weight 0 but is not a deformation parameter"
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            names,
            weights: weights.to_vec(),
            parameters: parameters.to_vec(),
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_parameter(&self, i: usize) -> bool {
        self.parameters[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when some weight-0 variable is present, so Hilbert series are undefined.
    pub fn has_live_parameter(&self) -> bool {
        self.weights.contains(&0)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| i64::from(e) * i64::from(w)).sum()
    }

    /// Compares monomials in this ring's order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => self
                .weighted_degree(a)
                .cmp(&self.weighted_degree(b))
                .then_with(|| a.total_degree().cmp(&b.total_degree()))
                .then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
        }
    }

    /// The ring with extra variables appended.
    pub fn extend<S: AsRef<str>>(&self, names: &[S], weights: &[u32], parameters: &[bool]) -> Result<Ring> {
        let mut all: Vec<String> = self.names.clone();
        all.extend(names.iter().map(|s| s.as_ref().to_string()));
        let mut w = self.weights.clone();
        w.extend_from_slice(weights);
        let mut p = self.parameters.clone();
        p.extend_from_slice(parameters);
        PolyRing::with_parameters(&all, &w, &p, self.order)
    }

    /// The ring with variable `i` removed.
    pub fn without_var(&self, i: usize) -> Ring {
        let mut r = self.clone();
        r.names.remove(i);
        r.weights.remove(i);
        r.parameters.remove(i);
        Arc::new(r)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        let mut r = self.clone();
        r.order = order;
        Arc::new(r)
    }

    /// A variable name not used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.names.iter().any(|n| n == stem) {
            return stem.to_string();
        }
        (0..).map(|i| format!("{stem}{i}")).find(|n| !self.names.contains(n)).expect("unbounded")
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (e, n) in m.0.iter().zip(&self.names) {
            match e {
                0 => {}
                1 => parts.push(n.clone()),
                _ => parts.push(format!("{n}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(","))
    }
}

/// Same ring up to `Arc` identity.
pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let r = PolyRing::standard(&["x", "y", "z"]);
        assert_eq!(r.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(r.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn weight_zero_parameter_is_well_ordered() {
        let r = PolyRing::with_parameters(&["x", "t"], &[1, 0], &[false, true], MonomialOrder::DegRevLex)
            .unwrap();
        assert_eq!(r.cmp(&m(&[0, 1]), &m(&[0, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 5]), &m(&[1, 0])), Ordering::Less);
        assert!(PolyRing::new(&["x"], &[0], MonomialOrder::DegRevLex).is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        assert_eq!(
            PolyRing::new(&["x", "x"], &[1, 1], MonomialOrder::Lex),
            Err(Error::NameCollision("x".into()))
        );
    }
}
