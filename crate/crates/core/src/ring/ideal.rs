//! Ideals, normal forms and radical membership.

use std::fmt;
use std::sync::OnceLock;

use super::groebner::{groebner, reduce, SVec};
use super::{same_ring, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
struct Basis<C: Field> {
    polys: Vec<Polynomial<C>>,
    vecs: Vec<SVec<C>>,
}

/// An ideal given by generators; the reduced Gröbner basis is computed on
/// first use and cached.
#[derive(Clone, Debug)]
pub struct Ideal<C: Field> {
    ring: Ring,
    gens: Vec<Polynomial<C>>,
    basis: OnceLock<Basis<C>>,
}

pub(crate) fn to_svec<C: Field>(f: &Polynomial<C>, pos: usize) -> SVec<C> {
    SVec { terms: f.terms().iter().map(|(m, c)| (pos, m.clone(), c.clone())).collect() }
}

pub(crate) fn from_svec<C: Field>(ring: &Ring, v: &SVec<C>) -> Polynomial<C> {
    Polynomial::from_sorted_terms(ring, v.terms.iter().map(|(_, m, c)| (m.clone(), c.clone())).collect())
}

impl<C: Field> Ideal<C> {
    pub fn new(ring: &Ring, gens: Vec<Polynomial<C>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::MixedRings);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, basis: OnceLock::new() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), basis: OnceLock::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], basis: OnceLock::new() }
    }

    /// Parses a comma-separated generator list.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for part in text.split(',') {
            if part.trim().is_empty() {
                continue;
            }
            gens.push(Polynomial::parse(ring, part)?);
        }
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    fn basis(&self) -> &Basis<C> {
        self.basis.get_or_init(|| {
            let input = self.gens.iter().map(|g| to_svec(g, 0)).collect();
            let vecs = groebner(&self.ring, input, None);
            let polys = vecs.iter().map(|v| from_svec(&self.ring, v)).collect();
            Basis { polys, vecs }
        })
    }

    /// The reduced Gröbner basis, sorted by descending leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial<C>] {
        &self.basis().polys
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        if self.gens.is_empty() || f.is_zero() {
            return f.clone();
        }
        from_svec(&self.ring, &reduce(&self.ring, &to_svec(f, 0), &self.basis().vecs))
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(|g| g.is_constant())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MixedRings);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// The extension of this ideal to a ring with appended variables.
    pub fn embed(&self, target: &Ring) -> Self {
        Ideal {
            ring: target.clone(),
            gens: self.gens.iter().map(|g| g.embed(target)).collect(),
            basis: OnceLock::new(),
        }
    }

    /// Image under substituting `value` for variable `var`.
    pub fn specialize(&self, var: usize, value: &C, target: &Ring) -> Self {
        Ideal::new(target, self.gens.iter().map(|g| g.specialize(var, value, target)).collect())
            .expect("same target ring")
    }

    /// Leading monomials of the Gröbner basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis().iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn all_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

impl<C: Field> PartialEq for Ideal<C> {
    /// Equality as ideals (same reduced Gröbner basis).
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner_basis() == other.groebner_basis()
    }
}

impl<C: Field> fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<C: Field>(ring: &Ring, gens: Vec<Polynomial<C>>) -> Result<Ideal<C>> {
    let ideal = Ideal::new(ring, gens)?;
    ideal.groebner_basis();
    Ok(ideal)
}

/// Decides `g ∈ √I` by checking `1 ∈ I + (1 - y g)` with `y` fresh.
pub fn radical_membership<C: Field>(g: &Polynomial<C>, ideal: &Ideal<C>) -> bool {
    if g.is_zero() || ideal.contains(g) {
        return true;
    }
    if ideal.is_zero() {
        return false;
    }
    let ring = ideal.ring();
    let y = ring.fresh_name("y");
    let ext = ring.extend(&[y], &[1], &[false]).expect("fresh name");
    let yv = Polynomial::var(&ext, ring.nvars());
    let rab = Polynomial::one(&ext).sub(&yv.mul(&g.embed(&ext)));
    let mut gens: Vec<Polynomial<C>> = ideal.gens().iter().map(|f| f.embed(&ext)).collect();
    gens.push(rab);
    Ideal::new(&ext, gens).expect("same ring").is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::Q;

    fn ideal(r: &Ring, s: &str) -> Ideal<Q> {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn circle_and_line() {
        let r = PolyRing::standard(&["x", "y"]);
        let i = ideal(&r, "x^2 + y^2 - 1, x - y");
        let gb: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(gb, vec!["y^2 - 1/2", "x - y"]);
        let f = Polynomial::parse(&r, "x^2 + 1").unwrap();
        assert_eq!(i.normal_form(&f).to_string(), "3/2");
    }

    #[test]
    fn trivial_cases() {
        let r = PolyRing::standard(&["x", "y"]);
        assert_eq!(ideal(&r, "x").groebner_basis().len(), 1);
        assert!(Ideal::<Q>::zero(&r).groebner_basis().is_empty());
        let y = Polynomial::<Q>::parse(&r, "y").unwrap();
        assert_eq!(Ideal::zero(&r).normal_form(&y), y);
        assert!(ideal(&r, "x").contains(&Polynomial::parse(&r, "x*y").unwrap()));
        assert!(ideal(&r, "x, 1 + x").is_unit());
    }

    #[test]
    fn radical() {
        let r = PolyRing::standard(&["x", "y"]);
        let p = |s| Polynomial::<Q>::parse(&r, s).unwrap();
        assert!(radical_membership(&p("x"), &ideal(&r, "x^2")));
        assert!(!radical_membership(&p("y"), &ideal(&r, "x")));
        assert!(radical_membership(&p("x + y"), &ideal(&r, "x^2, y^2")));
        assert!(!radical_membership(&p("x"), &Ideal::zero(&r)));
    }

    #[test]
    fn mixed_rings_rejected() {
        let r = PolyRing::standard(&["x"]);
        let s = PolyRing::standard(&["y"]);
        let g = Polynomial::<Q>::parse(&s, "y").unwrap();
        assert_eq!(Ideal::new(&r, vec![g]).unwrap_err(), Error::MixedRings);
    }
}
