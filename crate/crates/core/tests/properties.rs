//! Algebraic invariants on random small inputs.

use mfk_core::kclass::{class_additivity_check, localized_class};
use mfk_core::koszul::{duality_isomorphism, koszul_complex, SectionCosectionPair};
use mfk_core::module::{GradedFreeModule, PresentedModule};
use mfk_core::ring::{Ideal, Monomial, PolyRing, Polynomial, Ring};
use mfk_core::two_periodic::{ChainMap, TwoPeriodicComplex};
use mfk_core::Q;
use proptest::prelude::*;

fn ring() -> Ring {
    PolyRing::standard(&["x", "y", "z"])
}

/// Coefficients for the monomials of degree `d` in three variables.
fn homogeneous(r: &Ring, d: u32, coeffs: &[i64]) -> Polynomial<Q> {
    let mut mons = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            mons.push(Monomial::from_exponents(&[a, b, d - a - b]));
        }
    }
    let terms = mons.into_iter().zip(coeffs).map(|(m, &c)| (m, Q::from_integer(c.into()))).collect();
    Polynomial::from_terms(r, terms)
}

fn poly(r: &Ring, coeffs: &[i64]) -> Polynomial<Q> {
    (0..=2).fold(Polynomial::zero(r), |acc, d| acc.add(&homogeneous(r, d, &coeffs[d as usize * 4..])))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 16)
}

/// `{α, β}` with `β` linear and `α = (β_2, -β_1, 0)` or zero.
fn pair(r: &Ring, c: &[i64], rank: usize, zero_alpha: bool) -> SectionCosectionPair<Q> {
    let beta: Vec<Polynomial<Q>> = (0..rank).map(|i| homogeneous(r, 1, &c[3 * i..])).collect();
    let mut alpha = vec![Polynomial::zero(r); rank];
    if !zero_alpha && rank >= 2 {
        alpha[0] = beta[1].clone();
        alpha[1] = beta[0].neg();
    }
    SectionCosectionPair::new(&GradedFreeModule::free(r, rank), alpha, beta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let r = ring();
        let (f, g, h) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn normal_forms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let r = ring();
        let ideal = Ideal::new(&r, vec![poly(&r, &a), poly(&r, &b)]).unwrap();
        let f = poly(&r, &c);
        let nf = ideal.normal_form(&f);
        prop_assert_eq!(ideal.normal_form(&nf), nf.clone());
        prop_assert!(ideal.contains(&f.sub(&nf)));
        prop_assert!(ideal.contains(&poly(&r, &a).mul(&f)));
    }

    #[test]
    fn koszul_shift_and_duality(c in prop::collection::vec(-2i64..=2, 9), rank in 1usize..=3, zero_alpha: bool) {
        let r = ring();
        let p = pair(&r, &c, rank, zero_alpha);
        let k = koszul_complex(&p).unwrap();
        prop_assert_eq!(k.shift().shift(), k.clone());
        prop_assert!(duality_isomorphism(&p).is_ok());
    }

    #[test]
    fn cone_additivity(c in prop::collection::vec(-2i64..=2, 9), s in -2i64..=2) {
        let r = ring();
        let k = koszul_complex(&pair(&r, &c, 2, false)).unwrap();
        let scalar = Polynomial::constant(&r, Q::from_integer(s.into()));
        let f = ChainMap::new(&k, &k, mfk_core::module::Matrix::scalar(&r, 2, &scalar), mfk_core::module::Matrix::scalar(&r, 2, &scalar)).unwrap();
        let g = PresentedModule::quotient(&Ideal::parse(&r, "x, y, z").unwrap());
        let support = Ideal::parse(&r, "x, y, z").unwrap();
        prop_assert!(class_additivity_check(&f, &g, &support).unwrap().holds());
    }

    #[test]
    fn unit_is_neutral(a in coeffs()) {
        let r = ring();
        let f = poly(&r, &a);
        let mut gens = Ideal::<Q>::parse(&r, "x^2, y, z").unwrap().gens().to_vec();
        gens.push(f);
        let g = PresentedModule::quotient(&Ideal::new(&r, gens).unwrap());
        let unit = TwoPeriodicComplex::<Q>::unit(&r);
        let support = Ideal::parse(&r, "x, y, z").unwrap();
        let c = localized_class(&unit, &g, &support).unwrap();
        prop_assert_eq!(c.length(), Some(g.length().finite().unwrap() as i64));
    }
}
