use super::*;
use crate::koszul::{koszul_complex, koszul_resolution, SectionCosectionPair};
use crate::module::{GradedFreeModule, LaurentPolynomial};
use crate::ring::{Monomial, PolyRing};
use crate::two_periodic::ChainMap;
use crate::Q;

fn ideal(r: &Ring, s: &str) -> Ideal<Q> {
    Ideal::parse(r, s).unwrap()
}

fn quotient(r: &Ring, s: &str) -> PresentedModule<Q> {
    PresentedModule::quotient(&ideal(r, s))
}

fn origin_section(r: &Ring, f: &str) -> TwoPeriodicComplex<Q> {
    koszul_resolution(r, &[Polynomial::parse(r, f).unwrap()]).unwrap().fold()
}

#[test]
fn class_of_zero_x() {
    let r = PolyRing::standard(&["x"]);
    let e = origin_section(&r, "x");
    let support = ideal(&r, "x");
    let c = localized_class(&e, &PresentedModule::free(&GradedFreeModule::free(&r, 1)), &support).unwrap();
    assert_eq!(c.length(), Some(1));
    assert_eq!(c.polynomial(), Some(LaurentPolynomial::one()));
    let g = quotient(&r, "x^2");
    let c = localized_class(&e, &g, &support).unwrap();
    assert_eq!(c.polynomial(), Some(LaurentPolynomial::from_i64(0, &[1, 0, -1])));
    assert_eq!(c.length(), Some(0));
    let x = [Polynomial::parse(&r, "x").unwrap()];
    let pair = SectionCosectionPair::new(&GradedFreeModule::free(&r, 1), vec![Polynomial::zero(&r)], x.to_vec()).unwrap();
    let c = localized_class(&koszul_complex(&pair).unwrap(), &g, &support).unwrap();
    assert_eq!(c.polynomial(), Some(LaurentPolynomial::from_i64(0, &[1, -1])));
}

#[test]
fn support_is_enforced() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = origin_section(&r, "x");
    let free = PresentedModule::free(&GradedFreeModule::free(&r, 1));
    assert!(matches!(localized_class(&e, &free, &ideal(&r, "x, y")), Err(Error::SupportViolation { .. })));
    assert!(localized_class(&e, &free, &ideal(&r, "x")).is_ok());
}

#[test]
fn class_arithmetic() {
    let r = PolyRing::standard(&["x"]);
    let support = ideal(&r, "x");
    let a = KClass::from_modules(&[quotient(&r, "x")], &[], &support).unwrap();
    assert!(a.sub(&a).is_zero());
    assert_eq!(a.add(&a.neg()), KClass::zero(&support));
    assert_eq!(a.add(&a).length(), Some(2));
}

#[test]
fn additivity_for_identity_and_zero() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = origin_section(&r, "x");
    let g = quotient(&r, "y");
    let support = ideal(&r, "x, y");
    for f in [ChainMap::identity(&e), ChainMap::zero(&e, &e)] {
        assert!(class_additivity_check(&f, &g, &support).unwrap().holds());
    }
}

#[test]
fn gysin_on_a_family() {
    let (r, t) = with_parameter(&PolyRing::standard(&["x", "y"])).unwrap();
    let base = r.without_var(t);
    let f = [Polynomial::parse(&r, "x").unwrap(), Polynomial::parse(&r, &format!("{}*y", r.names()[t])).unwrap()];
    let e = koszul_resolution(&r, &f).unwrap().fold();
    let v = gysin_commutes_check(&e, t, &ideal(&base, "x")).unwrap();
    assert!(v.holds(), "{} vs {}", v.lhs, v.rhs);
}

#[test]
fn fiber_pieces_of_a_nilpotent_thickening() {
    let (r, t) = with_parameter(&PolyRing::standard(&["x"])).unwrap();
    let s = &r.names()[t];
    let m = quotient(&r, &format!("x, {s}^3 - 6*{s}^2 + 12*{s} - 8"));
    let pieces = fiber_pieces(&m, t, &Q::from_integer(2.into())).unwrap();
    assert_eq!(pieces.len(), 3);
    assert!(pieces.iter().all(|p| p.length() == crate::module::Length::Finite(1)));
}

#[test]
fn deformation_to_homology() {
    let r = PolyRing::standard(&["x"]);
    let a = origin_section(&r, "x").with_coefficients(&quotient(&r, "x^2")).unwrap();
    let lambdas: Vec<Q> = (1..=3).map(|k| Q::from_integer(k.into())).collect();
    let d = deformation_family(&a, &ideal(&r, "x"), &lambdas).unwrap();
    assert_eq!(d.fibers.len(), 4);
    assert_eq!(d.central_class, d.original_class);
    assert!(d.endpoints_agree());
}

#[test]
fn pushforward_along_closed_immersion() {
    let r = PolyRing::standard(&["x", "y"]);
    let free = PresentedModule::free(&GradedFreeModule::free(&r, 1));
    assert_eq!(pushforward_closed(&ideal(&r, "x"), &free).unwrap(), quotient(&r, "x"));
    let e = origin_section(&r, "x");
    let v = proper_pushforward_check(&e, &ideal(&r, "y"), &free, &ideal(&r, "x, y")).unwrap();
    assert!(v.holds());
    assert_eq!(v.lhs.length(), Some(1));
}

#[test]
fn pushforward_along_square_root() {
    let base = PolyRing::new(&["x"], &[2], crate::ring::MonomialOrder::DegRevLex).unwrap();
    let ring = PolyRing::new(&["x", "z"], &[2, 1], crate::ring::MonomialOrder::DegRevLex).unwrap();
    let ext = FiniteExtension::new(&base, &ring, &ideal(&ring, "z^2 - x"), None).unwrap();
    assert_eq!(ext.basis(), &[Monomial::from_exponents(&[0, 0]), Monomial::from_exponents(&[0, 1])]);
    let m = pushforward_finite(&ext, &PresentedModule::free(&GradedFreeModule::free(&ring, 1))).unwrap();
    assert_eq!(m, PresentedModule::free(&GradedFreeModule::new(&base, vec![0, 1])));
    let q = pushforward_finite(&ext, &quotient(&ring, "z")).unwrap();
    assert_eq!(q.length(), crate::module::Length::Finite(1));
    let wrong = [Monomial::from_exponents(&[0, 0])];
    assert!(matches!(FiniteExtension::new(&base, &ring, &ideal(&ring, "z^2 - x"), Some(&wrong)), Err(Error::NotFinite(_))));
    assert!(matches!(FiniteExtension::new(&base, &ring, &ideal(&ring, "x*z"), None), Err(Error::NotFinite(_))));
}

#[test]
fn multiplicativity_of_two_sections() {
    let r = PolyRing::standard(&["x", "y"]);
    let first = origin_section(&r, "x");
    let second = origin_section(&r, "y");
    let g = PresentedModule::free(&GradedFreeModule::free(&r, 1));
    let v = multiplicativity_check(&first, &second, &g, &ideal(&r, "x"), &ideal(&r, "x, y")).unwrap();
    assert!(v.holds());
    assert_eq!(v.lhs.length(), Some(1));
}
