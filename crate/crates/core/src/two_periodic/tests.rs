use super::*;
use crate::module::Length;
use crate::ring::{PolyRing, Polynomial};
use crate::Q;

fn m(r: &Ring, s: &str) -> Matrix<Q> {
    Matrix::parse(r, s, None).unwrap()
}

fn free(r: &Ring, twists: &[i64]) -> GradedFreeModule {
    GradedFreeModule::new(r, twists.to_vec())
}

fn matrix_factorization(r: &Ring, a: &str, b: &str) -> TwoPeriodicComplex<Q> {
    let w = Polynomial::parse(r, a).unwrap().mul(&Polynomial::parse(r, b).unwrap());
    let base = Ideal::new(r, vec![w]).unwrap();
    TwoPeriodicComplex::with_base(&base, &free(r, &[0]), &free(r, &[0]), m(r, &format!("[[{a}]]")), m(r, &format!("[[{b}]]")))
        .unwrap()
}

#[test]
fn homology_of_zero_x() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "0", "x");
    assert_eq!(e.degrees(), (0, 1));
    let (hp, hm) = e.homology().unwrap();
    assert_eq!(hp, PresentedModule::quotient(&Ideal::parse(&r, "x").unwrap()));
    assert!(hm.is_zero());
}

#[test]
fn rejects_nonzero_square() {
    let r = PolyRing::standard(&["x"]);
    let e = TwoPeriodicComplex::<Q>::new(&free(&r, &[0]), &free(&r, &[0]), m(&r, "[[x]]"), m(&r, "[[x]]"));
    assert!(matches!(e, Err(Error::NotSquareZero { .. })));
    let base = Ideal::parse(&r, "x^2").unwrap();
    assert!(TwoPeriodicComplex::<Q>::with_base(&base, &free(&r, &[0]), &free(&r, &[0]), m(&r, "[[x]]"), m(&r, "[[x]]")).is_ok());
}

fn koszul_xy(r: &Ring) -> BoundedComplex<Q> {
    BoundedComplex::new(
        -2,
        vec![free(r, &[2]), free(r, &[1, 1]), free(r, &[0])],
        vec![m(r, "[[y], [-x]]"), m(r, "[[x, y]]")],
    )
    .unwrap()
}

#[test]
fn folded_koszul_resolution() {
    let r = PolyRing::standard(&["x", "y"]);
    let k = koszul_xy(&r);
    assert_eq!(k.homology_at(0).unwrap().length(), Length::Finite(1));
    assert!(k.homology_at(-1).unwrap().is_zero());
    let (hp, hm) = k.fold().homology().unwrap();
    assert_eq!(hp, PresentedModule::quotient(&Ideal::parse(&r, "x, y").unwrap()));
    assert!(hm.is_zero());
}

#[test]
fn fold_sign_convention() {
    let r = PolyRing::standard(&["x"]);
    let c = BoundedComplex::<Q>::new(-1, vec![free(&r, &[1]), free(&r, &[0])], vec![m(&r, "[[x]]")]).unwrap();
    let e = c.fold();
    assert_eq!(e.d_minus(), &m(&r, "[[-x]]"));
    assert!(e.d_plus().is_zero());
}

#[test]
fn tensor_of_two_factorizations() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = matrix_factorization(&r, "0", "x");
    let f = matrix_factorization(&r, "0", "y");
    let t = e.tensor(&f).unwrap();
    assert_eq!((t.plus().rank(), t.minus().rank()), (2, 2));
    let (hp, hm) = t.homology().unwrap();
    assert_eq!(hp.length(), Length::Finite(1));
    assert!(hm.is_zero());
}

#[test]
fn fold_commutes_with_tensor_on_homology() {
    let r = PolyRing::standard(&["x", "y"]);
    let a = BoundedComplex::<Q>::new(-1, vec![free(&r, &[1]), free(&r, &[0])], vec![m(&r, "[[x]]")]).unwrap();
    let b = BoundedComplex::<Q>::new(-1, vec![free(&r, &[1]), free(&r, &[0])], vec![m(&r, "[[y]]")]).unwrap();
    let total = a.tensor(&b).unwrap();
    assert_eq!(total.low(), -2);
    assert_eq!(total.homology_at(0).unwrap().length(), Length::Finite(1));
    let (hp, hm) = a.fold().tensor(&b.fold()).unwrap().homology().unwrap();
    let (tp, tm) = total.fold().homology().unwrap();
    assert_eq!(hp.length(), tp.length());
    assert_eq!(hm.is_zero(), tm.is_zero());
}

#[test]
fn shift_twice_is_identity() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "x^2", "x");
    assert_eq!(e.shift().shift(), e);
    let s = e.shift();
    assert_eq!(s.degrees(), (1, 2));
    assert_eq!(s.d_plus(), &m(&r, "[[-x]]"));
}

#[test]
fn cone_of_identity_is_contractible() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "x^2", "x");
    let c = cone(&ChainMap::identity(&e)).unwrap();
    let h = Homotopy::cone_of_identity(&e);
    assert!(check_contraction(&c.cone, &h));
    let (hp, hm) = c.cone.homology().unwrap();
    assert!(hp.is_zero() && hm.is_zero());
    let wrong = Homotopy { h_plus: h.h_plus.neg(), h_minus: h.h_minus.clone() };
    assert!(!check_contraction(&c.cone, &wrong));
}

#[test]
fn cone_sequence_maps_are_chain_maps() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "x^2", "x");
    let x = Polynomial::<Q>::var(&r, 0);
    let f = ChainMap::new(&e, &e, Matrix::scalar(&r, 1, &x), Matrix::scalar(&r, 1, &x)).unwrap();
    assert_eq!(f.degree(), 1);
    let c = cone(&f).unwrap();
    let composite = c.projection.f_plus().mul(c.inclusion.f_plus());
    assert!(composite.is_zero());
    assert_eq!(c.cone.degrees(), e.degrees());
}

#[test]
fn rejects_non_chain_map() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "x^2", "x");
    let f = ChainMap::new(&e, &e, m(&r, "[[1]]"), m(&r, "[[0]]"));
    assert!(matches!(f, Err(Error::NotChainMap(_))));
}

#[test]
fn contraction_propagates_through_tensor() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = matrix_factorization(&r, "x", "y");
    let c = cone(&ChainMap::identity(&e)).unwrap();
    let h = Homotopy::cone_of_identity(&e);
    let f = matrix_factorization(&r, "y", "x");
    let h2 = tensor_contraction(&c.cone, &h, &f).unwrap();
    assert!(check_contraction(&c.cone.tensor(&f).unwrap(), &h2));
    let bad = Homotopy { h_plus: h.h_plus.scale(&Polynomial::from_i64(&r, 2)), h_minus: h.h_minus.clone() };
    assert_eq!(tensor_contraction(&c.cone, &bad, &f).unwrap_err(), Error::NotContraction);
}

#[test]
fn homology_with_coefficients() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = matrix_factorization(&r, "0", "x");
    let g = PresentedModule::quotient(&Ideal::parse(&r, "y").unwrap());
    let (hp, hm) = e.homology_with(&g).unwrap();
    assert_eq!(hp.length(), Length::Finite(1));
    assert!(hm.is_zero());
    assert!(e.is_cohomologically_acyclic_off(&Ideal::parse(&r, "x").unwrap(), None).unwrap());
}

#[test]
fn grading_mismatch() {
    let r = PolyRing::standard(&["x"]);
    let e = matrix_factorization(&r, "x^2", "x");
    let f = matrix_factorization(&r, "x", "x");
    assert!(matches!(e.tensor(&f), Err(Error::GradingMismatch(_))));
}

#[test]
fn tensoring_with_the_unit() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = matrix_factorization(&r, "x", "y");
    let u = TwoPeriodicComplex::unit(&r);
    let (left, right) = (e.tensor(&u).unwrap(), u.tensor(&e).unwrap());
    assert_eq!((left.plus(), left.minus()), (e.plus(), e.minus()));
    assert_eq!((left.d_plus(), left.d_minus()), (&e.d_plus().neg(), &e.d_minus().neg()));
    assert_eq!((right.d_plus(), right.d_minus()), (e.d_plus(), e.d_minus()));
    assert_eq!((right.plus().twists(), right.minus().twists()), (&[0][..], &[-1][..]));
    let (hl, hr) = (left.homology().unwrap(), right.homology().unwrap());
    let (he, _) = e.homology().unwrap();
    assert_eq!(hl.0.hilbert_series().unwrap(), he.hilbert_series().unwrap());
    assert_eq!(hr.0.hilbert_series().unwrap(), he.hilbert_series().unwrap());
}
