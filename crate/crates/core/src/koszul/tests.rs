use super::*;
use crate::module::Length;
use crate::ring::PolyRing;
use crate::Q;

fn p(r: &Ring, s: &str) -> Polynomial<Q> {
    Polynomial::parse(r, s).unwrap()
}

fn ps(r: &Ring, s: &[&str]) -> Vec<Polynomial<Q>> {
    s.iter().map(|x| p(r, x)).collect()
}

fn pair(r: &Ring, twists: &[i64], alpha: &[&str], beta: &[&str]) -> SectionCosectionPair<Q> {
    SectionCosectionPair::new(&GradedFreeModule::new(r, twists.to_vec()), ps(r, alpha), ps(r, beta)).unwrap()
}

#[test]
fn basis_order() {
    assert_eq!(exterior_basis(3, Parity::Plus), vec![vec![], vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert_eq!(exterior_basis(3, Parity::Minus), vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]);
    assert_eq!(exterior_basis(0, Parity::Minus), Vec::<Vec<usize>>::new());
}

#[test]
fn rank_one_origin() {
    let r = PolyRing::standard(&["x"]);
    let k = koszul_complex(&pair(&r, &[0], &["0"], &["x"])).unwrap();
    assert!(k.d_plus().is_zero());
    assert_eq!(k.d_minus().get(0, 0), &p(&r, "x"));
    let (hp, hm) = k.homology().unwrap();
    assert_eq!(hp, PresentedModule::quotient(&Ideal::parse(&r, "x").unwrap()));
    assert!(hm.is_zero());
}

#[test]
fn pairing_must_vanish() {
    let r = PolyRing::standard(&["x", "y"]);
    let e = GradedFreeModule::free(&r, 2);
    let ok = SectionCosectionPair::new(&e, ps(&r, &["y", "-x"]), ps(&r, &["x", "y"]));
    assert!(ok.is_ok());
    let bad = SectionCosectionPair::new(&e, ps(&r, &["y", "x"]), ps(&r, &["x", "y"]));
    assert_eq!(bad.unwrap_err(), Error::PairingNonzero("2*x*y".into()));
    let k = koszul_complex(&ok.unwrap()).unwrap();
    assert_eq!((k.plus().rank(), k.minus().rank()), (2, 2));
}

#[test]
fn xy_model() {
    let r = PolyRing::standard(&["x", "y"]);
    let base = Ideal::parse(&r, "x*y").unwrap();
    let e = GradedFreeModule::new(&r, vec![-1]);
    let pr = SectionCosectionPair::with_base(&base, &e, ps(&r, &["x"]), ps(&r, &["y"])).unwrap();
    let k = koszul_complex(&pr).unwrap();
    let (hp, hm) = k.homology().unwrap();
    assert!(hp.is_zero() && hm.is_zero());
    let (hp, hm) = k.homology_with(&PresentedModule::quotient(&Ideal::parse(&r, "x").unwrap())).unwrap();
    assert_eq!((hp.length(), hm.length()), (Length::Finite(1), Length::Finite(0)));
}

#[test]
fn alpha_zero_matches_classical_resolution() {
    let r = PolyRing::standard(&["x", "y", "z"]);
    let k = koszul_complex(&pair(&r, &[0, 0, 0], &["0", "0", "0"], &["x", "y", "z"])).unwrap();
    let c = koszul_resolution(&r, &ps(&r, &["x", "y", "z"])).unwrap();
    let (kp, km) = k.homology().unwrap();
    let (cp, cm) = c.fold().homology().unwrap();
    assert_eq!(kp.hilbert_series().unwrap().as_polynomial(), cp.hilbert_series().unwrap().as_polynomial());
    assert!(km.is_zero() && cm.is_zero());
    assert_eq!(c.homology_at(0).unwrap().length(), Length::Finite(1));
}

#[test]
fn duality_small_ranks() {
    let r = PolyRing::standard(&["x", "y", "z"]);
    let cases: Vec<SectionCosectionPair<Q>> = vec![
        pair(&r, &[], &[], &[]),
        pair(&r, &[0], &["0"], &["x"]),
        pair(&r, &[0, 0], &["y", "-x"], &["x", "y"]),
        pair(&r, &[0, 0, 0], &["y", "-x", "0"], &["x", "y", "z"]),
        pair(&r, &[0, 0, 0], &["0", "0", "0"], &["x", "y", "z"]),
        pair(&r, &[0, 0, 0], &["z", "0", "-x"], &["x", "y", "z"]),
    ];
    for c in &cases {
        let map = duality_isomorphism(c).unwrap();
        assert_eq!(map.degree(), 0);
    }
    let map = duality_isomorphism(&cases[0]).unwrap();
    assert_eq!(map.f_plus(), &Matrix::identity(&r, 1));
}

#[test]
fn tautological_potentials() {
    let r = PolyRing::standard(&["x"]);
    let (s, w, vars) = tautological_potential(&r, &GradedFreeModule::free(&r, 1), &ps(&r, &["x"])).unwrap();
    assert_eq!(s.to_string(), "Q[x,y]");
    assert_eq!(w.to_string(), "x*y");
    assert_eq!(vars, vec![1]);
    let r2 = PolyRing::standard(&["x1", "x2"]);
    let (_, w, _) = tautological_potential(&r2, &GradedFreeModule::free(&r2, 2), &ps(&r2, &["x1", "x2"])).unwrap();
    assert_eq!(w.to_string(), "x1*y1 + x2*y2");
    let (_, w, _) = tautological_potential(&r, &GradedFreeModule::free(&r, 1), &ps(&r, &["0"])).unwrap();
    assert!(w.is_zero());
    let clash = PolyRing::standard(&["y"]);
    let err = tautological_potential(&clash, &GradedFreeModule::free(&clash, 1), &ps(&clash, &["y"]));
    assert_eq!(err.unwrap_err(), Error::NameCollision("y".into()));
}

#[test]
fn splitting_examples() {
    let r = PolyRing::standard(&["x", "y"]);
    let one = GradedFreeModule::free(&r, 1);
    let g = PresentedModule::free(&one);
    let support = Ideal::parse(&r, "x, y").unwrap();
    let (a, b) = split_koszul_compare(&one, &one, ps(&r, &["y"]), ps(&r, &["x"]), &g, &support).unwrap();
    assert_eq!(a, b);
    let (a, b) = split_koszul_compare(&one, &one, ps(&r, &["0"]), ps(&r, &["x"]), &PresentedModule::quotient(&Ideal::parse(&r, "y").unwrap()), &support).unwrap();
    assert_eq!(a, b);
}
