mod oracle;

#[test]
fn groebner_bases_satisfy_the_s_polynomial_criterion() {
    let checked = oracle::groebner_criterion(2024, 60).unwrap();
    assert!(checked >= 50, "only {checked} ideals checked");
}

#[test]
fn hilbert_series_match_graded_dimensions() {
    assert_eq!(oracle::hilbert_dimensions(77, 24, 10).unwrap(), 24);
}
