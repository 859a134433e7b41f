#[test]
fn annulus_fixture_matches_closed_form() {
    let z = drumzeta_bench::annulus_engine(2, drumzeta::BCPair::DP, 0.5).unwrap();
    assert!((z.value - 0.005_741_957_487_359_115).abs() < 1e-12);
}
