use super::*;
use crate::specialfn::hurwitz_zeta;
use std::f64::consts::PI;
use std::sync::Arc;

// Σ_{m,n≥1} (m² + n²)⁻² from the closed row sums
fn square_lattice_p2() -> f64 {
    let mut s = 0.0;
    for m in 1..=200 {
        let x = PI * m as f64;
        let mf = m as f64;
        let csch = 1.0 / x.sinh();
        s += PI / x.tanh() / (4.0 * mf.powi(3)) + PI * PI * csch * csch / (4.0 * mf * mf) - 0.5 * mf.powi(-4);
    }
    s + PI / 4.0 * hurwitz_zeta(3, 201.0).unwrap() - 0.5 * hurwitz_zeta(4, 201.0).unwrap()
}

fn policy() -> TruncationPolicy {
    default_series_policy()
}

#[test]
fn unit_square_p2_against_row_sums() {
    let r = zeta_general(
        2,
        BCPair::DD,
        Rect::new(1.0, 1.0).unwrap(),
        &Density2::Constant(1.0),
        &policy(),
        &QuadPolicy::default(),
    )
    .unwrap();
    let want = square_lattice_p2() / PI.powi(4);
    assert!((r.value - want).abs() < 1e-12, "{} {} {}", r.value, want, r.abs_error);
    assert!(r.abs_error < 1e-10);
}

#[test]
fn density_scaling_is_a_power_law() {
    let rect = Rect::new(1.0, 1.4).unwrap();
    let q = QuadPolicy::default();
    let d = Density2::y_only(|y| 1.0 + 0.4 * y);
    for p in [2usize, 3] {
        let z1 = zeta_general(p, BCPair::DP, rect, &d, &policy(), &q).unwrap();
        let z2 = zeta_general(p, BCPair::DP, rect, &d.scaled(1.7), &policy(), &q).unwrap();
        assert!((z2.value - 1.7f64.powi(p as i32) * z1.value).abs() < 1e-12 * z2.value);
    }
}

#[test]
fn order_one_is_rejected() {
    let r = zeta_general(
        1,
        BCPair::DD,
        Rect::new(1.0, 1.0).unwrap(),
        &Density2::Constant(1.0),
        &policy(),
        &QuadPolicy::default(),
    );
    assert!(matches!(r, Err(Error::InvalidArgument(_))));
    let bad = Density2::y_only(|y| y);
    let r = zeta_general(2, BCPair::DD, Rect::new(1.0, 1.0).unwrap(), &bad, &policy(), &QuadPolicy::default());
    assert!(matches!(r, Err(Error::Domain(_))));
}

#[test]
fn separable_and_coupled_expansions_agree() {
    let rect = Rect::new(1.0, 1.2).unwrap();
    let q = QuadPolicy::default();
    let tp = TruncationPolicy { rel_tol: 1e-9, ..policy() };
    let profile: Profile = Arc::new(|x: f64| (0.6 * x).exp());
    let d = Density2::XOnly(profile.clone());
    for bc in [BCPair::DD, BCPair::DP] {
        let sep = zeta_separable(2, bc, rect, &profile, SeparableAxis::XOnly, &tp, &q).unwrap();
        let coupled = zeta_general_modes(2, bc, rect, &d, true, &tp, &q).unwrap();
        let tol = 2.0 * (sep.abs_error + coupled.abs_error);
        assert!((sep.value - coupled.value).abs() <= tol.max(1e-9 * sep.value), "{bc:?} {sep:?} {coupled:?}");
    }
}

#[test]
fn box_cube_p2() {
    let one: Profile = Arc::new(|_| 1.0);
    let r = zeta_box3_separable(
        2,
        [1.0, 1.0, 1.0],
        &one,
        &TruncationPolicy { rel_tol: 1e-8, ..policy() },
        &QuadPolicy::default(),
    )
    .unwrap();
    // ∫ t ((θ3(e^{-π² t}) − 1)/2)³ dt at 30 digits
    let want = 0.006_346_711_572_878_563_668;
    assert!((r.value - want).abs() < 1e-6 * want, "{} {}", r.value, want);
}
