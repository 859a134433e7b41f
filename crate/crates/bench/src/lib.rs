//! Fixtures shared by the benchmarks.

use drumzeta::sumrule::{default_series_policy, zeta_separable, Profile, SeparableAxis};
use drumzeta::{BCPair, QuadPolicy, Rect, Result, SumRuleResult};
use std::f64::consts::PI;
use std::sync::Arc;

/// Sum rule of order `p` for the annulus r_min < r < 1 on its conformal rectangle.
pub fn annulus_engine(p: usize, bc: BCPair, r_min: f64) -> Result<SumRuleResult> {
    let rect = Rect::new(-r_min.ln(), 2.0 * PI)?;
    let profile: Profile = Arc::new(move |x: f64| r_min * (2.0 * x).exp());
    zeta_separable(p, bc, rect, &profile, SeparableAxis::XOnly, &default_series_policy(), &QuadPolicy::default())
}
