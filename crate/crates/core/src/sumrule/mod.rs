//! Sum rules Z(p) = Σ E⁻ᵖ as traces of products of Green's functions.
//!
//! The y-ordered integrand of each diagram is a product of semi-separable
//! kernels, so every ordered integral collapses to a chain of cumulative
//! convolutions on a panel grid. Mode series are closed with a fitted
//! inverse-power tail summed by Hurwitz zeta values.

mod box3;
mod density;
mod diagram;
mod general;
mod integrand;
mod tail;

pub use crate::quadrature::{ordered_integral, QuadPolicy};
pub use box3::zeta_box3_separable;
pub use density::{Density2, Field, Profile, SeparableAxis};
pub use diagram::{enumerate_diagrams, Diagram, MAX_DIAGRAM_ORDER};

use crate::basis1d::{ladder, level, Interval, KernelFamily};
use crate::error::{Error, Result};
use crate::green2d::{BCPair, Rect, TailModel, TruncationPolicy};
use integrand::LevelProblem;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tail::Ladder;

/// Value of a sum rule with its error budget and work counters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumRuleResult {
    pub value: f64,
    pub abs_error: f64,
    pub modes_used: u64,
    pub quad_evals: u64,
}

/// Truncation defaults suited to sum-rule series.
pub fn default_series_policy() -> TruncationPolicy {
    TruncationPolicy { max_modes: 1 << 16, rel_tol: 1e-12, tail_model: TailModel::PowerLaw }
}

pub(crate) fn check_order(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("sum-rule order must be >= 2 (got {p}); order 1 diverges")));
    }
    if p > MAX_DIAGRAM_ORDER {
        return Err(Error::OrderTooLarge(p));
    }
    Ok(())
}

pub(crate) fn check_profile(f: &(dyn Fn(f64) -> f64 + Sync), len: f64) -> Result<()> {
    for i in 0..=64 {
        let y = -0.5 * len + len * i as f64 / 64.0;
        let v = f(y);
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("density must be finite and > 0, got {v} at {y}")));
        }
    }
    Ok(())
}

/// How the constant transverse mode of a Neumann/periodic assembly is removed
/// when the density is not constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ZeroProjection {
    /// Project out the constant in the Σ-weighted inner product. The result
    /// is the sum over the true spectrum of −ΔΨ = EΣΨ.
    #[default]
    Weighted,
    /// Keep the flat pseudo-kernel unchanged. Equals `Weighted` for constant
    /// Σ; otherwise it is the trace of the flat pseudo-inverse, not a spectral sum.
    Flat,
}

impl std::str::FromStr for ZeroProjection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weighted" => Ok(Self::Weighted),
            "flat" => Ok(Self::Flat),
            _ => Err(Error::InvalidArgument(format!("unknown zero projection {s}"))),
        }
    }
}

/// Z(p) for a density varying along one axis: a single series over the
/// modes of the other axis, each term an ordered integral along the varying one.
pub fn zeta_separable(
    p: usize,
    bc: BCPair,
    rect: Rect,
    profile: &Profile,
    axis: SeparableAxis,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    zeta_separable_projected(p, bc, rect, profile, axis, ZeroProjection::Weighted, trunc, quad)
}

/// [`zeta_separable`] with an explicit zero-mode convention.
#[allow(clippy::too_many_arguments)]
pub fn zeta_separable_projected(
    p: usize,
    bc: BCPair,
    rect: Rect,
    profile: &Profile,
    axis: SeparableAxis,
    zero: ZeroProjection,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    let (fx, fy) = bc.families();
    match axis {
        SeparableAxis::YOnly => series(p, fx, rect.a, fy, rect.b, profile.as_ref(), zero, trunc, quad),
        SeparableAxis::XOnly => series(p, fy, rect.b, fx, rect.a, profile.as_ref(), zero, trunc, quad),
        SeparableAxis::None => Err(Error::InvalidArgument("separable sum needs an axis".into())),
    }
}

/// Z(p) for any density; dispatches to the single-series form when Σ depends on one coordinate.
pub fn zeta_general(
    p: usize,
    bc: BCPair,
    rect: Rect,
    sigma: &Density2,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    let (fx, fy) = bc.families();
    match sigma {
        Density2::Constant(c) => {
            if !(c.is_finite() && *c > 0.0) {
                return Err(Error::Domain(format!("density must be > 0, got {c}")));
            }
            let c = *c;
            series(p, fx, rect.a, fy, rect.b, &move |_| c, ZeroProjection::Weighted, trunc, quad)
        }
        Density2::XOnly(f) => series(p, fy, rect.b, fx, rect.a, f.as_ref(), ZeroProjection::Weighted, trunc, quad),
        Density2::YOnly(f) => series(p, fx, rect.a, fy, rect.b, f.as_ref(), ZeroProjection::Weighted, trunc, quad),
        Density2::General(f) => {
            let g = |u: f64, v: f64| f(u, v);
            general::dense_sum(p, fx, rect.a, fy, rect.b, &g, trunc, quad)
        }
    }
}

/// Z(p) through the coupled-mode expansion along the given mode axis,
/// without exploiting separability. Slower; used to cross-check the reductions.
pub fn zeta_general_modes(
    p: usize,
    bc: BCPair,
    rect: Rect,
    sigma: &Density2,
    modes_along_x: bool,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    let (fx, fy) = bc.families();
    if modes_along_x {
        let g = |u: f64, v: f64| sigma.eval(u, v);
        general::dense_sum(p, fx, rect.a, fy, rect.b, &g, trunc, quad)
    } else {
        let g = |u: f64, v: f64| sigma.eval(v, u);
        general::dense_sum(p, fy, rect.b, fx, rect.a, &g, trunc, quad)
    }
}

#[allow(clippy::too_many_arguments)]
fn series(
    p: usize,
    mode_fam: KernelFamily,
    mode_len: f64,
    ker_fam: KernelFamily,
    ker_len: f64,
    sigma: &(dyn Fn(f64) -> f64 + Sync),
    zero: ZeroProjection,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    check_order(p)?;
    trunc.validate()?;
    quad.validate()?;
    let interval = Interval::new(mode_len)?;
    Interval::new(ker_len)?;
    check_profile(sigma, ker_len)?;
    let diagrams = enumerate_diagrams(p)?;
    let problem = LevelProblem {
        p,
        diagrams: &diagrams,
        fam: ker_fam,
        len: ker_len,
        sigma,
        weighted_zero: zero == ZeroProjection::Weighted && mode_fam.has_zero_mode(),
    };
    let (step, offset, _) = ladder(mode_fam, mode_len);
    let lad = Ladder { step, offset };
    let s0 = (2 * p - 1) as f64;

    let level_at = |j: usize, q: &QuadPolicy| -> (f64, u64, u64) {
        let lev = level(mode_fam, interval, j as u32);
        let m = lev.modes.len() as u64;
        let (v, n) = problem.eval(lev.kappa, q);
        (m as f64 * v, n, m)
    };

    let mut c: Vec<f64> = Vec::new();
    let mut modes = 0u64;
    let mut evals = 0u64;
    let mut target = 48usize;
    loop {
        let fresh: Vec<(f64, u64, u64)> = (c.len()..target).into_par_iter().map(|j| level_at(j, quad)).collect();
        for (v, n, m) in fresh {
            c.push(v);
            evals += n;
            modes += m;
        }
        let partial: f64 = c.iter().sum();
        let est = tail::ladder_tail(&c, lad, s0, 1);
        if let Some(est) = est {
            let total = partial + est.tail;
            let tol = trunc.rel_tol * total.abs();
            if est.err <= tol || modes >= trunc.max_modes as u64 {
                if est.err > tol {
                    return Err(Error::NonConvergence { modes: modes as usize, estimate: est.err, target: tol });
                }
                // quadrature check on the dominant and the last level
                let coarse = quad.coarse();
                let mut rel = 0.0f64;
                for j in [0usize, 1, c.len() - 1] {
                    let (v, n, _) = level_at(j, &coarse);
                    evals += n;
                    if c[j] != 0.0 {
                        rel = rel.max(((v - c[j]) / c[j]).abs());
                    }
                }
                let (value, tail_err) = match trunc.tail_model {
                    TailModel::PowerLaw => (total, est.err),
                    _ => (partial, est.tail.abs() + est.err),
                };
                let quad_err = rel * value.abs();
                let round = 4.0 * f64::EPSILON * c.len() as f64 * value.abs();
                log::debug!(
                    "series p={p}: levels={} tail={:.3e}±{:.1e} quad={:.1e}",
                    c.len(),
                    est.tail,
                    est.err,
                    quad_err
                );
                return Ok(SumRuleResult {
                    value,
                    abs_error: tail_err + quad_err + round,
                    modes_used: modes,
                    quad_evals: evals,
                });
            }
        } else if modes >= trunc.max_modes as u64 {
            return Err(Error::NonConvergence { modes: modes as usize, estimate: f64::INFINITY, target: 0.0 });
        }
        target *= 2;
    }
}

#[cfg(test)]
mod tests;
