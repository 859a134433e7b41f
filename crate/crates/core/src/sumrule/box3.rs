//! Dirichlet box with a density along the third axis: a double series over
//! (n₁, n₂) whose terms depend on Γ = π²(n₁²/a₁² + n₂²/a₂²) only.

use super::integrand::LevelProblem;
use super::tail::{fit, TailEstimate};
use super::{check_order, check_profile, enumerate_diagrams, Profile, SumRuleResult};
use crate::basis1d::KernelFamily;
use crate::error::{Error, Result};
use crate::green2d::{TailModel, TruncationPolicy};
use crate::quadrature::QuadPolicy;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Lattice points (n₁, n₂ ≥ 1) with κ ≤ k_max, keyed by κ² (bitwise) with their multiplicity.
fn shells(a1: f64, a2: f64, k_lo: f64, k_hi: f64) -> BTreeMap<u64, (f64, u64)> {
    let mut out: BTreeMap<u64, (f64, u64)> = BTreeMap::new();
    let n1_max = (k_hi * a1 / PI).floor() as u64;
    for n1 in 1..=n1_max {
        let e1 = (n1 as f64 * PI / a1).powi(2);
        let rem = k_hi * k_hi - e1;
        if rem < 0.0 {
            break;
        }
        let n2_max = (rem.sqrt() * a2 / PI).floor() as u64;
        for n2 in 1..=n2_max {
            let k2 = e1 + (n2 as f64 * PI / a2).powi(2);
            if k2 <= k_lo * k_lo || k2 > k_hi * k_hi {
                continue;
            }
            let e = out.entry(k2.to_bits()).or_insert((k2.sqrt(), 0));
            e.1 += 1;
        }
    }
    out
}

/// Z(p) for −ΔΨ = E σ(x₃) Ψ in the Dirichlet box Π(−a_i/2, a_i/2).
pub fn zeta_box3_separable(
    p: usize,
    dims: [f64; 3],
    profile: &Profile,
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    check_order(p)?;
    trunc.validate()?;
    quad.validate()?;
    for (i, a) in dims.iter().enumerate() {
        if !(*a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("box side {i} must be finite and > 0")));
        }
    }
    let [a1, a2, a3] = dims;
    check_profile(profile.as_ref(), a3)?;
    let diagrams = enumerate_diagrams(p)?;
    let sigma = profile.as_ref();
    let problem =
        LevelProblem { p, diagrams: &diagrams, fam: KernelFamily::Dirichlet, len: a3, sigma, weighted_zero: false };
    let s0 = (2 * p - 1) as f64;

    // explicit values T(κ) below k_e
    let mut computed: Vec<(f64, u64, f64)> = Vec::new();
    let mut evals = 0u64;
    let mut k_done = 0.0;
    let mut k_e = 24.0 * PI / a1.min(a2);
    // lattice up to k_big is summed with the fitted model, beyond it a smooth count
    let k_big_for = |k_e: f64| (4.0 * PI * 4.0e6 / (a1 * a2)).sqrt().max(4.0 * k_e);
    loop {
        let fresh: Vec<(f64, u64)> = shells(a1, a2, k_done, k_e).into_values().collect();
        let vals: Vec<(f64, u64, f64, u64)> = fresh
            .par_iter()
            .map(|&(k, m)| {
                let (v, n) = problem.eval(k, quad);
                (k, m, v, n)
            })
            .collect();
        for (k, m, v, n) in vals {
            computed.push((k, m, v));
            evals += n;
        }
        computed.sort_by(|x, y| x.0.total_cmp(&y.0));
        k_done = k_e;
        let explicit: f64 = computed.iter().map(|&(_, m, v)| m as f64 * v).sum();
        let modes: u64 = computed.iter().map(|t| t.1).sum();

        let est = tail(&computed, a1, a2, k_e, k_big_for(k_e), s0);
        if let Some(est) = est {
            let total = explicit + est.tail;
            let tol = trunc.rel_tol * total.abs();
            if est.err <= tol || modes >= trunc.max_modes as u64 {
                if est.err > tol {
                    return Err(Error::NonConvergence { modes: modes as usize, estimate: est.err, target: tol });
                }
                let coarse = quad.coarse();
                let mut rel = 0.0f64;
                for &(k, _, v) in [computed[0], computed[computed.len() - 1]].iter() {
                    let (vc, n) = problem.eval(k, &coarse);
                    evals += n;
                    rel = rel.max(((vc - v) / v).abs());
                }
                let (value, tail_err) = match trunc.tail_model {
                    TailModel::PowerLaw => (total, est.err),
                    _ => (explicit, est.tail.abs() + est.err),
                };
                let abs_error = tail_err + rel * value.abs() + 4.0 * f64::EPSILON * computed.len() as f64 * value.abs();
                return Ok(SumRuleResult { value, abs_error, modes_used: modes, quad_evals: evals });
            }
        } else if modes >= trunc.max_modes as u64 {
            return Err(Error::NonConvergence { modes: modes as usize, estimate: f64::INFINITY, target: 0.0 });
        }
        k_e *= 1.5;
    }
}

// Σ over lattice points beyond k_e of the fitted model, lattice to k_big then smooth counting.
fn tail(computed: &[(f64, u64, f64)], a1: f64, a2: f64, k_e: f64, k_big: f64, s0: f64) -> Option<TailEstimate> {
    let win: Vec<&(f64, u64, f64)> = computed.iter().filter(|t| t.0 >= 0.5 * k_e).collect();
    if win.len() < 12 {
        return None;
    }
    let x: Vec<f64> = win.iter().map(|t| k_e / t.0).collect();
    let y: Vec<f64> = win.iter().map(|t| t.2).collect();
    let kmax = (win.len() / 4).clamp(2, 6);
    // moments Σ (k_e/κ)^{s} over the remaining lattice, per power
    let powers: Vec<f64> = (0..kmax).map(|i| s0 + i as f64).collect();
    let mut mom = vec![0.0; kmax];
    let n1_max = (k_big * a1 / PI).floor() as u64;
    let mut count_big = 0u64;
    let mut rows: Vec<Vec<f64>> = (1..=n1_max)
        .into_par_iter()
        .map(|n1| {
            let mut acc = vec![0.0; kmax + 1];
            let e1 = (n1 as f64 * PI / a1).powi(2);
            let rem = k_big * k_big - e1;
            if rem <= 0.0 {
                return acc;
            }
            let n2_max = (rem.sqrt() * a2 / PI).floor() as u64;
            for n2 in 1..=n2_max {
                let k2 = e1 + (n2 as f64 * PI / a2).powi(2);
                if k2 > k_big * k_big {
                    continue;
                }
                acc[kmax] += 1.0;
                if k2 <= k_e * k_e {
                    continue;
                }
                let r = k_e / k2.sqrt();
                let mut t = r.powf(s0);
                for a in acc.iter_mut().take(kmax) {
                    *a += t;
                    t *= r;
                }
            }
            acc
        })
        .collect();
    for row in rows.drain(..) {
        for i in 0..kmax {
            mom[i] += row[i];
        }
        count_big += row[kmax] as u64;
    }
    // smooth Dirichlet count N(K) = a₁a₂K²/4π − (a₁+a₂)K/2π + 1/4 beyond k_big
    let smooth = a1 * a2 * k_big * k_big / (4.0 * PI) - (a1 + a2) * k_big / (2.0 * PI) + 0.25;
    let jump = smooth - count_big as f64;
    for (i, s) in powers.iter().enumerate() {
        let ke_s = (k_e / k_big).powf(*s);
        mom[i] +=
            ke_s * (a1 * a2 * k_big * k_big / (2.0 * PI * (s - 2.0)) - (a1 + a2) * k_big / (2.0 * PI * (s - 1.0)));
        mom[i] += jump * ke_s;
    }
    let eval = |g: &[f64]| g.iter().zip(&mom).map(|(a, b)| a * b).sum::<f64>();
    let gk = fit(&x, &y, s0, kmax)?;
    let gk1 = fit(&x, &y, s0, kmax - 1)?;
    let t = eval(&gk);
    let t1 = eval(&gk1);
    // residual lattice-count fluctuation beyond k_big, of typical size √K
    let fluct = (jump.abs() + k_big.sqrt()) * (gk[0] * (k_e / k_big).powf(s0)).abs();
    Some(TailEstimate { tail: t, err: (t - t1).abs() + fluct })
}
