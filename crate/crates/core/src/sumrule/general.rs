//! Coupled-mode expansion for densities that vary in both directions.
//!
//! With modes ψ_m along u and kernels along v, each vertex carries
//! M_{mm′}(v) = ∫ψ_mψ_{m′}Σ(u, v)du and each edge one mode. Contributions
//! are binned by the highest level present and the bins closed by the
//! power-law tail.

use super::diagram::Diagram;
use super::integrand::{cycle_integral, grid_terms, level_grid, GridTerm, Work};
use super::tail::{ladder_tail, Ladder};
use super::{check_order, enumerate_diagrams, SumRuleResult};
use crate::basis1d::{ladder, level, terms_unchecked, trig_form, Interval, KernelFamily};
use crate::error::{Error, Result};
use crate::green2d::{TailModel, TruncationPolicy};
use crate::quadrature::{PanelGrid, QuadPolicy};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::f64::consts::PI;

struct Mode {
    level: usize,
    amp: f64,
    omega: f64,
    phase: f64,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn dense_sum(
    p: usize,
    mode_fam: KernelFamily,
    mode_len: f64,
    ker_fam: KernelFamily,
    ker_len: f64,
    field: &(dyn Fn(f64, f64) -> f64 + Sync),
    trunc: &TruncationPolicy,
    quad: &QuadPolicy,
) -> Result<SumRuleResult> {
    check_order(p)?;
    trunc.validate()?;
    quad.validate()?;
    let interval = Interval::new(mode_len)?;
    Interval::new(ker_len)?;
    if mode_fam.has_zero_mode() && ker_fam.has_zero_mode() {
        return Err(Error::InvalidArgument(
            "assemblies with a constant mode need a density that depends on one coordinate".into(),
        ));
    }
    for i in 0..=16 {
        for j in 0..=16 {
            let v = field(mode_len * (i as f64 / 16.0 - 0.5), ker_len * (j as f64 / 16.0 - 0.5));
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("density must be finite and > 0, got {v}")));
            }
        }
    }
    let diagrams = enumerate_diagrams(p)?;
    let (step, offset, _) = ladder(mode_fam, mode_len);
    let lad = Ladder { step, offset };
    let s0 = (2 * p - 1) as f64;
    let mut levels = 16usize;
    let mut evals = 0u64;
    loop {
        let (bins, n_modes, n_evals) = binned(p, &diagrams, mode_fam, interval, ker_fam, ker_len, field, levels, quad);
        evals += n_evals;
        let partial: f64 = bins.iter().sum();
        if let Some(est) = ladder_tail(&bins, lad, s0, 1) {
            let total = partial + est.tail;
            let tol = trunc.rel_tol * total.abs();
            let capped = n_modes as usize * 2 > trunc.max_modes || levels >= 256;
            if est.err <= tol || capped {
                if est.err > tol {
                    return Err(Error::NonConvergence { modes: n_modes as usize, estimate: est.err, target: tol });
                }
                let (value, err) = match trunc.tail_model {
                    TailModel::PowerLaw => (total, est.err),
                    _ => (partial, est.tail.abs() + est.err),
                };
                return Ok(SumRuleResult {
                    value,
                    abs_error: err + 8.0 * f64::EPSILON * levels as f64 * value.abs(),
                    modes_used: n_modes,
                    quad_evals: evals,
                });
            }
        }
        levels *= 2;
    }
}

/// Contributions grouped by the highest level among the edge modes.
#[allow(clippy::too_many_arguments)]
fn binned(
    p: usize,
    diagrams: &[Diagram],
    mode_fam: KernelFamily,
    interval: Interval,
    ker_fam: KernelFamily,
    ker_len: f64,
    field: &(dyn Fn(f64, f64) -> f64 + Sync),
    levels: usize,
    quad: &QuadPolicy,
) -> (Vec<f64>, u64, u64) {
    let a = interval.len();
    let mut modes = Vec::new();
    let mut kappas = Vec::new();
    for j in 0..levels {
        let lev = level(mode_fam, interval, j as u32);
        kappas.push(lev.kappa);
        for m in lev.modes {
            let (amp, omega, phase) = trig_form(mode_fam, a, m);
            modes.push(Mode { level: j, amp, omega, phase });
        }
    }
    let k_max = kappas[levels - 1];
    let grid = level_grid(ker_len, k_max, p, quad);
    let nv = grid.len();

    // Fourier moments of Σ(·, v) at multiples of π/a
    let kf = modes.iter().map(|m| (2.0 * m.omega * a / PI).round() as usize).max().unwrap_or(0) + 1;
    let upanels = (2.0 * k_max * a / PI).ceil() as usize + 2;
    let ugrid = PanelGrid::new(-0.5 * a, 0.5 * a, upanels, quad.points_per_axis);
    let nu = ugrid.len();
    let cos_t = DMatrix::from_fn(kf, nu, |k, i| (k as f64 * PI * ugrid.nodes[i] / a).cos());
    let sin_t = DMatrix::from_fn(kf, nu, |k, i| (k as f64 * PI * ugrid.nodes[i] / a).sin());
    let ws = DMatrix::from_fn(nu, nv, |i, k| ugrid.weights[i] * field(ugrid.nodes[i], grid.nodes[k]));
    let fc = &cos_t * &ws;
    let fs = &sin_t * &ws;
    let part = |omega: f64, phase: f64, v: usize| -> f64 {
        let kk = (omega * a / PI).round() as i64;
        let (k, ph) = if kk < 0 { ((-kk) as usize, -phase) } else { (kk as usize, phase) };
        ph.cos() * fc[(k, v)] - ph.sin() * fs[(k, v)]
    };
    let nm = modes.len();
    let idx = |i: usize, j: usize| if i <= j { i * nm + j } else { j * nm + i };
    let mut mat: Vec<Vec<f64>> = vec![Vec::new(); nm * nm];
    let mut peak = vec![0.0f64; nm * nm];
    for i in 0..nm {
        for j in i..nm {
            let (mi, mj) = (&modes[i], &modes[j]);
            let col: Vec<f64> = (0..nv)
                .map(|v| {
                    0.5 * mi.amp
                        * mj.amp
                        * (part(mi.omega - mj.omega, mi.phase - mj.phase, v)
                            + part(mi.omega + mj.omega, mi.phase + mj.phase, v))
                })
                .collect();
            peak[idx(i, j)] = col.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            mat[idx(i, j)] = col;
        }
    }
    let top = peak.iter().fold(0.0f64, |m, x| m.max(*x));
    let live = |i: usize, j: usize| peak[idx(i, j)] > 1e-15 * top;

    let half = 0.5 * ker_len;
    let terms: Vec<Vec<GridTerm>> =
        kappas.iter().map(|&k| grid_terms(&terms_unchecked(ker_fam, ker_len, k), k, half, &grid)).collect();

    // each diagram's edges in cycle order: edge e joins cycle[e] → cycle[e+1]
    let per_first: Vec<(Vec<f64>, u64)> = (0..nm)
        .into_par_iter()
        .map(|m0| {
            let mut bins = vec![0.0; levels];
            let mut evals = 0u64;
            let mut work = Work::default();
            let mut assign = vec![0usize; p];
            assign[0] = m0;
            for d in diagrams {
                let cyc = &d.cycle;
                let edges: Vec<(usize, usize)> = (0..p)
                    .map(|e| {
                        let (x, y) = (cyc[e], cyc[(e + 1) % p]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                for r in assign.iter_mut().skip(1) {
                    *r = 0;
                }
                'odo: loop {
                    // vertex cyc[e+1] sits between edges e and e+1
                    let ok = (0..p).all(|e| live(assign[e], assign[(e + 1) % p]));
                    if ok {
                        let mut vw: Vec<&[f64]> = vec![&[]; p];
                        for e in 0..p {
                            vw[cyc[(e + 1) % p]] = &mat[idx(assign[e], assign[(e + 1) % p])];
                        }
                        let et: Vec<&[GridTerm]> = assign.iter().map(|&m| terms[modes[m].level].as_slice()).collect();
                        let v = cycle_integral(&grid, &edges, &et, &vw, &mut work);
                        let top_level = assign.iter().map(|&m| modes[m].level).max().unwrap_or(0);
                        bins[top_level] += d.weight() * v;
                        evals += nv as u64;
                    }
                    let mut e = 1;
                    loop {
                        if e == p {
                            break 'odo;
                        }
                        assign[e] += 1;
                        if assign[e] < nm {
                            break;
                        }
                        assign[e] = 0;
                        e += 1;
                    }
                }
            }
            (bins, evals)
        })
        .collect();
    let mut bins = vec![0.0; levels];
    let mut evals = (nu * nv) as u64;
    for (b, e) in per_first {
        for (acc, x) in bins.iter_mut().zip(b) {
            *acc += x;
        }
        evals += e;
    }
    (bins, nm as u64, evals)
}
