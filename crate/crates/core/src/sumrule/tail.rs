//! Inverse-power tail model for level series C_j ≈ Σ_i β_i κ_j^{−(s₀+i)}.

use crate::specialfn::hurwitz_zeta;
use nalgebra::{DMatrix, DVector};

/// Arithmetic ladder κ_j = step·(j + offset).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ladder {
    pub step: f64,
    pub offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TailEstimate {
    pub tail: f64,
    pub err: f64,
}

/// Least-squares coefficients γ for y_j ≈ Σ_i γ_i x_j^{s₀+i}.
pub(crate) fn fit(x: &[f64], y: &[f64], s0: f64, terms: usize) -> Option<Vec<f64>> {
    let rows = x.len();
    if rows < terms + 2 || terms == 0 {
        return None;
    }
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Some(vec![0.0; terms]);
    }
    let a = DMatrix::from_fn(rows, terms, |r, c| x[r].powf(s0 + c as f64));
    let b = DVector::from_iterator(rows, y.iter().map(|v| v / scale));
    let svd = a.svd(true, true);
    let g = svd.solve(&b, 1e-14).ok()?;
    Some(g.iter().map(|v| v * scale).collect())
}

/// Tail Σ_{j>last} C_j from the levels `first..=last` of `c` (indexed by level).
pub(crate) fn ladder_tail(c: &[f64], ladder: Ladder, s0: f64, first: usize) -> Option<TailEstimate> {
    let last = c.len() - 1;
    let q = last as f64 + 1.0 + ladder.offset;
    let k_star = ladder.step * (last as f64 + ladder.offset);
    let window = |lo: usize, hi: usize| -> (Vec<f64>, Vec<f64>) {
        let x = (lo..=hi).map(|j| k_star / (ladder.step * (j as f64 + ladder.offset))).collect();
        (x, c[lo..=hi].to_vec())
    };
    let moments = |terms: usize| -> Vec<f64> {
        (0..terms)
            .map(|i| {
                let s = s0 + i as f64;
                (k_star / ladder.step).powf(s) * hurwitz_zeta(s as u32, q).unwrap_or(f64::NAN)
            })
            .collect()
    };
    tail_from_windows(last, first, s0, &window, &moments)
}

/// Shared driver: fits on [last/2, last] with K and K−1 terms and on a shifted window.
pub(crate) fn tail_from_windows(
    last: usize,
    first: usize,
    s0: f64,
    window: &dyn Fn(usize, usize) -> (Vec<f64>, Vec<f64>),
    moments: &dyn Fn(usize) -> Vec<f64>,
) -> Option<TailEstimate> {
    let lo = (last / 2).max(first);
    if last < lo + 8 {
        return None;
    }
    let npts = last - lo + 1;
    let k = (npts / 3).clamp(2, 7);
    let eval = |g: &[f64], m: &[f64]| g.iter().zip(m).map(|(a, b)| a * b).sum::<f64>();
    let m = moments(k);
    let (x, y) = window(lo, last);
    let g_k = fit(&x, &y, s0, k)?;
    let g_k1 = fit(&x, &y, s0, k - 1)?;
    let t_k = eval(&g_k, &m);
    let t_k1 = eval(&g_k1, &m[..k - 1]);
    // same model on a window shifted down by a quarter
    let shift = npts / 4;
    let (xs, ys) = window(lo.saturating_sub(shift).max(first), last - shift);
    let t_shift = fit(&xs, &ys, s0, k).map(|g| eval(&g, &m)).unwrap_or(t_k1);
    if !(t_k.is_finite() && t_k1.is_finite()) {
        return None;
    }
    Some(TailEstimate { tail: t_k, err: (t_k - t_k1).abs() + (t_k - t_shift).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn recovers_exact_power_series() {
        // C_j = 3κ⁻³ − κ⁻⁴ + 0.2κ⁻⁶ on the Dirichlet ladder of a unit interval
        let ladder = Ladder { step: PI, offset: 1.0 };
        let f = |k: f64| 3.0 * k.powi(-3) - k.powi(-4) + 0.2 * k.powi(-6);
        let c: Vec<f64> = (0..64).map(|j| f(PI * (j as f64 + 1.0))).collect();
        let est = ladder_tail(&c, ladder, 3.0, 1).unwrap();
        let exact: f64 = (64..2_000_000).map(|j| f(PI * (j as f64 + 1.0))).sum::<f64>()
            + 3.0 * PI.powi(-3) / (2.0 * 2_000_001f64.powi(2));
        assert!((est.tail - exact).abs() < 1e-9 * exact, "{} {}", est.tail, exact);
        assert!(est.err < 1e-8 * exact);
    }

    #[test]
    fn too_few_levels() {
        let c = vec![1.0; 10];
        assert!(ladder_tail(&c, Ladder { step: 1.0, offset: 0.0 }, 3.0, 1).is_none());
    }
}
