//! Gauss–Legendre rules, composite panel grids, integration over the
//! descending simplex, and the nested cumulative integrator used for
//! factorized ordered integrals.

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_pd(n, z);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// P_n(z) and P_n′(z).
fn legendre_pd(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

fn legendre_all(n: usize, z: f64) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = z;
    }
    for k in 2..=n {
        let kf = k as f64;
        p[k] = ((2.0 * kf - 1.0) * z * p[k - 1] - (kf - 1.0) * p[k - 2]) / kf;
    }
    p
}

/// Quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadPolicy {
    /// Gauss–Legendre order per panel.
    pub points_per_axis: usize,
    /// Minimum number of panels along the ordered axis.
    pub subdivisions: usize,
    pub rel_tol: f64,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        Self { points_per_axis: 16, subdivisions: 8, rel_tol: 1e-12 }
    }
}

impl QuadPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(4..=128).contains(&self.points_per_axis) {
            return Err(Error::InvalidArgument(format!(
                "points_per_axis must lie in [4, 128], got {}",
                self.points_per_axis
            )));
        }
        if self.subdivisions == 0 {
            return Err(Error::InvalidArgument("subdivisions must be positive".into()));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidArgument(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol)));
        }
        Ok(())
    }

    /// The lower-order companion rule used for error estimates.
    pub fn coarse(&self) -> Self {
        Self { points_per_axis: (self.points_per_axis - self.points_per_axis / 4).max(4), ..*self }
    }
}

/// Integral over the descending simplex hi > y₁ > y₂ > … > y_n > lo.
///
/// Each coordinate is mapped affinely onto [lo, y_{k−1}], so the rule is a
/// tensor product of `points_per_axis` nodes repeated over `subdivisions`
/// panels per axis.
pub fn ordered_integral<F>(n: usize, f: F, lo: f64, hi: f64, quad: &QuadPolicy) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    quad.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("ordered_integral needs n >= 1".into()));
    }
    if n > 6 {
        return Err(Error::OrderTooLarge(n));
    }
    let (gx, gw) = gauss_legendre(quad.points_per_axis);
    let m = quad.subdivisions;
    // composite rule on [0, 1]
    let mut ux = Vec::with_capacity(m * gx.len());
    let mut uw = Vec::with_capacity(m * gx.len());
    for k in 0..m {
        let a = k as f64 / m as f64;
        let h = 1.0 / m as f64;
        for (t, w) in gx.iter().zip(&gw) {
            ux.push(a + 0.5 * h * (t + 1.0));
            uw.push(0.5 * h * w);
        }
    }
    let mut y = vec![0.0; n];
    Ok(recurse(&f, &ux, &uw, &mut y, 0, lo, hi))
}

fn recurse<F: Fn(&[f64]) -> f64>(f: &F, ux: &[f64], uw: &[f64], y: &mut [f64], k: usize, lo: f64, top: f64) -> f64 {
    let jac = top - lo;
    let mut s = 0.0;
    for (u, w) in ux.iter().zip(uw) {
        y[k] = lo + u * jac;
        let v = if k + 1 == y.len() { f(y) } else { recurse(f, ux, uw, y, k + 1, lo, y[k]) };
        s += w * jac * v;
    }
    s
}

/// Composite Gauss grid on [lo, hi] with equal panels and a spectral
/// integration matrix for partial integrals inside each panel.
#[derive(Debug, Clone)]
pub struct PanelGrid {
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
    pub order: usize,
    /// All nodes, ascending, panel-major.
    pub nodes: Vec<f64>,
    /// Full-interval weights of the nodes.
    pub weights: Vec<f64>,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
    // cum[i*q + j] = ∫_{−1}^{t_i} ℓ_j(t) dt
    cum: Vec<f64>,
}

impl PanelGrid {
    pub fn new(lo: f64, hi: f64, panels: usize, order: usize) -> Self {
        let (t, w) = gauss_legendre(order);
        let q = order;
        let mut cum = vec![0.0; q * q];
        let pt: Vec<Vec<f64>> = t.iter().map(|&z| legendre_all(q, z)).collect();
        for i in 0..q {
            for j in 0..q {
                // ℓ_j(t) = Σ_k (2k+1)/2 · w_j P_k(t_j) P_k(t); ∫_{−1}^{t} P_k = (P_{k+1} − P_{k−1})/(2k+1)
                let mut s = 0.5 * (t[i] + 1.0);
                for k in 1..q {
                    s += 0.5 * pt[j][k] * (pt[i][k + 1] - pt[i][k - 1]);
                }
                cum[i * q + j] = w[j] * s;
            }
        }
        let h = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * q);
        let mut weights = Vec::with_capacity(panels * q);
        for p in 0..panels {
            let c = lo + (p as f64 + 0.5) * h;
            for k in 0..q {
                nodes.push(c + 0.5 * h * t[k]);
                weights.push(0.5 * h * w[k]);
            }
        }
        Self { lo, hi, panels, order, nodes, weights, ref_nodes: t, ref_weights: w, cum }
    }

    /// Grid whose panels are no wider than `max_width`, with at least `min_panels` panels.
    pub fn resolving(lo: f64, hi: f64, min_panels: usize, max_width: f64, order: usize) -> Self {
        let by_width =
            if max_width.is_finite() && max_width > 0.0 { ((hi - lo) / max_width).ceil() as usize } else { 1 };
        Self::new(lo, hi, min_panels.max(by_width).max(1), order)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo) / self.panels as f64
    }

    /// ∫ f over the interval.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }

    /// out(y) = ∫_{lo}^{y} e^{−s(y−y′)} f(y′) dy′ at every node, for s ≥ 0.
    pub fn cumulative_decay(&self, s: f64, f: &[f64], out: &mut [f64]) {
        let q = self.order;
        let hh = self.half_width();
        let t = &self.ref_nodes;
        let w = &self.ref_weights;
        // e^{−s(c−y_j)} and e^{−s(y_i−c)} only depend on the reference node
        let mut pre = [0.0f64; 128];
        let mut post = [0.0f64; 128];
        for k in 0..q {
            pre[k] = (s * hh * t[k]).exp();
            post[k] = (-s * hh * t[k]).exp();
        }
        let edge = (-s * hh).exp();
        let mut carry = 0.0;
        let mut g = [0.0f64; 128];
        for p in 0..self.panels {
            let base = p * q;
            let mut total = 0.0;
            for j in 0..q {
                g[j] = hh * pre[j] * f[base + j];
                total += w[j] * g[j];
            }
            for i in 0..q {
                let row = &self.cum[i * q..(i + 1) * q];
                let mut acc = 0.0;
                for j in 0..q {
                    acc += row[j] * g[j];
                }
                // carry decays from the panel's left edge to the node
                out[base + i] = post[i] * (acc + edge * carry);
            }
            carry = edge * (edge * carry + total);
        }
    }
}

/// Ordered integral of a product of single-variable factors linked by
/// exponential decays:
///
/// ∫_{y₁>…>y_p} Π_k h_k(y_k) Π_m e^{−s_m (y_m − y_{m+1})} dy.
///
/// `h` holds the factors sampled on the grid, top point first.
pub fn nested_ordered(grid: &PanelGrid, h: &[&[f64]], s: &[f64], scratch: &mut Vec<f64>) -> f64 {
    let p = h.len();
    debug_assert_eq!(s.len() + 1, p);
    let n = grid.len();
    scratch.resize(2 * n, 0.0);
    let (phi, tmp) = scratch.split_at_mut(n);
    phi.copy_from_slice(h[p - 1]);
    for m in (0..p - 1).rev() {
        grid.cumulative_decay(s[m], phi, tmp);
        for i in 0..n {
            phi[i] = h[m][i] * tmp[i];
        }
    }
    grid.integrate(phi)
}
