//! Green's functions of −Δ on rectangles as mode sums over transverse
//! kernels, the log-product Dirichlet form, and the 3D Dirichlet box.

use crate::basis1d::{eigenfunction_unchecked, eval_terms, level, terms_unchecked, Interval, KernelFamily};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Boundary-condition assembly: x-axis family first, y-axis family last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BCPair {
    DD,
    NN,
    /// Dirichlet in x, Neumann in y.
    DN,
    PP,
    DP,
    NP,
    /// Neumann at x = −a/2, Dirichlet at x = +a/2, periodic in y.
    NDP,
    /// Dirichlet at x = −a/2, Neumann at x = +a/2, periodic in y.
    DNP,
}

impl BCPair {
    pub const ALL: [BCPair; 8] =
        [BCPair::DD, BCPair::NN, BCPair::DN, BCPair::PP, BCPair::DP, BCPair::NP, BCPair::NDP, BCPair::DNP];

    /// (x family, y family).
    pub fn families(self) -> (KernelFamily, KernelFamily) {
        use KernelFamily::*;
        match self {
            BCPair::DD => (Dirichlet, Dirichlet),
            BCPair::NN => (Neumann, Neumann),
            BCPair::DN => (Dirichlet, Neumann),
            BCPair::PP => (Periodic, Periodic),
            BCPair::DP => (Dirichlet, Periodic),
            BCPair::NP => (Neumann, Periodic),
            BCPair::NDP => (NeumannDirichlet, Periodic),
            BCPair::DNP => (DirichletNeumann, Periodic),
        }
    }

    /// True when the assembly has a constant mode that sum rules exclude.
    pub fn has_zero_mode(self) -> bool {
        let (fx, fy) = self.families();
        fx.has_zero_mode() && fy.has_zero_mode()
    }
}

impl std::str::FromStr for BCPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "DD" => BCPair::DD,
            "NN" => BCPair::NN,
            "DN" => BCPair::DN,
            "PP" => BCPair::PP,
            "DP" => BCPair::DP,
            "NP" => BCPair::NP,
            "NDP" => BCPair::NDP,
            "DNP" => BCPair::DNP,
            _ => return Err(Error::InvalidArgument(format!("unknown boundary pair {s}"))),
        })
    }
}

impl std::fmt::Display for BCPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Rectangle (−a/2, a/2) × (−b/2, b/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub a: f64,
    pub b: f64,
}

impl Rect {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("rectangle sides must be finite and > 0, got {a} x {b}")));
        }
        Ok(Self { a, b })
    }

    pub fn area(&self) -> f64 {
        self.a * self.b
    }

    pub fn contains(&self, p: Point2) -> bool {
        let slack = 1.0 + 4.0 * f64::EPSILON;
        p.x.abs() <= 0.5 * self.a * slack && p.y.abs() <= 0.5 * self.b * slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3(pub [f64; 3]);

/// Remainder model after the last included mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailModel {
    /// Exponential envelope e^{−κ d}; used for Green's functions off the diagonal.
    Geometric,
    /// Fitted inverse-power expansion in κ; used for sum-rule series.
    PowerLaw,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_modes: usize,
    pub rel_tol: f64,
    pub tail_model: TailModel,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { max_modes: 100_000, rel_tol: 1e-13, tail_model: TailModel::Geometric }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.max_modes == 0 || self.max_modes > 10_000_000 {
            return Err(Error::InvalidArgument(format!("max_modes must lie in [1, 1e7], got {}", self.max_modes)));
        }
        if !(self.rel_tol > 1e-15 && self.rel_tol < 1.0) {
            return Err(Error::InvalidArgument(format!("rel_tol must lie in (1e-15, 1), got {}", self.rel_tol)));
        }
        Ok(())
    }
}

/// Which family of modes the sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ExpansionAxis {
    /// Pick the axis along which the points are further apart (relative to the other side).
    #[default]
    Auto,
    /// Sum over x-modes with kernels along y.
    XModes,
    /// Sum over y-modes with kernels along x.
    YModes,
}

/// A truncated mode sum with its remainder bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenValue {
    pub value: f64,
    pub tail_bound: f64,
    pub modes: usize,
}

/// G(R, R′) for the assembly `bc`, summed over the automatically chosen axis.
pub fn green(bc: BCPair, rect: Rect, r: Point2, rp: Point2, trunc: &TruncationPolicy) -> Result<f64> {
    Ok(green_expanded(bc, rect, r, rp, ExpansionAxis::Auto, trunc)?.value)
}

fn separation(fam: KernelFamily, len: f64, u: f64, v: f64) -> f64 {
    let d = (u - v).abs();
    if fam == KernelFamily::Periodic {
        d.min(len - d)
    } else {
        d
    }
}

/// G(R, R′) summed over the requested axis.
pub fn green_expanded(
    bc: BCPair,
    rect: Rect,
    r: Point2,
    rp: Point2,
    axis: ExpansionAxis,
    trunc: &TruncationPolicy,
) -> Result<GreenValue> {
    trunc.validate()?;
    if !rect.contains(r) || !rect.contains(rp) {
        return Err(Error::Domain("point outside the rectangle".into()));
    }
    if r == rp {
        return Err(Error::DiagonalPoint);
    }
    let (fx, fy) = bc.families();
    let dx = separation(fx, rect.a, r.x, rp.x);
    let dy = separation(fy, rect.b, r.y, rp.y);
    let use_x = match axis {
        ExpansionAxis::XModes => true,
        ExpansionAxis::YModes => false,
        ExpansionAxis::Auto => dy / rect.a >= dx / rect.b,
    };
    if use_x {
        mode_sum(fx, rect.a, r.x, rp.x, fy, rect.b, r.y, rp.y, dy, trunc)
    } else {
        mode_sum(fy, rect.b, r.y, rp.y, fx, rect.a, r.x, rp.x, dx, trunc)
    }
}

// Σ over modes of `mf` (side `ml`) of ψ(u)ψ(u′)·g_kf(v, v′; κ²).
#[allow(clippy::too_many_arguments)]
fn mode_sum(
    mf: KernelFamily,
    ml: f64,
    u: f64,
    up: f64,
    kf: KernelFamily,
    kl: f64,
    v: f64,
    vp: f64,
    dist: f64,
    trunc: &TruncationPolicy,
) -> Result<GreenValue> {
    let interval = Interval::new(ml)?;
    let half = 0.5 * kl;
    let mut sum = 0.0;
    let mut modes = 0usize;
    let mut j = 0u32;
    loop {
        let lev = level(mf, interval, j);
        let terms = terms_unchecked(kf, kl, lev.kappa);
        let g = eval_terms(&terms, lev.kappa, half, v, vp);
        for m in &lev.modes {
            sum += eigenfunction_unchecked(mf, ml, *m, u) * eigenfunction_unchecked(mf, ml, *m, up) * g;
            modes += 1;
        }
        j += 1;
        let next = level(mf, interval, j);
        let step = next.kappa - lev.kappa;
        // |ψψ| ≤ 2/L per mode, |g| ≤ 2 e^{−κ d}/κ
        let env = |k: f64| 2.0 * next.modes.len() as f64 / ml * 2.0 * (-k * dist).exp() / k;
        let ratio = (-step * dist).exp();
        let tail = if ratio < 1.0 { env(next.kappa) / (1.0 - ratio) } else { f64::INFINITY };
        if tail <= trunc.rel_tol * sum.abs() || tail < 1e-300 {
            return Ok(GreenValue { value: sum, tail_bound: tail, modes });
        }
        if modes >= trunc.max_modes {
            if trunc.tail_model == TailModel::None {
                return Ok(GreenValue { value: sum, tail_bound: tail, modes });
            }
            return Err(Error::NonConvergence { modes, estimate: tail, target: trunc.rel_tol * sum.abs() });
        }
    }
}

// ln(cosh u + σ cos v) without cancellation or overflow
fn ln_cosh_cos(u: f64, v: f64, sigma: f64) -> f64 {
    let u = u.abs();
    if u > 40.0 {
        let e = (-u).exp();
        u - std::f64::consts::LN_2 + (e * e + 2.0 * sigma * v.cos() * e).ln_1p()
    } else {
        let sh = (0.5 * u).sinh();
        let t = if sigma > 0.0 { (0.5 * v).cos() } else { (0.5 * v).sin() };
        (2.0 * (sh * sh + t * t)).ln()
    }
}

/// Dirichlet G(R, R′) from the rapidly convergent log-product, factors j < `j_terms`.
pub fn green_dirichlet_product(rect: Rect, r: Point2, rp: Point2, j_terms: usize) -> Result<f64> {
    if !rect.contains(r) || !rect.contains(rp) {
        return Err(Error::Domain("point outside the rectangle".into()));
    }
    if r == rp {
        return Err(Error::DiagonalPoint);
    }
    let (a, b) = (rect.a, rect.b);
    let xm = r.x - rp.x;
    let xp = r.x + rp.x;
    let ym = (r.y - rp.y).abs();
    let yp = r.y + rp.y;
    let vm = PI * xm / a;
    let vp = PI * xp / a;
    let mut s = 0.0;
    for j in 0..j_terms {
        let jf = j as f64;
        let u1 = PI * (2.0 * b * jf + b - yp) / a;
        let u2 = PI * (2.0 * b * jf + b + yp) / a;
        let u3 = PI * (2.0 * b * (jf + 1.0) - ym) / a;
        let u4 = PI * (ym + 2.0 * b * jf) / a;
        let omega =
            ln_cosh_cos(u1, vm, -1.0) + ln_cosh_cos(u2, vm, -1.0) + ln_cosh_cos(u3, vp, 1.0) + ln_cosh_cos(u4, vp, 1.0);
        let theta =
            ln_cosh_cos(u1, vp, 1.0) + ln_cosh_cos(u2, vp, 1.0) + ln_cosh_cos(u3, vm, -1.0) + ln_cosh_cos(u4, vm, -1.0);
        s += omega - theta;
    }
    Ok(s / (4.0 * PI))
}

/// Dirichlet Green's function of the box Π(−a_i/2, a_i/2).
pub fn green3_dirichlet(dims: [f64; 3], r: Point3, rp: Point3, trunc: &TruncationPolicy) -> Result<GreenValue> {
    trunc.validate()?;
    for (i, &a) in dims.iter().enumerate() {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("box side {i} must be finite and > 0")));
        }
        let slack = 0.5 * a * (1.0 + 4.0 * f64::EPSILON);
        if r.0[i].abs() > slack || rp.0[i].abs() > slack {
            return Err(Error::Domain("point outside the box".into()));
        }
    }
    if r == rp {
        return Err(Error::DiagonalPoint);
    }
    // kernel along the axis of largest separation
    let k = (0..3).max_by(|&i, &j| (r.0[i] - rp.0[i]).abs().total_cmp(&(r.0[j] - rp.0[j]).abs())).unwrap_or(2);
    let (i1, i2) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (a1, a2, a3) = (dims[i1], dims[i2], dims[k]);
    let d = (r.0[k] - rp.0[k]).abs();
    let fam = KernelFamily::Dirichlet;
    let term = |n1: u32, n2: u32| {
        let m1 = crate::basis1d::ModeIndex::new(n1, 1);
        let m2 = crate::basis1d::ModeIndex::new(n2, 1);
        let psi = eigenfunction_unchecked(fam, a1, m1, r.0[i1])
            * eigenfunction_unchecked(fam, a1, m1, rp.0[i1])
            * eigenfunction_unchecked(fam, a2, m2, r.0[i2])
            * eigenfunction_unchecked(fam, a2, m2, rp.0[i2]);
        let kappa = PI * ((n1 as f64 / a1).powi(2) + (n2 as f64 / a2).powi(2)).sqrt();
        psi * eval_terms(&terms_unchecked(fam, a3, kappa), kappa, 0.5 * a3, r.0[k], rp.0[k])
    };
    // shells in κ: add all lattice points with κ in (k_prev, k_next]
    let mut sum = 0.0;
    let mut modes = 0usize;
    let mut k_prev = 0.0f64;
    let mut k_next = PI * (1.0 / a1.min(a2)) * 8.0;
    loop {
        let n1_max = (k_next * a1 / PI).floor() as u32;
        let mut shell = Vec::new();
        for n1 in 1..=n1_max {
            let rem = (k_next * a2 / PI).powi(2) - (n1 as f64 * a2 / a1).powi(2);
            if rem < 1.0 {
                break;
            }
            let n2_max = rem.sqrt().floor() as u32;
            for n2 in 1..=n2_max {
                let kappa = PI * ((n1 as f64 / a1).powi(2) + (n2 as f64 / a2).powi(2)).sqrt();
                if kappa > k_prev {
                    shell.push((kappa, n1, n2));
                }
            }
        }
        shell.sort_by(|x, y| x.0.total_cmp(&y.0));
        for &(_, n1, n2) in &shell {
            sum += term(n1, n2);
        }
        modes += shell.len();
        // remainder: lattice density a1 a2 κ/(2π) times 4/(a1 a2) e^{−κd}/κ, doubled
        let tail = if d > 0.0 { 4.0 / PI * (-k_next * d).exp() / d } else { f64::INFINITY };
        if tail <= trunc.rel_tol * sum.abs() || tail < 1e-300 {
            return Ok(GreenValue { value: sum, tail_bound: tail, modes });
        }
        if modes >= trunc.max_modes {
            return Err(Error::NonConvergence { modes, estimate: tail, target: trunc.rel_tol * sum.abs() });
        }
        k_prev = k_next;
        k_next *= 1.5;
    }
}
