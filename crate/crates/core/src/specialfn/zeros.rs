use super::bessel::jy;
use super::roots::brent;
use super::BesselOrder;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Boundary pairing for annulus cross products: first letter at r_min, second at r = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CrossKind {
    DD,
    NN,
    ND,
    DN,
}

impl std::str::FromStr for CrossKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DD" => Ok(Self::DD),
            "NN" => Ok(Self::NN),
            "ND" => Ok(Self::ND),
            "DN" => Ok(Self::DN),
            _ => Err(Error::InvalidArgument(format!("unknown annulus edge pairing {s}"))),
        }
    }
}

impl std::fmt::Display for CrossKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

fn mcmahon(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

fn refine_j(nu: f64, a: f64, b: f64) -> Result<f64> {
    brent(|x| jy(nu, x).j, a, b, 1e-15 * b)
}

/// The k-th positive zero of J_ν.
pub fn bessel_j_zero(nu: BesselOrder, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("zero index k starts at 1".into()));
    }
    let v = nu.get();
    let beta = (k as f64 + 0.5 * v - 0.25) * PI;
    if beta > 8.0 + 6.0 * v * v {
        // McMahon is accurate to far better than the half spacing here
        let g = mcmahon(v, k);
        let (a, b) = (g - 0.5, g + 0.5);
        if jy(v, a).j.signum() != jy(v, b).j.signum() {
            return refine_j(v, a, b);
        }
    }
    let zs = scan_j(v, k, f64::INFINITY)?;
    zs.get(k - 1).copied().ok_or_else(|| Error::Bracket(format!("J_{v} zero {k} not bracketed")))
}

/// All positive zeros of J_ν below `x_max`, ascending.
pub fn bessel_j_zeros_below(nu: BesselOrder, x_max: f64) -> Result<Vec<f64>> {
    scan_j(nu.get(), usize::MAX, x_max)
}

fn scan_j(v: f64, count: usize, x_max: f64) -> Result<Vec<f64>> {
    // j_{ν,1} > ν, and consecutive zeros are more than 2.7 apart
    let step = PI / 4.0;
    let mut out = Vec::new();
    let mut x0 = if v > 0.0 { v } else { 0.5 };
    let mut f0 = jy(v, x0).j;
    let budget = 8 + 4 * count.min(1 << 28) + (4.0 * x_max.min(1e8) / PI) as usize;
    for _ in 0..budget {
        if out.len() >= count {
            break;
        }
        let x1 = x0 + step;
        if x0 >= x_max {
            break;
        }
        let f1 = jy(v, x1).j;
        if f0 == 0.0 {
            out.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let z = refine_j(v, x0, x1)?;
            if z <= x_max {
                out.push(z);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}

fn cross_eval(kind: CrossKind, m: f64, r_min: f64, kappa: f64) -> f64 {
    let inner = jy(m, kappa * r_min);
    let outer = jy(m, kappa);
    let (ji, yi) = match kind {
        CrossKind::DD | CrossKind::DN => (inner.j, inner.y),
        CrossKind::NN | CrossKind::ND => (inner.jp, inner.yp),
    };
    let (jo, yo) = match kind {
        CrossKind::DD | CrossKind::ND => (outer.j, outer.y),
        CrossKind::NN | CrossKind::DN => (outer.jp, outer.yp),
    };
    // f = ji·yo − jo·yi, scaled by |yi| so the inner Y never overflows
    if !yi.is_finite() || yi.abs() > 1e200 {
        return -jo * yi.signum();
    }
    let s = yi.abs();
    (ji / s) * yo - jo * (yi / s)
}

/// The k-th positive root κ of the annulus cross product of angular order m.
pub fn cross_bessel_zero(kind: CrossKind, m: u32, r_min: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("root index k starts at 1".into()));
    }
    check_rmin(r_min)?;
    let spacing = PI / (1.0 - r_min);
    let kappa_max = m as f64 + (k as f64 + 4.0) * spacing + 50.0;
    let roots = scan_cross(kind, m, r_min, kappa_max, k)?;
    roots
        .get(k - 1)
        .copied()
        .ok_or_else(|| Error::Bracket(format!("{kind} root {k} for m={m} not found below {kappa_max}")))
}

/// All positive cross-product roots of angular order m below `kappa_max`, ascending.
pub fn cross_bessel_zeros_below(kind: CrossKind, m: u32, r_min: f64, kappa_max: f64) -> Result<Vec<f64>> {
    check_rmin(r_min)?;
    scan_cross(kind, m, r_min, kappa_max, usize::MAX)
}

fn check_rmin(r_min: f64) -> Result<()> {
    if !(r_min > 0.0 && r_min < 1.0) {
        return Err(Error::Domain(format!("r_min must lie in (0,1), got {r_min}")));
    }
    Ok(())
}

fn scan_cross(kind: CrossKind, m: u32, r_min: f64, kappa_max: f64, count: usize) -> Result<Vec<f64>> {
    let mf = m as f64;
    let f = |kappa: f64| cross_eval(kind, mf, r_min, kappa);
    // every root satisfies κ > m
    let step = PI * (1.0 - r_min) / 8.0;
    let mut x0 = if m == 0 { 1e-3 * step } else { mf };
    let mut f0 = f(x0);
    let mut out = Vec::new();
    while x0 < kappa_max && out.len() < count {
        let x1 = (x0 + step).min(kappa_max);
        let f1 = f(x1);
        if f0 != 0.0 && f1 != 0.0 && f0.signum() != f1.signum() {
            out.push(brent(f, x0, x1, 1e-14 * x1)?);
        } else if f1 == 0.0 {
            out.push(x1);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}
