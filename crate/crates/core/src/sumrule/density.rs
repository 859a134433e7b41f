//! Densities Σ(x, y) on the reference rectangle.

use std::fmt;
use std::sync::Arc;

/// One-dimensional density profile.
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Two-dimensional density.
pub type Field = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SeparableAxis {
    None,
    XOnly,
    YOnly,
}

/// Σ(x, y), tagged by the structure the engine can exploit.
#[derive(Clone)]
pub enum Density2 {
    Constant(f64),
    XOnly(Profile),
    YOnly(Profile),
    General(Field),
}

impl fmt::Debug for Density2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density2::Constant(c) => write!(f, "Constant({c})"),
            Density2::XOnly(_) => f.write_str("XOnly(..)"),
            Density2::YOnly(_) => f.write_str("YOnly(..)"),
            Density2::General(_) => f.write_str("General(..)"),
        }
    }
}

impl Density2 {
    pub fn x_only(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Density2::XOnly(Arc::new(f))
    }

    pub fn y_only(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Density2::YOnly(Arc::new(f))
    }

    pub fn general(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Density2::General(Arc::new(f))
    }

    /// Jacobian density r_min·e^{2x} of the annulus map on [½ln r_min, −½ln r_min] × [−π, π].
    pub fn conformal_annulus(r_min: f64) -> Self {
        Density2::x_only(move |x| r_min * (2.0 * x).exp())
    }

    /// Radial power density ρ(r) ∝ r^b pulled back by the annulus map (unit mass normalisation).
    pub fn power_annulus(b: f64, r_min: f64) -> Self {
        let c = b + 2.0;
        let lr = r_min.ln();
        let pref = if c.abs() < 1e-12 {
            (r_min * r_min - 1.0) / (2.0 * lr)
        } else {
            c * (r_min * r_min - 1.0) / (2.0 * (c * lr).exp_m1())
        };
        Density2::x_only(move |x| {
            let r2 = r_min * (2.0 * x).exp();
            pref * r2.powf(0.5 * b) * r2
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Density2::Constant(c) => *c,
            Density2::XOnly(f) => f(x),
            Density2::YOnly(f) => f(y),
            Density2::General(f) => f(x, y),
        }
    }

    pub fn separable_axis(&self) -> SeparableAxis {
        match self {
            Density2::XOnly(_) => SeparableAxis::XOnly,
            Density2::YOnly(_) => SeparableAxis::YOnly,
            _ => SeparableAxis::None,
        }
    }

    /// c·Σ.
    pub fn scaled(&self, c: f64) -> Self {
        match self.clone() {
            Density2::Constant(v) => Density2::Constant(c * v),
            Density2::XOnly(f) => Density2::x_only(move |x| c * f(x)),
            Density2::YOnly(f) => Density2::y_only(move |y| c * f(y)),
            Density2::General(f) => Density2::general(move |x, y| c * f(x, y)),
        }
    }
}
