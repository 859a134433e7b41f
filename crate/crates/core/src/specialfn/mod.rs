//! Special functions in double precision: polygamma and Hurwitz zeta,
//! the dilogarithm, Bessel functions of the first and second kind, and
//! zeros of Bessel functions and of annulus cross products.

mod bessel;
mod polygamma;
mod polylog;
pub(crate) mod roots;
mod zeros;

pub use bessel::{bessel_j, bessel_jy, bessel_y, BesselJY};
pub use polygamma::{digamma, hurwitz_zeta, hurwitz_zeta_real, polygamma};
pub use polylog::polylog2;
pub use zeros::{bessel_j_zero, bessel_j_zeros_below, cross_bessel_zero, cross_bessel_zeros_below, CrossKind};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
/// ζ(2) = π²/6.
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Derivative order m of ψ^{(m)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyGammaOrder(u32);

impl PolyGammaOrder {
    pub const MAX: u32 = 8;

    pub fn new(m: u32) -> Result<Self> {
        if m > Self::MAX {
            return Err(Error::Domain(format!("polygamma order {m} exceeds {}", Self::MAX)));
        }
        Ok(Self(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Order ν ≥ 0 of J_ν and Y_ν.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::Domain(format!("Bessel order must be finite and >= 0, got {nu}")));
        }
        Ok(Self(nu))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}
