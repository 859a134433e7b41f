//! Closed-form and asymptotic sum rules for the annulus, the circular
//! sector and the radially inhomogeneous annulus.
//!
//! The annulus of radii `r_min < 1` is the image of the rectangle
//! `[ln(r_min)/2, -ln(r_min)/2] x [-pi, pi]` under `w = sqrt(r_min) e^{x + iy}`,
//! which turns the Helmholtz problem into one with density `r_min e^{2x}`.

mod annulus;
mod inhom;
mod sector;

pub use annulus::{annulus_small_hole, annulus_z2_dp_polylog, annulus_z2_dp_series, SmallHoleCase};
pub use inhom::{inhom_annulus_z2, inhom_annulus_z2_asym, inhom_annulus_z2_estimate, Estimate};
pub use sector::{sector_exact, sector_zeta, SECTOR_ANGLES};

use crate::error::{Error, Result};
use serde::Serialize;

/// Default cap on series terms for the closed forms that take one.
pub const DEFAULT_TERMS: usize = 10_000;

/// Annulus with inner radius `r_min` and outer radius 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusGeom {
    r_min: f64,
}

impl AnnulusGeom {
    pub fn new(r_min: f64) -> Result<Self> {
        if !(r_min > 0.0 && r_min < 1.0) {
            return Err(Error::InvalidArgument(format!("r_min must lie in (0, 1), got {r_min}")));
        }
        Ok(Self { r_min })
    }

    pub fn r_min(self) -> f64 {
        self.r_min
    }

    /// Half-width `-ln(r_min)/2` of the preimage rectangle along x.
    pub fn half_width(self) -> f64 {
        -0.5 * self.r_min.ln()
    }
}

/// Circular sector of unit radius spanning angles `(-phi, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorGeom {
    phi: f64,
}

impl SectorGeom {
    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= std::f64::consts::PI * (1.0 + 1e-15)) {
            return Err(Error::InvalidArgument(format!("sector half-angle must lie in (0, pi], got {phi}")));
        }
        Ok(Self { phi: phi.min(std::f64::consts::PI) })
    }

    pub fn phi(self) -> f64 {
        self.phi
    }
}

/// Radial power-law density on the annulus, normalised to unit mean.
///
/// `rho(r) = (b+2)(r_min^2 - 1) r^b / (2(r_min^{b+2} - 1))`, continuous at
/// `b = -2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialPower {
    b: f64,
}

impl RadialPower {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::InvalidArgument(format!("density exponent must be finite, got {b}")));
        }
        Ok(Self { b })
    }

    pub fn b(self) -> f64 {
        self.b
    }

    /// Density at radius `r` of the annulus `geom`.
    pub fn rho(self, geom: AnnulusGeom, r: f64) -> f64 {
        let rm = geom.r_min();
        let c = self.b + 2.0;
        let l = rm.ln();
        let pref =
            if c.abs() < 1e-12 { (rm * rm - 1.0) / (2.0 * l) } else { c * (rm * rm - 1.0) / (2.0 * (c * l).exp_m1()) };
        pref * r.powf(self.b)
    }
}

/// Conformal density `r_min e^{2x}` on the preimage rectangle.
pub fn annulus_density(geom: AnnulusGeom, x: f64) -> Result<f64> {
    let w = geom.half_width();
    if !(x.abs() <= w * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("x = {x} lies outside [-{w}, {w}]")));
    }
    Ok(geom.r_min() * (2.0 * x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    #[test]
    fn density_endpoints() {
        let g = AnnulusGeom::new(0.5).unwrap();
        assert_eq!(annulus_density(g, 0.0).unwrap(), 0.5);
        let g = AnnulusGeom::new(0.25).unwrap();
        assert!((annulus_density(g, g.half_width()).unwrap() - 1.0).abs() < 1e-15);
        assert!((annulus_density(g, -g.half_width()).unwrap() - 0.0625).abs() < 1e-15);
        assert!(annulus_density(g, 1.0).is_err());
    }

    #[test]
    fn conformal_mass_is_annulus_area() {
        let (nodes, weights) = gauss_legendre(40);
        for &rm in &[0.05, 0.3, 0.8] {
            let g = AnnulusGeom::new(rm).unwrap();
            let w = g.half_width();
            let mass: f64 =
                nodes.iter().zip(&weights).map(|(t, wt)| wt * w * annulus_density(g, w * t).unwrap()).sum::<f64>()
                    * 2.0
                    * std::f64::consts::PI;
            let area = std::f64::consts::PI * (1.0 - rm * rm);
            assert!((mass - area).abs() < 1e-13, "{rm}: {mass} vs {area}");
        }
    }

    #[test]
    fn radial_power_has_unit_mean() {
        let (nodes, weights) = gauss_legendre(60);
        for &b in &[-5.0, -2.0, 0.0, 1.5] {
            let g = AnnulusGeom::new(0.3).unwrap();
            let pw = RadialPower::new(b).unwrap();
            let (lo, hi) = (0.3, 1.0);
            let mass: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(t, wt)| {
                    let r = 0.5 * (hi + lo) + 0.5 * (hi - lo) * t;
                    wt * 0.5 * (hi - lo) * pw.rho(g, r) * r
                })
                .sum::<f64>()
                * 2.0
                * std::f64::consts::PI;
            let area = std::f64::consts::PI * (1.0 - 0.09);
            assert!((mass - area).abs() < 1e-12, "b={b}: {mass}");
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(AnnulusGeom::new(0.0).is_err());
        assert!(AnnulusGeom::new(1.0).is_err());
        assert!(SectorGeom::new(0.0).is_err());
        assert!(SectorGeom::new(4.0).is_err());
        assert!(SectorGeom::new(std::f64::consts::PI).is_ok());
        assert!(RadialPower::new(f64::NAN).is_err());
    }
}
