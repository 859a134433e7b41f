use super::Spectrum;
use crate::basis1d::{level, Interval, KernelFamily};
use crate::closedforms::SectorGeom;
use crate::error::{Error, Result};
use crate::green2d::{BCPair, Rect};
use crate::specialfn::{bessel_j_zeros_below, cross_bessel_zeros_below, hurwitz_zeta, BesselOrder, CrossKind};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest tolerated gap between a per-order root count and its WKB estimate.
const AUDIT_SLACK: f64 = 2.0;

/// All rectangle eigenvalues up to `e_max`, zero mode excluded.
pub fn rectangle_spectrum(bc: BCPair, rect: Rect, e_max: f64) -> Result<Spectrum> {
    let (fx, fy) = bc.families();
    let levels = |fam: KernelFamily, len: f64| -> Result<Vec<(f64, u32)>> {
        let l = Interval::new(len)?;
        let mut out = Vec::new();
        for j in 0.. {
            let lv = level(fam, l, j);
            let e = lv.kappa * lv.kappa;
            if e > e_max {
                break;
            }
            out.push((e, lv.modes.len() as u32));
        }
        Ok(out)
    };
    let xs = levels(fx, rect.a)?;
    let ys = levels(fy, rect.b)?;
    let mut pairs = Vec::new();
    for &(ex, mx) in &xs {
        for &(ey, my) in &ys {
            let e = ex + ey;
            if e > e_max {
                break;
            }
            if e > 0.0 {
                pairs.push((e, mx * my));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::InvalidArgument(format!("E_max = {e_max} lies below the first eigenvalue")));
    }
    let perimeter = if fx == KernelFamily::Periodic { 0.0 } else { 2.0 * rect.b }
        + if fy == KernelFamily::Periodic { 0.0 } else { 2.0 * rect.a };
    Ok(Spectrum::from_pairs(pairs, rect.area(), perimeter, e_max))
}

/// Phase integral ∫ sqrt(κ² − ν²/ρ²) dρ over the allowed part of [lo, 1].
fn wkb_phase(nu: f64, kappa: f64, lo: f64) -> f64 {
    let f = |rho: f64| {
        let kr = kappa * rho;
        if kr <= nu {
            0.0
        } else {
            (kr * kr - nu * nu).sqrt() - nu * (nu / kr).acos()
        }
    };
    f(1.0) - f(lo.max(nu / kappa).min(1.0))
}

/// Annulus eigenvalues κ² ≤ `e_max` from cross-product roots of orders 0..=m_max.
pub fn annulus_spectrum(edge_bc: CrossKind, r_min: f64, e_max: f64, m_max: u32) -> Result<Spectrum> {
    if !(r_min > 0.0 && r_min < 1.0) {
        return Err(Error::Domain(format!("r_min must lie in (0, 1), got {r_min}")));
    }
    if !(e_max > 0.0 && e_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("E_max must be positive, got {e_max}")));
    }
    let kmax = e_max.sqrt();
    if (m_max as f64) < kmax {
        return Err(Error::IncompleteSpectrum(format!(
            "orders up to {m_max} cannot cover kappa <= {kmax:.3}; need m_max >= sqrt(E_max)"
        )));
    }
    let per_order: Vec<Result<Vec<f64>>> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let roots = cross_bessel_zeros_below(edge_bc, m, r_min, kmax)?;
            let est = wkb_phase(m as f64, kmax, r_min) / PI;
            if (roots.len() as f64 - est).abs() > AUDIT_SLACK + 1.0 {
                return Err(Error::IncompleteSpectrum(format!(
                    "order {m}: {} roots below {kmax:.3}, phase estimate {est:.2}",
                    roots.len()
                )));
            }
            Ok(roots)
        })
        .collect();
    let mut pairs = Vec::new();
    for (m, roots) in per_order.into_iter().enumerate() {
        let mult = if m == 0 { 1 } else { 2 };
        pairs.extend(roots?.into_iter().map(|k| (k * k, mult)));
    }
    let spec = Spectrum::from_pairs(pairs, PI * (1.0 - r_min * r_min), 2.0 * PI * (1.0 + r_min), e_max);
    spec.weyl_certificate()?;
    Ok(spec)
}

/// Sector eigenvalues α² ≤ `e_max`, α the zeros of J_ν with ν = nπ/(2φ), n = 1..=n_max.
pub fn sector_spectrum(geom: SectorGeom, e_max: f64, n_max: u32) -> Result<Spectrum> {
    if !(e_max > 0.0 && e_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("E_max must be positive, got {e_max}")));
    }
    let phi = geom.phi();
    let kmax = e_max.sqrt();
    let need = 2.0 * phi * kmax / PI;
    if (n_max as f64) < need {
        return Err(Error::IncompleteSpectrum(format!(
            "orders up to {n_max} cannot cover kappa <= {kmax:.3}; need {need:.1}"
        )));
    }
    let per_order: Vec<Result<Vec<f64>>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let nu = n as f64 * PI / (2.0 * phi);
            let zs = bessel_j_zeros_below(BesselOrder::new(nu)?, kmax)?;
            let est = wkb_phase(nu, kmax, 0.0) / PI + 0.25;
            if (zs.len() as f64 - est).abs() > AUDIT_SLACK {
                return Err(Error::IncompleteSpectrum(format!(
                    "order {nu}: {} zeros below {kmax:.3}, phase estimate {est:.2}",
                    zs.len()
                )));
            }
            Ok(zs)
        })
        .collect();
    let mut pairs = Vec::new();
    for zs in per_order {
        pairs.extend(zs?.into_iter().map(|z| (z * z, 1)));
    }
    let spec = Spectrum::from_pairs(pairs, phi, 2.0 + 2.0 * phi, e_max);
    spec.weyl_certificate()?;
    Ok(spec)
}

/// Σ_k j_{ν,k}^{-2p} from the first `k_max` zeros, closed with the
/// McMahon spacing of the remaining ones.
pub fn rayleigh_sum(nu: f64, p: u32, k_max: usize) -> Result<f64> {
    if p < 1 || k_max == 0 {
        return Err(Error::InvalidArgument("rayleigh_sum needs p >= 1 and k_max >= 1".into()));
    }
    let order = BesselOrder::new(nu)?;
    let mut x = (k_max as f64 + 0.5 * nu + 0.5) * PI;
    let zs = loop {
        let zs = bessel_j_zeros_below(order, x)?;
        if zs.len() >= k_max {
            break zs;
        }
        x += 4.0 * PI;
    };
    let head: f64 = zs[..k_max].iter().rev().map(|z| z.powi(-2 * p as i32)).sum();
    let tail = hurwitz_zeta(2 * p, k_max as f64 + 1.0 + 0.5 * nu - 0.25)? * PI.powi(-2 * p as i32);
    Ok(head + tail)
}
