use super::SectorGeom;
use crate::error::{Error, Result};
use crate::specialfn::{polygamma, PolyGammaOrder, ZETA3};
use std::f64::consts::PI;

/// Half-angles with tabulated exact sector sum rules.
pub const SECTOR_ANGLES: [f64; 4] = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI];

fn psi(m: u32, z: f64) -> f64 {
    polygamma(PolyGammaOrder::new(m).expect("small order"), z).expect("positive argument")
}

/// Dirichlet sum rule Z(p) of the unit-radius sector with half-angle `phi`,
/// for `p` in {2, 3, 4}, in polygamma form.
pub fn sector_zeta(geom: SectorGeom, p: u32) -> Result<f64> {
    let f = geom.phi();
    let u = f / PI;
    let z = 2.0 * u + 1.0;
    let at = |k: f64| k * u + 1.0;
    let v = match p {
        2 => u * u / 4.0 * psi(1, z) + u / 8.0 * (psi(0, z) - psi(0, at(4.0))),
        3 => {
            -u.powi(3) / 16.0 * psi(2, z) - 3.0 * u * u / 32.0 * psi(1, z) - 7.0 * u / 128.0 * psi(0, z)
                + u / 16.0 * psi(0, at(4.0))
                - u / 128.0 * psi(0, at(6.0))
        }
        4 => {
            u.powi(4) / 96.0 * psi(3, z)
                + u.powi(3) / 32.0 * psi(2, z)
                + 17.0 * u * u / 384.0 * psi(1, z)
                + u * u / 128.0 * psi(1, at(4.0))
                + 127.0 * u / 4608.0 * psi(0, z)
                - 15.0 * u / 512.0 * psi(0, at(4.0))
                + u / 512.0 * psi(0, at(6.0))
                - u / 4608.0 * psi(0, at(8.0))
        }
        _ => return Err(Error::UnsupportedOrder(p as usize)),
    };
    Ok(v)
}

/// Exact constant for `sector_zeta` at `SECTOR_ANGLES[angle]`.
pub fn sector_exact(angle: usize, p: u32) -> Result<f64> {
    let l4 = 4f64.ln();
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let z3 = ZETA3;
    let row: [f64; 4] = match p {
        2 => [
            -1.0 / 32.0 + pi2 / 128.0 - l4 / 32.0,
            pi2 / 96.0 - 3.0 / 32.0,
            -35.0 / 64.0 + 9.0 * pi2 / 128.0 - 3.0 * l4 / 32.0,
            pi2 / 24.0 - 37.0 / 96.0,
        ],
        3 => [
            7.0 * z3 / 512.0 - 7.0 / 768.0 - 3.0 * pi2 / 1024.0 + l4 / 64.0,
            z3 / 64.0 + 31.0 / 1536.0 - pi2 / 256.0,
            189.0 * z3 / 512.0 - 6653.0 / 26880.0 - 27.0 * pi2 / 1024.0 + 3.0 * l4 / 64.0,
            z3 / 8.0 + 43.0 / 7680.0 - pi2 / 64.0,
        ],
        4 => [
            -7.0 * z3 / 1024.0 + 1.0 / 36864.0 + 3.0 * pi2 / 2048.0 + pi4 / 24576.0 - 17.0 * l4 / 2304.0,
            -z3 / 128.0 - 1795.0 / 110592.0 + 5.0 * pi2 / 2304.0 + pi4 / 23040.0,
            -189.0 * z3 / 1024.0 - 256171.0 / 1290240.0 + 27.0 * pi2 / 2048.0 + 27.0 * pi4 / 8192.0 - 17.0 * l4 / 768.0,
            -z3 / 16.0 - 33569.0 / 430080.0 + 5.0 * pi2 / 576.0 + pi4 / 1440.0,
        ],
        _ => return Err(Error::UnsupportedOrder(p as usize)),
    };
    row.get(angle).copied().ok_or_else(|| Error::InvalidArgument(format!("no tabulated angle with index {angle}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::hurwitz_zeta;

    fn g(phi: f64) -> SectorGeom {
        SectorGeom::new(phi).unwrap()
    }

    /// Direct sum over angular orders, closed by the leading power of the
    /// summand beyond `n_max`.
    fn order_sum(phi: f64, p: u32, n_max: usize) -> f64 {
        let w = PI / phi;
        let term = |n: f64| {
            let x = w * n;
            match p {
                2 => 0.5 / ((x + 2.0).powi(2) * (x + 4.0)),
                3 => 1.0 / ((x + 2.0).powi(3) * (x + 4.0) * (x + 6.0)),
                4 => 0.5 * (5.0 * x + 22.0) / ((x + 2.0).powi(4) * (x + 4.0).powi(2) * (x + 6.0) * (x + 8.0)),
                _ => unreachable!(),
            }
        };
        let head: f64 = (1..=n_max).rev().map(|n| term(n as f64)).sum();
        // leading power of the summand in 1/n
        let (lead, pow) = match p {
            2 => (0.5 / w.powi(3), 3),
            3 => (1.0 / w.powi(5), 5),
            4 => (2.5 / w.powi(7), 7),
            _ => unreachable!(),
        };
        head + lead * hurwitz_zeta(pow, n_max as f64 + 1.0).unwrap()
    }

    #[test]
    fn matches_exact_constants() {
        for p in 2..=4 {
            for (i, &phi) in SECTOR_ANGLES.iter().enumerate() {
                let v = sector_zeta(g(phi), p).unwrap();
                let e = sector_exact(i, p).unwrap();
                assert!(((v - e) / e).abs() < 1e-12, "p={p} i={i}: {v} vs {e}");
            }
        }
    }

    #[test]
    fn matches_defining_series() {
        for p in 2..=4 {
            for &phi in &SECTOR_ANGLES {
                let v = sector_zeta(g(phi), p).unwrap();
                let s = order_sum(phi, p, 100_000);
                assert!((v - s).abs() < 1e-8 * v.abs(), "p={p} phi={phi}: {v} vs {s}");
            }
        }
    }

    #[test]
    fn rejects_other_orders() {
        assert_eq!(sector_zeta(g(1.0), 5), Err(Error::UnsupportedOrder(5)));
        assert!(sector_exact(0, 1).is_err());
        assert!(sector_exact(4, 2).is_err());
    }

    #[test]
    fn smooth_in_angle() {
        // semicircle from both sides of a generic angle
        let a = sector_zeta(g(PI - 1e-9), 2).unwrap();
        let b = sector_zeta(g(PI), 2).unwrap();
        assert!((a - b).abs() < 1e-9);
    }
}
