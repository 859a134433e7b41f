use super::ZETA2;
use crate::error::{Error, Result};

/// Dilogarithm Li₂(z) for real z in [-1, 1].
pub fn polylog2(z: f64) -> Result<f64> {
    if !(z.abs() <= 1.0) {
        return Err(Error::Domain(format!("polylog2 needs |z| <= 1, got {z}")));
    }
    Ok(li2(z))
}

fn li2(z: f64) -> f64 {
    if z == 1.0 {
        ZETA2
    } else if z == 0.0 {
        0.0
    } else if z < 0.0 {
        // Landen: Li2(z) = -Li2(z/(z-1)) - ln²(1-z)/2, with z/(z-1) in (0, 1/2]
        let l = (-z).ln_1p();
        -li2_series(z / (z - 1.0)) - 0.5 * l * l
    } else if z <= 0.5 {
        li2_series(z)
    } else {
        // reflection onto 1-z < 1/2
        ZETA2 - z.ln() * (-z).ln_1p() - li2_series(1.0 - z)
    }
}

fn li2_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = z;
    for k in 1..200 {
        let kf = k as f64;
        let term = pow / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        pow *= z;
    }
    sum
}
