use super::BesselOrder;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 1_000_000;
const XMIN: f64 = 2.0;
const RESCALE: f64 = 1e250;

// Taylor coefficients c_k of 1/Γ(z) = Σ c_k z^k, k = 1..26
const RGAMMA: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
];

/// J_ν, Y_ν and their derivatives at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJY {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// J_ν(x) for ν ≥ 0, x ≥ 0.
pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j needs finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu.get() == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(jy(nu.get(), x).j)
}

/// Y_ν(x) for ν ≥ 0, x > 0.
pub fn bessel_y(nu: BesselOrder, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_y needs finite x > 0, got {x}")));
    }
    Ok(jy(nu.get(), x).y)
}

/// J_ν, Y_ν, J′_ν, Y′_ν at x > 0. Y may be −∞ when it overflows.
pub fn bessel_jy(nu: BesselOrder, x: f64) -> Result<BesselJY> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_jy needs finite x > 0, got {x}")));
    }
    Ok(jy(nu.get(), x))
}

pub(crate) fn jy(nu: f64, x: f64) -> BesselJY {
    if x >= 25.0 && x >= 1.2 * nu * nu {
        if let Some(v) = hankel(nu, x) {
            return v;
        }
    }
    steed(nu, x)
}

/// Hankel asymptotic expansion; None when the series stalls before reaching full precision.
fn hankel(nu: f64, x: f64) -> Option<BesselJY> {
    let (p0, q0) = hankel_pq(nu, x)?;
    let (p1, q1) = hankel_pq(nu + 1.0, x)?;
    let amp = (2.0 / (PI * x)).sqrt();
    // rotate sin/cos of x by the phase instead of forming x − phase
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = ((0.5 * nu + 0.25) * PI).sin_cos();
    let (s0, c0) = (sx * cp - cx * sp, cx * cp + sx * sp);
    // χ₁ = χ₀ − π/2
    let (s1, c1) = (-c0, s0);
    let j = amp * (p0 * c0 - q0 * s0);
    let y = amp * (p0 * s0 + q0 * c0);
    let j1 = amp * (p1 * c1 - q1 * s1);
    let y1 = amp * (p1 * s1 + q1 * c1);
    Some(BesselJY { j, y, jp: nu / x * j - j1, yp: nu / x * y - y1 })
}

fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let mag = term.abs();
        if term == 0.0 {
            return Some((p, q));
        }
        if mag > last && k > 2 {
            return None;
        }
        last = mag;
        // a_k / x^k enters P with sign (-1)^{k/2} for even k, Q with (-1)^{(k-1)/2} for odd k
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if mag < 1e-17 * p.abs().max(q.abs()) {
            return Some((p, q));
        }
    }
    None
}

fn gammas(mu: f64) -> (f64, f64, f64, f64) {
    // gam1 = (1/Γ(1-μ) - 1/Γ(1+μ))/(2μ), gam2 = (1/Γ(1-μ) + 1/Γ(1+μ))/2
    let m2 = mu * mu;
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    let mut pow = 1.0;
    for k in 0..13 {
        g2 += RGAMMA[2 * k] * pow;
        g1 -= RGAMMA[2 * k + 1] * pow;
        pow *= m2;
    }
    let gampl = g2 - mu * g1;
    let gammi = g2 + mu * g1;
    (g1, g2, gampl, gammi)
}

/// Temme series for small x, Steed's continued fractions otherwise.
fn steed(xnu: f64, x: f64) -> BesselJY {
    let nl = if x < XMIN { (xnu + 0.5) as usize } else { (xnu - x + 1.5).max(0.0) as usize };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν/J_ν
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence to order μ, rescaling to stay finite
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
            rjp1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
        if !rytemp.is_finite() {
            break;
        }
    }
    let (y, yp) = if ry1.is_finite() && rymu.is_finite() {
        (rymu, xnu * xi * rymu - ry1)
    } else {
        (f64::NEG_INFINITY, f64::INFINITY)
    };
    BesselJY { j, y, jp, yp }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(o(0.0), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(o(1.0), 0.0).unwrap(), 0.0);
        assert!(bessel_y(o(0.0), 0.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.3, 1.0, 1.9, 2.1, 7.5, 30.0, 200.0, 5000.0] {
            let amp = (2.0 / (PI * x)).sqrt();
            let j = bessel_j(o(0.5), x).unwrap();
            let y = bessel_y(o(0.5), x).unwrap();
            assert!((j - amp * x.sin()).abs() < 1e-13 * amp, "x={x}");
            assert!((y + amp * x.cos()).abs() < 1e-13 * amp, "x={x}");
        }
        assert!(bessel_y(o(0.5), PI / 2.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn y0_diverges_at_origin() {
        let y = bessel_y(o(0.0), 1e-12).unwrap();
        assert!(y < -17.0);
        assert!(bessel_y(o(0.0), 1e-100).unwrap() < bessel_y(o(0.0), 1e-50).unwrap());
    }

    #[test]
    fn first_zero_of_j0() {
        assert!(bessel_j(o(0.0), 2.404_825_557_695_773).unwrap().abs() < 1e-15);
    }

    #[test]
    fn wronskian() {
        for &nu in &[0.0, 0.25, 1.0, 2.5, 7.0, 30.0] {
            for &x in &[0.05, 0.7, 1.99, 2.01, 5.0, 12.0, 40.0, 333.3, 9000.0] {
                let a = jy(nu, x);
                let b = jy(nu + 1.0, x);
                if !a.y.is_finite() || !b.y.is_finite() || a.y.abs() > 1e200 {
                    continue;
                }
                let w = b.j * a.y - a.j * b.y;
                let target = 2.0 / (PI * x);
                let scale = (b.j * a.y).abs().max((a.j * b.y).abs()).max(target);
                assert!((w - target).abs() < 1e-10 * scale, "nu={nu} x={x}");
                // derivative Wronskian J Y' - J' Y = 2/(πx)
                let w2 = a.j * a.yp - a.jp * a.y;
                assert!((w2 - target).abs() < 1e-9 * scale.max((a.j * a.yp).abs()), "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn branches_agree() {
        // the asymptotic and continued-fraction paths overlap
        for &nu in &[0.0, 1.0, 3.0, 4.5] {
            for &x in &[30.0, 55.5, 120.0] {
                let a = hankel(nu, x).unwrap();
                let b = steed(nu, x);
                assert!((a.j - b.j).abs() < 1e-13, "nu={nu} x={x}");
                assert!((a.y - b.y).abs() < 1e-13, "nu={nu} x={x}");
                assert!((a.jp - b.jp).abs() < 1e-13, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn tiny_values_for_large_order() {
        let v = jy(300.0, 1.0);
        assert!(v.j >= 0.0 && v.j < 1e-300);
        assert!(v.y == f64::NEG_INFINITY || v.y < -1e300);
        let v = jy(50.0, 10.0);
        // J_50(10) ≈ 1.7845136079e-30
        assert!((v.j / 1.784_513_607_871_595e-30 - 1.0).abs() < 1e-10);
    }
}
