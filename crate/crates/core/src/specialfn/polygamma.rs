use super::PolyGammaOrder;
use crate::error::{Error, Result};

// B_{2j} for j = 1..12
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const SHIFT: f64 = 20.0;

// positive root of ψ as a double-double
const ROOT_HI: f64 = 1.4616321449683622;
const ROOT_LO: f64 = 9.549995429965697e-17;

// Taylor coefficients of ψ about its positive root x₀: (-1)^{k+1} ζ(k+1, x₀)
const ROOT_TAYLOR: [f64; 45] = [
    0.9676722454476212,
    -0.4427631689835921,
    0.258499760955651,
    -0.16394270544240652,
    0.10782405069126237,
    -0.07219956125645471,
    0.04880428816414311,
    -0.03316112647484736,
    0.022597648232218104,
    -0.01542476590494896,
    0.010538791616612175,
    -0.007204534386356869,
    0.004926781395729853,
    -0.003369801655439328,
    0.002305126326734928,
    -0.0015769367714301972,
    0.0010788252019162967,
    -0.0007380709389960052,
    0.000504953265834602,
    -0.0003454680251063077,
    0.00023635601564027053,
    -0.00016170622091974803,
    0.0001106337276874741,
    -7.569179582195066e-05,
    5.178575795222081e-05,
    -3.5430070947659604e-05,
    2.424006611860132e-05,
    -1.6584242271854135e-05,
    1.134638458466385e-05,
    -7.762817668462094e-06,
    5.3110609208898636e-06,
    -3.6336507898010456e-06,
    2.486022733129538e-06,
    -1.7008538854332607e-06,
    1.1636675363548843e-06,
    -7.96142543124197e-07,
    5.446941930669446e-07,
    -3.7266161283438227e-07,
    2.549626552021554e-07,
    -1.7443695117727745e-07,
    1.1934394829830244e-07,
    -8.165115189488409e-08,
    5.586299683532171e-08,
    -3.821960061917494e-08,
    2.6148576951961865e-08,
];

/// Hurwitz zeta ζ(s, q) = Σ_{k≥0} (q+k)^{-s} for integer s ≥ 2 and q > 0.
pub fn hurwitz_zeta(s: u32, q: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("hurwitz_zeta needs s >= 2, got {s}")));
    }
    check_q(q)?;
    let n = -(s as i32);
    Ok(hurwitz_em(s as f64, q, |x| x.powi(n)))
}

/// Hurwitz zeta for real s > 1.
pub fn hurwitz_zeta_real(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("hurwitz_zeta_real needs finite s > 1, got {s}")));
    }
    check_q(q)?;
    Ok(hurwitz_em(s, q, |x| x.powf(-s)))
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("hurwitz_zeta needs finite q > 0, got {q}")));
    }
    Ok(())
}

fn hurwitz_em(sf: f64, q: f64, pow_s: impl Fn(f64) -> f64) -> f64 {
    // raise the argument, summing the skipped terms from the small end
    let shift = if q < SHIFT + sf { (SHIFT + sf - q).ceil() as usize } else { 0 };
    let mut head = 0.0;
    for k in (0..shift).rev() {
        head += pow_s(q + k as f64);
    }
    let big_q = q + shift as f64;
    let qs = pow_s(big_q);
    let mut tail = big_q * qs / (sf - 1.0) + 0.5 * qs;
    // Euler–Maclaurin: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * Q^{-s-2j+1}
    let inv_q2 = 1.0 / (big_q * big_q);
    let mut rising = sf; // s(s+1)...(s+2j-2)
    let mut fact = 2.0; // (2j)!
    let mut pow = qs / big_q;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * pow;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let jj = (j + 1) as f64;
        rising *= (sf + 2.0 * jj - 1.0) * (sf + 2.0 * jj);
        fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
        pow *= inv_q2;
    }
    head + tail
}

/// Digamma ψ(z) for z > 0.
pub fn digamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("digamma needs finite z > 0, got {z}")));
    }
    if z >= SHIFT {
        let inv_q2 = 1.0 / (z * z);
        let mut pow = inv_q2;
        let mut asym = z.ln() - 0.5 / z;
        for (j, b) in BERNOULLI.iter().enumerate().take(8) {
            asym -= b / (2.0 * (j + 1) as f64) * pow;
            pow *= inv_q2;
        }
        return Ok(asym);
    }
    // reduce to w in [1, 2), where a series about the root keeps full
    // relative accuracy through the sign change
    if z < 1.0 {
        return Ok(near_root(z + 1.0) - 1.0 / z);
    }
    let n = z.floor() as usize - 1;
    let w = z - n as f64;
    let up: f64 = (0..n).rev().map(|k| 1.0 / (w + k as f64)).sum();
    Ok(near_root(w) + up)
}

fn near_root(w: f64) -> f64 {
    let d = (w - ROOT_HI) - ROOT_LO;
    ROOT_TAYLOR.iter().rev().fold(0.0, |acc, c| acc * d + c) * d
}

/// Polygamma ψ^{(m)}(z) for z > 0.
pub fn polygamma(m: PolyGammaOrder, z: f64) -> Result<f64> {
    let m = m.get();
    if m == 0 {
        return digamma(z);
    }
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * fact * hurwitz_zeta(m + 1, z)?)
}
