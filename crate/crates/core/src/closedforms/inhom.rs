use super::{AnnulusGeom, RadialPower};
use crate::specialfn::{polygamma, PolyGammaOrder, ZETA3};
use serde::Serialize;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

/// Node spacing of the even interpolant used around `c = 0`, shrunk for
/// small holes since Z varies on the scale `c ln(r_min) ~ 1`.
const NEAR_ZERO_STEP: f64 = 0.25;
/// Interpolation is used for `|c|` below this many node spacings.
const NEAR_ZERO_WINDOW: f64 = 2.0;
/// Number of nonzero interpolation nodes.
const NEAR_ZERO_NODES: usize = 6;

fn near_zero_step(r: f64) -> f64 {
    NEAR_ZERO_STEP / r.ln().abs().max(1.0)
}
/// Distance from a removable singularity inside which a summand is
/// evaluated from its Taylor expansion.
const JET_RADIUS: f64 = 0.25;
/// Taylor order used there.
const JET_ORDER: usize = 28;

/// Z(2) with Dirichlet walls for the annulus with radial power-law density.
///
/// With `c = b + 2` the angular-order summand has removable singularities at
/// `c^2 = n^2` and `c^2 = 4n^2`. Near those points the summand is expanded
/// in truncated Taylor arithmetic about the singular `c`, the common zeros of
/// numerator and denominator are divided out, and the quotient series is
/// evaluated at the offset. Near `c = 0`, where the pieces cancel like
/// `1/c^4`, Z is interpolated as an even polynomial through the exact `c = 0`
/// value and well-conditioned nodes further out. Beyond `n = |c| + 2` the
/// algebraic part of each summand is summed in closed form with digamma
/// functions, and the geometrically decaying rest is summed until it drops
/// below rounding, with `n_terms` as a cap.
pub fn inhom_annulus_z2(geom: AnnulusGeom, pw: RadialPower, n_terms: usize) -> f64 {
    inhom_annulus_z2_estimate(geom, pw, n_terms).value
}

/// Value of [`inhom_annulus_z2`] with a rounding error bound.
///
/// The pieces of the formula are individually O(1) while the sum shrinks like
/// `(1 - r_min)^3` for thin rings, so the relative accuracy degrades as
/// `r_min -> 1`. The bound is a multiple of the unit roundoff times the sum of
/// the magnitudes of everything that was added up.
pub fn inhom_annulus_z2_estimate(geom: AnnulusGeom, pw: RadialPower, n_terms: usize) -> Estimate {
    let r = geom.r_min();
    let c = pw.b() + 2.0;
    let t = if c == 0.0 {
        log_limit(r, n_terms)
    } else if c.abs() < NEAR_ZERO_WINDOW * near_zero_step(r) {
        near_zero(r, c, n_terms)
    } else {
        generic(r, c, n_terms)
    };
    Estimate { value: t.value, abs_error: ROUNDING_SAFETY * f64::EPSILON * t.mag }
}

/// Safety factor on the magnitude-based rounding bound.
const ROUNDING_SAFETY: f64 = 64.0;

/// A value together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

/// Running sum that also accumulates the magnitudes of its addends.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    value: f64,
    mag: f64,
}

impl Tally {
    fn add(&mut self, value: f64, mag: f64) {
        self.value += value;
        self.mag += mag;
    }
}

/// Lagrange interpolation in `u = c^2` through `c = 0` and `c = k h`.
/// The spread against the interpolant without the outermost node is folded
/// into the magnitude as a truncation allowance.
fn near_zero(r: f64, c: f64, n_terms: usize) -> Tally {
    let h = near_zero_step(r);
    let mut nodes = vec![(0.0, log_limit(r, n_terms))];
    nodes.extend((1..=NEAR_ZERO_NODES).map(|k| {
        let ck = k as f64 * h;
        (ck * ck, generic(r, ck, n_terms))
    }));
    let u = c * c;
    let interp = |pts: &[(f64, Tally)]| {
        let mut out = Tally::default();
        for (i, &(ui, ti)) in pts.iter().enumerate() {
            let w: f64 =
                pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &(uj, _))| (u - uj) / (ui - uj)).product();
            out.add(w * ti.value, w.abs() * ti.mag);
        }
        out
    };
    let full = interp(&nodes);
    let lower = interp(&nodes[..nodes.len() - 1]);
    let trunc = (full.value - lower.value).abs() / (ROUNDING_SAFETY * f64::EPSILON);
    Tally { value: full.value, mag: full.mag + trunc }
}

/// Truncated Taylor series in the offset from an expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet<const N: usize>([f64; N]);

impl<const N: usize> Jet<N> {
    fn cst(v: f64) -> Self {
        let mut a = [0.0; N];
        a[0] = v;
        Self(a)
    }

    fn var(v: f64) -> Self {
        let mut a = Self::cst(v);
        if N > 1 {
            a.0[1] = 1.0;
        }
        a
    }

    fn scale(self, k: f64) -> Self {
        Self(self.0.map(|v| v * k))
    }

    /// Uses f' = g' f, which only involves the value of exp(g).
    fn exp(self) -> Self {
        let mut f = [0.0; N];
        f[0] = self.0[0].exp();
        for k in 1..N {
            let acc: f64 = (1..=k).map(|j| j as f64 * self.0[j] * f[k - j]).sum();
            f[k] = acc / k as f64;
        }
        Self(f)
    }

    fn exp_m1(self) -> Self {
        let mut f = self.exp();
        f.0[0] = self.0[0].exp_m1();
        f
    }

    fn sq(self) -> Self {
        self * self
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + o.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [0.0; N];
        for i in 0..N {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                out[i + j] += self.0[i] * o.0[j];
            }
        }
        Self(out)
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, v: f64) -> Self {
        self.0[0] += v;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, v: f64) -> Self {
        self.scale(v)
    }
}

/// Radius-dependent constants shared by all summands.
struct Setup {
    l: f64,
    m: f64,
    big_r: f64,
    rc1: f64,
}

impl Setup {
    fn new(r: f64, c: f64) -> Self {
        let l = r.ln();
        Self { l, m: (r * r - 1.0).powi(2), big_r: (2.0 * c * l).exp(), rc1: (c * l).exp_m1() }
    }

    /// Numerator coefficients of q^0, q^1, q^2 and the q-free denominator,
    /// after scaling the summand by q = r^{2n}.
    fn parts<const N: usize>(&self, c: Jet<N>, n: f64) -> [Jet<N>; 4] {
        let big_r = (c * (2.0 * self.l)).exp();
        let rc1 = (c * self.l).exp_m1();
        let c2 = c.sq();
        let x = c2 + (-4.0 * n * n);
        let y = c2 + (-n * n);
        let up = (c + n) * (c + 2.0 * n).sq();
        let dn = (c + (-2.0 * n)).sq() * (c + (-n));
        let a0 = c * (up * big_r + dn) * (0.5 * self.m);
        let a1 = ((c2 + (-n * n)) * (rc1 + 1.0) * (32.0 * n * n) + x.sq() * (big_r + 1.0)) * (-self.m);
        let a2 = c * (dn * big_r + up) * (0.5 * self.m);
        [a0, a1, a2, x.sq() * y * rc1.sq() * 2.0]
    }

    fn term(&self, c: f64, n: f64) -> (f64, f64) {
        let q = (2.0 * n * self.l).exp();
        let [a0, a1, a2, d] = self.parts(Jet::<1>::var(c), n).map(|j| j.0[0]);
        let w = d * (1.0 - q) * (1.0 - q);
        ((a0 + a1 * q + a2 * q * q) / w, (a0.abs() + (a1 * q).abs() + (a2 * q * q).abs()) / w.abs())
    }

    /// Summand near a removable singularity `s`, from the Taylor quotient.
    fn term_near(&self, s: f64, c: f64, n: f64) -> (f64, f64) {
        let q = (2.0 * n * self.l).exp();
        let [a0, a1, a2, d] = self.parts(Jet::<JET_ORDER>::var(s), n);
        let num = a0 + a1 * q + a2 * (q * q);
        let num_abs: Vec<f64> =
            (0..JET_ORDER).map(|i| a0.0[i].abs() + (a1.0[i] * q).abs() + (a2.0[i] * q * q).abs()).collect();
        let k = d.0.iter().take_while(|&&v| v == 0.0).count();
        let (num, num_abs, den) = (&num.0[k..], &num_abs[k..], &d.0[k..]);
        // quotient series of the shifted numerator and denominator, and a
        // majorant built from absolute values
        let len = den.len();
        let mut quo = vec![0.0; len];
        let mut maj = vec![0.0; len];
        for i in 0..len {
            let acc: f64 = (1..=i).map(|j| den[j] * quo[i - j]).sum();
            quo[i] = (num[i] - acc) / den[0];
            let acc_abs: f64 = (1..=i).map(|j| (den[j] * maj[i - j]).abs()).sum();
            maj[i] = (num_abs[i] + acc_abs) / den[0].abs();
        }
        let delta = c - s;
        let w = (1.0 - q) * (1.0 - q);
        let value = quo.iter().rev().fold(0.0, |acc, v| acc * delta + v) / w;
        let mag = maj.iter().rev().fold(0.0, |acc, v| acc * delta.abs() + v) / w;
        (value, mag)
    }

    /// Summand minus its large-n algebraic part.
    fn excess(&self, c: f64, n: f64) -> (f64, f64) {
        let q = (2.0 * n * self.l).exp();
        let [a0, a1, a2, d] = self.parts(Jet::<1>::var(c), n).map(|j| j.0[0]);
        let w = d * (1.0 - q) * (1.0 - q);
        let value = q * (a1 + a2 * q + a0 * (2.0 - q)) / w;
        (value, q * (a1.abs() + (a2 * q).abs() + (a0 * (2.0 - q)).abs()) / w.abs())
    }

    fn prefactor(&self, c: f64) -> f64 {
        let l = self.l;
        self.m / (8.0 * c.powi(4) * self.rc1 * self.rc1 * l * l) * bracket(c * l)
    }
}

/// `8(e^x - 1)^2 + 5x(1 - e^{2x}) + x^2(e^{2x} + 1)`, which is O(x^6).
fn bracket(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        let e = x.exp_m1();
        let e2 = (2.0 * x).exp();
        return 8.0 * e * e + 5.0 * x * (1.0 - e2) + x * x * (e2 + 1.0);
    }
    // Taylor coefficients [2^{k-2}(k^2 - 11k + 32) - 16] / k!
    let mut fact = 720.0;
    let mut pow = x.powi(6);
    let mut acc = 0.0;
    for k in 6..40 {
        let kf = k as f64;
        let num = 2f64.powi(k - 2) * (kf * kf - 11.0 * kf + 32.0) - 16.0;
        acc += num / fact * pow;
        pow *= x;
        fact *= kf + 1.0;
    }
    acc
}

fn generic(r: f64, c: f64, n_terms: usize) -> Tally {
    let st = Setup::new(r, c);
    let n0 = c.abs().floor() as usize + 2;
    let mut total = Tally::default();
    let pre = st.prefactor(c);
    total.add(pre, pre.abs());
    for n in 1..n0 {
        let nf = n as f64;
        let near = [nf, 2.0 * nf, -nf, -2.0 * nf].into_iter().find(|s| (c - s).abs() < JET_RADIUS);
        let (v, mag) = match near {
            Some(s) => st.term_near(s, c, nf),
            None => st.term(c, nf),
        };
        total.add(v, mag);
    }
    // algebraic part: K [F(c) - R F(-c)] with
    // F(c) = sum_{n >= n0} 1/((2n + c)^2 (n + c))
    let k = c * st.m / (4.0 * st.rc1 * st.rc1);
    let big_f = |c: f64| {
        let a = n0 as f64;
        let (p1, p2, p3) = (psi(0, a + 0.5 * c), psi(0, a + c), psi(1, a + 0.5 * c));
        ((p1 - p2) / (c * c) + p3 / (2.0 * c), (p1.abs() + p2.abs()) / (c * c) + p3.abs() / (2.0 * c.abs()))
    };
    let (fp, fp_mag) = big_f(c);
    let (fm, fm_mag) = big_f(-c);
    total.add(k * (fp - st.big_r * fm), k.abs() * (fp_mag + st.big_r * fm_mag));
    let mut rest = Tally::default();
    for n in n0..n0 + n_terms.max(1) {
        let (e, mag) = st.excess(c, n as f64);
        rest.add(e, mag);
        if e.abs() <= 1e-18 * total.value.abs() {
            break;
        }
    }
    total.add(rest.value, rest.mag);
    total
}

/// Exact c = 0 branch: density proportional to r^{-2}.
fn log_limit(r: f64, n_terms: usize) -> Tally {
    let l = r.ln();
    let m = (1.0 - r * r).powi(2);
    let lead = [l * l * m / 360.0, -m * ZETA3 / (8.0 * l), -m * PI.powi(4) / (360.0 * l * l)];
    let mut total = Tally::default();
    for v in lead {
        total.add(v, v.abs());
    }
    for n in 1..=n_terms.max(1) {
        let nf = n as f64;
        let q = (2.0 * nf * l).exp();
        let scale = m / (8.0 * l * l * nf.powi(4));
        let (u, v) = (4.0 * l * l * nf * nf * q / ((1.0 - q) * (1.0 - q)), 2.0 * l * nf * q / (1.0 - q));
        let e = scale * (u - v);
        total.add(e, scale * (u.abs() + v.abs()));
        if e.abs() <= 1e-18 * total.value.abs() {
            break;
        }
    }
    total
}

fn psi(m: u32, z: f64) -> f64 {
    polygamma(PolyGammaOrder::new(m).expect("small order"), z).expect("positive argument")
}

/// Three-term small-hole behaviour of the c = 0 sum rule.
///
/// Meant for `r_min < 0.1`; larger radii log a warning.
pub fn inhom_annulus_z2_asym(geom: AnnulusGeom) -> f64 {
    let r = geom.r_min();
    if r >= 0.1 {
        log::warn!("small-hole asymptotic used at r_min = {r}, outside its range of validity");
    }
    let l = r.ln();
    l * l / 360.0 - ZETA3 / (8.0 * l) - PI.powi(4) / (360.0 * l * l)
}
