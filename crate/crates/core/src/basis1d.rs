//! One-dimensional eigenbases and transverse Green's kernels on (−L/2, L/2).
//!
//! Every kernel is stored as a short list of [`KernelTerm`]s,
//! g(y<, y>) = Σ c · A(y<) · B(y>) · e^{−κ(y>−y<)·[decay]},
//! with bounded factors A and B. This form never overflows and factorizes
//! over ordered points, which the sum-rule engine exploits.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Boundary family of a 1D interval. Mixed families name the lower end first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelFamily {
    Dirichlet,
    Neumann,
    Periodic,
    /// Neumann at −L/2, Dirichlet at +L/2.
    NeumannDirichlet,
    /// Dirichlet at −L/2, Neumann at +L/2.
    DirichletNeumann,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 5] = [
        KernelFamily::Dirichlet,
        KernelFamily::Neumann,
        KernelFamily::Periodic,
        KernelFamily::NeumannDirichlet,
        KernelFamily::DirichletNeumann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Dirichlet => "Dirichlet",
            KernelFamily::Neumann => "Neumann",
            KernelFamily::Periodic => "Periodic",
            KernelFamily::NeumannDirichlet => "NeumannDirichlet",
            KernelFamily::DirichletNeumann => "DirichletNeumann",
        }
    }

    /// True when the family has a constant zero mode.
    pub fn has_zero_mode(self) -> bool {
        matches!(self, KernelFamily::Neumann | KernelFamily::Periodic)
    }
}

impl std::str::FromStr for KernelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "dirichlet" => Ok(KernelFamily::Dirichlet),
            "n" | "neumann" => Ok(KernelFamily::Neumann),
            "p" | "periodic" => Ok(KernelFamily::Periodic),
            "nd" | "neumanndirichlet" => Ok(KernelFamily::NeumannDirichlet),
            "dn" | "dirichletneumann" => Ok(KernelFamily::DirichletNeumann),
            _ => Err(Error::InvalidArgument(format!("unknown kernel family {s}"))),
        }
    }
}

/// Mode index (n, u); u = 1 cosine-like branch, u = 2 sine branch.
///
/// For the Neumann family the sine branch sin((2n − 1)πx/L) starts at n = 1.
/// Starting it at n = 0 would duplicate the n = 1 mode up to sign, so
/// `n = 0` is accepted only on the cosine branch (the constant mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub n: u32,
    pub u: u8,
}

impl ModeIndex {
    pub fn new(n: u32, u: u8) -> Self {
        Self { n, u }
    }
}

/// Interval (−L/2, L/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    len: f64,
}

impl Interval {
    pub fn new(len: f64) -> Result<Self> {
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::Domain(format!("interval length must be finite and > 0, got {len}")));
        }
        Ok(Self { len })
    }

    pub fn len(&self) -> f64 {
        self.len
    }

    pub fn half(&self) -> f64 {
        0.5 * self.len
    }

    fn check(&self, y: f64) -> Result<()> {
        // a few ulps of slack so endpoints built as ±L/2 are accepted
        if y.is_nan() || y.abs() > self.half() * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::Domain(format!("point {y} outside (−{0}, {0})", self.half())));
        }
        Ok(())
    }
}

fn validate(family: KernelFamily, idx: ModeIndex) -> Result<()> {
    let ok = match family {
        KernelFamily::Dirichlet | KernelFamily::NeumannDirichlet | KernelFamily::DirichletNeumann => {
            idx.u == 1 && idx.n >= 1
        }
        KernelFamily::Neumann | KernelFamily::Periodic => {
            (idx.n == 0 && idx.u == 1) || (idx.n >= 1 && (idx.u == 1 || idx.u == 2))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidIndex { family: family.name(), index: (idx.n, idx.u) })
    }
}

/// Eigenvalue of −d²/dy² for the given mode.
pub fn eigenvalue_1d(family: KernelFamily, l: Interval, idx: ModeIndex) -> Result<f64> {
    validate(family, idx)?;
    let n = idx.n as f64;
    let a = l.len();
    Ok(match family {
        KernelFamily::Dirichlet => n * n * PI * PI / (a * a),
        KernelFamily::Neumann => {
            if idx.u == 1 {
                4.0 * n * n * PI * PI / (a * a)
            } else {
                let k = 2.0 * n - 1.0;
                k * k * PI * PI / (a * a)
            }
        }
        KernelFamily::Periodic => 4.0 * PI * PI * n * n / (a * a),
        KernelFamily::NeumannDirichlet | KernelFamily::DirichletNeumann => {
            let k = 2.0 * n - 1.0;
            k * k * PI * PI / (4.0 * a * a)
        }
    })
}

/// Normalized eigenfunction value at x.
pub fn eigenfunction_1d(family: KernelFamily, l: Interval, idx: ModeIndex, x: f64) -> Result<f64> {
    validate(family, idx)?;
    l.check(x)?;
    Ok(eigenfunction_unchecked(family, l.len(), idx, x))
}

pub(crate) fn eigenfunction_unchecked(family: KernelFamily, a: f64, idx: ModeIndex, x: f64) -> f64 {
    let n = idx.n as f64;
    let norm = (2.0 / a).sqrt();
    match family {
        KernelFamily::Dirichlet => norm * (n * PI * (x + 0.5 * a) / a).sin(),
        KernelFamily::Neumann => match (idx.n, idx.u) {
            (0, _) => 1.0 / a.sqrt(),
            (_, 1) => norm * (2.0 * n * PI * x / a).cos(),
            _ => norm * ((2.0 * n - 1.0) * PI * x / a).sin(),
        },
        KernelFamily::Periodic => match (idx.n, idx.u) {
            (0, _) => 1.0 / a.sqrt(),
            (_, 1) => norm * (2.0 * n * PI * x / a).cos(),
            _ => norm * (2.0 * n * PI * x / a).sin(),
        },
        KernelFamily::NeumannDirichlet => norm * (PI * (2.0 * n - 1.0) * (3.0 * a + 2.0 * x) / (4.0 * a)).sin(),
        KernelFamily::DirichletNeumann => norm * (PI * (2.0 * n - 1.0) * (3.0 * a - 2.0 * x) / (4.0 * a)).sin(),
    }
}

/// Mode written as amp·cos(ω x + phase); every ω is a multiple of π/(2a).
pub(crate) fn trig_form(family: KernelFamily, a: f64, idx: ModeIndex) -> (f64, f64, f64) {
    let n = idx.n as f64;
    let norm = (2.0 / a).sqrt();
    let quarter = 0.5 * PI;
    match family {
        KernelFamily::Dirichlet => {
            let w = n * PI / a;
            (norm, w, 0.5 * a * w - quarter)
        }
        KernelFamily::Neumann | KernelFamily::Periodic if idx.n == 0 => (1.0 / a.sqrt(), 0.0, 0.0),
        KernelFamily::Neumann => {
            if idx.u == 1 {
                (norm, 2.0 * n * PI / a, 0.0)
            } else {
                (norm, (2.0 * n - 1.0) * PI / a, -quarter)
            }
        }
        KernelFamily::Periodic => (norm, 2.0 * n * PI / a, if idx.u == 1 { 0.0 } else { -quarter }),
        KernelFamily::NeumannDirichlet => {
            let w = (2.0 * n - 1.0) * PI / (2.0 * a);
            (norm, w, 1.5 * a * w - quarter)
        }
        KernelFamily::DirichletNeumann => {
            let w = (2.0 * n - 1.0) * PI / (2.0 * a);
            (norm, w, quarter - 1.5 * a * w)
        }
    }
}

/// One eigenvalue level: √eigenvalue and the modes sharing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub kappa: f64,
    pub modes: Vec<ModeIndex>,
}

/// Level j of the family's spectrum, ascending. Level 0 is the zero mode for Neumann/Periodic.
pub fn level(family: KernelFamily, l: Interval, j: u32) -> Level {
    let a = l.len();
    let (kappa, modes) = match family {
        KernelFamily::Dirichlet => ((j + 1) as f64 * PI / a, vec![ModeIndex::new(j + 1, 1)]),
        KernelFamily::Neumann => {
            let m = if j == 0 {
                ModeIndex::new(0, 1)
            } else if j % 2 == 0 {
                ModeIndex::new(j / 2, 1)
            } else {
                ModeIndex::new(j.div_ceil(2), 2)
            };
            (j as f64 * PI / a, vec![m])
        }
        KernelFamily::Periodic => {
            let modes =
                if j == 0 { vec![ModeIndex::new(0, 1)] } else { vec![ModeIndex::new(j, 1), ModeIndex::new(j, 2)] };
            (2.0 * PI * j as f64 / a, modes)
        }
        KernelFamily::NeumannDirichlet | KernelFamily::DirichletNeumann => {
            ((2 * j + 1) as f64 * PI / (2.0 * a), vec![ModeIndex::new(j + 1, 1)])
        }
    };
    Level { kappa, modes }
}

/// Arithmetic structure of the level ladder: κ_j = step·(j + offset), degeneracy of levels j ≥ 1.
pub(crate) fn ladder(family: KernelFamily, a: f64) -> (f64, f64, f64) {
    match family {
        KernelFamily::Dirichlet => (PI / a, 1.0, 1.0),
        KernelFamily::Neumann => (PI / a, 0.0, 1.0),
        KernelFamily::Periodic => (2.0 * PI / a, 0.0, 2.0),
        KernelFamily::NeumannDirichlet | KernelFamily::DirichletNeumann => (PI / a, 0.5, 1.0),
    }
}

/// Factor of one kernel term as a function of a single coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    /// c0 + c1·y + c2·y².
    Poly([f64; 3]),
    /// base + amp·e^{−rate·dist}, dist measured from the bottom (−L/2) or top (+L/2) end.
    Layer { rate: f64, bottom: bool, base: f64, amp: f64 },
}

impl Factor {
    const ONE: Factor = Factor::Poly([1.0, 0.0, 0.0]);

    #[inline]
    pub fn eval(&self, half: f64, y: f64) -> f64 {
        match *self {
            Factor::Poly([c0, c1, c2]) => c0 + y * (c1 + y * c2),
            Factor::Layer { rate, bottom, base, amp } => {
                let dist = if bottom { y + half } else { half - y };
                let t = -rate * dist.max(0.0);
                if base == 1.0 && amp == -1.0 {
                    -t.exp_m1()
                } else {
                    base + amp * t.exp()
                }
            }
        }
    }
}

/// c · A(y<) · B(y>) · e^{−κ(y>−y<)} when `decay`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm {
    pub coef: f64,
    pub lower: Factor,
    pub upper: Factor,
    pub decay: bool,
}

/// How the κ² = 0 case of Neumann/Periodic families is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroMode {
    /// κ² = 0 for Neumann/Periodic is an error.
    #[default]
    Reject,
    /// Use the pseudo-inverse kernel with the constant mode projected out.
    Pseudo,
}

/// Term list of the transverse kernel g(y, y′; κ²).
pub fn kernel_terms(family: KernelFamily, l: Interval, kappa2: f64, zero_mode: ZeroMode) -> Result<Vec<KernelTerm>> {
    if !(kappa2 >= 0.0 && kappa2.is_finite()) {
        return Err(Error::Domain(format!("kappa2 must be finite and >= 0, got {kappa2}")));
    }
    if kappa2 == 0.0 && family.has_zero_mode() && zero_mode == ZeroMode::Reject {
        return Err(Error::Domain(format!(
            "{} kernel at kappa2 = 0 is a pseudo-inverse; request it with ZeroMode::Pseudo",
            family.name()
        )));
    }
    Ok(terms_unchecked(family, l.len(), kappa2.sqrt()))
}

pub(crate) fn terms_unchecked(family: KernelFamily, a: f64, k: f64) -> Vec<KernelTerm> {
    let h = 0.5 * a;
    let poly = |c0: f64, c1: f64, c2: f64| Factor::Poly([c0, c1, c2]);
    if k == 0.0 {
        let t = |coef, lower, upper| KernelTerm { coef, lower, upper, decay: false };
        return match family {
            KernelFamily::Dirichlet => vec![t(1.0 / a, poly(h, 1.0, 0.0), poly(h, -1.0, 0.0))],
            KernelFamily::NeumannDirichlet => vec![t(1.0, Factor::ONE, poly(h, -1.0, 0.0))],
            KernelFamily::DirichletNeumann => vec![t(1.0, poly(h, 1.0, 0.0), Factor::ONE)],
            KernelFamily::Neumann => {
                vec![t(1.0, poly(a / 12.0, 0.5, 0.5 / a), Factor::ONE), t(1.0, Factor::ONE, poly(0.0, -0.5, 0.5 / a))]
            }
            KernelFamily::Periodic => vec![
                t(1.0, poly(a / 12.0, 0.5, 0.5 / a), Factor::ONE),
                t(1.0, Factor::ONE, poly(0.0, -0.5, 0.5 / a)),
                t(-1.0 / a, poly(0.0, 1.0, 0.0), poly(0.0, 1.0, 0.0)),
            ],
        };
    }
    let layer = |rate, bottom, base, amp| Factor::Layer { rate, bottom, base, amp };
    let two_k = 2.0 * k;
    // 1/(2κ(1 ∓ e^{−2κL}))
    let c_sinh = 1.0 / (-two_k * (-two_k * a).exp_m1());
    let c_cosh = 1.0 / (two_k * (1.0 + (-two_k * a).exp()));
    let t = |coef, lower, upper| KernelTerm { coef, lower, upper, decay: true };
    match family {
        KernelFamily::Dirichlet => vec![t(c_sinh, layer(two_k, true, 1.0, -1.0), layer(two_k, false, 1.0, -1.0))],
        KernelFamily::Neumann => vec![t(c_sinh, layer(two_k, true, 1.0, 1.0), layer(two_k, false, 1.0, 1.0))],
        KernelFamily::NeumannDirichlet => {
            vec![t(c_cosh, layer(two_k, true, 1.0, 1.0), layer(two_k, false, 1.0, -1.0))]
        }
        KernelFamily::DirichletNeumann => {
            vec![t(c_cosh, layer(two_k, true, 1.0, -1.0), layer(two_k, false, 1.0, 1.0))]
        }
        KernelFamily::Periodic => {
            let c = 1.0 / (-two_k * (-k * a).exp_m1());
            vec![
                t(c, Factor::ONE, Factor::ONE),
                KernelTerm { coef: c, lower: layer(k, true, 0.0, 1.0), upper: layer(k, false, 0.0, 1.0), decay: false },
            ]
        }
    }
}

#[inline]
pub(crate) fn eval_terms(terms: &[KernelTerm], k: f64, half: f64, y: f64, yp: f64) -> f64 {
    let (lo, hi) = if y <= yp { (y, yp) } else { (yp, y) };
    let damp = (-k * (hi - lo)).exp();
    terms
        .iter()
        .map(|t| {
            let v = t.coef * t.lower.eval(half, lo) * t.upper.eval(half, hi);
            if t.decay {
                v * damp
            } else {
                v
            }
        })
        .sum()
}

/// Transverse kernel g(y, y′; κ²), the Green's function of −d²/dy² + κ².
pub fn transverse_kernel(
    family: KernelFamily,
    l: Interval,
    kappa2: f64,
    y: f64,
    yp: f64,
    zero_mode: ZeroMode,
) -> Result<f64> {
    l.check(y)?;
    l.check(yp)?;
    let terms = kernel_terms(family, l, kappa2, zero_mode)?;
    Ok(eval_terms(&terms, kappa2.sqrt(), l.half(), y, yp))
}

/// Closed-form kernel minus its eigen-sum truncated after `n_terms` levels.
pub fn kernel_mode_sum_residual(
    family: KernelFamily,
    l: Interval,
    kappa2: f64,
    y: f64,
    yp: f64,
    n_terms: usize,
) -> Result<f64> {
    if !(kappa2 > 0.0) {
        return Err(Error::Domain("kernel_mode_sum_residual needs kappa2 > 0".into()));
    }
    let closed = transverse_kernel(family, l, kappa2, y, yp, ZeroMode::Reject)?;
    let mut sum = 0.0;
    for j in 0..n_terms as u32 {
        let lev = level(family, l, j);
        for m in lev.modes {
            let e = lev.kappa * lev.kappa;
            sum += eigenfunction_unchecked(family, l.len(), m, y) * eigenfunction_unchecked(family, l.len(), m, yp)
                / (kappa2 + e);
        }
    }
    Ok(closed - sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::new(1.0).unwrap()
    }

    fn g(f: KernelFamily, l: f64, k2: f64, y: f64, yp: f64) -> f64 {
        transverse_kernel(f, Interval::new(l).unwrap(), k2, y, yp, ZeroMode::Pseudo).unwrap()
    }

    #[test]
    fn eigenvalue_anchors() {
        let one = ModeIndex::new(1, 1);
        assert!((eigenvalue_1d(KernelFamily::Dirichlet, unit(), one).unwrap() - PI * PI).abs() < 1e-14);
        let l = Interval::new(2.0 * PI).unwrap();
        assert!((eigenvalue_1d(KernelFamily::Periodic, l, ModeIndex::new(3, 2)).unwrap() - 9.0).abs() < 1e-12);
        let nd = eigenvalue_1d(KernelFamily::NeumannDirichlet, unit(), one).unwrap();
        assert!((nd - PI * PI / 4.0).abs() < 1e-14);
        assert!(eigenvalue_1d(KernelFamily::Dirichlet, unit(), ModeIndex::new(0, 1)).is_err());
        assert!(eigenvalue_1d(KernelFamily::Neumann, unit(), ModeIndex::new(0, 2)).is_err());
    }

    #[test]
    fn eigenfunction_anchors() {
        let f = |fam, n, u, x| eigenfunction_1d(fam, unit(), ModeIndex::new(n, u), x).unwrap();
        assert!(f(KernelFamily::Dirichlet, 1, 1, 0.5).abs() < 1e-15);
        assert!(f(KernelFamily::Dirichlet, 1, 1, -0.5).abs() < 1e-15);
        assert_eq!(f(KernelFamily::Neumann, 0, 1, 0.17), 1.0);
        let dn = f(KernelFamily::DirichletNeumann, 2, 1, 0.3);
        let nd = f(KernelFamily::NeumannDirichlet, 2, 1, -0.3);
        assert!((dn - nd).abs() < 1e-15);
        assert!(eigenfunction_1d(KernelFamily::Dirichlet, unit(), ModeIndex::new(1, 1), 0.6).is_err());
    }

    #[test]
    fn eigenfunctions_are_orthonormal() {
        // Gauss–Legendre on the interval integrates the trigonometric products exactly enough
        let (x, w) = crate::quadrature::gauss_legendre(64);
        let l = 1.3;
        for fam in KernelFamily::ALL {
            let modes: Vec<ModeIndex> = (0..6).flat_map(|j| level(fam, Interval::new(l).unwrap(), j).modes).collect();
            for a in &modes {
                for b in &modes {
                    let s: f64 = x
                        .iter()
                        .zip(&w)
                        .map(|(t, wt)| {
                            let y = 0.5 * l * t;
                            0.5 * l
                                * wt
                                * eigenfunction_unchecked(fam, l, *a, y)
                                * eigenfunction_unchecked(fam, l, *b, y)
                        })
                        .sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((s - want).abs() < 1e-12, "{fam:?} {a:?} {b:?} {s}");
                }
            }
        }
    }

    #[test]
    fn kernel_anchors() {
        assert!((g(KernelFamily::Dirichlet, 1.0, 0.0, 0.0, 0.0) - 0.25).abs() < 1e-15);
        let want = 0.5f64.sinh().powi(2) / 1f64.sinh();
        assert!((g(KernelFamily::Dirichlet, 1.0, 1.0, 0.0, 0.0) - want).abs() < 1e-15);
        assert!((want - 0.231_059).abs() < 1e-6);
        assert!((g(KernelFamily::Periodic, 1.0, 0.0, 0.3, 0.3) - 1.0 / 12.0).abs() < 1e-15);
        let r = transverse_kernel(KernelFamily::Neumann, unit(), 0.0, 0.1, 0.2, ZeroMode::Reject);
        assert!(r.is_err());
        assert!(transverse_kernel(KernelFamily::Dirichlet, unit(), 1.0, 0.7, 0.0, ZeroMode::Reject).is_err());
    }

    #[test]
    fn closed_forms_match_hyperbolic_expressions() {
        let l = 1.7;
        let h = 0.5 * l;
        for &k in &[0.3, 1.0, 4.0] {
            for &(y, yp) in &[(-0.2, 0.5), (0.1, 0.1), (0.8, -0.84)] {
                let (lo, hi): (f64, f64) = if y < yp { (y, yp) } else { (yp, y) };
                let d = ((k * (lo + h)).sinh() * (k * (h - hi)).sinh()) / (k * (k * l).sinh());
                let n = ((k * (lo + h)).cosh() * (k * (h - hi)).cosh()) / (k * (k * l).sinh());
                let nd = ((k * (lo + h)).cosh() * (k * (h - hi)).sinh()) / (k * (k * l).cosh());
                let dn = ((k * (lo + h)).sinh() * (k * (h - hi)).cosh()) / (k * (k * l).cosh());
                let p = (k * ((hi - lo) - h)).cosh() / (2.0 * k * (k * h).sinh());
                let k2 = k * k;
                for (fam, want) in [
                    (KernelFamily::Dirichlet, d),
                    (KernelFamily::Neumann, n),
                    (KernelFamily::NeumannDirichlet, nd),
                    (KernelFamily::DirichletNeumann, dn),
                    (KernelFamily::Periodic, p),
                ] {
                    let got = g(fam, l, k2, y, yp);
                    assert!((got - want).abs() < 1e-13 * want.abs().max(1e-3), "{fam:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn large_kappa_is_finite() {
        for fam in KernelFamily::ALL {
            let v = g(fam, 1.0, 1e10, 0.1, 0.1);
            assert!(v.is_finite() && v > 0.0);
            assert!((v - 0.5e-5).abs() < 1e-12);
            assert_eq!(g(fam, 1.0, 1e10, 0.1, 0.3), 0.0);
        }
    }

    #[test]
    fn mode_sum_residuals() {
        let r = kernel_mode_sum_residual(KernelFamily::Dirichlet, unit(), 1.0, 0.1, -0.2, 10_000).unwrap();
        assert!(r.abs() < 1e-3);
        let r = kernel_mode_sum_residual(KernelFamily::Neumann, unit(), 2.0, 0.1, 0.1, 10_000).unwrap();
        assert!(r.abs() < 1e-3);
        for fam in KernelFamily::ALL {
            let r1 = kernel_mode_sum_residual(fam, unit(), 2.0, 0.23, -0.31, 1000).unwrap();
            let r2 = kernel_mode_sum_residual(fam, unit(), 2.0, 0.23, -0.31, 4000).unwrap();
            assert!(r1.abs() < 2e-4 && r2.abs() < 2e-4 && r2.abs() < r1.abs().max(1e-9), "{fam:?} {r1} {r2}");
        }
        let r = kernel_mode_sum_residual(KernelFamily::Dirichlet, unit(), 3.0, 0.5, 0.5, 100).unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn zero_mode_pseudo_kernels_have_zero_mean() {
        let (x, w) = crate::quadrature::gauss_legendre(40);
        let l = 2.3;
        for fam in [KernelFamily::Neumann, KernelFamily::Periodic] {
            for &yp in &[-1.0, 0.0, 0.4] {
                // split at the kink
                let mut s = 0.0;
                for (lo, hi) in [(-0.5 * l, yp), (yp, 0.5 * l)] {
                    for (t, wt) in x.iter().zip(&w) {
                        let y = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
                        s += 0.5 * (hi - lo) * wt * g(fam, l, 0.0, y, yp);
                    }
                }
                assert!(s.abs() < 1e-13, "{fam:?} {yp} {s}");
            }
        }
    }

    #[test]
    fn small_kappa_continuity() {
        for fam in [KernelFamily::Dirichlet, KernelFamily::NeumannDirichlet, KernelFamily::DirichletNeumann] {
            for &(y, yp) in &[(0.1, -0.3), (0.45, 0.45), (-0.5, 0.2)] {
                let a = g(fam, 1.0, 1e-12, y, yp);
                let b = g(fam, 1.0, 0.0, y, yp);
                assert!((a - b).abs() < 1e-6, "{fam:?}");
            }
        }
    }

    #[test]
    fn boundary_conditions() {
        let l = 1.0;
        let h = 1e-6;
        for &yp in &[-0.3, 0.0, 0.2] {
            for &k2 in &[0.5, 10.0] {
                assert_eq!(g(KernelFamily::Dirichlet, l, k2, -0.5, yp), 0.0);
                assert_eq!(g(KernelFamily::Dirichlet, l, k2, 0.5, yp), 0.0);
                let dn =
                    (g(KernelFamily::Neumann, l, k2, -0.5 + h, yp) - g(KernelFamily::Neumann, l, k2, -0.5, yp)) / h;
                let up = (g(KernelFamily::Neumann, l, k2, 0.5, yp) - g(KernelFamily::Neumann, l, k2, 0.5 - h, yp)) / h;
                assert!(dn.abs() < 1e-5 && up.abs() < 1e-5);
                let p0 = g(KernelFamily::Periodic, l, k2, -0.5, yp);
                let p1 = g(KernelFamily::Periodic, l, k2, 0.5, yp);
                assert!((p0 - p1).abs() < 1e-15);
                let nd = KernelFamily::NeumannDirichlet;
                let d0 = (g(nd, l, k2, -0.5 + h, yp) - g(nd, l, k2, -0.5, yp)) / h;
                assert!(d0.abs() < 1e-5);
                assert_eq!(g(nd, l, k2, 0.5, yp), 0.0);
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric(fi in 0usize..5, k2 in 0.0f64..50.0, y in -0.5f64..0.5, yp in -0.5f64..0.5) {
            let fam = KernelFamily::ALL[fi];
            prop_assert_eq!(g(fam, 1.0, k2, y, yp), g(fam, 1.0, k2, yp, y));
        }

        #[test]
        fn ode_and_jump(fi in 0usize..5, k2 in 0.1f64..10.0, yp in -0.3f64..0.3, off in 0.05f64..0.15) {
            let fam = KernelFamily::ALL[fi];
            let h = 1e-4;
            let y = yp + off;
            let gy = |t: f64| g(fam, 1.0, k2, t, yp);
            let fd = (gy(y + h) - 2.0 * gy(y) + gy(y - h)) / (h * h);
            prop_assert!((fd - k2 * gy(y)).abs() < 1e-5 * (1.0 + k2));
            // second-order one-sided slopes on each side of the source point
            let right = (-3.0 * gy(yp) + 4.0 * gy(yp + h) - gy(yp + 2.0 * h)) / (2.0 * h);
            let left = (3.0 * gy(yp) - 4.0 * gy(yp - h) + gy(yp - 2.0 * h)) / (2.0 * h);
            prop_assert!((right - left + 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn trig_form_reproduces_modes() {
        for fam in KernelFamily::ALL {
            let a = 1.3;
            for j in 0..6 {
                for m in level(fam, Interval::new(a).unwrap(), j).modes {
                    let (amp, w, ph) = trig_form(fam, a, m);
                    for &x in &[-0.65, -0.2, 0.1, 0.5] {
                        let want = eigenfunction_unchecked(fam, a, m, x);
                        assert!((amp * (w * x + ph).cos() - want).abs() < 1e-13, "{fam:?} {m:?}");
                    }
                }
            }
        }
    }
}
