//! Exact lattice sums Σ (ε_i + η_j [+ ζ_k])^{-p} over separable spectra.
//!
//! Each row sum over one ladder is taken either from its Poisson asymptotic,
//! whose remainder is below e^{-42} in relative size, or from a direct head
//! plus a binomial expansion of the rest in Hurwitz zeta values.

use crate::basis1d::{ladder, KernelFamily};
use crate::error::{Error, Result};
use crate::green2d::{BCPair, Rect};
use crate::specialfn::hurwitz_zeta_real;
use std::f64::consts::PI;

/// Size of 2π√ε/step beyond which the Poisson remainder is negligible.
const POISSON_CUT: f64 = 42.0;

/// Equally spaced ladder κ_j = step·(j + offset) with its row-sum constants.
#[derive(Debug, Clone, Copy)]
struct Ladder1 {
    step: f64,
    offset: f64,
    /// multiplicity of levels j ≥ 1
    mult: f64,
    /// weight of the smooth part and coefficient of ε^{-p} in the Poisson form
    w: f64,
    c0: f64,
}

impl Ladder1 {
    fn new(fam: KernelFamily, len: f64) -> Self {
        let (step, offset, mult) = ladder(fam, len);
        let (w, c0) = match fam {
            KernelFamily::Dirichlet => (0.5, -0.5),
            KernelFamily::Neumann => (0.5, 0.5),
            KernelFamily::Periodic => (1.0, 0.0),
            KernelFamily::NeumannDirichlet | KernelFamily::DirichletNeumann => (0.5, 0.0),
        };
        Self { step, offset, mult, w, c0 }
    }

    fn kappa(&self, j: usize) -> f64 {
        self.step * (j as f64 + self.offset)
    }

    fn mult_of(&self, j: usize) -> f64 {
        if j == 0 {
            1.0
        } else {
            self.mult
        }
    }

    /// Poisson form of the row sum.
    fn asym(&self, eps: f64, p: f64) -> f64 {
        self.w / self.step * smooth_coef(p) * eps.powf(0.5 - p) + self.c0 * eps.powf(-p)
    }

    fn asym_is_exact(&self, eps: f64) -> bool {
        2.0 * PI * eps.sqrt() / self.step > POISSON_CUT
    }

    /// Σ_j mult_j (ε + κ_j²)^{-p}, skipping κ = 0.
    fn row(&self, eps: f64, p: f64) -> f64 {
        if eps > 0.0 && self.asym_is_exact(eps) {
            return self.asym(eps, p);
        }
        let head_len = (4.0 * eps.sqrt() / self.step).ceil() as usize + 1;
        let mut head = 0.0;
        for j in (0..head_len).rev() {
            let k = self.kappa(j);
            if k == 0.0 && eps == 0.0 {
                continue;
            }
            head += self.mult_of(j) * (eps + k * k).powf(-p);
        }
        // Σ_{j ≥ head_len} (ε + s²(j+o)²)^{-p} = s^{-2p} Σ_i C(-p, i) (ε/s²)^i ζ(2p+2i, head_len + o)
        let q = head_len as f64 + self.offset;
        let x = eps / (self.step * self.step);
        let mut tail = 0.0;
        let mut binom = 1.0;
        let mut xi = 1.0;
        for i in 0..60 {
            let t = binom * xi * hurwitz_zeta_real(2.0 * p + 2.0 * i as f64, q).expect("s > 1, q > 0");
            tail += t;
            if t.abs() < 1e-18 * tail.abs() {
                break;
            }
            binom *= -(p + i as f64) / (i as f64 + 1.0);
            xi *= x;
        }
        head + self.mult * self.step.powf(-2.0 * p) * tail
    }
}

/// √π Γ(p − ½) / Γ(p) for p a positive multiple of ½ with p > ½.
fn smooth_coef(p: f64) -> f64 {
    let twice = (2.0 * p).round();
    assert!((2.0 * p - twice).abs() < 1e-12 && p > 0.5, "order must be a half-integer above 1/2");
    // start from p = 1 (ratio √π) or p = 3/2 (ratio 2/√π) and step by one
    let (mut q, mut ratio) = if twice as i64 % 2 == 0 { (1.0, PI.sqrt()) } else { (1.5, 2.0 / PI.sqrt()) };
    while q < p - 0.25 {
        ratio *= (q - 0.5) / q;
        q += 1.0;
    }
    PI.sqrt() * ratio
}

fn check_p(p: f64, dim: usize) -> Result<()> {
    let twice = 2.0 * p;
    if !(p.is_finite() && (twice - twice.round()).abs() < 1e-12 && p > dim as f64 / 2.0) {
        return Err(Error::InvalidArgument(format!(
            "lattice sums need a half-integer order above {} (got {p})",
            dim as f64 / 2.0
        )));
    }
    Ok(())
}

fn lattice2(outer: Ladder1, inner: Ladder1, p: f64) -> f64 {
    // outer levels until the row sums are pure Poisson forms
    let mut j = 0usize;
    let mut head = Vec::new();
    loop {
        let k = outer.kappa(j);
        let eps = k * k;
        if eps > 0.0 && inner.asym_is_exact(eps) && j >= 1 {
            break;
        }
        head.push(outer.mult_of(j) * inner.row(eps, p));
        j += 1;
    }
    let q = j as f64 + outer.offset;
    let tail = outer.mult
        * (inner.w / inner.step
            * smooth_coef(p)
            * outer.step.powf(1.0 - 2.0 * p)
            * hurwitz_zeta_real(2.0 * p - 1.0, q).expect("p > 1")
            + inner.c0 * outer.step.powf(-2.0 * p) * hurwitz_zeta_real(2.0 * p, q).expect("p > 1/2"));
    head.iter().rev().sum::<f64>() + tail
}

/// Σ over the rectangle spectrum of E^{-p}, zero mode excluded, for a
/// half-integer `p > 1`.
pub fn lattice_zeta_2d(bc: BCPair, rect: Rect, p: f64) -> Result<f64> {
    check_p(p, 2)?;
    let (fx, fy) = bc.families();
    Ok(lattice2(Ladder1::new(fx, rect.a), Ladder1::new(fy, rect.b), p))
}

/// Σ over the box spectrum of E^{-p} for per-axis families and a
/// half-integer `p > 3/2`.
pub fn lattice_zeta_3d(families: [KernelFamily; 3], dims: [f64; 3], p: f64) -> Result<f64> {
    check_p(p, 3)?;
    if dims.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(Error::Domain(format!("box sides must be positive, got {dims:?}")));
    }
    let lx = Ladder1::new(families[0], dims[0]);
    let ly = Ladder1::new(families[1], dims[1]);
    let lz = Ladder1::new(families[2], dims[2]);
    // Σ_{ij} R_z(ε_ij) = Σ_{ij} [R_z − R_asym](ε_ij) + smooth·Z₂(p − ½) + c0·Z₂(p)
    let cut = (POISSON_CUT * lz.step / (2.0 * PI)).powi(2);
    let mut corr = 0.0;
    let mut i = 0usize;
    while lx.kappa(i).powi(2) <= cut {
        let ex = lx.kappa(i).powi(2);
        let mut j = 0usize;
        while ex + ly.kappa(j).powi(2) <= cut {
            let eps = ex + ly.kappa(j).powi(2);
            let m = lx.mult_of(i) * ly.mult_of(j);
            corr += if eps == 0.0 { m * lz.row(0.0, p) } else { m * (lz.row(eps, p) - lz.asym(eps, p)) };
            j += 1;
        }
        i += 1;
    }
    let smooth = lz.w / lz.step * smooth_coef(p) * lattice2(lx, ly, p - 0.5);
    let edge = if lz.c0 != 0.0 { lz.c0 * lattice2(lx, ly, p) } else { 0.0 };
    Ok(corr + smooth + edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::hurwitz_zeta;

    #[test]
    fn smooth_coefficients() {
        // √π Γ(p−½)/Γ(p): p = 1 → π, p = 2 → π/2, p = 3/2 → 2
        assert!((smooth_coef(1.0) - PI).abs() < 1e-15);
        assert!((smooth_coef(2.0) - PI / 2.0).abs() < 1e-15);
        assert!((smooth_coef(1.5) - 2.0).abs() < 1e-15);
        assert!((smooth_coef(3.0) - 3.0 * PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn row_sums_both_branches_agree() {
        // the direct branch stays valid where the Poisson form takes over
        for fam in KernelFamily::ALL {
            let l = Ladder1::new(fam, 1.3);
            for &eps in &[1e4, 3e4] {
                assert!(l.asym_is_exact(eps));
                let head_len = (4.0 * f64::sqrt(eps) / l.step).ceil() as usize + 1;
                let direct: f64 =
                    (0..head_len * 400).rev().map(|j| l.mult_of(j) * (eps + l.kappa(j).powi(2)).powf(-2.0)).sum();
                let rest = l.mult * (head_len as f64 * 400.0 * l.step).powi(-3) / (3.0 * l.step);
                let a = l.asym(eps, 2.0);
                assert!(((direct + rest) - a).abs() < 1e-9 * a, "{fam:?} {eps}");
            }
        }
    }

    #[test]
    fn unit_square_matches_closed_rows() {
        // Σ_{m,n≥1} (m² + n²)^{-2} via the coth row identity
        let mut s = 0.0;
        for m in 1..=200 {
            let x = PI * m as f64;
            let mf = m as f64;
            let csch = 1.0 / x.sinh();
            s += PI / x.tanh() / (4.0 * mf.powi(3)) + PI * PI * csch * csch / (4.0 * mf * mf) - 0.5 * mf.powi(-4);
        }
        s += PI / 4.0 * hurwitz_zeta(3, 201.0).unwrap() - 0.5 * hurwitz_zeta(4, 201.0).unwrap();
        let want = s / PI.powi(4);
        let got = lattice_zeta_2d(BCPair::DD, Rect::new(1.0, 1.0).unwrap(), 2.0).unwrap();
        assert!((got - want).abs() < 1e-15, "{got} {want}");
    }

    #[test]
    fn periodic_torus_is_epstein() {
        // 2π × 2π torus: Σ' (m²+n²)^{-2} = 4 ζ(2) β(2)
        let catalan = 0.915_965_594_177_219_015;
        let want = 4.0 * PI * PI / 6.0 * catalan;
        let r = Rect::new(2.0 * PI, 2.0 * PI).unwrap();
        let got = lattice_zeta_2d(BCPair::PP, r, 2.0).unwrap();
        assert!((got - want).abs() < 1e-13 * want, "{got} {want}");
    }

    #[test]
    fn brute_force_agreement_for_all_pairs() {
        let rect = Rect::new(1.0, 1.7).unwrap();
        for bc in BCPair::ALL {
            let (fx, fy) = bc.families();
            let (lx, ly) = (Ladder1::new(fx, rect.a), Ladder1::new(fy, rect.b));
            // direct double sum over a large box, remainder from the smooth density of states
            let n = 3000usize;
            let mut s = 0.0;
            let lam = (lx.kappa(n) * 0.999).min(ly.kappa(n) * 0.999).powi(2);
            for i in (0..n).rev() {
                for j in (0..n).rev() {
                    let e = lx.kappa(i).powi(2) + ly.kappa(j).powi(2);
                    if e > 0.0 && e <= lam {
                        s += lx.mult_of(i) * ly.mult_of(j) / (e * e);
                    }
                }
            }
            s += rect.area() / (4.0 * PI * lam);
            let got = lattice_zeta_2d(bc, rect, 2.0).unwrap();
            assert!((got - s).abs() < 1e-6 * got, "{bc}: {got} {s}");
        }
    }

    #[test]
    fn dirichlet_boxes_against_theta_integral() {
        // ∫ t Π_i (θ3(e^{-t π²/L_i²}) − 1)/2 dt, evaluated at 30 digits
        let cube = lattice_zeta_3d([KernelFamily::Dirichlet; 3], [1.0; 3], 2.0).unwrap();
        assert!((cube / 0.006_346_711_572_878_563_668 - 1.0).abs() < 1e-12, "{cube}");
        let bx = lattice_zeta_3d([KernelFamily::Dirichlet; 3], [1.0, 2.0, 3.0], 2.0).unwrap();
        assert!((bx / 0.058_125_917_489_858_815_90 - 1.0).abs() < 1e-12, "{bx}");
    }

    #[test]
    fn rejects_bad_orders() {
        let r = Rect::new(1.0, 1.0).unwrap();
        assert!(lattice_zeta_2d(BCPair::DD, r, 1.0).is_err());
        assert!(lattice_zeta_2d(BCPair::DD, r, 2.3).is_err());
        assert!(lattice_zeta_3d([KernelFamily::Dirichlet; 3], [1.0; 3], 1.5).is_err());
    }
}
