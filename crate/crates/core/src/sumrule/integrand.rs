//! Ordered integrals of kernel products around a cycle, on a panel grid.

use crate::basis1d::{terms_unchecked, KernelFamily, KernelTerm};
use crate::quadrature::{nested_ordered, PanelGrid, QuadPolicy};

use super::diagram::Diagram;

/// Kernel term sampled on a grid: coef·lower(y<)·upper(y>)·e^{−rate(y>−y<)}.
#[derive(Debug, Clone)]
pub(crate) struct GridTerm {
    pub coef: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rate: f64,
}

pub(crate) fn grid_terms(terms: &[KernelTerm], k: f64, half: f64, grid: &PanelGrid) -> Vec<GridTerm> {
    terms
        .iter()
        .map(|t| GridTerm {
            coef: t.coef,
            lower: grid.nodes.iter().map(|&y| t.lower.eval(half, y)).collect(),
            upper: grid.nodes.iter().map(|&y| t.upper.eval(half, y)).collect(),
            rate: if t.decay { k } else { 0.0 },
        })
        .collect()
}

/// Turns a zero-mean pseudo-kernel into the one orthogonal to constants
/// in the σ-weighted inner product: G − u(y) − u(y′) + c.
pub(crate) fn weight_projection(mut terms: Vec<GridTerm>, sigma: &[f64], grid: &PanelGrid) -> Vec<GridTerm> {
    let n = grid.len();
    let mass = grid.integrate(sigma);
    let mut u = vec![0.0; n];
    let mut below = vec![0.0; n];
    let mut buf = vec![0.0; n];
    for t in &terms {
        debug_assert_eq!(t.rate, 0.0);
        for i in 0..n {
            buf[i] = t.lower[i] * sigma[i];
        }
        grid.cumulative_decay(0.0, &buf, &mut below);
        for i in 0..n {
            buf[i] = t.upper[i] * sigma[i];
        }
        let total = grid.integrate(&buf);
        let mut above = vec![0.0; n];
        grid.cumulative_decay(0.0, &buf, &mut above);
        for i in 0..n {
            u[i] += t.coef * (t.upper[i] * below[i] + t.lower[i] * (total - above[i])) / mass;
        }
    }
    let su: Vec<f64> = u.iter().zip(sigma).map(|(a, b)| a * b).collect();
    let c = grid.integrate(&su) / mass;
    let ones = vec![1.0; n];
    terms.push(GridTerm { coef: -1.0, lower: u.clone(), upper: ones.clone(), rate: 0.0 });
    terms.push(GridTerm { coef: -1.0, lower: ones.clone(), upper: u, rate: 0.0 });
    terms.push(GridTerm { coef: c, lower: ones.clone(), upper: ones, rate: 0.0 });
    terms
}

#[derive(Default)]
pub(crate) struct Work {
    h: Vec<Vec<f64>>,
    s: Vec<f64>,
    scratch: Vec<f64>,
}

/// Σ over term choices of ∫_{y₀>…>y_{p−1}} Π_v w_v(y_v) Π_e g_e(y_i, y_j).
pub(crate) fn cycle_integral(
    grid: &PanelGrid,
    edges: &[(usize, usize)],
    edge_terms: &[&[GridTerm]],
    vertex_w: &[&[f64]],
    work: &mut Work,
) -> f64 {
    let p = vertex_w.len();
    let n = grid.len();
    work.h.resize_with(p, Vec::new);
    work.s.resize(p.saturating_sub(1), 0.0);
    let mut choice = vec![0usize; edges.len()];
    let mut total = 0.0;
    loop {
        let mut coef = 1.0;
        for (v, h) in work.h.iter_mut().enumerate() {
            h.clear();
            h.extend_from_slice(vertex_w[v]);
        }
        work.s.iter_mut().for_each(|x| *x = 0.0);
        for (e, &(i, j)) in edges.iter().enumerate() {
            let t = &edge_terms[e][choice[e]];
            coef *= t.coef;
            for k in 0..n {
                work.h[i][k] *= t.upper[k];
            }
            for k in 0..n {
                work.h[j][k] *= t.lower[k];
            }
            for m in i..j {
                work.s[m] += t.rate;
            }
        }
        if coef != 0.0 {
            let hs: Vec<&[f64]> = work.h.iter().map(|v| v.as_slice()).collect();
            total += coef * nested_ordered(grid, &hs, &work.s, &mut work.scratch);
        }
        // odometer over the term lists
        let mut e = 0;
        loop {
            if e == edges.len() {
                return total;
            }
            choice[e] += 1;
            if choice[e] < edge_terms[e].len() {
                break;
            }
            choice[e] = 0;
            e += 1;
        }
    }
}

/// Grid on [−L/2, L/2] fine enough for order-p products of kernels with decay κ.
pub(crate) fn level_grid(len: f64, kappa: f64, p: usize, quad: &QuadPolicy) -> PanelGrid {
    let half = 0.5 * len;
    let width = if kappa > 0.0 { 2.0 / (p.max(2) as f64 * kappa) } else { f64::INFINITY };
    PanelGrid::resolving(-half, half, quad.subdivisions, width, quad.points_per_axis)
}

/// Per-mode contribution T(κ) = Σ_D w_D ∫ Π g_κ Π σ for the transverse family `fam`.
pub(crate) struct LevelProblem<'a> {
    pub p: usize,
    pub diagrams: &'a [Diagram],
    pub fam: KernelFamily,
    pub len: f64,
    pub sigma: &'a (dyn Fn(f64) -> f64 + Sync),
    /// Project the κ = 0 pseudo-kernel against σ-weighted constants.
    pub weighted_zero: bool,
}

impl LevelProblem<'_> {
    /// (value, grid nodes × term products evaluated)
    pub fn eval(&self, kappa: f64, quad: &QuadPolicy) -> (f64, u64) {
        let grid = level_grid(self.len, kappa, self.p, quad);
        let sigma: Vec<f64> = grid.nodes.iter().map(|&y| (self.sigma)(y)).collect();
        let raw = terms_unchecked(self.fam, self.len, kappa);
        let mut terms = grid_terms(&raw, kappa, 0.5 * self.len, &grid);
        if kappa == 0.0 && self.weighted_zero && self.fam.has_zero_mode() {
            terms = weight_projection(terms, &sigma, &grid);
        }
        let edge_terms: Vec<&[GridTerm]> = vec![terms.as_slice(); self.p];
        let vertex_w: Vec<&[f64]> = vec![sigma.as_slice(); self.p];
        let mut work = Work::default();
        let mut v = 0.0;
        for d in self.diagrams {
            v += d.weight() * cycle_integral(&grid, &d.edges, &edge_terms, &vertex_w, &mut work);
        }
        let combos = (terms.len() as u64).pow(self.p as u32) * self.diagrams.len() as u64;
        (v, grid.len() as u64 * combos)
    }
}

#[cfg(test)]
mod tests {
    use super::super::diagram::enumerate_diagrams;
    use super::*;
    use std::f64::consts::PI;

    // Σ_n 1/(κ² + (nπ/L)²)^p over the Dirichlet ladder
    fn dirichlet_trace(kappa: f64, len: f64, p: i32) -> f64 {
        // smallest terms first, plus ∫ beyond the cut
        let n_max = 200_000;
        let mut s = (len / PI).powi(2 * p) / ((2 * p - 1) as f64 * (n_max as f64 + 0.5).powi(2 * p - 1));
        for n in (1..=n_max).rev() {
            let e = kappa * kappa + (n as f64 * PI / len).powi(2);
            s += e.powi(-p);
        }
        s
    }

    #[test]
    fn single_mode_traces() {
        let quad = QuadPolicy::default();
        let one = |_: f64| 1.0;
        for p in 2..=4 {
            let ds = enumerate_diagrams(p).unwrap();
            for &k in &[0.0, 0.7, 5.0, 60.0] {
                let lp = LevelProblem {
                    p,
                    diagrams: &ds,
                    fam: KernelFamily::Dirichlet,
                    len: 1.3,
                    sigma: &one,
                    weighted_zero: true,
                };
                let (v, _) = lp.eval(k, &quad);
                let want = dirichlet_trace(k, 1.3, p as i32);
                assert!((v - want).abs() < 1e-12 * want, "p={p} k={k} {v} {want}");
            }
        }
    }

    #[test]
    fn weighted_zero_mode_matches_weighted_spectrum() {
        // Neumann with σ = 1 + y/2 on (−1/2, 1/2): compare Tr(Gσ)² with a Galerkin spectrum in the cosine basis
        let quad = QuadPolicy::default();
        let sig = |y: f64| 1.0 + 0.5 * y;
        let ds = enumerate_diagrams(2).unwrap();
        let lp = LevelProblem {
            p: 2,
            diagrams: &ds,
            fam: KernelFamily::Neumann,
            len: 1.0,
            sigma: &sig,
            weighted_zero: true,
        };
        let (v, _) = lp.eval(0.0, &quad);
        // generalized eigenproblem K c = E M c in cos(nπ(y+1/2)), n = 0..N
        let n = 120;
        let (x, w) = crate::quadrature::gauss_legendre(400);
        let basis = |k: usize, y: f64| (k as f64 * PI * (y + 0.5)).cos();
        let mut mm = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                mm[(i, j)] = x
                    .iter()
                    .zip(&w)
                    .map(|(t, wt)| 0.5 * wt * basis(i, 0.5 * t) * basis(j, 0.5 * t) * sig(0.5 * t))
                    .sum();
            }
        }
        let kd: Vec<f64> = (0..n).map(|k| (k as f64 * PI).powi(2) * if k == 0 { 1.0 } else { 0.5 }).collect();
        // E⁻¹ are eigenvalues of K⁺^{1/2} M K⁺^{1/2} on the non-constant block after eliminating the constant weighted mode;
        // equivalently Tr((K⁺ M)²) restricted to the M-orthogonal complement of 1.
        let chol = mm.clone().cholesky().unwrap();
        let linv = chol.l().try_inverse().unwrap();
        let mut kk = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            kk[(i, i)] = kd[i];
        }
        let a = &linv * kk * linv.transpose();
        let ev = a.symmetric_eigen();
        let mut e: Vec<f64> = ev.eigenvalues.iter().cloned().collect();
        e.sort_by(f64::total_cmp);
        let z: f64 = e[1..].iter().map(|x| x.powi(-2)).sum();
        assert!(((v - z) / z).abs() < 1e-6, "{v} {z}");
    }
}
