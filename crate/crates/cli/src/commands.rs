//! One function per subcommand, each returning the rows it computed.

use crate::error::{config, CliError, CliResult, Context};
use crate::parse;
use crate::report::{resolve_output, Cell, Table};
use crate::{AnnulusArgs, CompareArgs, GreenArgs, InhomArgs, KernelArgs, OracleArgs, SectorArgs, SweepArgs, ZetaArgs};
use drumzeta::basis1d::{transverse_kernel, ZeroMode};
use drumzeta::closedforms::{
    annulus_small_hole, annulus_z2_dp_polylog, annulus_z2_dp_series, inhom_annulus_z2_asym, inhom_annulus_z2_estimate,
    sector_exact, sector_zeta, SmallHoleCase, DEFAULT_TERMS, SECTOR_ANGLES,
};
use drumzeta::green2d::{green_expanded, ExpansionAxis, TailModel as GreenTail};
use drumzeta::oracle::{annulus_spectrum, rectangle_spectrum, sector_spectrum, zeta_bruteforce, TailModel};
use drumzeta::sumrule::{default_series_policy, zeta_general, zeta_separable_projected, Profile, SeparableAxis};
use drumzeta::{
    AnnulusGeom, BCPair, CrossKind, Density2, Interval, KernelFamily, Point2, QuadPolicy, RadialPower, Rect,
    SectorGeom, Spectrum, SumRuleResult, TruncationPolicy, ZeroProjection,
};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::sync::Arc;

/// Relative error assigned to double-precision closed forms; covers the
/// worst deviation seen against exact constants and high-precision references.
const CLOSED_REL: f64 = 1e-12;

fn parsed<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| CliError::Config(format!("{what}: {e}")))
}

fn annulus_geom(r: f64) -> CliResult<AnnulusGeom> {
    AnnulusGeom::new(r).or_else(|e| config(format!("rmin: {e}")))
}

fn sector_geom(phi: f64) -> CliResult<SectorGeom> {
    SectorGeom::new(phi).or_else(|e| config(format!("phi: {e}")))
}

fn need<T: Copy>(v: Option<T>, what: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Config(format!("--{what} is required here")))
}

fn need_str<'a>(v: &'a Option<String>, what: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Config(format!("--{what} is required here")))
}

/// Engine sum rule on the conformal rectangle of the annulus r_min < r < 1.
fn annulus_engine(p: usize, bc: BCPair, r: f64, zero: ZeroProjection) -> CliResult<SumRuleResult> {
    let rect = Rect::new(-r.ln(), 2.0 * PI).ctx("conformal rectangle")?;
    let profile: Profile = Arc::new(move |x: f64| r * (2.0 * x).exp());
    zeta_separable_projected(
        p,
        bc,
        rect,
        &profile,
        SeparableAxis::XOnly,
        zero,
        &default_series_policy(),
        &QuadPolicy::default(),
    )
    .ctx("engine")
}

pub fn kernel(a: &KernelArgs) -> CliResult<Table> {
    let fam: KernelFamily = parsed(&a.family, "family")?;
    let l = Interval::new(a.len).or_else(|e| config(format!("len: {e}")))?;
    let zm = if a.zero_mode { ZeroMode::Pseudo } else { ZeroMode::Reject };
    let v = transverse_kernel(fam, l, a.kappa2, a.y, a.yp, zm).ctx("kernel")?;
    let mut t = Table::new(&["value", "abs_error"]);
    t.push(vec![v.into(), (8.0 * f64::EPSILON * v.abs()).into()]);
    Ok(t)
}

pub fn green(a: &GreenArgs) -> CliResult<Table> {
    let bc: BCPair = parsed(&a.bc, "bc")?;
    let rect = parse::rect(&a.rect)?;
    let (x, y) = parse::point(&a.r)?;
    let (xp, yp) = parse::point(&a.rp)?;
    let axis = match a.axis.as_str() {
        "auto" => ExpansionAxis::Auto,
        "x" => ExpansionAxis::XModes,
        "y" => ExpansionAxis::YModes,
        other => return config(format!("axis: expected auto, x or y, got {other:?}")),
    };
    let tp = TruncationPolicy { max_modes: a.max_modes, rel_tol: a.rel_tol, tail_model: GreenTail::Geometric };
    tp.validate().or_else(|e| config(e.to_string()))?;
    let g = green_expanded(bc, rect, Point2::new(x, y), Point2::new(xp, yp), axis, &tp).ctx("green")?;
    let mut t = Table::new(&["value", "abs_error", "modes"]);
    t.push(vec![g.value.into(), g.tail_bound.into(), (g.modes as u64).into()]);
    Ok(t)
}

pub fn zeta(a: &ZetaArgs) -> CliResult<Table> {
    let bc: BCPair = parsed(&a.bc, "bc")?;
    let zero: ZeroProjection = parsed(&a.zero_projection, "zero-projection")?;
    let spec = parse::density(&a.density)?;
    let rect = match (&a.rect, spec.rect) {
        (None, None) => return config("--rect is required for constant densities"),
        (None, Some(r)) => r,
        (Some(s), None) => parse::rect(s)?,
        (Some(s), Some(implied)) => {
            let r = parse::rect(s)?;
            if (r.a - implied.a).abs() > 1e-9 * implied.a || (r.b - implied.b).abs() > 1e-9 * implied.b {
                return config(format!("rect {s} does not match the annulus rectangle {}x{}", implied.a, implied.b));
            }
            implied
        }
    };
    let tp = TruncationPolicy { max_modes: a.max_modes, rel_tol: a.rel_tol, ..default_series_policy() };
    tp.validate().or_else(|e| config(e.to_string()))?;
    let q = QuadPolicy { points_per_axis: a.points, subdivisions: a.subdivisions, ..QuadPolicy::default() };
    q.validate().or_else(|e| config(e.to_string()))?;
    if a.p.is_empty() {
        return config("--p needs at least one order");
    }
    let mut t = Table::new(&["p", "value", "abs_error", "modes_used", "quad_evals"]);
    for &p in &a.p {
        let r = match &spec.density {
            Density2::XOnly(f) => zeta_separable_projected(p, bc, rect, f, SeparableAxis::XOnly, zero, &tp, &q),
            Density2::YOnly(f) => zeta_separable_projected(p, bc, rect, f, SeparableAxis::YOnly, zero, &tp, &q),
            d => zeta_general(p, bc, rect, d, &tp, &q),
        }
        .ctx(&format!("zeta p={p}"))?;
        t.push(vec![(p as u64).into(), r.value.into(), r.abs_error.into(), r.modes_used.into(), r.quad_evals.into()]);
    }
    Ok(t)
}

/// The matching engine assembly for a small-hole case.
fn small_hole_engine(case: SmallHoleCase, r: f64) -> CliResult<f64> {
    let name = case.to_string();
    let (bc, zero) = if name.starts_with("NDP") {
        (BCPair::NDP, ZeroProjection::Weighted)
    } else if name.starts_with("DNP") {
        (BCPair::DNP, ZeroProjection::Weighted)
    } else if name.starts_with("NP") {
        // the printed Neumann expansion is the flat pseudo-kernel trace
        (BCPair::NP, ZeroProjection::Flat)
    } else {
        (BCPair::DP, ZeroProjection::Weighted)
    };
    Ok(annulus_engine(case.order() as usize, bc, r, zero)?.value)
}

pub fn annulus(a: &AnnulusArgs) -> CliResult<Table> {
    let g = annulus_geom(a.rmin)?;
    if a.terms == 0 {
        return config("--terms must be positive");
    }
    let mut t = Table::new(&["form", "value", "abs_error"]);
    let s = annulus_z2_dp_series(g, a.terms);
    let p = annulus_z2_dp_polylog(g, a.terms);
    t.push(vec!["series".into(), s.into(), (CLOSED_REL * s.abs()).into()]);
    t.push(vec!["polylog".into(), p.into(), (CLOSED_REL * p.abs()).into()]);
    for c in &a.case {
        let case: SmallHoleCase = parsed(c, "case")?;
        let v = annulus_small_hole(case, g);
        // a truncated expansion: report its actual distance from the exact value
        let exact = if case == SmallHoleCase::Dp2 { p } else { small_hole_engine(case, a.rmin)? };
        t.push(vec![format!("small-hole:{case}").into(), v.into(), (v - exact).abs().into()]);
    }
    Ok(t)
}

pub fn sector(a: &SectorArgs) -> CliResult<Table> {
    let phi = parse::angle(&a.phi)?;
    let g = sector_geom(phi)?;
    let mut t = Table::new(&["phi", "p", "value", "abs_error"]);
    for &p in &a.p {
        let v = sector_zeta(g, p).or_else(|e| config(format!("p: {e}")))?;
        t.push(vec![phi.into(), (p as u64).into(), v.into(), (CLOSED_REL * v.abs()).into()]);
    }
    Ok(t)
}

pub fn inhom(a: &InhomArgs) -> CliResult<Table> {
    let g = annulus_geom(a.rmin)?;
    let pw = RadialPower::new(a.b).or_else(|e| config(format!("b: {e}")))?;
    let v = inhom_annulus_z2_estimate(g, pw, a.terms.max(1));
    let mut cols = vec!["b", "rmin", "value", "abs_error"];
    let mut row: Vec<Cell> = vec![a.b.into(), a.rmin.into(), v.value.into(), v.abs_error.into()];
    if a.asym {
        if a.b != -2.0 {
            return config("--asym applies to b = -2 only");
        }
        cols.push("asym");
        row.push(inhom_annulus_z2_asym(g).into());
    }
    let mut t = Table::new(&cols);
    t.push(row);
    Ok(t)
}

fn spectrum_for(a: &OracleArgs) -> CliResult<Spectrum> {
    if !(a.emax > 0.0 && a.emax.is_finite()) {
        return config(format!("emax must be positive, got {}", a.emax));
    }
    let k = a.emax.sqrt();
    match a.domain.as_str() {
        "rect" => {
            let bc: BCPair = parsed(need_str(&a.bc, "bc")?, "bc")?;
            let rect = parse::rect(need_str(&a.rect, "rect")?)?;
            rectangle_spectrum(bc, rect, a.emax).ctx("rectangle spectrum")
        }
        "annulus" => {
            let r = need(a.rmin, "rmin")?;
            let kind: CrossKind = parsed(&a.edge, "edge")?;
            let m_max = a.order_max.unwrap_or(k.ceil() as u32 + 1);
            annulus_spectrum(kind, r, a.emax, m_max).ctx("annulus spectrum")
        }
        "sector" => {
            let phi = parse::angle(need_str(&a.phi, "phi")?)?;
            let g = sector_geom(phi)?;
            let n_max = a.order_max.unwrap_or((2.0 * phi * k / PI).ceil() as u32 + 1);
            sector_spectrum(g, a.emax, n_max).ctx("sector spectrum")
        }
        other => config(format!("domain: expected rect, annulus or sector, got {other:?}")),
    }
}

pub fn oracle(a: &OracleArgs) -> CliResult<Table> {
    let tail: TailModel = parsed(&a.tail, "tail")?;
    let spec = spectrum_for(a)?;
    if let Some(path) = &a.spectrum_out {
        let path = resolve_output(path);
        spec.write_csv(BufWriter::new(File::create(&path)?)).ctx("spectrum csv")?;
    }
    let mut t = Table::new(&["p", "value", "abs_error", "levels", "modes"]);
    for &p in &a.p {
        let r = zeta_bruteforce(&spec, p, tail).ctx(&format!("brute force p={p}"))?;
        t.push(vec![
            (p as u64).into(),
            r.value.into(),
            r.abs_error.into(),
            (spec.len() as u64).into(),
            spec.mode_count().into(),
        ]);
    }
    Ok(t)
}

pub fn compare(a: &CompareArgs) -> CliResult<Table> {
    let mut methods: Vec<(&str, f64, f64)> = Vec::new();
    match a.case.as_str() {
        "annulus-dp" => {
            let r = need(a.rmin, "rmin")?;
            let g = annulus_geom(r)?;
            let e = annulus_engine(a.p, BCPair::DP, r, ZeroProjection::Weighted)?;
            methods.push(("engine", e.value, e.abs_error));
            if a.p == 2 {
                let s = annulus_z2_dp_series(g, DEFAULT_TERMS);
                let pl = annulus_z2_dp_polylog(g, DEFAULT_TERMS);
                methods.push(("series", s, CLOSED_REL * s));
                methods.push(("polylog", pl, CLOSED_REL * pl));
            }
            let spec =
                annulus_spectrum(CrossKind::DD, r, a.emax, a.emax.sqrt().ceil() as u32 + 1).ctx("annulus spectrum")?;
            let o = zeta_bruteforce(&spec, a.p, TailModel::WeylIntegral).ctx("brute force")?;
            methods.push(("bessel-oracle", o.value, o.abs_error));
        }
        "sector" => {
            let phi = parse::angle(need_str(&a.phi, "phi")?)?;
            let g = sector_geom(phi)?;
            let v = sector_zeta(g, a.p as u32).or_else(|e| config(format!("p: {e}")))?;
            methods.push(("closed-form", v, CLOSED_REL * v));
            let n_max = (2.0 * phi * a.emax.sqrt() / PI).ceil() as u32 + 1;
            let spec = sector_spectrum(g, a.emax, n_max).ctx("sector spectrum")?;
            let o = zeta_bruteforce(&spec, a.p, TailModel::WeylIntegral).ctx("brute force")?;
            methods.push(("bessel-oracle", o.value, o.abs_error));
        }
        other => return config(format!("case: expected annulus-dp or sector, got {other:?}")),
    }
    let mut t = Table::new(&["method", "value", "abs_error"]);
    let (mut dev, mut err) = (0.0f64, 0.0f64);
    for (i, &(_, vi, ei)) in methods.iter().enumerate() {
        for &(_, vj, ej) in &methods[i + 1..] {
            if (vi - vj).abs() >= dev {
                dev = (vi - vj).abs();
                err = ei + ej;
            }
        }
    }
    for (m, v, e) in methods {
        t.push(vec![m.into(), v.into(), e.into()]);
    }
    t.push(vec!["max_pairwise_deviation".into(), dev.into(), err.into()]);
    Ok(t)
}

pub fn sweep(a: &SweepArgs) -> CliResult<Table> {
    let num = |what: &'static str| move |s: &str| parse::number(s, what);
    let grid = |v: &Option<String>, what: &'static str| -> CliResult<Vec<f64>> {
        parse::grid(need_str(v, what)?, what, &num(what))
    };
    let one_range = |lens: &[usize]| -> CliResult<()> {
        match lens.iter().filter(|&&n| n > 1).count() {
            1 => Ok(()),
            _ => config("exactly one parameter must be a grid with at least two points"),
        }
    };
    let terms = a.terms.max(1);
    match a.kind.as_str() {
        "inhom" => {
            let rs = grid(&a.rmin, "rmin")?;
            let bs = grid(&a.b, "b")?;
            one_range(&[rs.len(), bs.len()])?;
            if a.asym && !(bs.len() == 1 && bs[0] == -2.0) {
                return config("--asym applies to b = -2 only");
            }
            for &r in &rs {
                annulus_geom(r)?;
            }
            for &b in &bs {
                RadialPower::new(b).or_else(|e| config(format!("b: {e}")))?;
            }
            let pts: Vec<(f64, f64)> = rs.iter().flat_map(|&r| bs.iter().map(move |&b| (r, b))).collect();
            let rows: Vec<Vec<Cell>> = pts
                .par_iter()
                .map(|&(r, b)| {
                    let g = AnnulusGeom::new(r).expect("validated");
                    let v = inhom_annulus_z2_estimate(g, RadialPower::new(b).expect("validated"), terms);
                    let mut row: Vec<Cell> = vec![r.into(), b.into(), v.value.into(), v.abs_error.into()];
                    if a.asym {
                        row.push(inhom_annulus_z2_asym(g).into());
                    }
                    row
                })
                .collect();
            let mut cols = vec!["rmin", "b", "value", "abs_error"];
            if a.asym {
                cols.push("asym");
            }
            Ok(Table { columns: cols, rows })
        }
        "annulus-dp" => {
            let rs = grid(&a.rmin, "rmin")?;
            one_range(&[rs.len()])?;
            if !(2..=4).contains(&a.p) {
                return config("annulus-dp sweeps support p = 2, 3, 4");
            }
            for &r in &rs {
                annulus_geom(r)?;
            }
            let case = match a.p {
                2 => SmallHoleCase::Dp2,
                3 => SmallHoleCase::Dp3,
                _ => SmallHoleCase::Dp4,
            };
            let rows: Vec<CliResult<Vec<Cell>>> = rs
                .par_iter()
                .map(|&r| {
                    let g = AnnulusGeom::new(r).expect("validated");
                    let (v, e) = if a.p == 2 {
                        let v = annulus_z2_dp_polylog(g, terms);
                        (v, CLOSED_REL * v)
                    } else {
                        let e = annulus_engine(a.p, BCPair::DP, r, ZeroProjection::Weighted)?;
                        (e.value, e.abs_error)
                    };
                    let mut row: Vec<Cell> = vec![r.into(), v.into(), e.into()];
                    if a.asym {
                        row.push(annulus_small_hole(case, g).into());
                    }
                    Ok(row)
                })
                .collect();
            let mut cols = vec!["rmin", "value", "abs_error"];
            if a.asym {
                cols.push("asym");
            }
            Ok(Table { columns: cols, rows: rows.into_iter().collect::<CliResult<_>>()? })
        }
        "sector" => {
            let phis = parse::grid(need_str(&a.phi, "phi")?, "phi", &parse::angle)?;
            one_range(&[phis.len()])?;
            if a.asym {
                return config("--asym is not defined for sector sweeps");
            }
            let p = a.p as u32;
            let rows: Vec<CliResult<Vec<Cell>>> = phis
                .par_iter()
                .map(|&phi| {
                    let v = sector_zeta(sector_geom(phi)?, p).or_else(|e| config(format!("p: {e}")))?;
                    Ok(vec![phi.into(), v.into(), (CLOSED_REL * v.abs()).into()])
                })
                .collect();
            Ok(Table { columns: vec!["phi", "value", "abs_error"], rows: rows.into_iter().collect::<CliResult<_>>()? })
        }
        other => config(format!("sweep kind: expected inhom, annulus-dp or sector, got {other:?}")),
    }
}

pub fn table1() -> CliResult<Table> {
    const LABELS: [&str; 4] = ["pi/4", "pi/2", "3pi/4", "pi"];
    let mut t = Table::new(&["angle", "phi", "p", "value", "exact", "abs_error", "rel_deviation"]);
    for (i, &phi) in SECTOR_ANGLES.iter().enumerate() {
        for p in 2..=4u32 {
            let v = sector_zeta(sector_geom(phi)?, p).ctx("sector")?;
            let x = sector_exact(i, p).ctx("sector table")?;
            t.push(vec![
                LABELS[i].into(),
                phi.into(),
                (p as u64).into(),
                v.into(),
                x.into(),
                (CLOSED_REL * v.abs()).into(),
                ((v - x) / x).abs().into(),
            ]);
        }
    }
    Ok(t)
}
