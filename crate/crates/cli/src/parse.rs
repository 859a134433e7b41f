//! Value syntaxes shared by several commands.

use crate::error::{config, CliResult};
use drumzeta::{Density2, Rect};
use std::f64::consts::PI;

pub fn number(s: &str, what: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => config(format!("{what}: cannot parse {s:?} as a finite number")),
    }
}

/// `AxB`.
pub fn rect(s: &str) -> CliResult<Rect> {
    let Some((a, b)) = s.split_once(['x', 'X']) else {
        return config(format!("rect: expected AxB, got {s:?}"));
    };
    Rect::new(number(a, "rect")?, number(b, "rect")?).or_else(|e| config(format!("rect: {e}")))
}

/// `x,y`.
pub fn point(s: &str) -> CliResult<(f64, f64)> {
    let Some((x, y)) = s.split_once(',') else {
        return config(format!("point: expected x,y, got {s:?}"));
    };
    Ok((number(x, "point")?, number(y, "point")?))
}

/// A plain number or a multiple of π such as `pi`, `pi/4`, `3pi/4`.
pub fn angle(s: &str) -> CliResult<f64> {
    let t = s.trim().to_ascii_lowercase();
    let Some(i) = t.find("pi") else {
        return number(&t, "angle");
    };
    let (head, tail) = (&t[..i], &t[i + 2..]);
    let k = match head.trim_end_matches('*') {
        "" => 1.0,
        h => number(h, "angle")?,
    };
    let d = match tail.strip_prefix('/') {
        Some(d) => number(d, "angle")?,
        None if tail.is_empty() => 1.0,
        None => return config(format!("angle: cannot parse {s:?}")),
    };
    Ok(k * PI / d)
}

/// A single value or a grid: `lo:hi:step`, `lo:hi:lin:N`, `lo:hi:log` or `lo:hi:log:N`.
pub fn grid(s: &str, what: &str, value: &dyn Fn(&str) -> CliResult<f64>) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 1 {
        return Ok(vec![value(parts[0])?]);
    }
    if !(3..=4).contains(&parts.len()) {
        return config(format!("{what}: expected lo:hi:step, lo:hi:lin:N or lo:hi:log[:N], got {s:?}"));
    }
    let (lo, hi) = (value(parts[0])?, value(parts[1])?);
    let count = |i: usize, default: usize| -> CliResult<usize> {
        match parts.get(i) {
            None => Ok(default),
            Some(n) => match n.parse::<usize>() {
                Ok(n) if n >= 2 => Ok(n),
                _ => config(format!("{what}: point count must be an integer >= 2, got {n:?}")),
            },
        }
    };
    let pts: Vec<f64> = match parts[2] {
        "log" => {
            if !(lo > 0.0 && hi > 0.0) {
                return config(format!("{what}: log grid needs positive end points"));
            }
            let n = count(3, 25)?;
            let (a, b) = (lo.ln(), hi.ln());
            let mut v: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
            v[0] = lo;
            v[n - 1] = hi;
            v
        }
        "lin" => {
            let n = count(3, 0)?;
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        }
        step if parts.len() == 3 => {
            let h = number(step, what)?;
            if h == 0.0 || (hi - lo) * h < 0.0 {
                return config(format!("{what}: step {h} does not lead from {lo} to {hi}"));
            }
            let n = ((hi - lo) / h + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return config(format!("{what}: grid of {n} points is too large"));
            }
            (0..=n).map(|i| lo + h * i as f64).collect()
        }
        other => return config(format!("{what}: unknown grid kind {other:?}")),
    };
    if pts.len() < 2 {
        return config(format!("{what}: a grid needs at least two points"));
    }
    Ok(pts)
}

/// A density with the rectangle it lives on when the density fixes one.
pub struct DensitySpec {
    pub density: Density2,
    pub rect: Option<Rect>,
}

/// `const:<v>`, `conformal-annulus:<rmin>` or `power-annulus:<b>,<rmin>`.
pub fn density(s: &str) -> CliResult<DensitySpec> {
    let Some((kind, args)) = s.split_once(':') else {
        return config(format!("density: expected kind:args, got {s:?}"));
    };
    let annulus_rect = |r: f64| -> CliResult<Rect> {
        if !(r > 0.0 && r < 1.0) {
            return config(format!("density: r_min must lie in (0, 1), got {r}"));
        }
        Rect::new(-r.ln(), 2.0 * PI).or_else(|e| config(format!("density: {e}")))
    };
    match kind {
        "const" => {
            let v = number(args, "density")?;
            if v <= 0.0 {
                return config(format!("density: constant must be > 0, got {v}"));
            }
            Ok(DensitySpec { density: Density2::Constant(v), rect: None })
        }
        "conformal-annulus" => {
            let r = number(args, "density")?;
            let rect = annulus_rect(r)?;
            Ok(DensitySpec { density: Density2::conformal_annulus(r), rect: Some(rect) })
        }
        "power-annulus" => {
            let Some((b, r)) = args.split_once(',') else {
                return config(format!("density: expected power-annulus:<b>,<rmin>, got {s:?}"));
            };
            let (b, r) = (number(b, "density")?, number(r, "density")?);
            let rect = annulus_rect(r)?;
            Ok(DensitySpec { density: Density2::power_annulus(b, r), rect: Some(rect) })
        }
        "expr" => config("density: expression densities are not supported"),
        other => config(format!("density: unknown kind {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(angle("PI").unwrap(), PI);
        assert_eq!(angle("0.5").unwrap(), 0.5);
        assert!(angle("pix").is_err());
    }

    #[test]
    fn grids() {
        let g = grid("-6:2:0.1", "b", &|s| number(s, "b")).unwrap();
        assert_eq!(g.len(), 81);
        assert!((g[80] - 2.0).abs() < 1e-12);
        let l = grid("0.001:0.2:log:5", "r", &|s| number(s, "r")).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!((l[0], l[4]), (0.001, 0.2));
        assert_eq!(grid("0.3", "r", &|s| number(s, "r")).unwrap(), vec![0.3]);
        assert!(grid("1:0:0.1", "b", &|s| number(s, "b")).is_err());
        assert!(grid("0:1:log", "b", &|s| number(s, "b")).is_err());
    }

    #[test]
    fn densities() {
        assert!(matches!(density("const:2").unwrap().density, Density2::Constant(v) if v == 2.0));
        let d = density("power-annulus:1,0.2").unwrap();
        assert!((d.rect.unwrap().a + 0.2f64.ln()).abs() < 1e-15);
        assert!(density("conformal-annulus:1.5").is_err());
        assert!(density("expr:x*y").is_err());
        assert!(density("const:-1").is_err());
    }

    #[test]
    fn rects_and_points() {
        let r = rect("1x2.5").unwrap();
        assert_eq!((r.a, r.b), (1.0, 2.5));
        assert!(rect("1by2").is_err());
        assert_eq!(point("0.1,-0.2").unwrap(), (0.1, -0.2));
    }
}
