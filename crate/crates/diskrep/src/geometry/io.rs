use std::fmt::Write as _;

use super::{DiskLayout, GridCoord, GridLayout, Point2};
use crate::error::{Error, Result};

/// Formats `x` with `sig` significant digits in the style of C's `%g`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -5 || exp >= sig as i32 {
        let mant = trim_zeros(mant);
        return format!("{mant}e{exp}");
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_disk_layout(layout: &DiskLayout) -> String {
    let mut out = String::new();
    for (v, c) in layout.centers.iter().enumerate() {
        if let Some(p) = c {
            let _ = writeln!(out, "{v} {} {}", fmt_sig(p.x, 12), fmt_sig(p.y, 12));
        }
    }
    out
}

pub fn write_grid_layout(layout: &GridLayout) -> String {
    let mut out = String::new();
    for (v, c) in layout.cells.iter().enumerate() {
        if let Some(c) = c {
            let _ = writeln!(out, "{v} {} {}", c.a, c.b);
        }
    }
    out
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn field<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad number {tok:?}") })
}

/// Parses `v x y` lines.
pub fn parse_disk_layout(text: &str) -> Result<DiskLayout> {
    let mut layout = DiskLayout::default();
    for (line, toks) in records(text) {
        if toks.len() != 3 {
            return Err(Error::Parse { line, msg: "expected `v x y`".into() });
        }
        let v: usize = field(toks[0], line)?;
        let p = Point2::new(field(toks[1], line)?, field(toks[2], line)?);
        if !p.is_finite() {
            return Err(Error::Parse { line, msg: "non-finite coordinate".into() });
        }
        if layout.get(v).is_some() {
            return Err(Error::Parse { line, msg: format!("vertex {v} placed twice") });
        }
        layout.set(v, p);
    }
    Ok(layout)
}

/// Parses `v a b` lines with integer axial coordinates.
pub fn parse_grid_layout(text: &str) -> Result<GridLayout> {
    let mut layout = GridLayout::default();
    for (line, toks) in records(text) {
        if toks.len() != 3 {
            return Err(Error::Parse { line, msg: "expected `v a b`".into() });
        }
        let v: usize = field(toks[0], line)?;
        if layout.get(v).is_some() {
            return Err(Error::Parse { line, msg: format!("vertex {v} placed twice") });
        }
        layout.set(v, GridCoord::new(field(toks[1], line)?, field(toks[2], line)?));
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(2.0, 12), "2");
        assert_eq!(fmt_sig(-1.5, 12), "-1.5");
        assert_eq!(fmt_sig(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(fmt_sig(12345.678901234567, 12), "12345.6789012");
        assert_eq!(fmt_sig(1.25e-7, 12), "1.25e-7");
        assert_eq!(fmt_sig(3e15, 12), "3e15");
    }

    #[test]
    fn layouts_round_trip() {
        let mut d = DiskLayout::with_len(3);
        d.set(0, Point2::new(0.5, -1.0));
        d.set(2, Point2::new(1.0 / 3.0, 2.0));
        let back = parse_disk_layout(&write_disk_layout(&d)).unwrap();
        assert!(back.get(1).is_none());
        assert!((back.get(2).unwrap().x - 1.0 / 3.0).abs() < 1e-12);

        let mut g = GridLayout::default();
        g.set(1, GridCoord::new(-3, 4));
        assert_eq!(parse_grid_layout(&write_grid_layout(&g)).unwrap(), g);
        assert!(parse_grid_layout("0 1\n").is_err());
        assert!(parse_disk_layout("0 1 1\n0 2 2\n").is_err());
    }
}
