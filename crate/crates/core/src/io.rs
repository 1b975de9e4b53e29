//! The `cubix-complex v1` and `cubix-wallspace v1` text formats.
//!
//! Blank lines and lines starting with `#` are ignored, as is an optional
//! first line naming the format.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::complex::{CubeComplex, Vertex, Wallspace};
use crate::error::{CubixError, Result};

pub const COMPLEX_MAGIC: &str = "cubix-complex v1";
pub const WALLSPACE_MAGIC: &str = "cubix-wallspace v1";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn check_ascii(text: &str) -> Result<()> {
    match text.lines().position(|l| !l.is_ascii()) {
        Some(i) => Err(CubixError::parse(i + 1, "non-ASCII input")),
        None => Ok(()),
    }
}

/// Wall count and vertex list, without checking that they form a complex.
pub fn parse_complex_raw(text: &str) -> Result<(usize, Vec<Vertex>)> {
    check_ascii(text)?;
    let mut walls: Option<usize> = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (n, line) in content_lines(text) {
        if line == COMPLEX_MAGIC {
            continue;
        }
        if let Some(rest) = line.strip_prefix("walls") {
            if walls.is_some() {
                return Err(CubixError::parse(n, "duplicate `walls` header"));
            }
            let m = rest.trim().parse().map_err(|_| CubixError::parse(n, format!("bad wall count: {}", rest.trim())))?;
            walls = Some(m);
        } else if line.bytes().all(|b| b == b'0' || b == b'1') {
            rows.push((n, line));
        } else {
            return Err(CubixError::parse(n, format!("expected a 0/1 string, got `{line}`")));
        }
    }
    let m = walls.ok_or_else(|| CubixError::parse(0, "missing `walls` header"))?;
    let mut verts = Vec::with_capacity(rows.len());
    for (n, row) in rows {
        if row.len() != m {
            return Err(CubixError::parse(n, format!("expected {m} bits, got {}", row.len())));
        }
        verts.push(Vertex::from_bitstring(row).expect("checked 0/1"));
    }
    if m == 0 && verts.is_empty() {
        verts.push(Vertex::empty());
    }
    Ok((m, verts))
}

pub fn parse_complex(text: &str) -> Result<CubeComplex> {
    let (m, verts) = parse_complex_raw(text)?;
    CubeComplex::new(m, verts, None, None)
}

/// Serialises vertices in lexicographic order.
pub fn write_complex(x: &CubeComplex) -> String {
    let mut out = format!("{COMPLEX_MAGIC}\nwalls {}\n", x.wall_count());
    let mut rows: Vec<String> = x.vertices().iter().map(|v| v.to_bitstring(x.wall_count())).collect();
    rows.sort();
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn parse_wallspace(text: &str) -> Result<Wallspace> {
    check_ascii(text)?;
    let mut points: Option<Vec<String>> = None;
    let mut raw: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (n, line) in content_lines(text) {
        if line == WALLSPACE_MAGIC {
            continue;
        }
        if let Some(rest) = line.strip_prefix("points") {
            if points.is_some() {
                return Err(CubixError::parse(n, "duplicate `points` line"));
            }
            points = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("wall ") {
            let (name, side) = rest
                .split_once(':')
                .ok_or_else(|| CubixError::parse(n, "expected `wall <name>: <points>`"))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(CubixError::parse(n, "empty wall name"));
            }
            raw.push((n, name.to_string(), side.split_whitespace().map(str::to_string).collect()));
        } else {
            return Err(CubixError::parse(n, format!("unrecognised line `{line}`")));
        }
    }
    let points = points.ok_or_else(|| CubixError::parse(0, "missing `points` line"))?;
    let index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
    if index.len() != points.len() {
        return Err(CubixError::parse(0, "repeated point name"));
    }
    let mut walls = Vec::with_capacity(raw.len());
    for (n, name, side) in raw {
        let set = side
            .iter()
            .map(|p| index.get(p.as_str()).copied().ok_or_else(|| CubixError::parse(n, format!("unknown point `{p}`"))))
            .collect::<Result<BTreeSet<usize>>>()?;
        walls.push((name, set));
    }
    Ok(Wallspace::new(points, walls))
}

pub fn write_wallspace(ws: &Wallspace) -> String {
    let mut out = format!("{WALLSPACE_MAGIC}\npoints {}\n", ws.points.join(" "));
    for (name, side) in &ws.walls {
        let pts: Vec<&str> = side.iter().map(|&p| ws.points[p].as_str()).collect();
        let _ = writeln!(out, "wall {name}: {}", pts.join(" "));
    }
    out
}
