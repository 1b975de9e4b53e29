//! Truncation systems for the standard example families.
//!
//! Every level is a finite CAT(0) cube complex containing the origin, whose
//! vertex is the empty wall set. Walls are keyed by `(family, index)` and
//! numbered by first appearance, so the walls of `X_r` are a prefix of the
//! walls of `X_{r+1}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::complex::{CubeComplex, Vertex, WallId};
use crate::error::{CubixError, Result};
use crate::geodesic::GeodesicPath;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `[0,∞)^dim`.
    Orthant { dim: usize },
    Flat,
    /// `ℝ × [0, height]`.
    Strip { height: usize },
    /// `{0 ≤ y ≤ f(x)}` for nondecreasing positive `f`.
    EighthFlat { f: Vec<usize> },
    /// `{x ≥ 0, −f1(x) ≤ y ≤ f2(x)}`: two eighth-flats sharing a bottom ray.
    DiagonalQuarterFlat { f1: Vec<usize>, f2: Vec<usize> },
    /// `ℝ × [0,∞)`, or with `diagonal` the region below a staircase line
    /// that follows `f2` to the right and `−f1` to the left.
    HalfFlat { diagonal: bool, f1: Vec<usize>, f2: Vec<usize> },
    /// Rooted `degree`-regular tree. With `branching = Some(b)` nodes deeper
    /// than `b` keep only their first child.
    Tree { degree: usize, branching: Option<usize> },
    /// Quarter-flats `F_1..F_stages`, each glued to the previous one along
    /// the outgoing ray shifted by `offset`.
    Spiral { stages: usize, offset: usize },
    Product(Box<FamilySpec>, Box<FamilySpec>),
    /// Wedge at the basepoints.
    Wedge(Box<FamilySpec>, Box<FamilySpec>),
}

/// Stable identity of a wall across levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallKey {
    pub family: u32,
    pub index: i64,
}

type Keys = Vec<WallKey>;

fn key(family: u32, index: i64) -> WallKey {
    WallKey { family, index }
}

/// Walls on the far side of coordinate `c` along one axis.
fn axis(out: &mut Keys, family: u32, c: i64) {
    if c > 0 {
        out.extend((0..c).map(|k| key(family, k)));
    } else {
        out.extend((c..0).map(|k| key(family, k)));
    }
}

fn point(x: i64, y: i64) -> Keys {
    let mut k = Vec::new();
    axis(&mut k, 0, x);
    axis(&mut k, 1, y);
    k
}

/// `f(x)`, continuing past the list with its last increment.
pub fn eval_f(f: &[usize], x: usize) -> usize {
    match f.len() {
        0 => 0,
        n if x < n => f[x],
        1 => f[0],
        n => f[n - 1] + (x - (n - 1)) * (f[n - 1] - f[n - 2]),
    }
}

fn check_f(name: &str, f: &[usize]) -> Result<()> {
    if f.is_empty() {
        return Err(CubixError::InvalidFamily(format!("{name} must be nonempty")));
    }
    if f[0] == 0 {
        return Err(CubixError::InvalidFamily(format!("{name} must be positive")));
    }
    if f.windows(2).any(|w| w[1] < w[0]) {
        return Err(CubixError::InvalidFamily(format!("{name} must be nondecreasing")));
    }
    Ok(())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Orthant { dim } if *dim == 0 => Err(CubixError::InvalidFamily("orthant dim must be ≥ 1".into())),
            FamilySpec::Strip { height } if *height == 0 => {
                Err(CubixError::InvalidFamily("strip height must be ≥ 1".into()))
            }
            FamilySpec::EighthFlat { f } => check_f("f", f),
            FamilySpec::DiagonalQuarterFlat { f1, f2 } | FamilySpec::HalfFlat { diagonal: true, f1, f2 } => {
                check_f("f1", f1)?;
                check_f("f2", f2)
            }
            FamilySpec::Tree { degree, .. } if *degree < 2 => {
                Err(CubixError::InvalidFamily("tree degree must be ≥ 2".into()))
            }
            FamilySpec::Spiral { stages, offset } if *stages == 0 || *offset == 0 => {
                Err(CubixError::InvalidFamily("spiral stages and offset must be ≥ 1".into()))
            }
            FamilySpec::Product(a, b) | FamilySpec::Wedge(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            FamilySpec::Orthant { .. } => "orthant",
            FamilySpec::Flat => "flat",
            FamilySpec::Strip { .. } => "strip",
            FamilySpec::EighthFlat { .. } => "eighth_flat",
            FamilySpec::DiagonalQuarterFlat { .. } => "diagonal_quarter_flat",
            FamilySpec::HalfFlat { .. } => "half_flat",
            FamilySpec::Tree { .. } => "tree",
            FamilySpec::Spiral { .. } => "spiral",
            FamilySpec::Product(..) => "product",
            FamilySpec::Wedge(..) => "wedge",
        }
    }

    /// Label prefix of each wall family.
    fn family_names(&self) -> Vec<String> {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        match self {
            FamilySpec::Orthant { dim } => (0..*dim)
                .map(|a| match a {
                    0 => "V".to_string(),
                    1 => "H".to_string(),
                    2 => "D".to_string(),
                    _ => format!("A{a}."),
                })
                .collect(),
            FamilySpec::Tree { .. } => s(&["e"]),
            FamilySpec::Spiral { stages, .. } => (0..=*stages).map(|m| format!("W{m}.")).collect(),
            FamilySpec::Product(a, b) | FamilySpec::Wedge(a, b) => a
                .family_names()
                .into_iter()
                .map(|n| format!("1.{n}"))
                .chain(b.family_names().into_iter().map(|n| format!("2.{n}")))
                .collect(),
            _ => s(&["V", "H"]),
        }
    }

    /// For planar region kinds: inclusive `(x, lo, hi)` columns at radius r.
    fn columns(&self, r: usize) -> Option<Vec<(i64, i64, i64)>> {
        let ri = r as i64;
        let cap = |v: usize| v.min(r) as i64;
        let cols: Vec<(i64, i64, i64)> = match self {
            FamilySpec::Flat => (-ri..=ri).map(|x| (x, -ri, ri)).collect(),
            FamilySpec::Strip { height } => (-ri..=ri).map(|x| (x, 0, *height as i64)).collect(),
            FamilySpec::EighthFlat { f } => (0..=ri).map(|x| (x, 0, cap(eval_f(f, x as usize)))).collect(),
            FamilySpec::DiagonalQuarterFlat { f1, f2 } => (0..=ri)
                .map(|x| (x, -cap(eval_f(f1, x as usize)), cap(eval_f(f2, x as usize))))
                .collect(),
            FamilySpec::HalfFlat { diagonal: false, .. } => (-ri..=ri).map(|x| (x, 0, ri)).collect(),
            FamilySpec::HalfFlat { diagonal: true, f1, f2 } => (-ri..=ri)
                .map(|x| {
                    let s = if x >= 0 { eval_f(f2, x as usize) as i64 } else { -(eval_f(f1, (-x) as usize) as i64) };
                    (x, -ri, s.min(ri))
                })
                // A one-vertex column would leave its vertical wall crossed by nothing.
                .filter(|&(x, lo, hi)| lo < hi || (x == 0 && lo == hi))
                .collect(),
            _ => return None,
        };
        Some(cols)
    }

    fn vertices(&self, r: usize) -> Result<Vec<Keys>> {
        if let Some(cols) = self.columns(r) {
            return Ok(cols.iter().flat_map(|&(x, lo, hi)| (lo..=hi).map(move |y| point(x, y))).collect());
        }
        match self {
            FamilySpec::Orthant { dim } => {
                let mut out = vec![Vec::new()];
                for a in 0..*dim {
                    out = out
                        .into_iter()
                        .flat_map(|k: Keys| {
                            (0..=r as i64).map(move |c| {
                                let mut k = k.clone();
                                axis(&mut k, a as u32, c);
                                k
                            })
                        })
                        .collect();
                }
                Ok(out)
            }
            FamilySpec::Tree { degree, branching } => tree_vertices(*degree, *branching, r),
            FamilySpec::Spiral { stages, offset } => Ok(spiral_vertices(*stages, *offset, r)),
            FamilySpec::Product(a, b) => {
                let shift = a.family_names().len() as u32;
                let (va, vb) = (a.vertices(r)?, shift_all(b.vertices(r)?, shift));
                Ok(va.iter().flat_map(|p| vb.iter().map(move |q| p.iter().chain(q).copied().collect())).collect())
            }
            FamilySpec::Wedge(a, b) => {
                let shift = a.family_names().len() as u32;
                let mut v = a.vertices(r)?;
                v.extend(shift_all(b.vertices(r)?, shift));
                Ok(v)
            }
            _ => unreachable!("planar kinds handled above"),
        }
    }

    /// Points of a named ray, starting at the origin.
    fn ray_points(&self, name: &str, len: usize) -> Result<Vec<Keys>> {
        let unknown = || CubixError::InvalidFamily(format!("ray `{name}` is not defined for {}", self.kind_name()));
        let planar = |steps: &dyn Fn(usize) -> (i64, i64)| -> Vec<Keys> {
            (0..=len).map(|t| {
                let (x, y) = steps(t);
                point(x, y)
            })
            .collect()
        };
        let t = |n: usize| n as i64;
        match (self, name) {
            (FamilySpec::Orthant { dim }, _) => {
                let axes: Vec<usize> = match name {
                    "diagonal" => (0..*dim).collect(),
                    "axis:+x" | "bottom" => vec![0],
                    "axis:+y" if *dim >= 2 => vec![1],
                    "axis:+z" if *dim >= 3 => vec![2],
                    _ => return Err(unknown()),
                };
                Ok((0..=len)
                    .map(|s| {
                        let mut k = Vec::new();
                        for (i, &a) in axes.iter().enumerate() {
                            let n = axes.len();
                            let c = s / n + usize::from(i < s % n);
                            axis(&mut k, a as u32, c as i64);
                        }
                        k
                    })
                    .collect())
            }
            (FamilySpec::Flat, "diagonal") => Ok(planar(&|s| (t(s - s / 2), t(s / 2)))),
            (FamilySpec::Flat | FamilySpec::Strip { .. } | FamilySpec::HalfFlat { diagonal: false, .. }, "axis:+x") => {
                Ok(planar(&|s| (t(s), 0)))
            }
            (FamilySpec::Flat | FamilySpec::Strip { .. } | FamilySpec::HalfFlat { diagonal: false, .. }, "axis:-x") => {
                Ok(planar(&|s| (-t(s), 0)))
            }
            (FamilySpec::Flat | FamilySpec::HalfFlat { diagonal: false, .. }, "axis:+y") => Ok(planar(&|s| (0, t(s)))),
            (FamilySpec::Flat, "axis:-y") => Ok(planar(&|s| (0, -t(s)))),
            (FamilySpec::EighthFlat { .. } | FamilySpec::DiagonalQuarterFlat { .. }, "bottom" | "axis:+x") => {
                Ok(planar(&|s| (t(s), 0)))
            }
            (FamilySpec::HalfFlat { diagonal: true, .. }, "axis:+x") => Ok(planar(&|s| (t(s), 0))),
            (FamilySpec::HalfFlat { diagonal: true, .. }, "axis:-y") => Ok(planar(&|s| (0, -t(s)))),
            (FamilySpec::EighthFlat { f } | FamilySpec::DiagonalQuarterFlat { f2: f, .. }, "top") => {
                Ok(staircase(|x| eval_f(f, x) as i64, len).into_iter().map(|(x, y)| point(x, y)).collect())
            }
            (FamilySpec::DiagonalQuarterFlat { f1, .. }, "lower") => Ok(staircase(|x| eval_f(f1, x) as i64, len)
                .into_iter()
                .map(|(x, y)| point(x, -y))
                .collect()),
            (FamilySpec::Tree { degree, .. }, _) => {
                let i: usize = name.strip_prefix("end:").and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
                if i >= *degree {
                    return Err(unknown());
                }
                let mut out = vec![Vec::new()];
                let mut cur = Vec::new();
                let (mut d, mut p) = (0usize, 0i64);
                for _ in 0..len {
                    p = if d == 0 { i as i64 } else { p * (*degree as i64 - 1) };
                    d += 1;
                    cur.push(key(0, tree_base(*degree, d)? + p));
                    out.push(cur.clone());
                }
                Ok(out)
            }
            (FamilySpec::Spiral { stages, offset }, "spiral") => {
                let (i, w) = (*stages, *offset);
                Ok((0..=len)
                    .map(|s| {
                        let stage = (s / w + 1).min(i);
                        spiral_point(stage, w, 0, s - (stage - 1) * w)
                    })
                    .collect())
            }
            (FamilySpec::Spiral { offset, .. }, "axis:+x") => {
                Ok((0..=len).map(|s| spiral_point(1, *offset, s, 0)).collect())
            }
            (FamilySpec::Product(a, b) | FamilySpec::Wedge(a, b), _) => {
                if let Some(n) = name.strip_prefix("1.") {
                    a.ray_points(n, len)
                } else if let Some(n) = name.strip_prefix("2.") {
                    Ok(shift_all(b.ray_points(n, len)?, a.family_names().len() as u32))
                } else {
                    Err(unknown())
                }
            }
            _ => Err(unknown()),
        }
    }
}

fn shift_all(v: Vec<Keys>, shift: u32) -> Vec<Keys> {
    v.into_iter().map(|k| k.into_iter().map(|w| key(w.family + shift, w.index)).collect()).collect()
}

/// Monotone staircase hugging the graph of `h` from the origin: climb to
/// `h(x)`, then step right.
fn staircase(h: impl Fn(usize) -> i64, len: usize) -> Vec<(i64, i64)> {
    let (mut x, mut y) = (0i64, 0i64);
    let mut out = vec![(0, 0)];
    while out.len() <= len {
        if y < h(x as usize) {
            y += 1;
        } else {
            x += 1;
        }
        out.push((x, y));
    }
    out
}

/// Number of nodes at depth < d in the full tree.
fn tree_base(degree: usize, d: usize) -> Result<i64> {
    let overflow = || CubixError::InvalidFamily("tree too deep for wall indexing".into());
    let (mut base, mut count) = (0i64, 1i64);
    for k in 0..d {
        base = base.checked_add(count).ok_or_else(overflow)?;
        count = count.checked_mul(if k == 0 { degree as i64 } else { degree as i64 - 1 }).ok_or_else(overflow)?;
    }
    Ok(base)
}

fn tree_vertices(degree: usize, branching: Option<usize>, r: usize) -> Result<Vec<Keys>> {
    let mut out = vec![Vec::new()];
    // (position at depth d, keys of the path)
    let mut frontier: Vec<(i64, Keys)> = vec![(0, Vec::new())];
    for d in 1..=r {
        let base = tree_base(degree, d)?;
        let free = branching.is_none_or(|b| d <= b);
        let mut next = Vec::new();
        for (p, keys) in frontier {
            let kids: Vec<i64> = if d == 1 {
                (0..degree as i64).collect()
            } else {
                let first = p * (degree as i64 - 1);
                if free { (first..first + degree as i64 - 1).collect() } else { vec![first] }
            };
            for c in kids {
                let mut k = keys.clone();
                k.push(key(0, base + c));
                out.push(k.clone());
                next.push((c, k));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Vertex `(p, q)` of quarter-flat `F_stage`.
fn spiral_point(stage: usize, w: usize, p: usize, q: usize) -> Keys {
    let mut k: Keys = (0..q as i64).map(|i| key(stage as u32, i)).collect();
    if stage == 1 {
        k.extend((0..p as i64).map(|i| key(0, i)));
    } else {
        k.extend((0..(p + w) as i64).map(|i| key(stage as u32 - 1, i)));
        for m in 1..stage - 1 {
            k.extend((0..w as i64).map(|i| key(m as u32, i)));
        }
    }
    k
}

fn spiral_vertices(stages: usize, w: usize, r: usize) -> Vec<Keys> {
    let mut out = Vec::new();
    for stage in 1..=stages {
        let pmax = if stage == 1 {
            r
        } else if r >= w {
            r - w
        } else {
            break;
        };
        for p in 0..=pmax {
            for q in 0..=r {
                out.push(spiral_point(stage, w, p, q));
            }
        }
    }
    out
}

/// One finite level of a truncation system.
#[derive(Debug)]
pub struct Level {
    pub radius: usize,
    pub complex: CubeComplex,
    keys: Vec<WallKey>,
    index: HashMap<WallKey, WallId>,
}

impl Level {
    pub fn wall_of(&self, k: WallKey) -> Option<WallId> {
        self.index.get(&k).copied()
    }

    pub fn key_of(&self, w: WallId) -> WallKey {
        self.keys[w]
    }

    fn vertex_of(&self, keys: &[WallKey]) -> Result<Vertex> {
        let ids: Option<Vec<WallId>> = keys.iter().map(|k| self.wall_of(*k)).collect();
        let v = Vertex::from_ones(ids.ok_or_else(|| CubixError::Precondition("ray leaves the level".into()))?);
        self.complex.check_vertex(&v)?;
        Ok(v)
    }
}

/// Lazily built levels `X_0 ⊆ X_1 ⊆ …` of a family.
#[derive(Debug)]
pub struct TruncationSystem {
    spec: FamilySpec,
    names: Vec<String>,
    cache: Mutex<BTreeMap<usize, Arc<Level>>>,
}

pub fn make_family(spec: FamilySpec) -> Result<TruncationSystem> {
    spec.validate()?;
    let names = spec.family_names();
    Ok(TruncationSystem { spec, names, cache: Mutex::new(BTreeMap::new()) })
}

impl TruncationSystem {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn label(&self, k: WallKey) -> String {
        format!("{}{}", self.names[k.family as usize], k.index)
    }

    pub fn level(&self, r: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.cache.lock().expect("cache lock").get(&r) {
            return Ok(l.clone());
        }
        let mut birth: HashMap<WallKey, usize> = HashMap::new();
        let mut verts = Vec::new();
        for s in 0..=r {
            verts = self.spec.vertices(s)?;
            for k in verts.iter().flatten() {
                birth.entry(*k).or_insert(s);
            }
        }
        let mut keys: Vec<WallKey> = birth.keys().copied().collect();
        keys.sort_by_key(|k| (birth[k], *k));
        let index: HashMap<WallKey, WallId> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let vertices = verts.iter().map(|v| Vertex::from_ones(v.iter().map(|k| index[k])));
        let labels = keys.iter().map(|&k| self.label(k)).collect();
        let complex = CubeComplex::new(keys.len(), vertices, Some(labels), Some(Vertex::empty()))?;
        let level = Arc::new(Level { radius: r, complex, keys, index });
        self.cache.lock().expect("cache lock").insert(r, level.clone());
        Ok(level)
    }

    /// Named ray of length `len` inside `level`.
    pub fn ray_in(&self, name: &str, len: usize, level: &Level) -> Result<GeodesicPath> {
        let pts = self.spec.ray_points(name, len)?;
        let vs = pts.iter().map(|k| level.vertex_of(k)).collect::<Result<Vec<_>>>()?;
        GeodesicPath::new(&level.complex, vs)
    }

    /// Named ray of length `r` inside level `r`.
    pub fn canonical_ray(&self, name: &str, r: usize) -> Result<GeodesicPath> {
        let level = self.level(r)?;
        self.ray_in(name, r, &level)
    }

    /// Checks `X_r ⊆ X_{r+1}` with matching wall indices.
    pub fn check_inclusion(&self, r: usize) -> Result<bool> {
        let (a, b) = (self.level(r)?, self.level(r + 1)?);
        let prefix = a.keys.iter().zip(&b.keys).all(|(x, y)| x == y) && a.keys.len() <= b.keys.len();
        Ok(prefix && a.complex.vertices().iter().all(|v| b.complex.contains(v)))
    }
}

impl FamilySpec {
    /// Serialises to the `cubix-family v1` format.
    pub fn to_text(&self) -> String {
        let mut s = String::from("cubix-family v1\n");
        self.write_body(&mut s);
        s
    }

    fn write_body(&self, s: &mut String) {
        let list = |f: &[usize]| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "kind {}", self.kind_name());
        match self {
            FamilySpec::Orthant { dim } => {
                let _ = writeln!(s, "param dim={dim}");
            }
            FamilySpec::Flat => {}
            FamilySpec::Strip { height } => {
                let _ = writeln!(s, "param height={height}");
            }
            FamilySpec::EighthFlat { f } => {
                let _ = writeln!(s, "param f={}", list(f));
            }
            FamilySpec::DiagonalQuarterFlat { f1, f2 } => {
                let _ = writeln!(s, "param f1={}\nparam f2={}", list(f1), list(f2));
            }
            FamilySpec::HalfFlat { diagonal, f1, f2 } => {
                let _ = writeln!(s, "param diagonal={diagonal}");
                if *diagonal {
                    let _ = writeln!(s, "param f1={}\nparam f2={}", list(f1), list(f2));
                }
            }
            FamilySpec::Tree { degree, branching } => {
                let _ = writeln!(s, "param degree={degree}");
                if let Some(b) = branching {
                    let _ = writeln!(s, "param branching={b}");
                }
            }
            FamilySpec::Spiral { stages, offset } => {
                let _ = writeln!(s, "param stages={stages}\nparam offset={offset}");
            }
            FamilySpec::Product(a, b) | FamilySpec::Wedge(a, b) => {
                for (side, f) in [("left", a), ("right", b)] {
                    let _ = writeln!(s, "begin {side}");
                    f.write_body(s);
                    s.push_str("end\n");
                }
            }
        }
    }

    /// Parses the `cubix-family v1` format. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        match lines.first() {
            Some((_, "cubix-family v1")) => {}
            Some((n, _)) => return Err(CubixError::parse(*n, "expected header `cubix-family v1`")),
            None => return Err(CubixError::parse(1, "empty input")),
        }
        let mut pos = 1;
        let spec = parse_block(&lines, &mut pos)?;
        if let Some((n, _)) = lines.get(pos) {
            return Err(CubixError::parse(*n, "trailing content"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_block(lines: &[(usize, &str)], pos: &mut usize) -> Result<FamilySpec> {
    let (n, first) = *lines.get(*pos).ok_or_else(|| CubixError::parse(lines.last().map_or(1, |l| l.0), "missing kind"))?;
    let kind = first.strip_prefix("kind ").ok_or_else(|| CubixError::parse(n, "expected `kind <name>`"))?.trim();
    *pos += 1;
    let mut params: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut children = Vec::new();
    while let Some(&(ln, line)) = lines.get(*pos) {
        if let Some(p) = line.strip_prefix("param ") {
            let (k, v) = p.split_once('=').ok_or_else(|| CubixError::parse(ln, "expected `param key=value`"))?;
            params.insert(k.trim(), (ln, v.trim()));
            *pos += 1;
        } else if line.starts_with("begin ") {
            *pos += 1;
            children.push(parse_block(lines, pos)?);
            match lines.get(*pos) {
                Some((_, "end")) => *pos += 1,
                Some((l, _)) => return Err(CubixError::parse(*l, "expected `end`")),
                None => return Err(CubixError::parse(ln, "unterminated block")),
            }
        } else {
            break;
        }
    }
    let num = |k: &str, default: Option<usize>| -> Result<usize> {
        match params.get(k) {
            Some((ln, v)) => v.parse().map_err(|_| CubixError::parse(*ln, format!("`{k}` must be a natural number"))),
            None => default.ok_or_else(|| CubixError::parse(n, format!("missing param `{k}`"))),
        }
    };
    let list = |k: &str| -> Result<Vec<usize>> {
        match params.get(k) {
            Some((ln, v)) => v
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| CubixError::parse(*ln, format!("bad entry in `{k}`"))))
                .collect(),
            None => Ok(vec![1, 2]),
        }
    };
    let two = |children: Vec<FamilySpec>| -> Result<(Box<FamilySpec>, Box<FamilySpec>)> {
        let mut it = children.into_iter();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((Box::new(a), Box::new(b))),
            _ => Err(CubixError::parse(n, "expected exactly two `begin` blocks")),
        }
    };
    Ok(match kind {
        "orthant" => FamilySpec::Orthant { dim: num("dim", Some(2))? },
        "flat" => FamilySpec::Flat,
        "strip" => FamilySpec::Strip { height: num("height", Some(1))? },
        "eighth_flat" => FamilySpec::EighthFlat { f: list("f")? },
        "diagonal_quarter_flat" => FamilySpec::DiagonalQuarterFlat { f1: list("f1")?, f2: list("f2")? },
        "half_flat" => {
            let diagonal = match params.get("diagonal") {
                None | Some((_, "false")) => false,
                Some((_, "true")) => true,
                Some((ln, _)) => return Err(CubixError::parse(*ln, "`diagonal` must be true or false")),
            };
            FamilySpec::HalfFlat { diagonal, f1: list("f1")?, f2: list("f2")? }
        }
        "tree" => FamilySpec::Tree {
            degree: num("degree", Some(3))?,
            branching: params.contains_key("branching").then(|| num("branching", None)).transpose()?,
        },
        "spiral" => FamilySpec::Spiral { stages: num("stages", None)?, offset: num("offset", Some(1))? },
        "product" => {
            let (a, b) = two(children)?;
            FamilySpec::Product(a, b)
        }
        "wedge" => {
            let (a, b) = two(children)?;
            FamilySpec::Wedge(a, b)
        }
        other => return Err(CubixError::parse(n, format!("unknown kind `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::graphs::{crossing_graph, graph_diameter};
    use crate::Dist;

    fn fam(spec: FamilySpec) -> TruncationSystem {
        make_family(spec).unwrap()
    }

    #[test]
    fn flat_size() {
        let f = fam(FamilySpec::Flat);
        let l = f.level(2).unwrap();
        assert_eq!(l.complex.vertex_count(), 25);
        assert_eq!(l.complex.wall_count(), 8);
        assert!(f.check_inclusion(2).unwrap());
    }

    #[test]
    fn levels_validate() {
        let specs = [
            FamilySpec::Orthant { dim: 3 },
            FamilySpec::Strip { height: 2 },
            FamilySpec::EighthFlat { f: vec![1, 2] },
            FamilySpec::DiagonalQuarterFlat { f1: vec![1, 2], f2: vec![2, 3] },
            FamilySpec::HalfFlat { diagonal: true, f1: vec![1, 2], f2: vec![1, 2] },
            FamilySpec::HalfFlat { diagonal: false, f1: vec![1], f2: vec![1] },
            FamilySpec::Tree { degree: 3, branching: Some(2) },
            FamilySpec::Spiral { stages: 3, offset: 2 },
            FamilySpec::Product(Box::new(FamilySpec::Strip { height: 1 }), Box::new(FamilySpec::Orthant { dim: 1 })),
            FamilySpec::Wedge(Box::new(FamilySpec::Flat), Box::new(FamilySpec::Tree { degree: 3, branching: None })),
        ];
        for s in specs {
            let f = fam(s.clone());
            for r in 0..5 {
                let l = f.level(r).unwrap();
                let rep = validate(l.complex.wall_count(), l.complex.vertices());
                assert!(rep.passed(), "{s:?} r={r}: {rep}");
                assert!(f.check_inclusion(r).unwrap(), "{s:?} r={r}");
            }
        }
    }

    #[test]
    fn f_extension() {
        assert_eq!(eval_f(&[1, 2], 5), 6);
        assert_eq!(eval_f(&[1, 3, 4], 4), 6);
        assert_eq!(eval_f(&[2], 9), 2);
    }

    #[test]
    fn eighth_flat_staircase() {
        let f = fam(FamilySpec::EighthFlat { f: vec![1, 2] });
        let l = f.level(4).unwrap();
        // column heights 1,2,3,4,4
        assert_eq!(l.complex.vertex_count(), 2 + 3 + 4 + 5 + 5);
        let top = f.canonical_ray("top", 8).unwrap();
        assert_eq!(top.len(), 8);
    }

    #[test]
    fn spiral_crossing_diameter() {
        for i in 1..=3 {
            let f = fam(FamilySpec::Spiral { stages: i, offset: 1 });
            let l = f.level(4 * (i + 1)).unwrap();
            assert_eq!(graph_diameter(&crossing_graph(&l.complex)).unwrap(), Dist::Finite(i + 1));
        }
    }

    #[test]
    fn rays() {
        let f = fam(FamilySpec::Flat);
        assert_eq!(f.canonical_ray("axis:+x", 5).unwrap().len(), 5);
        assert_eq!(f.canonical_ray("diagonal", 6).unwrap().len(), 6);
        assert!(f.canonical_ray("top", 3).is_err());
        let t = fam(FamilySpec::Tree { degree: 3, branching: None });
        assert_eq!(t.canonical_ray("end:2", 4).unwrap().len(), 4);
        assert!(t.canonical_ray("end:3", 4).is_err());
        let s = fam(FamilySpec::Spiral { stages: 3, offset: 2 });
        assert_eq!(s.canonical_ray("spiral", 8).unwrap().len(), 8);
    }

    #[test]
    fn text_round_trip() {
        let s = FamilySpec::Product(
            Box::new(FamilySpec::EighthFlat { f: vec![1, 2, 4] }),
            Box::new(FamilySpec::Tree { degree: 3, branching: Some(2) }),
        );
        assert_eq!(FamilySpec::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(FamilySpec::parse("cubix-family v1\nkind blob\n"), Err(CubixError::Parse { line: 2, .. })));
        assert!(FamilySpec::parse("cubix-family v1\nkind eighth_flat\nparam f=2,1\n").is_err());
    }
}
