//! Combinatorial geodesics, folding, fans, divergence and completeness.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::complex::{CubeComplex, Vertex, WallId};
use crate::dist::Dist;
use crate::error::{CubixError, Result};
use crate::graphs::{GraphKind, HypGraph};

/// An edge path crossing each wall at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPath {
    vertices: Vec<Vertex>,
    walls: Vec<WallId>,
}

impl GeodesicPath {
    pub fn new(x: &CubeComplex, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(CubixError::Empty("path".into()));
        }
        for v in &vertices {
            x.check_vertex(v)?;
        }
        let walls = path_walls(&vertices)?;
        let mut seen = HashSet::new();
        for &w in &walls {
            if !seen.insert(w) {
                return Err(CubixError::NotGeodesic(format!("wall {w} crossed twice")));
            }
        }
        Ok(GeodesicPath { vertices, walls })
    }

    pub fn trivial(v: Vertex) -> Self {
        GeodesicPath { vertices: vec![v], walls: Vec::new() }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Dual walls H_0, H_1, ... in crossing order.
    pub fn walls(&self) -> &[WallId] {
        &self.walls
    }

    pub fn wall_set(&self) -> BTreeSet<WallId> {
        self.walls.iter().copied().collect()
    }

    pub fn start(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Vertex {
        self.vertices.last().expect("nonempty")
    }

    pub fn at(&self, i: usize) -> Option<&Vertex> {
        self.vertices.get(i)
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut walls = self.walls.clone();
        walls.reverse();
        GeodesicPath { vertices, walls }
    }

    /// Position of the edge dual to `wall`.
    pub fn position(&self, wall: WallId) -> Option<usize> {
        self.walls.iter().position(|&w| w == wall)
    }

    /// Subpath from vertex `from` to vertex `to` inclusive.
    pub fn subpath(&self, from: usize, to: usize) -> Self {
        GeodesicPath { vertices: self.vertices[from..=to].to_vec(), walls: self.walls[from..to].to_vec() }
    }

    /// Concatenation; fails when the result is not geodesic.
    pub fn concat(&self, x: &CubeComplex, other: &GeodesicPath) -> Result<Self> {
        if self.end() != other.start() {
            return Err(CubixError::Precondition("paths do not meet".into()));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        GeodesicPath::new(x, v)
    }

    pub fn to_bitstrings(&self, wall_count: usize) -> Vec<String> {
        self.vertices.iter().map(|v| v.to_bitstring(wall_count)).collect()
    }
}

fn path_walls(vertices: &[Vertex]) -> Result<Vec<WallId>> {
    vertices
        .windows(2)
        .map(|p| {
            let d = p[0].difference(&p[1]);
            if d.len() == 1 {
                Ok(d[0])
            } else {
                Err(CubixError::Precondition(format!("consecutive vertices differ in {} walls", d.len())))
            }
        })
        .collect()
}

/// Shortest path from `a` to `b`, stepping each time to the lexicographically
/// least neighbour that moves closer to `b`.
pub fn bfs_geodesic(x: &CubeComplex, a: &Vertex, b: &Vertex) -> Result<GeodesicPath> {
    let mut cur = x.check_vertex(a)?;
    let target = x.check_vertex(b)?;
    let mut vertices = vec![a.clone()];
    let mut walls = Vec::new();
    let mut remaining: BTreeSet<WallId> = a.difference(b).into_iter().collect();
    while cur != target {
        let (w, next) = x
            .neighbors(cur)
            .iter()
            .filter(|(w, _)| remaining.contains(w))
            .min_by(|p, q| x.vertex(p.1).lex_cmp(x.vertex(q.1)))
            .copied()
            .ok_or_else(|| CubixError::InvalidComplex("interval has no descending edge".into()))?;
        remaining.remove(&w);
        walls.push(w);
        vertices.push(x.vertex(next).clone());
        cur = next;
    }
    Ok(GeodesicPath { vertices, walls })
}

/// The walls of `g` in crossing order; consecutive ones are in contact.
pub fn project_to_contact(x: &CubeComplex, g: &GeodesicPath) -> Result<Vec<WallId>> {
    let g = GeodesicPath::new(x, g.vertices.clone())?;
    for p in g.walls.windows(2) {
        if !x.contacts_unchecked(p[0], p[1]) {
            return Err(CubixError::InvalidComplex(format!("walls {} and {} share an edge but no contact", p[0], p[1])));
        }
    }
    Ok(g.walls)
}

/// Full contact subgraph on the walls crossed by `g`.
pub fn lambda_subgraph(x: &CubeComplex, g: &GeodesicPath) -> Result<HypGraph> {
    let walls = project_to_contact(x, g)?;
    Ok(HypGraph::induced(x, GraphKind::Contact, &walls))
}

/// Rewrites two geodesics from a common start so they share an initial
/// segment ending in an edge dual to `h`, keeping both tails after `h`.
pub fn fold(x: &CubeComplex, g1: &GeodesicPath, g2: &GeodesicPath, h: WallId) -> Result<(GeodesicPath, GeodesicPath)> {
    x.check_wall(h)?;
    if g1.start() != g2.start() {
        return Err(CubixError::Precondition("geodesics start at different vertices".into()));
    }
    let (Some(k1), Some(k2)) = (g1.position(h), g2.position(h)) else {
        return Err(CubixError::Precondition(format!("wall {h} is not crossed by both geodesics")));
    };
    if g1 == g2 {
        return Ok((g1.clone(), g2.clone()));
    }
    let (a1, a2) = (&g1.vertices[k1 + 1], &g2.vertices[k2 + 1]);
    let m = Vertex::majority(g1.start(), a1, a2);
    let prefix = if &m == a1 {
        g1.subpath(0, k1 + 1)
    } else if &m == a2 {
        g2.subpath(0, k2 + 1)
    } else {
        let below = m.flip(h);
        let mut p = bfs_geodesic(x, g1.start(), &below)?;
        p.vertices.push(m.clone());
        p.walls.push(h);
        p
    };
    let rebuild = |g: &GeodesicPath, k: usize| -> Result<GeodesicPath> {
        let link = bfs_geodesic(x, &m, &g.vertices[k + 1])?;
        prefix.concat(x, &link)?.concat(x, &g.subpath(k + 1, g.len()))
    };
    Ok((rebuild(g1, k1)?, rebuild(g2, k2)?))
}

/// Result of [`equate_basepoints`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equated {
    pub first: GeodesicPath,
    pub second: GeodesicPath,
    /// |𝒲(first) △ 𝒲(original first)|.
    pub defect: usize,
    /// Index into the original first path where its kept tail begins.
    pub tail_start: usize,
}

/// Moves the start of `g1` to the start of `g2`, keeping the longest tail
/// of `g1` that crosses no wall separating the two starts.
pub fn equate_basepoints(x: &CubeComplex, g1: &GeodesicPath, g2: &GeodesicPath) -> Result<Equated> {
    let sep: HashSet<WallId> = g1.start().difference(g2.start()).into_iter().collect();
    let t = (0..=g1.len()).find(|&t| g1.walls[t..].iter().all(|w| !sep.contains(w))).unwrap_or(g1.len());
    let connector = bfs_geodesic(x, g2.start(), &g1.vertices[t])?;
    let first = connector.concat(x, &g1.subpath(t, g1.len()))?;
    let defect = first.wall_set().symmetric_difference(&g1.wall_set()).count();
    Ok(Equated { first, second: g2.clone(), defect, tail_start: t })
}

/// Splits an edge path into greedy maximal geodesic pieces.
pub fn fan_decompose(x: &CubeComplex, path: &[Vertex]) -> Result<Vec<GeodesicPath>> {
    if path.is_empty() {
        return Err(CubixError::Empty("path".into()));
    }
    for v in path {
        x.check_vertex(v)?;
    }
    let walls = path_walls(path)?;
    let mut pieces = Vec::new();
    let mut start = 0;
    let mut seen = HashSet::new();
    for (i, &w) in walls.iter().enumerate() {
        if !seen.insert(w) {
            pieces.push(GeodesicPath { vertices: path[start..=i].to_vec(), walls: walls[start..i].to_vec() });
            start = i;
            seen.clear();
            seen.insert(w);
        }
    }
    pieces.push(GeodesicPath { vertices: path[start..].to_vec(), walls: walls[start..].to_vec() });
    Ok(pieces)
}

/// Length of a shortest path from `a` to `b` through vertices at distance
/// at least `r` from `x0`.
pub fn r_avoiding_distance(x: &CubeComplex, x0: &Vertex, a: &Vertex, b: &Vertex, r: usize) -> Result<Dist> {
    let d0 = x.bfs_distances(x.check_vertex(x0)?);
    Ok(avoiding_bfs(x, &d0, x.check_vertex(a)?, x.check_vertex(b)?, r))
}

fn avoiding_bfs(x: &CubeComplex, d0: &[usize], a: usize, b: usize, r: usize) -> Dist {
    if d0[a] < r || d0[b] < r {
        return Dist::Infinite;
    }
    let mut dist = vec![usize::MAX; x.vertex_count()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            return Dist::Finite(dist[u]);
        }
        for &(_, v) in x.neighbors(u) {
            if dist[v] == usize::MAX && d0[v] >= r {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Dist::Infinite
}

/// r-avoiding distances between two geodesics from a common basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceProfile {
    pub basepoint: Vertex,
    pub first: GeodesicPath,
    pub second: GeodesicPath,
    /// Entry r is dive(r).
    pub values: Vec<Dist>,
}

impl DivergenceProfile {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,dive\n");
        for (r, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{r},{v}");
        }
        s
    }

    /// Least-squares slope of log dive against log r over `lo..=hi`,
    /// skipping infinite and zero entries.
    pub fn loglog_slope(&self, lo: usize, hi: usize) -> Option<f64> {
        let pts: Vec<(f64, f64)> = (lo.max(1)..=hi.min(self.values.len().saturating_sub(1)))
            .filter_map(|r| match self.values[r] {
                Dist::Finite(d) if d > 0 => Some(((r as f64).ln(), (d as f64).ln())),
                _ => None,
            })
            .collect();
        slope(&pts)
    }
}

pub(crate) fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn divergence_profile(
    x: &CubeComplex,
    g1: &GeodesicPath,
    g2: &GeodesicPath,
    r_max: usize,
) -> Result<DivergenceProfile> {
    if g1.start() != g2.start() {
        return Err(CubixError::Precondition("geodesics start at different vertices".into()));
    }
    if r_max > g1.len().min(g2.len()) {
        return Err(CubixError::Precondition(format!(
            "r_max {r_max} exceeds path length {}",
            g1.len().min(g2.len())
        )));
    }
    let d0 = x.bfs_distances(x.check_vertex(g1.start())?);
    let ids = |g: &GeodesicPath| -> Result<Vec<usize>> { g.vertices.iter().map(|v| x.check_vertex(v)).collect() };
    let (p1, p2) = (ids(g1)?, ids(g2)?);
    let values = (0..=r_max).map(|r| avoiding_bfs(x, &d0, p1[r], p2[r], r)).collect();
    Ok(DivergenceProfile { basepoint: g1.start().clone(), first: g1.clone(), second: g2.clone(), values })
}

/// An orthant that fails to reach the required depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessFailure {
    /// A maximal family of pairwise-crossing walls (a maximal cube).
    pub walls: Vec<WallId>,
    /// Chosen side of each wall.
    pub orientation: Vec<bool>,
    /// Furthest distance from the cube reached inside the orthant.
    pub reach: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub depth: usize,
    pub cubes_checked: usize,
    pub failures: Vec<CompletenessFailure>,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Maximal cliques of the crossing graph, each sorted, in lexicographic order.
pub fn maximal_crossing_families(x: &CubeComplex) -> Vec<Vec<WallId>> {
    fn bk(x: &CubeComplex, r: &mut Vec<WallId>, mut p: BTreeSet<WallId>, mut q: BTreeSet<WallId>, out: &mut Vec<Vec<WallId>>) {
        if p.is_empty() && q.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p.iter().chain(q.iter()).copied().max_by_key(|&u| {
            x.crossing_walls(u).iter().filter(|w| p.contains(w)).count()
        });
        let pivot_nbrs: HashSet<WallId> = pivot.map(|u| x.crossing_walls(u).iter().copied().collect()).unwrap_or_default();
        let candidates: Vec<WallId> = p.iter().copied().filter(|v| !pivot_nbrs.contains(v)).collect();
        for v in candidates {
            let nbrs: BTreeSet<WallId> = x.crossing_walls(v).iter().copied().collect();
            r.push(v);
            bk(x, r, p.intersection(&nbrs).copied().collect(), q.intersection(&nbrs).copied().collect(), out);
            r.pop();
            p.remove(&v);
            q.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(x, &mut Vec::new(), (0..x.wall_count()).collect(), BTreeSet::new(), &mut out);
    out.sort();
    out
}

/// Checks that every orthant of every maximal cube within `depth` of the
/// basepoint contains a vertex at distance at least `depth` from the cube.
pub fn completeness_check(x: &CubeComplex, depth: usize) -> Result<CompletenessReport> {
    if depth == 0 {
        return Err(CubixError::Precondition("depth must be at least 1".into()));
    }
    let d0 = x.bfs_distances(x.basepoint_id());
    let mut report = CompletenessReport { depth, cubes_checked: 0, failures: Vec::new() };
    for walls in maximal_crossing_families(x) {
        let mut cube: Vec<usize> = x.carrier(walls[0]);
        for &w in &walls[1..] {
            let c: HashSet<usize> = x.carrier(w).into_iter().collect();
            cube.retain(|i| c.contains(i));
        }
        let Some(&rep) = cube.first() else {
            return Err(CubixError::InvalidComplex(format!("pairwise-crossing walls {walls:?} share no cube")));
        };
        if cube.iter().map(|&i| d0[i]).min().unwrap_or(usize::MAX) > depth {
            continue;
        }
        report.cubes_checked += 1;
        let rep = x.vertex(rep);
        let n = walls.len();
        let mut reach = vec![0usize; 1 << n];
        for v in x.vertices() {
            let key = walls.iter().enumerate().fold(0usize, |acc, (i, &w)| acc | ((v.bit(w) as usize) << i));
            let d = v.difference(rep).iter().filter(|w| !walls.contains(w)).count();
            reach[key] = reach[key].max(d);
        }
        for (key, &r) in reach.iter().enumerate() {
            if r < depth {
                report.failures.push(CompletenessFailure {
                    walls: walls.clone(),
                    orientation: (0..n).map(|i| key >> i & 1 == 1).collect(),
                    reach: r,
                });
            }
        }
    }
    Ok(report)
}

/// Which end of a path could not be extended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathEnd {
    Start,
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended(GeodesicPath),
    /// `partial` carries whatever extension succeeded at the other end.
    Stuck { end: PathEnd, corner: Vertex, partial: GeodesicPath },
}

/// Extends `p` by one edge at each end while staying geodesic.
pub fn extend_geodesic(x: &CubeComplex, p: &GeodesicPath) -> Result<Extension> {
    let p = GeodesicPath::new(x, p.vertices.clone())?;
    let step = |v: &Vertex, used: &BTreeSet<WallId>| -> Result<Option<(WallId, Vertex)>> {
        let id = x.check_vertex(v)?;
        Ok(x.neighbors(id)
            .iter()
            .filter(|(w, _)| !used.contains(w))
            .min_by(|a, b| x.vertex(a.1).lex_cmp(x.vertex(b.1)))
            .map(|&(w, u)| (w, x.vertex(u).clone())))
    };
    let mut used = p.wall_set();
    let mut cur = p.clone();
    let mut stuck = None;
    match step(p.end(), &used)? {
        Some((w, u)) => {
            used.insert(w);
            cur.vertices.push(u);
            cur.walls.push(w);
        }
        None => stuck = Some((PathEnd::End, p.end().clone())),
    }
    match step(p.start(), &used)? {
        Some((w, u)) => {
            cur.vertices.insert(0, u);
            cur.walls.insert(0, w);
        }
        None => stuck = stuck.or(Some((PathEnd::Start, p.start().clone()))),
    }
    Ok(match stuck {
        None => Extension::Extended(cur),
        Some((end, corner)) => Extension::Stuck { end, corner, partial: cur },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::shapes::{cube, grid, path, star};

    fn v(s: &str) -> Vertex {
        Vertex::from_bitstring(s).unwrap()
    }

    #[test]
    fn greedy_geodesic() {
        let sq = cube(2);
        let g = bfs_geodesic(&sq, &v("00"), &v("11")).unwrap();
        assert_eq!(g.to_bitstrings(2), ["00", "01", "11"]);
        assert_eq!(bfs_geodesic(&sq, &v("10"), &v("10")).unwrap().len(), 0);
        let gr = grid(4, 3);
        let a = gr.basepoint().clone();
        let far = gr.vertices().iter().max_by_key(|u| u.weight()).unwrap();
        assert_eq!(bfs_geodesic(&gr, &a, far).unwrap().len(), 7);
    }

    #[test]
    fn path_validation() {
        let p = path(2);
        assert!(GeodesicPath::new(&p, vec![v("00"), v("10"), v("00")]).is_err());
        assert!(GeodesicPath::new(&p, vec![v("00"), v("11")]).is_err());
        assert!(GeodesicPath::new(&p, vec![]).is_err());
    }

    #[test]
    fn projection_of_single_edge() {
        let p = path(1);
        let g = bfs_geodesic(&p, &v("0"), &v("1")).unwrap();
        assert_eq!(project_to_contact(&p, &g).unwrap(), [0]);
        assert_eq!(lambda_subgraph(&p, &g).unwrap().vertices(), &[0]);
    }

    #[test]
    fn fold_in_square() {
        let sq = cube(2);
        let g1 = GeodesicPath::new(&sq, vec![v("00"), v("10"), v("11")]).unwrap();
        let g2 = GeodesicPath::new(&sq, vec![v("00"), v("01"), v("11")]).unwrap();
        let (f1, f2) = fold(&sq, &g1, &g2, 1).unwrap();
        assert_eq!(f1.walls()[0], 1);
        assert_eq!(f2.walls()[0], 1);
        assert_eq!(f1.end(), g1.end());
        let (u1, _) = fold(&sq, &g1, &g1, 0).unwrap();
        assert_eq!(u1, g1);
        let e = GeodesicPath::new(&sq, vec![v("00"), v("10")]).unwrap();
        assert!(fold(&sq, &e, &g2, 1).is_err());
    }

    #[test]
    fn fan_of_backtrack() {
        let p = path(1);
        let pieces = fan_decompose(&p, &[v("0"), v("1"), v("0")]).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(fan_decompose(&p, &[v("0")]).unwrap().len(), 1);
    }

    #[test]
    fn tree_divergence_is_infinite() {
        let t = star(3);
        let g1 = GeodesicPath::new(&t, vec![v("000"), v("100")]).unwrap();
        let g2 = GeodesicPath::new(&t, vec![v("000"), v("010")]).unwrap();
        let prof = divergence_profile(&t, &g1, &g2, 1).unwrap();
        assert_eq!(prof.values, [Dist::Finite(0), Dist::Infinite]);
        assert_eq!(prof.to_csv(), "r,dive\n0,0\n1,inf\n");
        assert!(divergence_profile(&t, &g1, &g2, 2).is_err());
    }

    #[test]
    fn square_is_incomplete() {
        let rep = completeness_check(&cube(2), 1).unwrap();
        assert_eq!(rep.cubes_checked, 1);
        assert_eq!(rep.failures.len(), 4);
        assert_eq!(maximal_crossing_families(&star(3)), [[0], [1], [2]]);
    }

    #[test]
    fn extend_in_path() {
        let p = path(3);
        let g = GeodesicPath::new(&p, vec![v("100"), v("110")]).unwrap();
        assert_eq!(extend_geodesic(&p, &g).unwrap(), Extension::Extended(GeodesicPath::new(&p, vec![v("000"), v("100"), v("110"), v("111")]).unwrap()));
        let full = GeodesicPath::new(&p, vec![v("000"), v("100")]).unwrap();
        assert!(matches!(extend_geodesic(&p, &full).unwrap(), Extension::Stuck { end: PathEnd::Start, .. }));
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (1..10).map(|r| ((r as f64).ln(), (3.0 * (r as f64).powi(2)).ln())).collect();
        assert!((slope(&pts).unwrap() - 2.0).abs() < 1e-9);
    }
}
