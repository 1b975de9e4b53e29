//! Constructive checks around visibility and the flat/hyperplane trichotomy.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::boundary::{assemble, BoundaryComplexApprox, LevelInput};
use crate::complex::{restriction_quotient, CubeComplex, Vertex, WallId};
use crate::error::{CubixError, Result};
use crate::families::{Level, TruncationSystem};
use crate::geodesic::{bfs_geodesic, GeodesicPath};
use crate::graphs::contact_graph;
use crate::hyperplane::{carrier_gate, closure_unchecked, interval, inseparability_witness, ConvexSubcomplex};
use crate::Dist;

fn carrier_distance(x: &CubeComplex, v: &Vertex, wall: WallId) -> usize {
    v.hamming(&carrier_gate(x, v, wall))
}

/// Members of `walls` ordered by the distance of their carriers from the
/// basepoint, ties by id.
fn by_depth(x: &CubeComplex, walls: &BTreeSet<WallId>) -> Vec<WallId> {
    let base = x.basepoint();
    let mut order: Vec<(usize, WallId)> = walls.iter().map(|&w| (carrier_distance(x, base, w), w)).collect();
    order.sort_unstable();
    order.into_iter().map(|(_, w)| w).collect()
}

/// Nested stages `V_0 ⊂ V_1 ⊂ …` of an inseparable set: stage `s` is the
/// closure of its `s + 1` walls nearest the basepoint.
fn stages(x: &CubeComplex, set: &BTreeSet<WallId>) -> (Vec<WallId>, Vec<BTreeSet<WallId>>) {
    let order = by_depth(x, set);
    let mut out: Vec<BTreeSet<WallId>> = Vec::new();
    for s in 0..order.len() {
        let v = closure_unchecked(x, order[..=s].iter().copied());
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    (order, out)
}

/// Start vertices of geodesic segments crossing exactly `walls`, oriented
/// away from the basepoint.
fn segment_starts(x: &CubeComplex, walls: &BTreeSet<WallId>) -> Vec<Vertex> {
    let base = x.basepoint();
    let mask = Vertex::from_ones(walls.iter().copied());
    x.vertices()
        .iter()
        .filter(|a| walls.iter().all(|&w| a.bit(w) == base.bit(w)))
        .filter(|a| x.contains(&a.xor(&mask)))
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visibility {
    VisibleAtScale,
    Escaping,
    Inconclusive,
}

impl std::fmt::Display for Visibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Visibility::VisibleAtScale => "VISIBLE-AT-SCALE",
            Visibility::Escaping => "ESCAPING",
            Visibility::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub size: usize,
    /// Distance from the basepoint to the nearest segment start.
    pub min_start: Dist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityReport {
    pub order: Vec<WallId>,
    pub stages: Vec<Stage>,
    /// Length of the longest chain of nested segments starting at stage 0.
    pub omega_depth: usize,
    /// Over nested chains through every stage, the least possible largest
    /// start distance.
    pub full_depth_start: Option<usize>,
    pub threshold: usize,
    pub verdict: Visibility,
}

/// Tests whether the inseparable set `walls` is crossed by one geodesic ray
/// at this scale, or whether its segments drift away from the basepoint.
pub fn visibility_report(x: &CubeComplex, walls: &[WallId], threshold: usize) -> Result<VisibilityReport> {
    if walls.is_empty() {
        return Err(CubixError::Empty("wall set".into()));
    }
    for &w in walls {
        x.check_wall(w)?;
    }
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    let list: Vec<WallId> = set.iter().copied().collect();
    if let Some((k, a, b)) = inseparability_witness(x, &list) {
        return Err(CubixError::NotInseparable { separator: k, a, b });
    }
    let base = x.basepoint();
    let (order, levels) = stages(x, &set);
    let mut report_stages = Vec::new();
    // cost[a] = least possible largest start distance along a nested chain ending at a.
    let mut cost: HashMap<Vertex, usize> = HashMap::new();
    let mut omega_depth = 0;
    let mut alive = true;
    let mut prev: Option<&BTreeSet<WallId>> = None;
    for (s, v) in levels.iter().enumerate() {
        let starts = segment_starts(x, v);
        let min_start = starts.iter().map(|a| a.hamming(base)).min().into();
        report_stages.push(Stage { size: v.len(), min_start });
        if !alive {
            continue;
        }
        let mut next: HashMap<Vertex, usize> = HashMap::new();
        for a in starts {
            let d = a.hamming(base);
            let best = match prev {
                None => Some(d),
                Some(p) => {
                    let fresh: Vec<WallId> = v.difference(p).copied().collect();
                    cost.iter()
                        .filter(|(b, _)| b.difference(&a).iter().all(|w| fresh.binary_search(w).is_ok()))
                        .map(|(_, &c)| c.max(d))
                        .min()
                }
            };
            if let Some(c) = best {
                next.insert(a, c);
            }
        }
        if next.is_empty() {
            alive = false;
            continue;
        }
        omega_depth = s;
        cost = next;
        prev = Some(v);
    }
    let full_depth_start = if alive { cost.values().copied().min() } else { None };
    let mins: Vec<Option<usize>> = report_stages.iter().map(|s| s.min_start.finite()).collect();
    let verdict = if full_depth_start.is_some_and(|c| c <= threshold) {
        Visibility::VisibleAtScale
    } else if escaping(&mins, threshold) {
        Visibility::Escaping
    } else {
        Visibility::Inconclusive
    };
    Ok(VisibilityReport { order, stages: report_stages, omega_depth, full_depth_start, threshold, verdict })
}

/// Nondecreasing, ends above `threshold`, and strictly increasing from the
/// first stage above it.
fn escaping(mins: &[Option<usize>], threshold: usize) -> bool {
    let Some(vals) = mins.iter().copied().collect::<Option<Vec<usize>>>() else {
        return false;
    };
    if vals.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    match vals.iter().position(|&v| v > threshold) {
        Some(i) => vals.len() - i >= 2 && vals[i..].windows(2).all(|w| w[0] < w[1]),
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrichotomyReport {
    /// min over subpaths of (contact distance between end walls + 1) / length.
    pub qi_estimate: f64,
    /// Largest `p` with a complete bipartite `K_{p,p}` in the crossing graph
    /// of the walls of the path.
    pub bipartite: usize,
    /// Whether `bipartite` is exact (searched up to 6) or a greedy bound.
    pub bipartite_exact: bool,
    /// `(R, longest subpath within R of a single carrier)`.
    pub dwell: Vec<(usize, usize)>,
}

impl TrichotomyReport {
    /// Which alternatives look dominant at this scale.
    pub fn labels(&self, path_len: usize, p_cap: usize) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.qi_estimate >= 0.5 {
            out.push("contact-qi");
        }
        if self.bipartite >= p_cap.max(1) {
            out.push("thick-bipartite");
        }
        if self.dwell.first().is_some_and(|&(_, d)| 2 * d >= path_len && path_len > 0) {
            out.push("hyperplane-dwell");
        }
        out
    }
}

/// Measures the three alternatives for a geodesic: quasi-isometric contact
/// projection, large crossing bipartite subgraphs, long stays near a carrier.
pub fn trichotomy_report(x: &CubeComplex, g: &GeodesicPath, radii: &[usize], p_cap: usize) -> Result<TrichotomyReport> {
    if g.is_empty() {
        return Err(CubixError::Precondition("geodesic must have at least one edge".into()));
    }
    let walls = g.walls();
    let n = walls.len();
    let contact = contact_graph(x);
    let mut qi = f64::INFINITY;
    for i in 0..n {
        let d = contact.distances_from(walls[i]).expect("wall of x");
        for j in i + 1..=n {
            let dij = match d[walls[j - 1]] {
                Dist::Finite(v) => v as f64,
                Dist::Infinite => f64::INFINITY,
            };
            qi = qi.min((dij + 1.0) / (j - i) as f64);
        }
    }
    let exact_cap = p_cap.min(6);
    let mut bipartite = (1..=exact_cap).rev().find(|&p| has_biclique(x, walls, p)).unwrap_or(0);
    let mut bipartite_exact = true;
    if p_cap > 6 && bipartite == 6 {
        bipartite = bipartite.max(greedy_biclique(x, walls)).min(p_cap);
        bipartite_exact = false;
    }
    let dwell = radii.iter().map(|&r| (r, longest_dwell(x, g, r))).collect();
    Ok(TrichotomyReport { qi_estimate: qi, bipartite, bipartite_exact, dwell })
}

fn has_biclique(x: &CubeComplex, walls: &[WallId], p: usize) -> bool {
    fn grow(x: &CubeComplex, walls: &[WallId], from: usize, size: usize, common: &[WallId], p: usize) -> bool {
        if common.len() < p {
            return false;
        }
        if size == p {
            return true;
        }
        for i in from..walls.len() {
            let w = walls[i];
            let next: Vec<WallId> = common.iter().copied().filter(|&c| x.crosses_unchecked(c, w)).collect();
            if grow(x, walls, i + 1, size + 1, &next, p) {
                return true;
            }
        }
        false
    }
    let mut sorted = walls.to_vec();
    sorted.sort_unstable();
    grow(x, &sorted, 0, 0, &sorted, p)
}

fn greedy_biclique(x: &CubeComplex, walls: &[WallId]) -> usize {
    let mut order = walls.to_vec();
    order.sort_by_key(|&w| std::cmp::Reverse(walls.iter().filter(|&&v| x.crosses_unchecked(v, w)).count()));
    let mut common: Vec<WallId> = walls.to_vec();
    let mut best = 0;
    for (k, &w) in order.iter().enumerate() {
        common.retain(|&c| x.crosses_unchecked(c, w));
        best = best.max((k + 1).min(common.len()));
    }
    best
}

fn longest_dwell(x: &CubeComplex, g: &GeodesicPath, r: usize) -> usize {
    let mut best = 0;
    for w in 0..x.wall_count() {
        let mut run: Option<usize> = None;
        for (i, v) in g.vertices().iter().enumerate() {
            if carrier_distance(x, v, w) <= r {
                let s = *run.get_or_insert(i);
                best = best.max(i - s);
            } else {
                run = None;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EighthFlatWitness {
    /// Vertices of the union of the strips.
    pub vertices: Vec<Vertex>,
    /// `f(n)`: distance from the `n`-th vertex of the ray to its gate.
    pub f: Vec<usize>,
    /// Distinct gates in order: the bottom bounding ray.
    pub gates: Vec<Vertex>,
    /// Indices `n` where the gate moves while the ray is off the carrier,
    /// one strip each.
    pub strips: Vec<usize>,
    pub bounded_f: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EighthFlatFailure {
    /// `f` drops at this index.
    Decreasing { index: usize },
    /// The gate never moves while the ray is off the carrier: the union is a
    /// path, not a flat sector.
    NoStrips,
    /// Two vertices of the union whose distance inside it exceeds their
    /// distance in X.
    NotIsometric { a: Vertex, b: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EighthFlatOutcome {
    Witness(EighthFlatWitness),
    Failure { reason: EighthFlatFailure, f: Vec<usize> },
}

/// Builds the sector between a ray and its gate path in the carrier of `h0`,
/// where `h0` is dual to the first edge of the ray.
pub fn eighth_flat_witness(x: &CubeComplex, g: &GeodesicPath, h0: WallId) -> Result<EighthFlatOutcome> {
    x.check_wall(h0)?;
    if g.walls().first() != Some(&h0) {
        return Err(CubixError::Precondition(format!("wall {} is not dual to the first edge of the ray", x.label(h0))));
    }
    let gates: Vec<Vertex> = g.vertices().iter().map(|v| carrier_gate(x, v, h0)).collect();
    let f: Vec<usize> = g.vertices().iter().zip(&gates).map(|(v, q)| v.hamming(q)).collect();
    if let Some(i) = f.windows(2).position(|w| w[1] < w[0]) {
        return Ok(EighthFlatOutcome::Failure { reason: EighthFlatFailure::Decreasing { index: i + 1 }, f });
    }
    let strips: Vec<usize> =
        (0..gates.len() - 1).filter(|&i| gates[i] != gates[i + 1] && f[i].min(f[i + 1]) > 0).collect();
    if strips.is_empty() {
        return Ok(EighthFlatOutcome::Failure { reason: EighthFlatFailure::NoStrips, f });
    }
    let mut set: HashSet<Vertex> = HashSet::new();
    for (v, q) in g.vertices().iter().zip(&gates) {
        set.extend(interval(x, v, q)?);
    }
    let mut vertices: Vec<Vertex> = set.into_iter().collect();
    vertices.sort_by(|a, b| a.lex_cmp(b));
    if let Some((a, b)) = isometry_defect(&vertices) {
        return Ok(EighthFlatOutcome::Failure { reason: EighthFlatFailure::NotIsometric { a, b }, f });
    }
    let mut path = gates.clone();
    path.dedup();
    let bounded_f = f.iter().all(|&v| v <= 2);
    Ok(EighthFlatOutcome::Witness(EighthFlatWitness { vertices, f, gates: path, strips, bounded_f }))
}

/// A pair whose graph distance inside `vs` differs from its Hamming distance.
fn isometry_defect(vs: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let index: HashMap<&Vertex, usize> = vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = vs
        .iter()
        .map(|v| {
            let mut walls: BTreeSet<WallId> = v.ones().collect();
            for u in vs {
                walls.extend(u.difference(v));
            }
            walls.iter().filter_map(|&w| index.get(&v.flip(w)).copied()).collect()
        })
        .collect();
    for s in 0..vs.len() {
        let mut d = vec![usize::MAX; vs.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        if let Some(t) = (0..vs.len()).find(|&t| d[t] != vs[s].hamming(&vs[t])) {
            return Some((vs[s].clone(), vs[t].clone()));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantWitness {
    /// One ray from the basepoint per input set.
    pub rays: Vec<GeodesicPath>,
    /// Number of vertices of the product of the rays, all present in X.
    pub vertex_count: usize,
}

impl OrthantWitness {
    pub fn dims(&self) -> Vec<usize> {
        self.rays.iter().map(GeodesicPath::len).collect()
    }
}

/// Realises the given wall sets by rays from the basepoint that pairwise
/// cross completely, and checks that their product sits in X.
pub fn orthant_witness(x: &CubeComplex, sets: &[Vec<WallId>]) -> Result<OrthantWitness> {
    if sets.is_empty() {
        return Err(CubixError::Empty("class list".into()));
    }
    let base = x.basepoint().clone();
    let mut rays = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        for &w in s {
            x.check_wall(w)?;
        }
        let set: BTreeSet<WallId> = s.iter().copied().collect();
        let order = by_depth(x, &set);
        let mut reached = base.clone();
        let mut cur = base.clone();
        for &w in &order {
            if cur.bit(w) != base.bit(w) {
                continue;
            }
            cur = cur.flip(w);
            if !x.contains(&cur) {
                break;
            }
            reached = cur.clone();
        }
        if reached == base {
            return Err(CubixError::Precondition(format!("set {i} is not visible from the basepoint")));
        }
        rays.push(bfs_geodesic(x, &base, &reached)?);
    }
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            for &a in rays[i].walls() {
                if let Some(&b) = rays[j].walls().iter().find(|&&b| !x.crosses_unchecked(a, b)) {
                    return Err(CubixError::Precondition(format!(
                        "rays {i} and {j} do not cross completely: walls {a} and {b}"
                    )));
                }
            }
        }
    }
    let mut corners = vec![base.clone()];
    for r in &rays {
        let mut next = Vec::with_capacity(corners.len() * (r.len() + 1));
        for c in &corners {
            let mut v = c.clone();
            next.push(v.clone());
            for &w in r.walls() {
                v = v.flip(w);
                if !x.contains(&v) {
                    return Err(CubixError::Precondition(format!("product vertex missing near wall {w}")));
                }
                next.push(v.clone());
            }
        }
        corners = next;
    }
    Ok(OrthantWitness { rays, vertex_count: corners.len() })
}

/// Boundaries of a convex subcomplex family and of its ambient family,
/// with the induced map on classes.
#[derive(Clone, Debug, PartialEq)]
pub struct SubcomplexBoundary {
    pub sub: BoundaryComplexApprox,
    pub ambient: BoundaryComplexApprox,
    /// Ambient class of each class of the subcomplex.
    pub map: Vec<usize>,
    pub injective: bool,
    pub dimension_preserving: bool,
}

/// Computes the boundary of `Y_r = select(X_r)` and of `X`, and checks that
/// the induced simplicial map is injective and dimension-preserving.
pub fn boundary_of_subcomplex<F>(
    ts: &TruncationSystem,
    radii: &[usize],
    select: F,
    theta: usize,
    window: usize,
) -> Result<SubcomplexBoundary>
where
    F: Fn(&Level) -> Result<ConvexSubcomplex>,
{
    let ambient = crate::boundary::boundary_complex(ts, radii, theta, window)?;
    let levels = radii.iter().map(|&r| ts.level(r)).collect::<Result<Vec<_>>>()?;
    let mut quotients: Vec<(usize, CubeComplex, Vec<WallId>)> = Vec::new();
    for l in &levels {
        let y = select(l)?;
        let walls: Vec<WallId> = y.crossing_walls(&l.complex).into_iter().collect();
        if walls.is_empty() {
            continue;
        }
        let (q, _) = restriction_quotient(&l.complex, &walls)?;
        quotients.push((l.radius, q, walls));
    }
    let core_walls = ts.level(radii[0] / 2)?.complex.wall_count();
    let core: BTreeSet<usize> = (0..core_walls).collect();
    let sub = if quotients.len() < levels.len() {
        BoundaryComplexApprox::empty(theta, window, radii)
    } else {
        let inputs: Vec<LevelInput<'_>> = quotients
            .iter()
            .map(|(r, q, walls)| LevelInput { radius: *r, complex: q, global: walls.clone() })
            .collect();
        assemble(&inputs, &core, theta, window)?
    };
    let top_walls: &[WallId] = quotients.last().map_or(&[], |(_, _, w)| w.as_slice());
    let mut map = Vec::new();
    for c in &sub.classes {
        let global: Vec<WallId> = c.representative.iter().map(|&w| top_walls[w]).collect();
        let target = ambient
            .class_of(&global)
            .ok_or_else(|| CubixError::Precondition(format!("class {} has no ambient counterpart", c.id)))?;
        map.push(target);
    }
    let injective = map.iter().collect::<HashSet<_>>().len() == map.len();
    let dimension_preserving = sub.simplices.iter().all(|s| {
        let image: Vec<usize> = s.vertices.iter().map(|&v| map[v]).collect();
        let distinct: HashSet<usize> = image.iter().copied().collect();
        distinct.len() == image.len() && ambient.find(&image).is_some()
    });
    Ok(SubcomplexBoundary { sub, ambient, map, injective, dimension_preserving })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_family, FamilySpec};

    fn named(x: &CubeComplex, prefix: &str, range: std::ops::Range<i64>) -> Vec<WallId> {
        range.filter_map(|k| x.wall_by_label(&format!("{prefix}{k}"))).collect()
    }

    #[test]
    fn horizontals_of_eighth_flat_escape() {
        let ts = make_family(FamilySpec::EighthFlat { f: vec![1, 2] }).unwrap();
        let l = ts.level(10).unwrap();
        let x = &l.complex;
        let h = visibility_report(x, &named(x, "H", 0..10), 2).unwrap();
        assert_eq!(h.verdict, Visibility::Escaping);
        // start of the k-th stage is the first column of height > k
        let starts: Vec<Dist> = h.stages.iter().map(|s| s.min_start).collect();
        assert_eq!(starts, (0..10).map(Dist::Finite).collect::<Vec<_>>());
        let v = visibility_report(x, &named(x, "V", 0..10), 2).unwrap();
        assert_eq!(v.verdict, Visibility::VisibleAtScale);
        assert_eq!(v.full_depth_start, Some(0));
        assert!(visibility_report(x, &named(x, "V", 0..10).into_iter().step_by(2).collect::<Vec<_>>(), 2).is_err());
    }

    #[test]
    fn trichotomy_on_tree_and_strip() {
        let ts = make_family(FamilySpec::Tree { degree: 3, branching: None }).unwrap();
        let l = ts.level(8).unwrap();
        let ray = ts.canonical_ray("end:0", 8).unwrap();
        let t = trichotomy_report(&l.complex, &ray, &[0, 1, 2], 6).unwrap();
        assert_eq!(t.qi_estimate, 1.0);
        assert_eq!(t.bipartite, 0);
        assert_eq!(t.dwell, vec![(0, 1), (1, 3), (2, 5)]);
        assert_eq!(t.labels(ray.len(), 6), vec!["contact-qi"]);

        let ts = make_family(FamilySpec::Strip { height: 1 }).unwrap();
        let l = ts.level(8).unwrap();
        let ray = ts.canonical_ray("axis:+x", 8).unwrap();
        let t = trichotomy_report(&l.complex, &ray, &[0], 6).unwrap();
        assert_eq!(t.dwell, vec![(0, 8)]);
        assert!(t.labels(ray.len(), 6).contains(&"hyperplane-dwell"));
    }

    #[test]
    fn flat_diagonal_has_thick_bipartite() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let l = ts.level(6).unwrap();
        let ray = ts.ray_in("diagonal", 12, &l).unwrap();
        let t = trichotomy_report(&l.complex, &ray, &[0], 6).unwrap();
        assert_eq!(t.bipartite, 6);
        assert!(t.bipartite_exact);
    }

    #[test]
    fn eighth_flat_sector_from_top_ray() {
        let ts = make_family(FamilySpec::EighthFlat { f: vec![1, 2] }).unwrap();
        let l = ts.level(8).unwrap();
        let x = &l.complex;
        let top = ts.canonical_ray("top", 8).unwrap();
        let h0 = x.wall_by_label("H0").unwrap();
        let EighthFlatOutcome::Witness(w) = eighth_flat_witness(x, &top, h0).unwrap() else {
            panic!("expected a witness");
        };
        assert!(w.f.windows(2).all(|p| p[0] <= p[1]));
        assert!(!w.bounded_f);
        assert!(w.gates.len() > 2);
        let v0 = x.wall_by_label("V0").unwrap();
        assert!(eighth_flat_witness(x, &top, v0).is_err());
    }

    #[test]
    fn tree_ray_gives_no_sector() {
        let ts = make_family(FamilySpec::Tree { degree: 3, branching: None }).unwrap();
        let l = ts.level(6).unwrap();
        let ray = ts.canonical_ray("end:1", 6).unwrap();
        let out = eighth_flat_witness(&l.complex, &ray, ray.walls()[0]).unwrap();
        assert!(matches!(out, EighthFlatOutcome::Failure { reason: EighthFlatFailure::NoStrips, .. }));
    }

    #[test]
    fn orthants_in_flat_and_not_in_tree() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let l = ts.level(5).unwrap();
        let x = &l.complex;
        let o = orthant_witness(x, &[named(x, "V", 0..5), named(x, "H", -5..0)]).unwrap();
        assert_eq!(o.dims(), vec![5, 5]);
        assert_eq!(o.vertex_count, 36);
        assert!(orthant_witness(x, &[named(x, "V", 0..5), named(x, "V", -5..0)]).is_err());

        let ts = make_family(FamilySpec::Tree { degree: 3, branching: None }).unwrap();
        let l = ts.level(4).unwrap();
        let a = ts.canonical_ray("end:0", 4).unwrap().walls().to_vec();
        let b = ts.canonical_ray("end:1", 4).unwrap().walls().to_vec();
        assert!(orthant_witness(&l.complex, &[a, b]).is_err());
    }

    #[test]
    fn carrier_boundary_embeds() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let sb = boundary_of_subcomplex(
            &ts,
            &[4, 6, 8],
            |l| ConvexSubcomplex::carrier(&l.complex, l.complex.wall_by_label("V0").unwrap()),
            2,
            3,
        )
        .unwrap();
        assert_eq!(sb.sub.vertex_count(), 2);
        assert_eq!(sb.sub.dimension(), Some(0));
        assert!(sb.injective && sb.dimension_preserving);
        let point = boundary_of_subcomplex(
            &ts,
            &[4, 6],
            |l| ConvexSubcomplex::new(&l.complex, (0..l.complex.wall_count()).map(|w| (w, false)).collect()),
            2,
            2,
        )
        .unwrap();
        assert_eq!(point.sub.vertex_count(), 0);
        assert!(point.injective);
    }
}
