//! Crossing and contact graphs and the structure they detect.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::complex::{product, restriction_quotient, CubeComplex, Vertex, WallId};
use crate::dist::Dist;
use crate::error::{CubixError, Result};
use crate::hyperplane::realize_inseparable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Crossing,
    Contact,
}

/// A graph on walls. Edges remember whether the pair crosses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypGraph {
    kind: GraphKind,
    vertices: Vec<WallId>,
    adjacency: Vec<Vec<(usize, bool)>>,
}

pub fn crossing_graph(x: &CubeComplex) -> HypGraph {
    HypGraph::induced(x, GraphKind::Crossing, &(0..x.wall_count()).collect::<Vec<_>>())
}

pub fn contact_graph(x: &CubeComplex) -> HypGraph {
    HypGraph::induced(x, GraphKind::Contact, &(0..x.wall_count()).collect::<Vec<_>>())
}

impl HypGraph {
    /// Full subgraph on `walls` (order kept, duplicates dropped).
    pub fn induced(x: &CubeComplex, kind: GraphKind, walls: &[WallId]) -> Self {
        let mut seen = BTreeSet::new();
        let vertices: Vec<WallId> = walls.iter().copied().filter(|w| seen.insert(*w)).collect();
        let pos: std::collections::HashMap<WallId, usize> = vertices.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, &w) in vertices.iter().enumerate() {
            let nbrs = match kind {
                GraphKind::Crossing => x.crossing_walls(w),
                GraphKind::Contact => x.contact_walls(w),
            };
            for u in nbrs {
                if let Some(&j) = pos.get(u) {
                    adjacency[i].push((j, x.crosses_unchecked(w, *u)));
                }
            }
            adjacency[i].sort_unstable();
        }
        HypGraph { kind, vertices, adjacency }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertices(&self) -> &[WallId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, wall: WallId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == wall)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: WallId, b: WallId) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => self.adjacency[i].iter().any(|&(k, _)| k == j),
            _ => false,
        }
    }

    /// Neighbouring walls of `wall`.
    pub fn neighbors(&self, wall: WallId) -> Vec<WallId> {
        self.position(wall)
            .map(|i| self.adjacency[i].iter().map(|&(j, _)| self.vertices[j]).collect())
            .unwrap_or_default()
    }

    /// BFS distances from the vertex at position `src`.
    fn bfs(&self, src: usize) -> Vec<Dist> {
        let mut d = vec![Dist::Infinite; self.len()];
        d[src] = Dist::Finite(0);
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let du = d[u].finite().expect("visited");
            for &(v, _) in &self.adjacency[u] {
                if d[v].is_infinite() {
                    d[v] = Dist::Finite(du + 1);
                    q.push_back(v);
                }
            }
        }
        d
    }

    /// Distances from `wall` to every vertex, in vertex order.
    pub fn distances_from(&self, wall: WallId) -> Option<Vec<Dist>> {
        self.position(wall).map(|i| self.bfs(i))
    }

    pub fn distance(&self, a: WallId, b: WallId) -> Option<Dist> {
        let j = self.position(b)?;
        self.distances_from(a).map(|d| d[j])
    }

    /// Connected components as sorted wall lists, ordered by least wall.
    pub fn components(&self) -> Vec<Vec<WallId>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![];
            let mut stack = vec![s];
            comp[s] = out.len();
            while let Some(u) = stack.pop() {
                members.push(self.vertices[u]);
                for &(v, _) in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = out.len();
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Graphviz rendering: solid edges cross, dashed edges osculate.
    pub fn to_dot(&self, x: &CubeComplex) -> String {
        let name = match self.kind {
            GraphKind::Crossing => "crossing",
            GraphKind::Contact => "contact",
        };
        let mut s = format!("graph {name} {{\n");
        for &w in &self.vertices {
            let _ = writeln!(s, "  n{w} [label=\"{}\"];", x.label(w));
        }
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &(j, crossing) in nbrs {
                if i < j {
                    let style = if crossing { "solid" } else { "dashed" };
                    let _ = writeln!(s, "  n{} -- n{} [style={style}];", self.vertices[i], self.vertices[j]);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Largest eccentricity; infinite when disconnected.
pub fn graph_diameter(g: &HypGraph) -> Result<Dist> {
    if g.is_empty() {
        return Err(CubixError::Empty("graph".into()));
    }
    let mut best = Dist::Finite(0);
    for i in 0..g.len() {
        for d in g.bfs(i) {
            best = best.max(d);
            if best.is_infinite() {
                return Ok(best);
            }
        }
    }
    Ok(best)
}

/// True when the crossing graph stays connected after deleting `lambda`.
pub fn separator_check(x: &CubeComplex, lambda: &[WallId]) -> bool {
    let drop: BTreeSet<WallId> = lambda.iter().copied().collect();
    let rest: Vec<WallId> = (0..x.wall_count()).filter(|w| !drop.contains(w)).collect();
    HypGraph::induced(x, GraphKind::Crossing, &rest).is_connected()
}

/// Splits the walls into two nonempty sides with every cross-pair crossing,
/// when the complement of the crossing graph is disconnected. The first
/// complement component forms the first side.
pub fn detect_join(x: &CubeComplex) -> Option<(Vec<WallId>, Vec<WallId>)> {
    let m = x.wall_count();
    if m < 2 {
        return None;
    }
    let mut comp = vec![usize::MAX; m];
    let mut count = 0;
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let crossing: BTreeSet<WallId> = x.crossing_walls(u).iter().copied().collect();
            for v in 0..m {
                if v != u && comp[v] == usize::MAX && !crossing.contains(&v) {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    if count < 2 {
        return None;
    }
    let a: Vec<WallId> = (0..m).filter(|&w| comp[w] == 0).collect();
    let b: Vec<WallId> = (0..m).filter(|&w| comp[w] != 0).collect();
    Some((a, b))
}

/// Factors of a join splitting and whether X is their product.
#[derive(Clone, Debug)]
pub struct ProductReconstruction {
    pub first: CubeComplex,
    pub second: CubeComplex,
    pub iso_verified: bool,
}

fn check_partition(x: &CubeComplex, a: &[WallId], b: &[WallId]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(CubixError::Precondition("both sides of the partition must be nonempty".into()));
    }
    let mut all: Vec<WallId> = a.iter().chain(b).copied().collect();
    for &w in &all {
        x.check_wall(w)?;
    }
    all.sort_unstable();
    all.dedup();
    if all.len() != a.len() + b.len() || all.len() != x.wall_count() {
        return Err(CubixError::Precondition("sides must partition the walls".into()));
    }
    Ok(())
}

/// Restriction quotients onto each side; X is their product exactly when
/// every pair of factor vertices is realised.
pub fn reconstruct_product(x: &CubeComplex, a: &[WallId], b: &[WallId]) -> Result<ProductReconstruction> {
    check_partition(x, a, b)?;
    let (q1, _) = restriction_quotient(x, a)?;
    let (q2, _) = restriction_quotient(x, b)?;
    let iso_verified = x.vertex_count() == q1.vertex_count() * q2.vertex_count();
    Ok(ProductReconstruction { first: q1, second: q2, iso_verified })
}

/// Crossing-graph distance of every wall from a base wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeMap {
    pub base: WallId,
    pub grades: Vec<Dist>,
}

impl GradeMap {
    pub fn grade(&self, wall: WallId) -> Dist {
        self.grades[wall]
    }

    /// Largest grade; infinite if some wall is unreachable.
    pub fn max_grade(&self) -> Dist {
        self.grades.iter().copied().max().unwrap_or(Dist::Finite(0))
    }
}

pub fn grade_from(x: &CubeComplex, h0: WallId) -> Result<GradeMap> {
    x.check_wall(h0)?;
    let grades = crossing_graph(x).distances_from(h0).expect("valid wall");
    Ok(GradeMap { base: h0, grades })
}

/// One pseudoproduct step X ≅ Q1 ⊛ Q2, with each condition checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoproductLayer {
    /// Walls of the original complex kept in Q1.
    pub v1: Vec<WallId>,
    /// Top-grade walls, projected to Q2.
    pub v2: Vec<WallId>,
    pub top_grade: usize,
    /// Q1 embeds as a convex subcomplex crossed exactly by V1.
    pub convex_embedding: bool,
    /// |V2| ≥ k.
    pub v2_large: bool,
    /// The image of the layer's complex in Q1 × Q2 has full convex hull.
    pub hull_full: bool,
    /// Each wall of V2 crosses at least k walls of V1.
    pub v2_crosses_v1: bool,
}

impl PseudoproductLayer {
    pub fn passed(&self) -> bool {
        self.convex_embedding && self.v2_large && self.hull_full && self.v2_crosses_v1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoproductReport {
    pub base: WallId,
    pub threshold: usize,
    pub layers: Vec<PseudoproductLayer>,
    /// Walls of the terminal carrier layer: the base wall and its crossers.
    pub carrier_walls: Vec<WallId>,
    /// The terminal carrier splits as base wall × interval.
    pub carrier_is_product: bool,
}

impl PseudoproductReport {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn passed(&self) -> bool {
        self.carrier_is_product && self.layers.iter().all(PseudoproductLayer::passed)
    }
}

/// Peels off top-grade walls from `h0` until the remaining walls have grade
/// at most 2; a first layer is always produced.
pub fn pseudoproduct_layers(x: &CubeComplex, h0: WallId, k: usize) -> Result<PseudoproductReport> {
    if k == 0 {
        return Err(CubixError::Precondition("threshold k must be at least 1".into()));
    }
    let grades = grade_from(x, h0)?;
    if grades.max_grade().is_infinite() {
        return Err(CubixError::DisconnectedCrossing);
    }
    if x.wall_count() < 2 {
        return Err(CubixError::Precondition("need a wall besides the base wall".into()));
    }
    // Walls of the current complex, as indices into x; cur is the restriction.
    let mut walls: Vec<WallId> = (0..x.wall_count()).collect();
    let mut cur = x.clone();
    let mut cur_h0 = h0;
    let mut layers = Vec::new();
    loop {
        let g = grade_from(&cur, cur_h0)?;
        let top = g.max_grade().finite().ok_or(CubixError::DisconnectedCrossing)?;
        if top == 0 || (!layers.is_empty() && top <= 2) {
            break;
        }
        let v2_local: Vec<WallId> = (0..cur.wall_count()).filter(|&w| g.grade(w) == Dist::Finite(top)).collect();
        let v1_local: Vec<WallId> = (0..cur.wall_count()).filter(|&w| g.grade(w) != Dist::Finite(top)).collect();
        let layer = check_layer(&cur, &v1_local, &v2_local, k)?;
        layers.push(PseudoproductLayer {
            v1: v1_local.iter().map(|&w| walls[w]).collect(),
            v2: v2_local.iter().map(|&w| walls[w]).collect(),
            top_grade: top,
            ..layer
        });
        let (q1, map) = restriction_quotient(&cur, &v1_local)?;
        cur_h0 = map.get(cur_h0).expect("base wall kept");
        walls = v1_local.iter().map(|&w| walls[w]).collect();
        cur = q1;
    }
    let g = grade_from(&cur, cur_h0)?;
    let near: Vec<WallId> = (0..cur.wall_count()).filter(|&w| g.grade(w) <= Dist::Finite(1)).collect();
    let (carrier, map) = restriction_quotient(&cur, &near)?;
    let base = map.get(cur_h0).expect("base wall kept");
    let others: Vec<WallId> = (0..carrier.wall_count()).filter(|&w| w != base).collect();
    let carrier_is_product = others.is_empty() || reconstruct_product(&carrier, &[base], &others)?.iso_verified;
    Ok(PseudoproductReport {
        base: h0,
        threshold: k,
        layers,
        carrier_walls: near.iter().map(|&w| walls[w]).collect(),
        carrier_is_product,
    })
}

fn check_layer(x: &CubeComplex, v1: &[WallId], v2: &[WallId], k: usize) -> Result<PseudoproductLayer> {
    let (q1, _) = restriction_quotient(x, v1)?;
    let (q2, _) = restriction_quotient(x, v2)?;
    let convex_embedding = realize_inseparable(x, v1).is_ok_and(|y| y.len() == q1.vertex_count());
    let (p, _, _) = product(&q1, &q2)?;
    let shift = v1.len();
    let image: Vec<Vertex> =
        x.vertices().iter().map(|v| v.restrict(v1).union(&v.restrict(v2).shifted(shift))).collect();
    let in_product = image.iter().all(|v| p.contains(v));
    let varying: BTreeSet<WallId> = image.iter().flat_map(|v| v.difference(&image[0])).collect();
    let hull_full = in_product && varying.len() == p.wall_count();
    let v1_set: BTreeSet<WallId> = v1.iter().copied().collect();
    let v2_crosses_v1 = v2.iter().all(|&h| x.crossing_walls(h).iter().filter(|w| v1_set.contains(w)).count() >= k);
    Ok(PseudoproductLayer {
        v1: v1.to_vec(),
        v2: v2.to_vec(),
        top_grade: 0,
        convex_embedding,
        v2_large: v2.len() >= k,
        hull_full,
        v2_crosses_v1,
    })
}

/// Diameters of the contact graph, crossing graph and (when supplied) the
/// boundary skeleton, with the maximum vertex degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub diam_contact: Dist,
    pub diam_crossing: Dist,
    pub diam_boundary: Option<Dist>,
    pub degree: usize,
    /// Human-readable descriptions of violated inequalities.
    pub violations: Vec<String>,
}

pub fn diameter_chain_report(x: &CubeComplex, diam_boundary: Option<Dist>) -> Result<ChainReport> {
    if x.wall_count() == 0 {
        return Err(CubixError::Empty("complex has no walls".into()));
    }
    let diam_contact = graph_diameter(&contact_graph(x))?;
    let diam_crossing = graph_diameter(&crossing_graph(x))?;
    let degree = (0..x.vertex_count()).map(|i| x.neighbors(i).len()).max().unwrap_or(0);
    let mut violations = Vec::new();
    if diam_contact > diam_crossing {
        violations.push(format!("contact diameter {diam_contact} exceeds crossing diameter {diam_crossing}"));
    }
    if let Some(b) = diam_boundary {
        if diam_crossing > b {
            violations.push(format!("crossing diameter {diam_crossing} exceeds boundary diameter {b}"));
        }
        if let Dist::Finite(c) = diam_crossing {
            let bound = Dist::Finite((2 * c).saturating_sub(2));
            if b > bound {
                violations.push(format!("boundary diameter {b} exceeds 2·{c}−2"));
            }
        }
    }
    Ok(ChainReport { diam_contact, diam_crossing, diam_boundary, degree, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::shapes::{cube, grid, path, star};
    use crate::complex::wedge;

    #[test]
    fn small_graphs() {
        let c = cube(3);
        assert_eq!(crossing_graph(&c).edge_count(), 3);
        assert_eq!(contact_graph(&c).edge_count(), 3);
        let t = star(3);
        assert_eq!(crossing_graph(&t).edge_count(), 0);
        assert_eq!(contact_graph(&t).edge_count(), 3);
        assert_eq!(graph_diameter(&crossing_graph(&t)).unwrap(), Dist::Infinite);
        assert_eq!(graph_diameter(&contact_graph(&t)).unwrap(), Dist::Finite(1));
        assert!(graph_diameter(&HypGraph::induced(&t, GraphKind::Contact, &[])).is_err());
    }

    #[test]
    fn separators_and_joins() {
        let g = grid(3, 3);
        assert!(separator_check(&g, &[4]));
        let sq = cube(2);
        let v0 = Vertex::empty();
        let w = wedge(&sq, &v0, &sq, &v0).unwrap();
        assert!(!separator_check(&w, &[]));
        assert!(!separator_check(&path(3), &[]));
        assert_eq!(detect_join(&grid(2, 3)), Some((vec![0, 1], vec![2, 3, 4])));
        assert_eq!(detect_join(&cube(3)), Some((vec![0], vec![1, 2])));
        assert_eq!(detect_join(&path(3)), None);
    }

    #[test]
    fn products_reconstruct() {
        let g = grid(5, 3);
        let r = reconstruct_product(&g, &[0, 1, 2, 3, 4], &[5, 6, 7]).unwrap();
        assert!(r.iso_verified);
        assert_eq!(r.first.vertex_count(), 6);
        assert!(reconstruct_product(&g, &[0], &[1]).is_err());
        let l = CubeComplex::from_bitstrings(&["00", "10", "01"]).unwrap();
        assert!(!reconstruct_product(&l, &[0], &[1]).unwrap().iso_verified);
    }

    #[test]
    fn grades() {
        let g = grid(3, 3);
        let m = grade_from(&g, 0).unwrap();
        assert_eq!(m.grade(3), Dist::Finite(1));
        assert_eq!(m.grade(2), Dist::Finite(2));
        assert_eq!(grade_from(&star(3), 0).unwrap().grade(1), Dist::Infinite);
        assert!(matches!(pseudoproduct_layers(&star(3), 0, 1), Err(CubixError::DisconnectedCrossing)));
    }

    #[test]
    fn grid_is_one_layer() {
        let r = pseudoproduct_layers(&grid(4, 4), 1, 2).unwrap();
        assert_eq!(r.depth(), 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn chain_for_edge() {
        let r = diameter_chain_report(&path(1), None).unwrap();
        assert_eq!((r.diam_contact, r.diam_crossing, r.degree), (Dist::Finite(0), Dist::Finite(0), 1));
    }

    #[test]
    fn dot_styles() {
        let d = contact_graph(&path(2)).to_dot(&path(2));
        assert!(d.contains("n0 -- n1 [style=dashed]"));
        let d = crossing_graph(&cube(2)).to_dot(&cube(2));
        assert!(d.contains("style=solid"));
    }
}
