//! Hyperplane relations and the convexity calculus built on them.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::complex::{restriction_quotient, CubeComplex, Vertex, WallId};
use crate::error::{CubixError, Result};
use crate::geodesic::{bfs_geodesic, GeodesicPath};

/// How two distinct hyperplanes meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contact {
    Cross,
    Osculate,
    None,
}

/// Position of a hyperplane's carrier relative to another wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideOf {
    /// Carrier lies in the `h` halfspace (bit 0).
    Low,
    /// Carrier lies in the `h*` halfspace (bit 1).
    High,
    /// The walls cross (or coincide), so no side is defined.
    Crosses,
}

fn distinct(x: &CubeComplex, walls: &[WallId]) -> Result<()> {
    for &w in walls {
        x.check_wall(w)?;
    }
    let set: HashSet<_> = walls.iter().collect();
    if set.len() != walls.len() {
        return Err(CubixError::RepeatedWall(walls.to_vec()));
    }
    Ok(())
}

pub fn crosses(x: &CubeComplex, i: WallId, j: WallId) -> Result<bool> {
    distinct(x, &[i, j])?;
    Ok(x.crosses_unchecked(i, j))
}

pub fn contacts(x: &CubeComplex, i: WallId, j: WallId) -> Result<Contact> {
    distinct(x, &[i, j])?;
    Ok(contact_unchecked(x, i, j))
}

pub(crate) fn contact_unchecked(x: &CubeComplex, i: WallId, j: WallId) -> Contact {
    if x.crosses_unchecked(i, j) {
        Contact::Cross
    } else if x.contacts_unchecked(i, j) {
        Contact::Osculate
    } else {
        Contact::None
    }
}

/// Side of wall `k` containing the carrier of wall `i`.
pub fn side_of(x: &CubeComplex, k: WallId, i: WallId) -> SideOf {
    if k == i || x.crosses_unchecked(k, i) {
        SideOf::Crosses
    } else if x.carrier_rep(i).bit(k) {
        SideOf::High
    } else {
        SideOf::Low
    }
}

pub fn separates(x: &CubeComplex, k: WallId, i: WallId, j: WallId) -> Result<bool> {
    distinct(x, &[i, j, k])?;
    Ok(separates_unchecked(x, k, i, j))
}

pub(crate) fn separates_unchecked(x: &CubeComplex, k: WallId, i: WallId, j: WallId) -> bool {
    match (side_of(x, k, i), side_of(x, k, j)) {
        (SideOf::Crosses, _) | (_, SideOf::Crosses) => false,
        (a, b) => a != b,
    }
}

/// Every wall separating `i` from `j`, ascending.
pub fn separating_walls(x: &CubeComplex, i: WallId, j: WallId) -> Vec<WallId> {
    if i == j {
        return Vec::new();
    }
    x.carrier_rep(i)
        .difference(x.carrier_rep(j))
        .into_iter()
        .filter(|&k| k != i && k != j && !x.crosses_unchecked(k, i) && !x.crosses_unchecked(k, j))
        .collect()
}

pub fn is_facing_triple(x: &CubeComplex, i: WallId, j: WallId, k: WallId) -> Result<bool> {
    distinct(x, &[i, j, k])?;
    Ok(facing_unchecked(x, i, j, k))
}

pub(crate) fn facing_unchecked(x: &CubeComplex, i: WallId, j: WallId, k: WallId) -> bool {
    if x.crosses_unchecked(i, j) || x.crosses_unchecked(j, k) || x.crosses_unchecked(i, k) {
        return false;
    }
    !separates_unchecked(x, i, j, k) && !separates_unchecked(x, j, i, k) && !separates_unchecked(x, k, i, j)
}

/// First facing triple found in `walls`, if any.
pub fn find_facing_triple(x: &CubeComplex, walls: &[WallId]) -> Option<(WallId, WallId, WallId)> {
    let w: Vec<WallId> = walls.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if x.crosses_unchecked(w[a], w[b]) {
                continue;
            }
            for c in b + 1..w.len() {
                if facing_unchecked(x, w[a], w[b], w[c]) {
                    return Some((w[a], w[b], w[c]));
                }
            }
        }
    }
    None
}

/// Least superset of `walls` containing every wall that separates two of
/// its members.
pub fn inseparable_closure(x: &CubeComplex, walls: &[WallId]) -> Result<BTreeSet<WallId>> {
    if walls.is_empty() {
        return Err(CubixError::Empty("wall set".into()));
    }
    for &w in walls {
        x.check_wall(w)?;
    }
    Ok(closure_unchecked(x, walls.iter().copied()))
}

pub(crate) fn closure_unchecked(x: &CubeComplex, walls: impl IntoIterator<Item = WallId>) -> BTreeSet<WallId> {
    let mut set: BTreeSet<WallId> = BTreeSet::new();
    let mut members: Vec<WallId> = Vec::new();
    let mut queue: VecDeque<WallId> = walls.into_iter().collect();
    while let Some(w) = queue.pop_front() {
        if !set.insert(w) {
            continue;
        }
        for &m in &members {
            for k in separating_walls(x, w, m) {
                if !set.contains(&k) {
                    queue.push_back(k);
                }
            }
        }
        members.push(w);
    }
    set
}

/// A wall outside `walls` separating two members, as `(separator, a, b)`.
pub fn inseparability_witness(x: &CubeComplex, walls: &[WallId]) -> Option<(WallId, WallId, WallId)> {
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    let w: Vec<WallId> = set.iter().copied().collect();
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if let Some(k) = separating_walls(x, w[a], w[b]).into_iter().find(|k| !set.contains(k)) {
                return Some((k, w[a], w[b]));
            }
        }
    }
    None
}

pub fn median(x: &CubeComplex, a: &Vertex, b: &Vertex, c: &Vertex) -> Result<Vertex> {
    for v in [a, b, c] {
        x.check_vertex(v)?;
    }
    let m = Vertex::majority(a, b, c);
    if !x.contains(&m) {
        return Err(CubixError::InvalidComplex(format!(
            "median {} missing; complex is not median",
            m.to_bitstring(x.wall_count())
        )));
    }
    Ok(m)
}

/// Vertices on some geodesic from `a` to `b`.
pub fn interval(x: &CubeComplex, a: &Vertex, b: &Vertex) -> Result<Vec<Vertex>> {
    x.check_vertex(a)?;
    x.check_vertex(b)?;
    let free: BTreeSet<WallId> = a.difference(b).into_iter().collect();
    Ok(x.vertices()
        .iter()
        .filter(|v| v.difference(a).iter().all(|w| free.contains(w)))
        .cloned()
        .collect())
}

/// Intersection of the complex with a set of halfspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSubcomplex {
    /// Wall -> required bit.
    pub constraints: BTreeMap<WallId, bool>,
    vertex_ids: Vec<usize>,
}

impl ConvexSubcomplex {
    pub fn new(x: &CubeComplex, constraints: BTreeMap<WallId, bool>) -> Result<Self> {
        for &w in constraints.keys() {
            x.check_wall(w)?;
        }
        let vertex_ids = (0..x.vertex_count())
            .filter(|&i| constraints.iter().all(|(&w, &b)| x.vertex(i).bit(w) == b))
            .collect();
        Ok(ConvexSubcomplex { constraints, vertex_ids })
    }

    /// The carrier N(wall): all walls not crossing it are fixed.
    pub fn carrier(x: &CubeComplex, wall: WallId) -> Result<Self> {
        x.check_wall(wall)?;
        let rep = x.carrier_rep(wall);
        let constraints = (0..x.wall_count())
            .filter(|&k| k != wall && !x.crosses_unchecked(k, wall))
            .map(|k| (k, rep.bit(k)))
            .collect();
        Ok(ConvexSubcomplex { constraints, vertex_ids: x.carrier(wall) })
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn vertices<'a>(&'a self, x: &'a CubeComplex) -> impl Iterator<Item = &'a Vertex> + 'a {
        self.vertex_ids.iter().map(move |&i| x.vertex(i))
    }

    pub fn len(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.constraints.iter().all(|(&w, &b)| v.bit(w) == b)
    }

    /// Walls taking both values on the subcomplex, i.e. 𝒲(Y).
    pub fn crossing_walls(&self, x: &CubeComplex) -> BTreeSet<WallId> {
        let mut seen_low = BTreeSet::new();
        let mut seen_high = BTreeSet::new();
        for v in self.vertices(x) {
            for w in 0..x.wall_count() {
                if self.constraints.contains_key(&w) {
                    continue;
                }
                if v.bit(w) {
                    seen_high.insert(w);
                } else {
                    seen_low.insert(w);
                }
            }
        }
        seen_low.intersection(&seen_high).copied().collect()
    }
}

/// Intersection of all halfspaces containing `a`.
pub fn convex_hull(x: &CubeComplex, a: &[Vertex]) -> Result<ConvexSubcomplex> {
    if a.is_empty() {
        return Err(CubixError::Empty("vertex set".into()));
    }
    for v in a {
        x.check_vertex(v)?;
    }
    let varying: BTreeSet<WallId> = a.iter().flat_map(|v| v.difference(&a[0])).collect();
    let constraints = (0..x.wall_count()).filter(|w| !varying.contains(w)).map(|w| (w, a[0].bit(w))).collect();
    ConvexSubcomplex::new(x, constraints)
}

/// Nearest vertex of `y` to `v`.
pub fn gate(x: &CubeComplex, v: &Vertex, y: &ConvexSubcomplex) -> Result<Vertex> {
    x.check_vertex(v)?;
    y.vertices(x)
        .min_by(|a, b| a.hamming(v).cmp(&b.hamming(v)).then_with(|| a.lex_cmp(b)))
        .cloned()
        .ok_or_else(|| CubixError::Empty("convex subcomplex".into()))
}

/// Gate of `v` in the carrier of `wall`, computed by fixing every wall that
/// misses the carrier to the carrier's side.
pub fn carrier_gate(x: &CubeComplex, v: &Vertex, wall: WallId) -> Vertex {
    let rep = x.carrier_rep(wall);
    let mut g = v.clone();
    for k in v.difference(rep) {
        if k != wall && !x.crosses_unchecked(k, wall) {
            g = g.flip(k);
        }
    }
    g
}

/// Geodesic whose dual walls are exactly `walls`.
///
/// Built from the restriction quotient onto `walls`: each antipodal pair of
/// its vertices determines two convex fibres in X, and a pair of mutual
/// gates between fibres at distance `|walls|` spans the segment.
pub fn segment_for(x: &CubeComplex, walls: &[WallId]) -> Result<GeodesicPath> {
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    if set.is_empty() {
        return Err(CubixError::Empty("wall set".into()));
    }
    for &w in &set {
        x.check_wall(w)?;
    }
    let list: Vec<WallId> = set.iter().copied().collect();
    if let Some((k, a, b)) = inseparability_witness(x, &list) {
        return Err(CubixError::NotInseparable { separator: k, a, b });
    }
    if let Some((a, b, c)) = find_facing_triple(x, &list) {
        return Err(CubixError::FacingTriple(a, b, c));
    }
    let (q, _) = restriction_quotient(x, &list)?;
    let n = list.len();
    let fibre = |p: &Vertex| -> Vec<usize> {
        (0..x.vertex_count()).filter(|&i| x.vertex(i).restrict(&list) == *p).collect()
    };
    for p in q.vertices() {
        let anti = Vertex::from_ones((0..n).filter(|&i| !p.bit(i)));
        if !q.contains(&anti) || p.lex_cmp(&anti) == std::cmp::Ordering::Greater {
            continue;
        }
        let (fp, fa) = (fibre(p), fibre(&anti));
        let nearest = |from: &Vertex, ids: &[usize]| -> Vertex {
            ids.iter()
                .map(|&i| x.vertex(i))
                .min_by(|a, b| a.hamming(from).cmp(&b.hamming(from)).then_with(|| a.lex_cmp(b)))
                .expect("fibre nonempty")
                .clone()
        };
        let b = nearest(x.vertex(fp[0]), &fa);
        let a = nearest(&b, &fp);
        if a.hamming(&b) == n {
            return bfs_geodesic(x, &a, &b);
        }
    }
    Err(CubixError::Precondition("no geodesic segment crosses exactly the given walls".into()))
}

/// Convex subcomplex Y with 𝒲(Y) = `walls`.
pub fn realize_inseparable(x: &CubeComplex, walls: &[WallId]) -> Result<ConvexSubcomplex> {
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    if set.is_empty() {
        return Err(CubixError::Empty("wall set".into()));
    }
    for &w in &set {
        x.check_wall(w)?;
    }
    let list: Vec<WallId> = set.iter().copied().collect();
    if let Some((k, a, b)) = inseparability_witness(x, &list) {
        return Err(CubixError::NotInseparable { separator: k, a, b });
    }
    let mut candidates: Vec<usize> = list.iter().flat_map(|&w| x.carrier(w)).collect();
    candidates.sort_by(|&a, &b| x.vertex(a).lex_cmp(x.vertex(b)));
    candidates.dedup();
    for c in candidates {
        let base = x.vertex(c);
        let constraints: BTreeMap<WallId, bool> =
            (0..x.wall_count()).filter(|w| !set.contains(w)).map(|w| (w, base.bit(w))).collect();
        let y = ConvexSubcomplex::new(x, constraints)?;
        if y.crossing_walls(x) == set {
            return Ok(y);
        }
    }
    Err(CubixError::Precondition("no convex subcomplex realises the wall set".into()))
}

/// |A △ B|.
pub fn almost_equivalence_defect(a: &BTreeSet<WallId>, b: &BTreeSet<WallId>) -> usize {
    a.symmetric_difference(b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::shapes::{cube, grid, path, star};

    #[test]
    fn relation_examples() {
        let sq = cube(2);
        assert!(crosses(&sq, 0, 1).unwrap());
        assert!(!crosses(&path(2), 0, 1).unwrap());
        assert!(crosses(&sq, 0, 0).is_err());
        assert_eq!(contacts(&path(2), 0, 1).unwrap(), Contact::Osculate);
        assert_eq!(contacts(&path(3), 0, 2).unwrap(), Contact::None);
        assert_eq!(contacts(&sq, 0, 1).unwrap(), Contact::Cross);
        assert!(separates(&path(3), 1, 0, 2).unwrap());
    }

    #[test]
    fn pendant_edge_does_not_separate_square_walls() {
        // Square 00,10,01,11 with a pendant edge at 11 via wall 2.
        let x = CubeComplex::from_bitstrings(&["000", "100", "010", "110", "111"]).unwrap();
        assert!(!separates(&x, 2, 0, 1).unwrap());
        assert_eq!(side_of(&x, 2, 0), SideOf::Low);
    }

    #[test]
    fn facing_triples() {
        assert!(is_facing_triple(&star(3), 0, 1, 2).unwrap());
        assert!(!is_facing_triple(&path(3), 0, 1, 2).unwrap());
        assert!(!is_facing_triple(&cube(3), 0, 1, 2).unwrap());
    }

    #[test]
    fn closure_examples() {
        let p = path(4);
        assert_eq!(inseparable_closure(&p, &[0, 3]).unwrap(), (0..4).collect());
        assert_eq!(inseparable_closure(&p, &[2]).unwrap(), [2].into());
        assert_eq!(inseparable_closure(&cube(2), &[0, 1]).unwrap(), [0, 1].into());
        assert!(inseparable_closure(&p, &[]).is_err());
    }

    #[test]
    fn median_interval_hull_gate() {
        let sq = cube(2);
        let v = |s: &str| Vertex::from_bitstring(s).unwrap();
        assert_eq!(median(&sq, &v("00"), &v("01"), &v("10")).unwrap(), v("00"));
        let g = grid(3, 2);
        let i = interval(&g, &v("00000"), &v("11011")).unwrap();
        assert_eq!(i.len(), 9);
        let l = CubeComplex::from_bitstrings(&["00", "01", "10"]).unwrap();
        let h = convex_hull(&l, &[v("01"), v("10")]).unwrap();
        assert_eq!(h.len(), 3);
        let none = ConvexSubcomplex { constraints: BTreeMap::new(), vertex_ids: vec![] };
        assert!(gate(&sq, &v("00"), &none).is_err());
    }

    #[test]
    fn segment_examples() {
        let s = segment_for(&cube(2), &[0, 1]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(segment_for(&star(3), &[0, 1, 2]), Err(CubixError::FacingTriple(0, 1, 2))));
        let p = path(3);
        assert!(matches!(segment_for(&p, &[0, 2]), Err(CubixError::NotInseparable { separator: 1, .. })));
    }

    #[test]
    fn realize_examples() {
        // In a path nothing crosses wall 1, so Y is its carrier.
        let p = path(3);
        let y = realize_inseparable(&p, &[1]).unwrap();
        assert_eq!(y.vertex_ids(), ConvexSubcomplex::carrier(&p, 1).unwrap().vertex_ids());
        // In a grid the carrier is a strip; Y is a single edge dual to the wall.
        let g = grid(3, 3);
        let y = realize_inseparable(&g, &[1]).unwrap();
        assert_eq!(y.crossing_walls(&g), [1].into());
        assert_eq!(y.len(), 2);
        assert!(realize_inseparable(&path(3), &[0, 2]).is_err());
    }

    #[test]
    fn defect() {
        let e = BTreeSet::new();
        assert_eq!(almost_equivalence_defect(&e, &e), 0);
        assert_eq!(almost_equivalence_defect(&[0, 1].into(), &[1, 2].into()), 2);
    }
}
