//! Finite CAT(0) cube complexes stored as median graphs inside the halfspace
//! hypercube, together with the dual (Sageev) construction, restriction
//! quotients, products and wedges.
//!
//! A vertex is an orientation of every wall: bit `i` is `0` when the vertex
//! lies in the `h` halfspace of wall `i` and `1` when it lies in `h*`. Vertices
//! are stored sparsely as the sorted list of walls whose bit is `1`, which
//! keeps large trees and flats cheap when the basepoint is near all-zero.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{CubixError, Result};

/// Index of a wall (hyperplane) in a [`CubeComplex`].
pub type WallId = usize;

/// A 0-cube: the sorted set of walls on whose `h*` side it lies.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vertex(Box<[u32]>);

impl Vertex {
    pub fn empty() -> Self {
        Vertex(Box::new([]))
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(ones: I) -> Self {
        let mut v: Vec<u32> = ones.into_iter().map(|i| i as u32).collect();
        v.sort_unstable();
        v.dedup();
        Vertex(v.into_boxed_slice())
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Vertex::from_ones(bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    /// Parses a `0`/`1` string, leftmost character is wall 0.
    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut ones = Vec::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => ones.push(i),
                _ => return None,
            }
        }
        Some(Vertex::from_ones(ones))
    }

    pub fn bit(&self, wall: WallId) -> bool {
        self.0.binary_search(&(wall as u32)).is_ok()
    }

    pub fn ones(&self) -> impl Iterator<Item = WallId> + '_ {
        self.0.iter().map(|&w| w as usize)
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Largest wall index set to `1`, if any.
    pub fn max_wall(&self) -> Option<WallId> {
        self.0.last().map(|&w| w as usize)
    }

    pub fn flip(&self, wall: WallId) -> Vertex {
        let w = wall as u32;
        let mut v = self.0.to_vec();
        match v.binary_search(&w) {
            Ok(pos) => {
                v.remove(pos);
            }
            Err(pos) => v.insert(pos, w),
        }
        Vertex(v.into_boxed_slice())
    }

    pub fn with_bit(&self, wall: WallId, value: bool) -> Vertex {
        if self.bit(wall) == value {
            self.clone()
        } else {
            self.flip(wall)
        }
    }

    /// Walls on which the two vertices differ, ascending.
    pub fn difference(&self, other: &Vertex) -> Vec<WallId> {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(a[i] as usize);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                out.push(b[j] as usize);
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        out
    }

    pub fn hamming(&self, other: &Vertex) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut d) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    d += 1;
                    i += 1;
                }
                Ordering::Greater => {
                    d += 1;
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        d + (a.len() - i) + (b.len() - j)
    }

    /// Coordinatewise majority vote.
    pub fn majority(a: &Vertex, b: &Vertex, c: &Vertex) -> Vertex {
        let mut counts: HashMap<u32, u8> = HashMap::new();
        for v in [a, b, c] {
            for &w in v.0.iter() {
                *counts.entry(w).or_default() += 1;
            }
        }
        Vertex::from_ones(counts.into_iter().filter(|(_, n)| *n >= 2).map(|(w, _)| w as usize))
    }

    /// Symmetric difference with a mask, i.e. flips every wall in `mask`.
    pub fn xor(&self, mask: &Vertex) -> Vertex {
        Vertex::from_ones(self.difference(mask))
    }

    /// Keeps only the listed walls, renumbered by their position in `walls`.
    pub fn restrict(&self, walls: &[WallId]) -> Vertex {
        Vertex::from_ones(walls.iter().enumerate().filter(|(_, &w)| self.bit(w)).map(|(i, _)| i))
    }

    /// Shifts every wall index by `offset`.
    pub fn shifted(&self, offset: usize) -> Vertex {
        Vertex::from_ones(self.ones().map(|w| w + offset))
    }

    pub fn union(&self, other: &Vertex) -> Vertex {
        Vertex::from_ones(self.ones().chain(other.ones()))
    }

    pub fn to_bitstring(&self, wall_count: usize) -> String {
        let mut s = vec![b'0'; wall_count];
        for w in self.ones() {
            if w < wall_count {
                s[w] = b'1';
            }
        }
        String::from_utf8(s).expect("ascii")
    }

    /// Lexicographic order of the `0`/`1` strings.
    pub fn lex_cmp(&self, other: &Vertex) -> Ordering {
        match self.difference(other).first() {
            None => Ordering::Equal,
            Some(&w) => {
                if self.bit(w) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{:?}", self.0)
    }
}

/// A finite wallspace: points and bipartitions of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wallspace {
    pub points: Vec<String>,
    /// `(name, h side)`; the `h*` side is the complement.
    pub walls: Vec<(String, BTreeSet<usize>)>,
}

impl Wallspace {
    pub fn new(points: Vec<String>, walls: Vec<(String, BTreeSet<usize>)>) -> Self {
        Wallspace { points, walls }
    }

    pub fn check(&self) -> Result<()> {
        let n = self.points.len();
        let mut seen: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        for (i, (name, side)) in self.walls.iter().enumerate() {
            if let Some(&p) = side.iter().find(|&&p| p >= n) {
                return Err(CubixError::InvalidWall {
                    wall: name.clone(),
                    reason: format!("unknown point index {p}"),
                });
            }
            if side.is_empty() || side.len() == n {
                return Err(CubixError::InvalidWall {
                    wall: name.clone(),
                    reason: "h side must be nonempty and proper".into(),
                });
            }
            let complement: BTreeSet<usize> = (0..n).filter(|p| !side.contains(p)).collect();
            let key = if side.contains(&0) { side.clone() } else { complement };
            if let Some(&j) = seen.get(&key) {
                return Err(CubixError::InvalidWall {
                    wall: name.clone(),
                    reason: format!("same bipartition as wall {}", self.walls[j].0),
                });
            }
            seen.insert(key, i);
        }
        Ok(())
    }

    /// Orientation of every wall toward the side containing point `p`.
    pub fn principal(&self, p: usize) -> Vertex {
        Vertex::from_ones(
            self.walls.iter().enumerate().filter(|(_, (_, h))| !h.contains(&p)).map(|(i, _)| i),
        )
    }

    fn halfspace(&self, wall: usize, star: bool) -> BTreeSet<usize> {
        let h = &self.walls[wall].1;
        if star {
            (0..self.points.len()).filter(|p| !h.contains(p)).collect()
        } else {
            h.clone()
        }
    }
}

/// A choice of halfspace for every wall.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub bits: Vec<bool>,
}

impl Orientation {
    pub fn new(bits: Vec<bool>) -> Self {
        Orientation { bits }
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Orientation::new)
    }

    pub fn to_vertex(&self) -> Vertex {
        Vertex::from_bits(&self.bits)
    }
}

/// Result of [`CubeComplex::classify_orientation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationClass {
    Vertex,
    ConsistentAtInfinity,
    Inconsistent { walls: (WallId, WallId) },
}

/// Injective partial map of wall indices between two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallMap {
    pub source_walls: usize,
    pub target_walls: usize,
    map: Vec<Option<WallId>>,
}

impl WallMap {
    pub fn new(source_walls: usize, target_walls: usize, map: Vec<Option<WallId>>) -> Self {
        debug_assert_eq!(map.len(), source_walls);
        WallMap { source_walls, target_walls, map }
    }

    pub fn get(&self, wall: WallId) -> Option<WallId> {
        self.map.get(wall).copied().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (WallId, WallId)> + '_ {
        self.map.iter().enumerate().filter_map(|(s, t)| t.map(|t| (s, t)))
    }
}

#[derive(Debug)]
pub(crate) struct Relations {
    pub(crate) cross: Vec<Vec<WallId>>,
    pub(crate) contact: Vec<Vec<WallId>>,
}

/// A finite CAT(0) cube complex given by its 0-skeleton.
pub struct CubeComplex {
    wall_count: usize,
    labels: Vec<String>,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    basepoint: usize,
    adjacency: Vec<Vec<(WallId, usize)>>,
    wall_edges: Vec<Vec<(usize, usize)>>,
    relations: OnceLock<Relations>,
}

impl Clone for CubeComplex {
    fn clone(&self) -> Self {
        CubeComplex {
            wall_count: self.wall_count,
            labels: self.labels.clone(),
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            basepoint: self.basepoint,
            adjacency: self.adjacency.clone(),
            wall_edges: self.wall_edges.clone(),
            relations: OnceLock::new(),
        }
    }
}

impl fmt::Debug for CubeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubeComplex")
            .field("walls", &self.wall_count)
            .field("vertices", &self.vertices.len())
            .finish()
    }
}

impl CubeComplex {
    /// Builds a complex from its vertex set.
    ///
    /// Checks the cheap invariants (nonempty, connected under Hamming-1
    /// adjacency, every wall nondegenerate). Median closure and isometry are
    /// checked by [`validate`].
    pub fn new(
        wall_count: usize,
        vertices: impl IntoIterator<Item = Vertex>,
        labels: Option<Vec<String>>,
        basepoint: Option<Vertex>,
    ) -> Result<Self> {
        let mut verts: Vec<Vertex> = vertices.into_iter().collect();
        if verts.is_empty() {
            return Err(CubixError::Empty("vertex set".into()));
        }
        verts.sort_by(|a, b| a.lex_cmp(b));
        verts.dedup();
        if let Some(v) = verts.iter().find(|v| v.max_wall().is_some_and(|w| w >= wall_count)) {
            return Err(CubixError::InvalidComplex(format!("vertex {v:?} uses a wall >= {wall_count}")));
        }
        let labels = match labels {
            Some(l) if l.len() == wall_count => l,
            Some(l) => {
                return Err(CubixError::InvalidComplex(format!(
                    "{} labels for {wall_count} walls",
                    l.len()
                )))
            }
            None => (0..wall_count).map(|i| format!("w{i}")).collect(),
        };
        let index: HashMap<Vertex, usize> = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let basepoint = match basepoint {
            Some(b) => *index.get(&b).ok_or_else(|| CubixError::UnknownVertex(format!("{b:?}")))?,
            None => 0,
        };
        let mut adjacency = vec![Vec::new(); verts.len()];
        let mut wall_edges = vec![Vec::new(); wall_count];
        for (vi, v) in verts.iter().enumerate() {
            for w in v.ones() {
                if let Some(&ui) = index.get(&v.flip(w)) {
                    adjacency[vi].push((w, ui));
                    adjacency[ui].push((w, vi));
                    wall_edges[w].push((ui, vi));
                }
            }
        }
        for a in adjacency.iter_mut() {
            a.sort_unstable();
        }
        for e in wall_edges.iter_mut() {
            e.sort_unstable();
        }
        let cx = CubeComplex {
            wall_count,
            labels,
            vertices: verts,
            index,
            basepoint,
            adjacency,
            wall_edges,
            relations: OnceLock::new(),
        };
        if let Some(w) = (0..wall_count).find(|&w| cx.wall_edges[w].is_empty()) {
            let one = cx.vertices.iter().any(|v| v.bit(w));
            let zero = cx.vertices.iter().any(|v| !v.bit(w));
            let reason = if one && zero { "no edge is dual to it (complex not isometric)" } else { "only one side occurs" };
            return Err(CubixError::InvalidWall { wall: cx.labels[w].clone(), reason: reason.into() });
        }
        if cx.component_count() != 1 {
            return Err(CubixError::InvalidComplex("vertex set is not connected".into()));
        }
        Ok(cx)
    }

    /// Parses vertices given as `0`/`1` strings.
    pub fn from_bitstrings(strings: &[&str]) -> Result<Self> {
        let m = strings.first().map_or(0, |s| s.len());
        let verts = strings
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.len() != m {
                    return Err(CubixError::LengthMismatch { expected: m, got: s.len() });
                }
                Vertex::from_bitstring(s).ok_or_else(|| CubixError::parse(i + 1, format!("not a bitstring: {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CubeComplex::new(m, verts, None, None)
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(_, u) in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    pub fn wall_count(&self) -> usize {
        self.wall_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn vertex_id(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, wall: WallId) -> &str {
        &self.labels[wall]
    }

    pub fn wall_by_label(&self, label: &str) -> Option<WallId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basepoint(&self) -> &Vertex {
        &self.vertices[self.basepoint]
    }

    pub fn basepoint_id(&self) -> usize {
        self.basepoint
    }

    pub fn with_basepoint(&self, v: &Vertex) -> Result<CubeComplex> {
        let id = self.vertex_id(v).ok_or_else(|| CubixError::UnknownVertex(format!("{v:?}")))?;
        let mut c = self.clone();
        c.basepoint = id;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<CubeComplex> {
        if labels.len() != self.wall_count {
            return Err(CubixError::InvalidComplex("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// `(wall, neighbour id)` pairs, sorted by wall.
    pub fn neighbors(&self, id: usize) -> &[(WallId, usize)] {
        &self.adjacency[id]
    }

    /// Edges dual to `wall` as `(h-side endpoint, h*-side endpoint)`.
    pub fn wall_edges(&self, wall: WallId) -> &[(usize, usize)] {
        &self.wall_edges[wall]
    }

    pub fn edge_count(&self) -> usize {
        self.wall_edges.iter().map(Vec::len).sum()
    }

    pub(crate) fn check_wall(&self, wall: WallId) -> Result<()> {
        if wall >= self.wall_count {
            Err(CubixError::UnknownWall { index: wall, count: self.wall_count })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vertex(&self, v: &Vertex) -> Result<usize> {
        self.vertex_id(v).ok_or_else(|| CubixError::UnknownVertex(v.to_bitstring(self.wall_count)))
    }

    /// A fixed 0-cube of the carrier of `wall`, used to read off on which side
    /// of a non-crossing wall the carrier lies.
    pub fn carrier_rep(&self, wall: WallId) -> &Vertex {
        &self.vertices[self.wall_edges[wall][0].0]
    }

    /// Vertex ids of the carrier N(wall), sorted.
    pub fn carrier(&self, wall: WallId) -> Vec<usize> {
        let mut out: Vec<usize> = self.wall_edges[wall].iter().flat_map(|&(a, b)| [a, b]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn relations(&self) -> &Relations {
        self.relations.get_or_init(|| {
            let m = self.wall_count;
            let mut cross: Vec<HashSet<WallId>> = vec![HashSet::new(); m];
            let mut contact: Vec<HashSet<WallId>> = vec![HashSet::new(); m];
            for (vi, v) in self.vertices.iter().enumerate() {
                let nb = &self.adjacency[vi];
                for a in 0..nb.len() {
                    for b in a + 1..nb.len() {
                        let (i, j) = (nb[a].0, nb[b].0);
                        if i == j {
                            continue;
                        }
                        contact[i].insert(j);
                        contact[j].insert(i);
                        if !v.bit(i) && !v.bit(j) && self.index.contains_key(&v.flip(i).flip(j)) {
                            cross[i].insert(j);
                            cross[j].insert(i);
                        }
                    }
                }
            }
            let sorted = |sets: Vec<HashSet<WallId>>| -> Vec<Vec<WallId>> {
                sets.into_iter()
                    .map(|s| {
                        let mut v: Vec<_> = s.into_iter().collect();
                        v.sort_unstable();
                        v
                    })
                    .collect()
            };
            Relations { cross: sorted(cross), contact: sorted(contact) }
        })
    }

    /// Walls crossing `wall`, ascending.
    pub fn crossing_walls(&self, wall: WallId) -> &[WallId] {
        &self.relations().cross[wall]
    }

    /// Walls in contact with `wall` (crossing or osculating), ascending.
    pub fn contact_walls(&self, wall: WallId) -> &[WallId] {
        &self.relations().contact[wall]
    }

    pub(crate) fn crosses_unchecked(&self, i: WallId, j: WallId) -> bool {
        self.relations().cross[i].binary_search(&j).is_ok()
    }

    pub(crate) fn contacts_unchecked(&self, i: WallId, j: WallId) -> bool {
        self.relations().contact[i].binary_search(&j).is_ok()
    }

    /// Graph distance from `source` to every vertex.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[source] = 0;
        let mut q = VecDeque::from([source]);
        while let Some(v) = q.pop_front() {
            for &(_, u) in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        dist
    }

    /// Combinatorial distance: number of separating walls.
    pub fn distance(&self, a: &Vertex, b: &Vertex) -> usize {
        a.hamming(b)
    }

    /// Classifies an orientation as a vertex, a consistent orientation missing
    /// from the vertex set, or an inconsistent one with a witness pair.
    pub fn classify_orientation(&self, o: &Orientation) -> Result<OrientationClass> {
        if o.bits.len() != self.wall_count {
            return Err(CubixError::LengthMismatch { expected: self.wall_count, got: o.bits.len() });
        }
        if self.contains(&o.to_vertex()) {
            return Ok(OrientationClass::Vertex);
        }
        let m = self.wall_count;
        for i in 0..m {
            for j in i + 1..m {
                let ok = self.vertices.iter().any(|v| v.bit(i) == o.bits[i] && v.bit(j) == o.bits[j]);
                if !ok {
                    return Ok(OrientationClass::Inconsistent { walls: (i, j) });
                }
            }
        }
        Ok(OrientationClass::ConsistentAtInfinity)
    }

    /// The wallspace whose points are this complex's vertices and whose walls
    /// are its hyperplanes (`h` side = bit `0`).
    pub fn to_wallspace(&self) -> Wallspace {
        let points = self.vertices.iter().map(|v| v.to_bitstring(self.wall_count)).collect();
        let walls = (0..self.wall_count)
            .map(|w| {
                let h = self.vertices.iter().enumerate().filter(|(_, v)| !v.bit(w)).map(|(i, _)| i).collect();
                (self.labels[w].clone(), h)
            })
            .collect();
        Wallspace { points, walls }
    }

    /// Canonical form up to per-wall bit flips (wall order fixed): the
    /// lexicographically least sorted vertex list over all translations
    /// `v -> v xor a`.
    pub fn flip_canonical_form(&self) -> Vec<String> {
        let mut best: Option<Vec<String>> = None;
        for a in &self.vertices {
            let mut form: Vec<String> =
                self.vertices.iter().map(|v| v.xor(a).to_bitstring(self.wall_count)).collect();
            form.sort();
            if best.as_ref().is_none_or(|b| form < *b) {
                best = Some(form);
            }
        }
        best.unwrap_or_default()
    }

    /// Isomorphism up to per-wall flips, where wall `i` of `self` corresponds
    /// to wall `perm[i]` of `other`.
    pub fn isomorphic_via(&self, other: &CubeComplex, perm: &[WallId]) -> bool {
        if self.wall_count != other.wall_count
            || self.vertex_count() != other.vertex_count()
            || perm.len() != self.wall_count
        {
            return false;
        }
        let moved: Vec<Vertex> =
            self.vertices.iter().map(|v| Vertex::from_ones(v.ones().map(|w| perm[w]))).collect();
        let Ok(moved) = CubeComplex::new(self.wall_count, moved, None, None) else {
            return false;
        };
        moved.flip_canonical_form() == other.flip_canonical_form()
    }
}

/// Sageev dual of a finite wallspace: all consistent orientations.
pub fn dual_complex(ws: &Wallspace) -> Result<CubeComplex> {
    ws.check()?;
    let m = ws.walls.len();
    // halves[i][b]: point set of the chosen halfspace of wall i.
    let halves: Vec<[BTreeSet<usize>; 2]> =
        (0..m).map(|i| [ws.halfspace(i, false), ws.halfspace(i, true)]).collect();
    let meets = |i: usize, bi: bool, j: usize, bj: bool| -> bool {
        let (a, b) = (&halves[i][bi as usize], &halves[j][bj as usize]);
        a.iter().any(|p| b.contains(p))
    };
    let mut out = Vec::new();
    let mut bits = vec![false; m];
    fn search(
        k: usize,
        m: usize,
        bits: &mut Vec<bool>,
        out: &mut Vec<Vertex>,
        meets: &dyn Fn(usize, bool, usize, bool) -> bool,
    ) {
        if k == m {
            out.push(Vertex::from_bits(bits));
            return;
        }
        for b in [false, true] {
            if (0..k).all(|j| meets(j, bits[j], k, b)) {
                bits[k] = b;
                search(k + 1, m, bits, out, meets);
            }
        }
        bits[k] = false;
    }
    search(0, m, &mut bits, &mut out, &meets);
    let labels = ws.walls.iter().map(|(n, _)| n.clone()).collect();
    let base = if ws.points.is_empty() { None } else { Some(ws.principal(0)) };
    CubeComplex::new(m, out, Some(labels), base)
}

/// Per-invariant outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks the median-graph invariants of a vertex set, reporting a witness
/// for each failure. Vertices are examined in the order given.
pub fn validate(wall_count: usize, vertices: &[Vertex]) -> ValidationReport {
    let m = wall_count;
    let bs = |v: &Vertex| v.to_bitstring(m);
    let mut uniq: Vec<Vertex> = Vec::new();
    let mut index: HashMap<Vertex, usize> = HashMap::new();
    for v in vertices {
        if !index.contains_key(v) {
            index.insert(v.clone(), uniq.len());
            uniq.push(v.clone());
        }
    }
    let n = uniq.len();
    let adj: Vec<Vec<usize>> = uniq
        .iter()
        .map(|v| (0..m).filter_map(|w| index.get(&v.flip(w)).copied()).collect())
        .collect();
    let bfs = |s: usize| {
        let mut d = vec![usize::MAX; n];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &u in &adj[v] {
                if d[u] == usize::MAX {
                    d[u] = d[v] + 1;
                    q.push_back(u);
                }
            }
        }
        d
    };

    let mut checks = Vec::new();
    let connected = if n == 0 {
        Check { name: "connected", passed: false, witness: Some("empty vertex set".into()) }
    } else {
        let d = bfs(0);
        match d.iter().position(|&x| x == usize::MAX) {
            None => Check { name: "connected", passed: true, witness: None },
            Some(u) => Check {
                name: "connected",
                passed: false,
                witness: Some(format!("no path {} -> {}", bs(&uniq[0]), bs(&uniq[u]))),
            },
        }
    };
    checks.push(connected);

    let mut median = Check { name: "median-closed", passed: true, witness: None };
    if let Some((i, j, k)) = median_failure(m, &uniq) {
        let mv = Vertex::majority(&uniq[i], &uniq[j], &uniq[k]);
        median.passed = false;
        median.witness =
            Some(format!("m({},{},{})={} absent", bs(&uniq[i]), bs(&uniq[j]), bs(&uniq[k]), bs(&mv)));
    }
    checks.push(median);

    let mut iso = Check { name: "isometric", passed: true, witness: None };
    'iso: for s in 0..n {
        let d = bfs(s);
        for t in 0..n {
            let h = uniq[s].hamming(&uniq[t]);
            if d[t] != h {
                iso.passed = false;
                let dt = if d[t] == usize::MAX { "inf".to_string() } else { d[t].to_string() };
                iso.witness = Some(format!("d({},{})={} but Hamming {}", bs(&uniq[s]), bs(&uniq[t]), dt, h));
                break 'iso;
            }
        }
    }
    checks.push(iso);

    let mut walls = Check { name: "walls-nondegenerate", passed: true, witness: None };
    for w in 0..m {
        let ones = uniq.iter().filter(|v| v.bit(w)).count();
        if ones == 0 || ones == n {
            walls.passed = false;
            walls.witness = Some(format!("wall {w} has a single side"));
            break;
        }
    }
    checks.push(walls);
    ValidationReport { checks }
}

/// First triple, in index order, whose majority vote is missing. Vertices are
/// packed into 64-bit words so the cubic scan stays cheap.
fn median_failure(m: usize, verts: &[Vertex]) -> Option<(usize, usize, usize)> {
    let words = m.div_ceil(64).max(1);
    let mut packed = vec![0u64; verts.len() * words];
    for (i, v) in verts.iter().enumerate() {
        for w in v.ones() {
            packed[i * words + w / 64] |= 1 << (w % 64);
        }
    }
    let row = |i: usize| &packed[i * words..(i + 1) * words];
    let present: HashSet<&[u64]> = (0..verts.len()).map(row).collect();
    let mut buf = vec![0u64; words];
    let n = verts.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (row(i), row(j));
            let differ: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
            if differ < 2 {
                continue;
            }
            for k in j + 1..n {
                let c = row(k);
                for t in 0..words {
                    buf[t] = (a[t] & b[t]) | (c[t] & (a[t] ^ b[t]));
                }
                if !present.contains(buf.as_slice()) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Projects onto the walls in `walls`; the result is dual to `(X⁰, walls)`.
pub fn restriction_quotient(x: &CubeComplex, walls: &[WallId]) -> Result<(CubeComplex, WallMap)> {
    if walls.is_empty() {
        return Err(CubixError::Empty("restriction wall set".into()));
    }
    let mut keep: Vec<WallId> = walls.to_vec();
    keep.sort_unstable();
    keep.dedup();
    for &w in &keep {
        x.check_wall(w)?;
    }
    let verts: Vec<Vertex> = x.vertices().iter().map(|v| v.restrict(&keep)).collect();
    let labels = keep.iter().map(|&w| x.label(w).to_string()).collect();
    let base = x.basepoint().restrict(&keep);
    let q = CubeComplex::new(keep.len(), verts, Some(labels), Some(base))?;
    let mut map = vec![None; x.wall_count()];
    for (i, &w) in keep.iter().enumerate() {
        map[w] = Some(i);
    }
    Ok((q, WallMap::new(x.wall_count(), keep.len(), map)))
}

fn side_labels(x: &CubeComplex, y: &CubeComplex) -> Vec<String> {
    let clash = x.labels().iter().any(|l| y.labels().contains(l));
    if clash {
        x.labels().iter().map(|l| format!("1.{l}")).chain(y.labels().iter().map(|l| format!("2.{l}"))).collect()
    } else {
        x.labels().iter().chain(y.labels()).cloned().collect()
    }
}

/// Cartesian product; walls of `x` come first.
pub fn product(x: &CubeComplex, y: &CubeComplex) -> Result<(CubeComplex, WallMap, WallMap)> {
    let (mx, my) = (x.wall_count(), y.wall_count());
    let mut verts = Vec::with_capacity(x.vertex_count() * y.vertex_count());
    for a in x.vertices() {
        for b in y.vertices() {
            verts.push(a.union(&b.shifted(mx)));
        }
    }
    let base = x.basepoint().union(&y.basepoint().shifted(mx));
    let p = CubeComplex::new(mx + my, verts, Some(side_labels(x, y)), Some(base))?;
    let left = WallMap::new(mx, mx + my, (0..mx).map(Some).collect());
    let right = WallMap::new(my, mx + my, (0..my).map(|w| Some(w + mx)).collect());
    Ok((p, left, right))
}

/// Wedge sum identifying `xv` in `x` with `yv` in `y`; walls of `x` first.
pub fn wedge(x: &CubeComplex, xv: &Vertex, y: &CubeComplex, yv: &Vertex) -> Result<CubeComplex> {
    x.check_vertex(xv)?;
    y.check_vertex(yv)?;
    let mx = x.wall_count();
    let frozen_y = yv.shifted(mx);
    let mut verts: Vec<Vertex> = x.vertices().iter().map(|a| a.union(&frozen_y)).collect();
    verts.extend(y.vertices().iter().map(|b| xv.union(&b.shifted(mx))));
    let base = x.basepoint().union(&frozen_y);
    CubeComplex::new(mx + y.wall_count(), verts, Some(side_labels(x, y)), Some(base))
}

/// Common small complexes used by examples and tests.
pub mod shapes {
    use super::*;

    /// Path with `n` edges (walls `0..n`), basepoint at one end.
    pub fn path(n: usize) -> CubeComplex {
        let verts = (0..=n).map(|k| Vertex::from_ones(0..k));
        CubeComplex::new(n, verts, None, None).expect("path is valid")
    }

    /// The `d`-cube.
    pub fn cube(d: usize) -> CubeComplex {
        let verts = (0..1usize << d).map(|mask| Vertex::from_ones((0..d).filter(|i| mask >> i & 1 == 1)));
        CubeComplex::new(d, verts, None, None).expect("cube is valid")
    }

    /// `a × b` grid: walls `0..a` are vertical, `a..a+b` horizontal.
    pub fn grid(a: usize, b: usize) -> CubeComplex {
        product(&path(a), &path(b)).expect("grid").0
    }

    /// Star with `k` leaves; the centre is the all-zero vertex.
    pub fn star(k: usize) -> CubeComplex {
        let verts = std::iter::once(Vertex::empty()).chain((0..k).map(|i| Vertex::from_ones([i])));
        CubeComplex::new(k, verts, None, None).expect("star is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(points: &[&str], walls: &[(&str, &[usize])]) -> Wallspace {
        Wallspace::new(
            points.iter().map(|s| s.to_string()).collect(),
            walls.iter().map(|(n, h)| (n.to_string(), h.iter().copied().collect())).collect(),
        )
    }

    #[test]
    fn vertex_bit_ops() {
        let a = Vertex::from_bitstring("0110").unwrap();
        let b = Vertex::from_bitstring("1100").unwrap();
        assert_eq!(a.hamming(&b), 2);
        assert_eq!(a.difference(&b), vec![0, 2]);
        assert_eq!(a.flip(3).to_bitstring(4), "0111");
        let c = Vertex::from_bitstring("0011").unwrap();
        assert_eq!(Vertex::majority(&a, &b, &c).to_bitstring(4), "0110");
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
    }

    #[test]
    fn dual_of_two_crossing_walls_is_square() {
        let w = ws(&["a", "b", "c", "d"], &[("x", &[0, 1]), ("y", &[0, 2])]);
        let x = dual_complex(&w).unwrap();
        assert_eq!(x.vertex_count(), 4);
        assert!(validate(2, x.vertices()).passed());
    }

    #[test]
    fn dual_of_tripod_wallspace() {
        // Enumerating all 8 orientations of three leaf walls: orienting two
        // walls toward their leaves is inconsistent, leaving 111, 011, 101, 110.
        let w = ws(&["c", "l1", "l2", "l3"], &[("w1", &[1]), ("w2", &[2]), ("w3", &[3])]);
        let x = dual_complex(&w).unwrap();
        let mut got: Vec<String> = x.vertices().iter().map(|v| v.to_bitstring(3)).collect();
        got.sort();
        assert_eq!(got, vec!["011", "101", "110", "111"]);
    }

    #[test]
    fn dual_of_three_point_corner() {
        // Points realise (0,0), (0,1), (1,0). Brute force over the four
        // orientations: h*_a and h*_b share no point, so (1,1) is inconsistent
        // and the dual is a path.
        let w = ws(&["p", "q", "r"], &[("a", &[0, 1]), ("b", &[0, 2])]);
        let x = dual_complex(&w).unwrap();
        assert_eq!(x.vertex_count(), 3);
        assert!(!x.contains(&Vertex::from_bitstring("11").unwrap()));
    }

    #[test]
    fn dual_rejects_degenerate_wall() {
        let w = ws(&["a", "b"], &[("full", &[0, 1])]);
        assert!(matches!(dual_complex(&w), Err(CubixError::InvalidWall { .. })));
        let w = ws(&["a", "b"], &[("empty", &[])]);
        assert!(matches!(dual_complex(&w), Err(CubixError::InvalidWall { .. })));
    }

    #[test]
    fn validate_examples() {
        let v = |s: &[&str]| s.iter().map(|b| Vertex::from_bitstring(b).unwrap()).collect::<Vec<_>>();
        assert!(validate(2, &v(&["00", "01", "10", "11"])).passed());
        let r = validate(2, &v(&["00", "11"]));
        assert!(!r.check("connected").unwrap().passed);
        let r = validate(3, &v(&["000", "100", "110", "111", "011"]));
        let m = r.check("median-closed").unwrap();
        assert!(!m.passed);
        assert_eq!(m.witness.as_deref(), Some("m(000,110,011)=010 absent"));
    }

    #[test]
    fn restriction_examples() {
        let sq = shapes::cube(2);
        let (q, map) = restriction_quotient(&sq, &[0]).unwrap();
        assert_eq!((q.wall_count(), q.vertex_count()), (1, 2));
        assert_eq!(map.get(0), Some(0));
        assert_eq!(map.get(1), None);
        let (q, _) = restriction_quotient(&shapes::cube(3), &[0, 1]).unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert!(restriction_quotient(&sq, &[]).is_err());
        assert!(matches!(restriction_quotient(&sq, &[5]), Err(CubixError::UnknownWall { .. })));
    }

    #[test]
    fn product_and_wedge_examples() {
        let e = shapes::path(1);
        let (sq, _, _) = product(&e, &e).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        let (c3, _, _) = product(&sq, &e).unwrap();
        assert_eq!(c3.vertex_count(), 8);
        let p = wedge(&e, &Vertex::from_ones([0]), &e, &Vertex::empty()).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert!(validate(2, p.vertices()).passed());
        let sq2 = wedge(&sq, &Vertex::from_ones([0, 1]), &sq, &Vertex::empty()).unwrap();
        assert_eq!(sq2.vertex_count(), 7);
        assert!(validate(4, sq2.vertices()).passed());
    }

    #[test]
    fn classify_examples() {
        let sq = shapes::cube(2);
        let o = Orientation::from_bitstring("01").unwrap();
        assert_eq!(sq.classify_orientation(&o).unwrap(), OrientationClass::Vertex);
        let l = CubeComplex::from_bitstrings(&["00", "01", "10"]).unwrap();
        let o = Orientation::from_bitstring("11").unwrap();
        assert_eq!(l.classify_orientation(&o).unwrap(), OrientationClass::Inconsistent { walls: (0, 1) });
        // Tripod from the leaf wallspace: centre is 111, leaves flip one bit.
        let w = ws(&["c", "l1", "l2", "l3"], &[("w1", &[1]), ("w2", &[2]), ("w3", &[3])]);
        let t = dual_complex(&w).unwrap();
        let o = Orientation::from_bitstring("001").unwrap();
        assert!(matches!(t.classify_orientation(&o).unwrap(), OrientationClass::Inconsistent { .. }));
        assert!(sq.classify_orientation(&Orientation::new(vec![true])).is_err());
    }

    #[test]
    fn degenerate_wall_rejected() {
        let p = CubeComplex::from_bitstrings(&["000", "100", "110"]).unwrap_err();
        assert!(matches!(p, CubixError::InvalidWall { .. }));
    }
}
