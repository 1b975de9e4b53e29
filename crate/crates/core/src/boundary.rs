//! Finite-scale approximation of the simplicial boundary.
//!
//! Unidirectional boundary sets (UBSs) are detected inside one level at a
//! tolerance `theta`: "all but finitely many" becomes "all but at most
//! `theta`". Classes are identified across levels by their restriction to
//! the walls of the level at half the smallest radius.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::complex::{CubeComplex, WallId};
use crate::error::{CubixError, Result};
use crate::families::TruncationSystem;
use crate::hyperplane::{closure_unchecked, find_facing_triple, inseparability_witness, separating_walls};

const CHAIN_CAP: usize = 250_000;

/// Outcome of the finite-scale UBS axioms for a wall set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UbsFlags {
    pub theta: usize,
    pub inseparable: bool,
    pub unidirectional: bool,
    pub facing_triple_free: bool,
    /// First wall found with more than `theta` members on both sides.
    pub bidirectional_wall: Option<WallId>,
    pub facing_triple: Option<(WallId, WallId, WallId)>,
    pub separator: Option<(WallId, WallId, WallId)>,
}

impl UbsFlags {
    pub fn passed(&self) -> bool {
        self.inseparable && self.unidirectional && self.facing_triple_free
    }

    fn failure(&self) -> Option<String> {
        if let Some((k, a, b)) = self.separator {
            return Some(format!("inseparable: wall {k} separates {a} and {b}"));
        }
        if let Some(w) = self.bidirectional_wall {
            return Some(format!("unidirectional: wall {w} has more than {} members on both sides", self.theta));
        }
        if let Some((a, b, c)) = self.facing_triple {
            return Some(format!("no facing triple: ({a}, {b}, {c})"));
        }
        None
    }
}

/// Members of `set` lying beyond `u` (away from the basepoint) and members
/// lying before it, ignoring walls that cross `u` and walls separating the
/// basepoint from the carrier of `u`.
fn side_counts(x: &CubeComplex, u: WallId, set: &BTreeSet<WallId>) -> (usize, usize) {
    let base = x.basepoint();
    let rep = x.carrier_rep(u);
    let (mut near, mut far) = (0, 0);
    for &v in set {
        if v == u || x.crosses_unchecked(u, v) {
            continue;
        }
        let between = rep.bit(v) != base.bit(v);
        let rv = x.carrier_rep(v);
        if rv.bit(u) != base.bit(u) {
            far += 1;
        } else if !between {
            near += 1;
        }
    }
    (near, far)
}

fn unidirectional_violation(x: &CubeComplex, set: &BTreeSet<WallId>, theta: usize) -> Option<WallId> {
    set.iter().copied().find(|&u| {
        let (near, far) = side_counts(x, u, set);
        near > theta && far > theta
    })
}

/// Checks the UBS axioms for `walls` at tolerance `theta`.
pub fn ubs_flags(x: &CubeComplex, walls: &[WallId], theta: usize) -> Result<UbsFlags> {
    if walls.is_empty() {
        return Err(CubixError::Empty("wall set".into()));
    }
    for &w in walls {
        x.check_wall(w)?;
    }
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    let list: Vec<WallId> = set.iter().copied().collect();
    let separator = inseparability_witness(x, &list);
    let bidirectional_wall = unidirectional_violation(x, &set, theta);
    let facing_triple = find_facing_triple(x, &list);
    Ok(UbsFlags {
        theta,
        inseparable: separator.is_none(),
        unidirectional: bidirectional_wall.is_none(),
        facing_triple_free: facing_triple.is_none(),
        bidirectional_wall,
        facing_triple,
        separator,
    })
}

/// Walls of `within` that separate the basepoint from the carrier of `b`.
fn before(x: &CubeComplex, b: WallId, within: Option<&BTreeSet<WallId>>) -> Vec<WallId> {
    let base = x.basepoint();
    let rep = x.carrier_rep(b);
    let mut out: Vec<WallId> = rep
        .difference(base)
        .into_iter()
        .filter(|&a| a != b && !x.crosses_unchecked(a, b))
        .filter(|a| within.is_none_or(|s| s.contains(a)))
        .collect();
    out.sort_unstable();
    out
}

/// Maximal nested chains of walls, ordered outward from the basepoint.
///
/// Returns the chains and whether enumeration stopped at the internal cap.
pub(crate) fn maximal_chains(x: &CubeComplex, within: Option<&BTreeSet<WallId>>) -> (Vec<Vec<WallId>>, bool) {
    let walls: Vec<WallId> = match within {
        Some(s) => s.iter().copied().collect(),
        None => (0..x.wall_count()).collect(),
    };
    let pos: HashMap<WallId, usize> = walls.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let preds: Vec<Vec<WallId>> = walls.iter().map(|&w| before(x, w, within)).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); walls.len()];
    let mut has_pred = vec![false; walls.len()];
    for (i, p) in preds.iter().enumerate() {
        let mut covered: BTreeSet<WallId> = BTreeSet::new();
        for c in p {
            covered.extend(preds[pos[c]].iter().copied());
        }
        for a in p {
            if !covered.contains(a) {
                succ[pos[a]].push(i);
                has_pred[i] = true;
            }
        }
    }
    let mut chains = Vec::new();
    let mut truncated = false;
    for s in (0..walls.len()).filter(|&i| !has_pred[i]) {
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if succ[node].is_empty() {
                chains.push(stack.iter().map(|&(n, _)| walls[n]).collect());
                if chains.len() >= CHAIN_CAP {
                    return (chains, true);
                }
                stack.pop();
                continue;
            }
            if *next < succ[node].len() {
                let child = succ[node][*next];
                *next += 1;
                stack.push((child, 0));
            } else {
                stack.pop();
            }
        }
        truncated |= chains.len() >= CHAIN_CAP;
    }
    (chains, truncated)
}

/// Number of members of `piece` that neither cross `u` nor lie between the
/// basepoint and `u`.
fn crossing_defect(x: &CubeComplex, u: WallId, piece: &BTreeSet<WallId>) -> usize {
    let base = x.basepoint();
    let rep = x.carrier_rep(u);
    piece
        .iter()
        .filter(|&&p| p != u && !x.crosses_unchecked(p, u) && rep.bit(p) == base.bit(p))
        .count()
}

/// `u` crosses some member of `piece` and misses at most `theta` of the
/// members not lying between the basepoint and `u`.
fn essentially_crosses(x: &CubeComplex, u: WallId, piece: &BTreeSet<WallId>, theta: usize) -> bool {
    piece.iter().any(|&p| x.crosses_unchecked(p, u)) && crossing_defect(x, u, piece) <= theta
}

/// Inseparable closure grown one wall at a time.
#[derive(Default)]
struct Closure {
    set: BTreeSet<WallId>,
    members: Vec<WallId>,
}

impl Closure {
    fn add(&mut self, x: &CubeComplex, w: WallId) {
        let mut queue = VecDeque::from([w]);
        while let Some(w) = queue.pop_front() {
            if !self.set.insert(w) {
                continue;
            }
            for &m in &self.members {
                for k in separating_walls(x, w, m) {
                    if !self.set.contains(&k) {
                        queue.push_back(k);
                    }
                }
            }
            self.members.push(w);
        }
    }
}

/// Decomposition `U = U_1 ⊔ … ⊔ U_k ⊔ defect` of a UBS.
///
/// `U_1` is a minimal piece; every member of a later piece crosses all but at
/// most `theta` members of each earlier piece.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub theta: usize,
    pub pieces: Vec<Vec<WallId>>,
    pub defect: Vec<WallId>,
    /// `dominance[j][i]` for `i < j`: least fraction of piece `i` crossed by
    /// a member of piece `j`.
    pub dominance: Vec<Vec<f64>>,
}

/// Decomposes a wall set that passes [`ubs_flags`].
pub fn minimal_decomposition(x: &CubeComplex, walls: &[WallId], theta: usize) -> Result<Decomposition> {
    let flags = ubs_flags(x, walls, theta)?;
    if let Some(msg) = flags.failure() {
        return Err(CubixError::AxiomFailure(msg));
    }
    let set: BTreeSet<WallId> = walls.iter().copied().collect();
    Ok(decompose_unchecked(x, set, theta))
}

pub(crate) fn decompose_unchecked(x: &CubeComplex, mut rest: BTreeSet<WallId>, theta: usize) -> Decomposition {
    let mut pieces: Vec<BTreeSet<WallId>> = Vec::new();
    let mut defect: BTreeSet<WallId> = BTreeSet::new();
    while !rest.is_empty() {
        let (chains, _) = maximal_chains(x, Some(&rest));
        let mut candidates: BTreeSet<BTreeSet<WallId>> = BTreeSet::new();
        for c in &chains {
            let mut grow = Closure::default();
            for &w in c {
                grow.add(x, w);
                candidates.insert(grow.set.intersection(&rest).copied().collect());
            }
        }
        // Score: essential crossers minus the walls the choice would discard.
        let mut best: Option<(i64, BTreeSet<WallId>, BTreeSet<WallId>)> = None;
        for p in candidates {
            let crossers: BTreeSet<WallId> =
                rest.difference(&p).copied().filter(|&u| essentially_crosses(x, u, &p, theta)).collect();
            let dropped = rest.len() - p.len() - crossers.len();
            let score = crossers.len() as i64 - dropped as i64;
            let better = match &best {
                None => true,
                Some((s, bp, _)) => {
                    score > *s || (score == *s && (std::cmp::Reverse(p.len()), &p) < (std::cmp::Reverse(bp.len()), bp))
                }
            };
            if better {
                best = Some((score, p, crossers));
            }
        }
        let Some((_, piece, crossers)) = best else { break };
        defect.extend(rest.iter().copied().filter(|w| !piece.contains(w) && !crossers.contains(w)));
        pieces.push(piece);
        if crossers.len() <= theta {
            defect.extend(crossers);
            break;
        }
        rest = crossers;
    }
    let dominance = (0..pieces.len())
        .map(|j| {
            (0..j)
                .map(|i| {
                    pieces[j]
                        .iter()
                        .map(|&h| {
                            let c = pieces[i].iter().filter(|&&u| x.crosses_unchecked(h, u)).count();
                            c as f64 / pieces[i].len() as f64
                        })
                        .fold(1.0, f64::min)
                })
                .collect()
        })
        .collect();
    Decomposition {
        theta,
        pieces: pieces.into_iter().map(|p| p.into_iter().collect()).collect(),
        defect: defect.into_iter().collect(),
        dominance,
    }
}

/// A 0-simplex: a class of minimal UBSs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryClass {
    pub id: usize,
    /// Global wall ids of the class among the core walls.
    pub signature: Vec<usize>,
    /// A minimal piece at the largest level, as wall ids of that level.
    pub representative: Vec<WallId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySimplex {
    pub id: usize,
    /// Ids of the classes spanning the simplex, ascending.
    pub vertices: Vec<usize>,
    /// Ids of the codimension-one faces.
    pub faces: Vec<usize>,
}

impl BoundarySimplex {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSummary {
    pub radius: usize,
    pub chains: usize,
    pub truncated: bool,
    pub classes: usize,
    pub simplices: usize,
    /// Cliques of three or more classes whose union failed the direct
    /// multi-piece check at this level; they are still emitted as simplices.
    pub unconfirmed: usize,
}

/// Witness that the boundary structure repeated over the last `window` radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub radii: Vec<usize>,
    pub theta: usize,
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComplexApprox {
    pub theta: usize,
    pub window: usize,
    pub classes: Vec<BoundaryClass>,
    pub simplices: Vec<BoundarySimplex>,
    /// `None` when the structure did not stabilise (reported as UNSTABLE).
    pub certificate: Option<Certificate>,
    pub levels: Vec<LevelSummary>,
    labels: Vec<String>,
}

type Signature = Vec<usize>;

struct LevelBoundary {
    summary: LevelSummary,
    reps: BTreeMap<Signature, Vec<WallId>>,
    simplices: BTreeSet<Vec<Signature>>,
}

/// One level handed to the assembler: its radius, complex, and the global
/// identity of each of its walls.
pub struct LevelInput<'a> {
    pub radius: usize,
    pub complex: &'a CubeComplex,
    pub global: Vec<usize>,
}

fn level_boundary(input: &LevelInput<'_>, first: &BTreeSet<usize>, theta: usize) -> LevelBoundary {
    let x = input.complex;
    let min_piece = (theta + 1).max(input.radius.div_ceil(4));
    let (chains, truncated) = maximal_chains(x, None);
    let mut seen: BTreeSet<Vec<WallId>> = BTreeSet::new();
    let mut pieces: BTreeSet<Vec<WallId>> = BTreeSet::new();
    for c in &chains {
        let p = closure_unchecked(x, c.iter().copied());
        if p.len() < min_piece {
            continue;
        }
        let key: Vec<WallId> = p.iter().copied().collect();
        if !seen.insert(key.clone()) {
            continue;
        }
        if unidirectional_violation(x, &p, theta).is_some() || (!totally_nested(x, &key) && find_facing_triple(x, &key).is_some()) {
            continue;
        }
        let crossing = key.iter().any(|&w| x.crossing_walls(w).iter().any(|v| p.contains(v)));
        if crossing {
            pieces.extend(decompose_unchecked(x, p, theta).pieces.into_iter().filter(|q| q.len() >= min_piece));
        } else {
            pieces.insert(key);
        }
    }
    let mut order: Vec<Vec<WallId>> = pieces.into_iter().collect();
    order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut reps: BTreeMap<Signature, Vec<WallId>> = BTreeMap::new();
    for piece in order {
        let sig = signature(&piece, &input.global, first);
        if reps.contains_key(&sig) {
            continue;
        }
        let absorbed = reps.keys().any(|r| sig.iter().all(|g| r.binary_search(g).is_ok()));
        if !absorbed && !sig.is_empty() {
            reps.insert(sig, piece);
        }
    }
    let sigs: Vec<Signature> = reps.keys().cloned().collect();
    let mut simplices: BTreeSet<Vec<Signature>> = sigs.iter().map(|s| vec![s.clone()]).collect();
    let mut frontier: Vec<Vec<usize>> = (0..sigs.len()).map(|i| vec![i]).collect();
    let mut unconfirmed = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let last = *s.last().expect("nonempty");
            for c in last + 1..sigs.len() {
                let mut cand = s.clone();
                cand.push(c);
                let faces_present = (0..cand.len()).all(|skip| {
                    let face: Vec<Signature> =
                        cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &j)| sigs[j].clone()).collect();
                    simplices.contains(&face)
                });
                if !faces_present {
                    continue;
                }
                let spans = spans_simplex(x, &cand, &sigs, &reps, theta);
                if cand.len() > 2 && !spans {
                    unconfirmed += 1;
                }
                if spans || cand.len() > 2 {
                    next.push(cand);
                }
            }
        }
        for s in &next {
            simplices.insert(s.iter().map(|&j| sigs[j].clone()).collect());
        }
        frontier = next;
    }
    LevelBoundary {
        summary: LevelSummary {
            radius: input.radius,
            chains: chains.len(),
            truncated,
            classes: reps.len(),
            simplices: simplices.len(),
            unconfirmed,
        },
        reps,
        simplices,
    }
}

/// Every non-crossing pair is ordered outward from the basepoint, which
/// rules out facing triples.
fn totally_nested(x: &CubeComplex, walls: &[WallId]) -> bool {
    let base = x.basepoint();
    walls.iter().enumerate().all(|(i, &a)| {
        walls[i + 1..].iter().all(|&b| {
            x.crosses_unchecked(a, b)
                || x.carrier_rep(b).bit(a) != base.bit(a)
                || x.carrier_rep(a).bit(b) != base.bit(b)
        })
    })
}

fn signature(piece: &[WallId], global: &[usize], first: &BTreeSet<usize>) -> Signature {
    let mut s: Vec<usize> = piece.iter().map(|&w| global[w]).filter(|g| first.contains(g)).collect();
    s.sort_unstable();
    s
}

/// Whether the union of the representatives of `cand` is a UBS whose
/// decomposition has one piece per class.
fn spans_simplex(
    x: &CubeComplex,
    cand: &[usize],
    sigs: &[Signature],
    reps: &BTreeMap<Signature, Vec<WallId>>,
    theta: usize,
) -> bool {
    let members: Vec<&Vec<WallId>> = cand.iter().map(|&j| &reps[&sigs[j]]).collect();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let touch = members[a].iter().any(|&u| members[b].iter().any(|&v| x.crosses_unchecked(u, v)));
            if !touch {
                return false;
            }
        }
    }
    let u = closure_unchecked(x, members.iter().flat_map(|m| m.iter().copied()));
    let list: Vec<WallId> = u.iter().copied().collect();
    if unidirectional_violation(x, &u, theta).is_some() || find_facing_triple(x, &list).is_some() {
        return false;
    }
    let d = decompose_unchecked(x, u, theta);
    if d.pieces.len() != cand.len() {
        return false;
    }
    let mut matched: BTreeSet<usize> = BTreeSet::new();
    for p in &d.pieces {
        let best = cand
            .iter()
            .copied()
            .max_by_key(|&j| (p.iter().filter(|w| reps[&sigs[j]].binary_search(w).is_ok()).count(), std::cmp::Reverse(j)))
            .expect("nonempty");
        let overlap = p.iter().filter(|w| reps[&sigs[best]].binary_search(w).is_ok()).count();
        if 2 * overlap < p.len().min(reps[&sigs[best]].len()) {
            return false;
        }
        matched.insert(best);
    }
    matched.len() == cand.len()
}

/// Approximates the simplicial boundary of a family from the given radii.
///
/// The structure must repeat over the last `window` radii to be certified.
pub fn boundary_complex(
    ts: &TruncationSystem,
    radii: &[usize],
    theta: usize,
    window: usize,
) -> Result<BoundaryComplexApprox> {
    let levels = radii.iter().map(|&r| ts.level(r)).collect::<Result<Vec<_>>>()?;
    let core_walls = ts.level(radii.first().copied().unwrap_or(0) / 2)?.complex.wall_count();
    let core: BTreeSet<usize> = (0..core_walls).collect();
    let inputs: Vec<LevelInput<'_>> = levels
        .iter()
        .map(|l| LevelInput { radius: l.radius, complex: &l.complex, global: (0..l.complex.wall_count()).collect() })
        .collect();
    assemble(&inputs, &core, theta, window)
}

/// Assembles the boundary from explicit levels, smallest radius first.
///
/// Classes are matched across levels by their members among the global
/// wall ids in `core`.
pub fn assemble(levels: &[LevelInput<'_>], core: &BTreeSet<usize>, theta: usize, window: usize) -> Result<BoundaryComplexApprox> {
    if levels.is_empty() {
        return Err(CubixError::Empty("radius list".into()));
    }
    if window == 0 {
        return Err(CubixError::Precondition("stability window must be positive".into()));
    }
    if levels.windows(2).any(|w| w[0].radius >= w[1].radius) {
        return Err(CubixError::Precondition("radii must be strictly increasing".into()));
    }
    let per: Vec<LevelBoundary> = levels.iter().map(|l| level_boundary(l, core, theta)).collect();
    let top = per.last().expect("nonempty");
    let stable = per.len() >= window && {
        let tail = &per[per.len() - window..];
        tail.iter().all(|l| {
            l.reps.keys().eq(top.reps.keys()) && l.simplices == top.simplices && !l.summary.truncated
        })
    };
    let certificate = stable.then(|| Certificate {
        radii: levels[levels.len() - window..].iter().map(|l| l.radius).collect(),
        theta,
        window,
    });
    let ids: BTreeMap<&Signature, usize> = top.reps.keys().enumerate().map(|(i, s)| (s, i)).collect();
    let classes = top
        .reps
        .iter()
        .enumerate()
        .map(|(id, (s, r))| BoundaryClass { id, signature: s.clone(), representative: r.clone() })
        .collect();
    let mut verts: Vec<Vec<usize>> =
        top.simplices.iter().map(|s| s.iter().map(|g| ids[g]).collect::<Vec<usize>>()).collect();
    for v in &mut verts {
        v.sort_unstable();
    }
    verts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Vec<usize>, usize> = verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let simplices = verts
        .iter()
        .enumerate()
        .map(|(id, v)| {
            let faces = if v.len() < 2 {
                Vec::new()
            } else {
                let mut f: Vec<usize> = (0..v.len())
                    .map(|skip| {
                        let face: Vec<usize> =
                            v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &j)| j).collect();
                        index[&face]
                    })
                    .collect();
                f.sort_unstable();
                f
            };
            BoundarySimplex { id, vertices: v.clone(), faces }
        })
        .collect();
    let top_x = levels.last().expect("nonempty").complex;
    Ok(BoundaryComplexApprox {
        theta,
        window,
        classes,
        simplices,
        certificate,
        levels: per.into_iter().map(|l| l.summary).collect(),
        labels: top_x.labels().to_vec(),
    })
}

impl BoundaryComplexApprox {
    /// The boundary of a complex without walls, certified trivially.
    pub fn empty(theta: usize, window: usize, radii: &[usize]) -> Self {
        BoundaryComplexApprox {
            theta,
            window,
            classes: Vec::new(),
            simplices: Vec::new(),
            certificate: Some(Certificate { radii: radii.to_vec(), theta, window }),
            levels: radii
                .iter()
                .map(|&radius| LevelSummary { radius, chains: 0, truncated: false, classes: 0, simplices: 0, unconfirmed: 0 })
                .collect(),
            labels: Vec::new(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    /// Largest simplex dimension, `None` for an empty boundary.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(BoundarySimplex::dimension).max()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.len()
    }

    pub fn simplex(&self, id: usize) -> Result<&BoundarySimplex> {
        self.simplices.get(id).ok_or(CubixError::UnknownSimplex(id))
    }

    /// Id of the simplex spanned by `vertices`, if present.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.simplices.iter().position(|s| s.vertices == v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.vertices.len() == 2).map(|s| (s.vertices[0], s.vertices[1])).collect()
    }

    fn skeleton(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.classes.len()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn skeleton_bfs(&self, adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; adj.len()];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if d[v].is_none() {
                    d[v] = Some(d[u].expect("visited") + 1);
                    q.push_back(v);
                }
            }
        }
        d
    }

    /// Connected components of the 1-skeleton.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.skeleton();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> =
                self.skeleton_bfs(&adj, s).iter().enumerate().filter_map(|(i, d)| d.map(|_| i)).collect();
            for &i in &comp {
                seen[i] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Diameter of the 1-skeleton; infinite when disconnected.
    pub fn skeleton_diameter(&self) -> Result<crate::Dist> {
        if self.classes.is_empty() {
            return Err(CubixError::Empty("boundary".into()));
        }
        let adj = self.skeleton();
        let mut best = 0;
        for s in 0..adj.len() {
            for d in self.skeleton_bfs(&adj, s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Ok(crate::Dist::Infinite),
                }
            }
        }
        Ok(crate::Dist::Finite(best))
    }

    /// Every clique of the 1-skeleton spans a simplex.
    pub fn is_flag(&self) -> bool {
        let adj = self.skeleton();
        let present: BTreeSet<&Vec<usize>> = self.simplices.iter().map(|s| &s.vertices).collect();
        let mut stack: Vec<Vec<usize>> = (0..adj.len()).map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            if !present.contains(&c) {
                return false;
            }
            let last = *c.last().expect("nonempty");
            for v in last + 1..adj.len() {
                if c.iter().all(|u| adj[*u].contains(&v)) {
                    let mut n = c.clone();
                    n.push(v);
                    stack.push(n);
                }
            }
        }
        true
    }

    /// Least `n` such that simplices `u = s_0, …, s_n = v` exist with
    /// consecutive ones sharing a vertex.
    pub fn eta_distance(&self, u: usize, v: usize) -> Result<crate::Dist> {
        self.simplex(u)?;
        self.simplex(v)?;
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.classes.len()];
        for s in &self.simplices {
            for &c in &s.vertices {
                by_vertex[c].push(s.id);
            }
        }
        let mut d = vec![usize::MAX; self.simplices.len()];
        d[u] = 0;
        let mut q = VecDeque::from([u]);
        while let Some(s) = q.pop_front() {
            if s == v {
                return Ok(crate::Dist::Finite(d[s]));
            }
            for &c in &self.simplices[s].vertices {
                for &t in &by_vertex[c] {
                    if d[t] == usize::MAX {
                        d[t] = d[s] + 1;
                        q.push_back(t);
                    }
                }
            }
        }
        Ok(crate::Dist::Infinite)
    }

    /// Eta distance between the 0-simplices of two classes.
    pub fn eta_between_classes(&self, a: usize, b: usize) -> Result<crate::Dist> {
        let sa = self.find(&[a]).ok_or(CubixError::UnknownSimplex(a))?;
        let sb = self.find(&[b]).ok_or(CubixError::UnknownSimplex(b))?;
        self.eta_distance(sa, sb)
    }

    /// Class whose representative shares the most walls with `walls`
    /// (wall ids of the largest level).
    pub fn class_of(&self, walls: &[WallId]) -> Option<usize> {
        self.classes
            .iter()
            .map(|c| (walls.iter().filter(|w| c.representative.binary_search(w).is_ok()).count(), c.id))
            .filter(|&(n, _)| n > 0)
            .max_by_key(|&(n, id)| (n, std::cmp::Reverse(id)))
            .map(|(_, id)| id)
    }

    /// Short label list for a class, at most `limit` walls.
    pub fn class_sample(&self, id: usize, limit: usize) -> Vec<String> {
        self.classes[id].representative.iter().take(limit).map(|&w| self.labels[w].clone()).collect()
    }

    /// Line-oriented `key: value` records, one block per simplex.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        let cert = if self.certificate.is_some() { "PRESENT" } else { "UNSTABLE" };
        let _ = writeln!(out, "certificate: {cert}");
        let radii: Vec<String> = self.levels.iter().map(|l| l.radius.to_string()).collect();
        let _ = writeln!(out, "radii: {}", radii.join(","));
        let _ = writeln!(out, "theta: {}", self.theta);
        let _ = writeln!(out, "window: {}", self.window);
        let dim = self.dimension().map_or("empty".to_string(), |d| d.to_string());
        let _ = writeln!(out, "dimension: {dim}");
        for s in &self.simplices {
            let _ = writeln!(out);
            let _ = writeln!(out, "simplex: {}", s.id);
            let _ = writeln!(out, "dimension: {}", s.dimension());
            let _ = writeln!(out, "vertices: {}", join(&s.vertices));
            let _ = writeln!(out, "faces: {}", join(&s.faces));
            if s.vertices.len() == 1 {
                let _ = writeln!(out, "sample: {}", self.class_sample(s.vertices[0], 6).join(","));
            }
        }
        out
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_family, FamilySpec};

    fn walls(x: &CubeComplex, names: &[&str]) -> Vec<WallId> {
        names.iter().map(|n| x.wall_by_label(n).unwrap_or_else(|| panic!("no wall {n}"))).collect()
    }

    fn family_walls(x: &CubeComplex, prefix: &str, range: std::ops::Range<i64>) -> Vec<WallId> {
        range.filter_map(|k| x.wall_by_label(&format!("{prefix}{k}"))).collect()
    }

    #[test]
    fn flags_on_flat() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let l = ts.level(6).unwrap();
        let x = &l.complex;
        let right = family_walls(x, "V", 0..6);
        assert!(ubs_flags(x, &right, 2).unwrap().passed());
        let mut both = right.clone();
        both.extend(family_walls(x, "V", -6..0));
        let f = ubs_flags(x, &both, 2).unwrap();
        assert!(f.inseparable && !f.unidirectional);
        let err = minimal_decomposition(x, &both, 2).unwrap_err();
        assert!(matches!(err, CubixError::AxiomFailure(m) if m.starts_with("unidirectional")));
        let gap = walls(x, &["V0", "V2"]);
        assert!(!ubs_flags(x, &gap, 2).unwrap().inseparable);
    }

    #[test]
    fn facing_triple_in_star() {
        let x = crate::complex::shapes::star(3);
        let f = ubs_flags(&x, &[0, 1, 2], 2).unwrap();
        assert!(!f.facing_triple_free);
    }

    #[test]
    fn eighth_flat_decomposes_verticals_first() {
        let ts = make_family(FamilySpec::EighthFlat { f: vec![1, 2] }).unwrap();
        let l = ts.level(10).unwrap();
        let x = &l.complex;
        let all: Vec<WallId> = (0..x.wall_count()).collect();
        let d = minimal_decomposition(x, &all, 2).unwrap();
        assert_eq!(d.pieces.len(), 2);
        let v: Vec<WallId> = family_walls(x, "V", 0..10);
        let h: Vec<WallId> = family_walls(x, "H", 0..10);
        let mut p0 = d.pieces[0].clone();
        p0.sort_unstable();
        assert_eq!(p0, v);
        assert!(d.pieces[1].len() + d.defect.len() == h.len());
        assert!(d.pieces[1].iter().all(|w| h.contains(w)));
        assert!(d.dominance[1][0] > 0.0);
    }

    #[test]
    fn quadrant_ties_break_towards_verticals() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let l = ts.level(6).unwrap();
        let x = &l.complex;
        let mut u = family_walls(x, "V", 0..6);
        u.extend(family_walls(x, "H", 0..6));
        let d = minimal_decomposition(x, &u, 2).unwrap();
        assert_eq!(d.pieces, vec![family_walls(x, "V", 0..6), family_walls(x, "H", 0..6)]);
        assert!(d.defect.is_empty());
        assert_eq!(d.dominance[1][0], 1.0);
    }

    #[test]
    fn flat_boundary_is_a_square() {
        let ts = make_family(FamilySpec::Flat).unwrap();
        let b = boundary_complex(&ts, &[4, 6, 8], 2, 3).unwrap();
        assert!(b.is_certified());
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.edges().len(), 4);
        assert_eq!(b.dimension(), Some(1));
        assert!(b.is_flag());
        assert_eq!(b.skeleton_diameter().unwrap(), crate::Dist::Finite(2));
        let plus = b.class_of(&family_walls(&ts.level(8).unwrap().complex, "V", 0..8)).unwrap();
        let minus = b.class_of(&family_walls(&ts.level(8).unwrap().complex, "V", -8..0)).unwrap();
        assert_eq!(b.eta_between_classes(plus, minus).unwrap(), crate::Dist::Finite(3));
        let rec = b.to_records();
        assert!(rec.starts_with("certificate: PRESENT\n"));
        assert_eq!(rec.matches("simplex: ").count(), 8);
    }

    #[test]
    fn tree_boundary_is_discrete() {
        let ts = make_family(FamilySpec::Tree { degree: 3, branching: None }).unwrap();
        let b = boundary_complex(&ts, &[4, 6, 8], 2, 3).unwrap();
        assert!(b.is_certified());
        assert_eq!(b.dimension(), Some(0));
        assert_eq!(b.components().len(), 6);
        assert_eq!(b.skeleton_diameter().unwrap(), crate::Dist::Infinite);
        assert!(b.simplex(99).is_err());
    }

    #[test]
    fn unstable_without_enough_levels() {
        let ts = make_family(FamilySpec::Orthant { dim: 2 }).unwrap();
        let b = boundary_complex(&ts, &[4, 6], 2, 3).unwrap();
        assert!(!b.is_certified());
        assert!(b.to_records().starts_with("certificate: UNSTABLE"));
        assert!(boundary_complex(&ts, &[6, 4], 2, 1).is_err());
    }
}
