//! Oracles and checks shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use cubix::boundary::{assemble, LevelInput};
use cubix::complex::{dual_complex, product, restriction_quotient, validate};
use cubix::hyperplane::{convex_hull, crosses, gate, inseparable_closure, median};
use cubix::{CubeComplex, Vertex, Wallspace};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wallspace on `n` points from bitmasks, one wall per distinct bipartition.
pub fn wallspace(n: usize, masks: &[u32]) -> Wallspace {
    let full = (1u32 << n) - 1;
    let mut seen = HashSet::new();
    let mut walls = Vec::new();
    for &m in masks {
        let m = m & full;
        if m == 0 || m == full {
            continue;
        }
        let key = if m & 1 == 1 { m } else { full ^ m };
        if seen.insert(key) {
            let side: BTreeSet<usize> = (0..n).filter(|p| m >> p & 1 == 1).collect();
            walls.push((format!("w{}", walls.len()), side));
        }
    }
    Wallspace::new((0..n).map(|p| format!("p{p}")).collect(), walls)
}

pub fn complex() -> impl Strategy<Value = CubeComplex> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(1u32..(1 << n) - 1, 1..=6)))
        .prop_map(|(n, masks)| dual_complex(&wallspace(n, &masks)).unwrap())
}

pub fn bfs(x: &CubeComplex, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; x.vertex_count()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for w in 0..x.wall_count() {
            if let Some(v) = x.vertex_id(&x.vertex(u).flip(w)) {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
    }
    d
}

/// Walls `i` and `j` cross when all four sign patterns occur.
pub fn cross_oracle(x: &CubeComplex, i: usize, j: usize) -> bool {
    let pats: HashSet<(bool, bool)> = x.vertices().iter().map(|v| (v.bit(i), v.bit(j))).collect();
    pats.len() == 4
}

/// Sides of `k` met by edges dual to `i`.
fn sides(x: &CubeComplex, k: usize, i: usize) -> BTreeSet<bool> {
    x.wall_edges(i)
        .iter()
        .flat_map(|&(a, b)| [x.vertex(a).bit(k), x.vertex(b).bit(k)])
        .collect()
}

fn closure_oracle(x: &CubeComplex, walls: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = walls.clone();
    loop {
        let extra = (0..x.wall_count()).find(|&k| {
            !set.contains(&k)
                && set.iter().any(|&i| {
                    set.iter().any(|&j| {
                        let (si, sj) = (sides(x, k, i), sides(x, k, j));
                        si.len() == 1 && sj.len() == 1 && si != sj
                    })
                })
        });
        match extra {
            Some(k) => {
                set.insert(k);
            }
            None => return set,
        }
    }
}

fn pick(x: &CubeComplex, seeds: &[usize]) -> Vec<Vertex> {
    seeds.iter().map(|s| x.vertex(s % x.vertex_count()).clone()).collect()
}

pub fn median_is_the_unique_interval_meet(x: &CubeComplex, s: &[usize]) -> Result<(), TestCaseError> {
    let v = pick(x, s);
    let m = median(x, &v[0], &v[1], &v[2]).unwrap();
    let ids: Vec<usize> = v.iter().map(|u| x.vertex_id(u).unwrap()).collect();
    let d: Vec<Vec<usize>> = ids.iter().map(|&i| bfs(x, i)).collect();
    let meets: Vec<usize> = (0..x.vertex_count())
        .filter(|&z| (0..3).all(|a| (a + 1..3).all(|b| d[a][z] + d[b][z] == d[a][ids[b]])))
        .collect();
    prop_assert_eq!(meets.len(), 1);
    prop_assert_eq!(x.vertex(meets[0]), &m);
    prop_assert_eq!(&m, &Vertex::majority(&v[0], &v[1], &v[2]));
    Ok(())
}

pub fn hull_is_the_least_halfspace_intersection(x: &CubeComplex, s: &[usize]) -> Result<(), TestCaseError> {
    let v = pick(x, s);
    let hull = convex_hull(x, &v).unwrap();
    let got: BTreeSet<usize> = hull.vertex_ids().iter().copied().collect();
    let fixed: Vec<(usize, bool)> = (0..x.wall_count())
        .filter(|&w| v.iter().all(|u| u.bit(w) == v[0].bit(w)))
        .map(|w| (w, v[0].bit(w)))
        .collect();
    let want: BTreeSet<usize> = (0..x.vertex_count())
        .filter(|&z| fixed.iter().all(|&(w, b)| x.vertex(z).bit(w) == b))
        .collect();
    prop_assert_eq!(&got, &want);
    for &a in &got {
        let da = bfs(x, a);
        for &b in &got {
            for z in 0..x.vertex_count() {
                if da[z] + bfs(x, z)[b] == da[b] {
                    prop_assert!(got.contains(&z));
                }
            }
        }
    }
    Ok(())
}

pub fn gate_is_the_unique_nearest_point(x: &CubeComplex, s: &[usize], t: usize) -> Result<(), TestCaseError> {
    let hull = convex_hull(x, &pick(x, s)).unwrap();
    let v = x.vertex(t % x.vertex_count()).clone();
    let g = gate(x, &v, &hull).unwrap();
    let d = bfs(x, x.vertex_id(&v).unwrap());
    let best = hull.vertex_ids().iter().map(|&y| d[y]).min().unwrap();
    let nearest: Vec<usize> = hull.vertex_ids().iter().copied().filter(|&y| d[y] == best).collect();
    prop_assert_eq!(nearest.len(), 1);
    let gid = x.vertex_id(&g).unwrap();
    prop_assert_eq!(nearest[0], gid);
    let dg = bfs(x, gid);
    for &y in hull.vertex_ids() {
        prop_assert_eq!(d[y], d[gid] + dg[y]);
    }
    Ok(())
}

pub fn inseparable_closure_laws(x: &CubeComplex, a: u32, b: u32) -> Result<(), TestCaseError> {
    let m = x.wall_count();
    let small: BTreeSet<usize> = (0..m).filter(|w| a >> w & 1 == 1).chain([0]).collect();
    let big: BTreeSet<usize> = small
        .iter()
        .copied()
        .chain((0..m).filter(|w| b >> w & 1 == 1))
        .collect();
    let cl = |s: &BTreeSet<usize>| inseparable_closure(x, &s.iter().copied().collect::<Vec<_>>()).unwrap();
    let c = cl(&small);
    prop_assert_eq!(&c, &closure_oracle(x, &small));
    prop_assert!(c.is_superset(&small));
    prop_assert_eq!(&cl(&c), &c);
    prop_assert!(cl(&big).is_superset(&c));
    Ok(())
}

pub fn restriction_quotient_preserves_crossing(x: &CubeComplex, a: u32) -> Result<(), TestCaseError> {
    let keep: Vec<usize> = (0..x.wall_count())
        .filter(|w| a >> w & 1 == 1)
        .chain([0])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (q, map) = restriction_quotient(x, &keep).unwrap();
    for &i in &keep {
        for &j in &keep {
            if i < j {
                let (qi, qj) = (map.get(i).unwrap(), map.get(j).unwrap());
                prop_assert_eq!(crosses(&q, qi, qj).unwrap(), cross_oracle(x, i, j));
            }
        }
    }
    Ok(())
}

pub fn boundary_cliques_span_simplices(x: &CubeComplex, theta: usize) -> Result<(), TestCaseError> {
    let core: BTreeSet<usize> = (0..x.wall_count()).collect();
    let level = LevelInput {
        radius: 1,
        complex: x,
        global: core.iter().copied().collect(),
    };
    let b = assemble(&[level], &core, theta, 1).unwrap();
    let n = b.vertex_count();
    let edges: HashSet<(usize, usize)> = b.edges().into_iter().collect();
    for mask in 1u32..(1 << n.min(10)) {
        let c: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let clique = c.iter().all(|&i| c.iter().all(|&j| i >= j || edges.contains(&(i, j))));
        prop_assert_eq!(clique, b.find(&c).is_some(), "clique {:?}", c);
    }
    prop_assert!(b.is_flag());
    Ok(())
}

pub fn random_wallspace(rng: &mut ChaCha8Rng, points: usize, walls: usize) -> Wallspace {
    let n = rng.gen_range(3..=points);
    let k = rng.gen_range(1..=walls);
    let masks: Vec<u32> = (0..k).map(|_| rng.gen_range(1..(1u32 << n) - 1)).collect();
    wallspace(n, &masks)
}

/// Duals of 100 random wallspaces validate and survive a round trip.
pub fn dual_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let ws = random_wallspace(&mut rng, 10, 12);
        let x = dual_complex(&ws).unwrap();
        assert!(validate(x.wall_count(), x.vertices()).passed());
        let y = dual_complex(&x.to_wallspace()).unwrap();
        assert_eq!(x.vertex_count(), y.vertex_count());
        assert_eq!(x.edge_count(), y.edge_count());
        assert_eq!(x.flip_canonical_form(), y.flip_canonical_form());
    }
}

/// 100 random products split along a join and rebuild isomorphically.
pub fn products_are_detected_and_rebuilt() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let a = dual_complex(&random_wallspace(&mut rng, 5, 4)).unwrap();
        let b = dual_complex(&random_wallspace(&mut rng, 5, 4)).unwrap();
        let (p, _, _) = product(&a, &b).unwrap();
        let (u, v) = cubix::graphs::detect_join(&p).expect("product has a join");
        assert_eq!(u.len() + v.len(), p.wall_count());
        for &i in &u {
            for &j in &v {
                assert!(cross_oracle(&p, i, j));
            }
        }
        let rec = cubix::graphs::reconstruct_product(&p, &u, &v).unwrap();
        assert!(rec.iso_verified);
        assert_eq!(rec.first.vertex_count() * rec.second.vertex_count(), p.vertex_count());
    }
}

/// Runs every randomised invariant with `cases` cases from a fixed seed and
/// returns the name and outcome of each.
pub fn run_invariants(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let runner = || {
        TestRunner::new_with_rng(
            Config { failure_persistence: None, ..Config::with_cases(cases) },
            TestRng::deterministic_rng(RngAlgorithm::ChaCha),
        )
    };
    vec![
        (
            "median_is_the_unique_interval_meet",
            runner()
                .run(&(complex(), prop::collection::vec(any::<usize>(), 3)), |(x, s)| {
                    median_is_the_unique_interval_meet(&x, &s)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "hull_is_the_least_halfspace_intersection",
            runner()
                .run(&(complex(), prop::collection::vec(any::<usize>(), 1..4)), |(x, s)| {
                    hull_is_the_least_halfspace_intersection(&x, &s)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "gate_is_the_unique_nearest_point",
            runner()
                .run(
                    &(complex(), prop::collection::vec(any::<usize>(), 1..4), any::<usize>()),
                    |(x, s, t)| gate_is_the_unique_nearest_point(&x, &s, t),
                )
                .map_err(|e| e.to_string()),
        ),
        (
            "inseparable_closure_laws",
            runner()
                .run(&(complex(), any::<u32>(), any::<u32>()), |(x, a, b)| {
                    inseparable_closure_laws(&x, a, b)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "restriction_quotient_preserves_crossing",
            runner()
                .run(&(complex(), any::<u32>()), |(x, a)| {
                    restriction_quotient_preserves_crossing(&x, a)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "boundary_cliques_span_simplices",
            runner()
                .run(&(complex(), 0usize..2), |(x, theta)| {
                    boundary_cliques_span_simplices(&x, theta)
                })
                .map_err(|e| e.to_string()),
        ),
    ]
}
