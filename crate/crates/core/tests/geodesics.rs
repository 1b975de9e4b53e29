use cubix::complex::shapes;
use cubix::geodesic::{fan_decompose, r_avoiding_distance};
use cubix::{Dist, Vertex};

/// Point (x, y) of a (2r)x(2r) grid centred at (r, r).
fn pt(r: usize, x: i64, y: i64) -> Vertex {
    let (x, y) = ((x + r as i64) as usize, (y + r as i64) as usize);
    Vertex::from_ones((0..x).chain(2 * r..2 * r + y))
}

#[test]
fn diamond_path_fans_into_two_pieces() {
    for r in 2..6usize {
        let g = shapes::grid(2 * r, 2 * r);
        let ri = r as i64;
        // Staircase along |x| + |y| = r through the upper half-plane.
        let mut path = vec![pt(r, ri, 0)];
        for k in 0..ri {
            path.push(pt(r, ri - k, k + 1));
            path.push(pt(r, ri - k - 1, k + 1));
        }
        for k in 0..ri {
            path.push(pt(r, -k - 1, ri - k));
            path.push(pt(r, -k - 1, ri - k - 1));
        }
        let o = pt(r, 0, 0);
        assert!(path.iter().all(|v| g.distance(&o, v) >= r));
        assert_eq!(path.len() - 1, 4 * r);
        let pieces = fan_decompose(&g, &path).unwrap();
        let lens: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
        assert_eq!(lens, [2 * r + 1, 2 * r - 1], "r = {r}");
        let d = r_avoiding_distance(&g, &o, &pt(r, ri, 0), &pt(r, -ri, 0), r).unwrap();
        assert_eq!(d, Dist::Finite(4 * r));
    }
}
