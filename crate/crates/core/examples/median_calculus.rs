//! Building complexes, validating them, and computing medians, hulls and gates.

use cubix::complex::{dual_complex, shapes, validate};
use cubix::hyperplane::{convex_hull, crosses, gate, median, ConvexSubcomplex};
use cubix::{io, CubeComplex, Vertex};

fn main() -> cubix::Result<()> {
    // A 2x3 grid from explicit vertices.
    let x = shapes::grid(2, 3);
    println!("grid: {} vertices, {} edges, {} walls", x.vertex_count(), x.edge_count(), x.wall_count());

    // Vertex sets that fail the median-graph axioms are reported with a witness.
    let bad = ["000", "100", "110", "101", "011"].map(|s| Vertex::from_bitstring(s).unwrap());
    print!("{}", validate(3, &bad));

    // The dual of a wallspace with two crossing walls and one nested wall.
    let ws = io::parse_wallspace("points a b c d\nwall h: a b\nwall v: a c\nwall t: d\n")?;
    let d = dual_complex(&ws)?;
    print!("{}", io::write_complex(&d));

    let v = |s: &str| Vertex::from_bitstring(s).unwrap();
    let sq = CubeComplex::from_bitstrings(&["000", "100", "010", "110", "001", "101"])?;
    println!("w0 crosses w1: {}", crosses(&sq, 0, 1)?);
    println!("m(100, 010, 001) = {}", median(&sq, &v("100"), &v("010"), &v("001"))?.to_bitstring(3));

    let hull = convex_hull(&sq, &[v("100"), v("010")])?;
    println!("hull of 100 and 010 has {} vertices", hull.len());
    println!("gate of 101 in that hull: {}", gate(&sq, &v("101"), &hull)?.to_bitstring(3));

    let carrier = ConvexSubcomplex::carrier(&sq, 2)?;
    println!("carrier of w2 has {} vertices", carrier.len());
    Ok(())
}
