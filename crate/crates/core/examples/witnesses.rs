//! Explicit sectors, orthants and subcomplex boundaries.

use cubix::hyperplane::ConvexSubcomplex;
use cubix::witness::{boundary_of_subcomplex, eighth_flat_witness, orthant_witness, EighthFlatOutcome};
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let ts = make_family(FamilySpec::EighthFlat { f: vec![1, 2] })?;
    let level = ts.level(8)?;
    let ray = ts.ray_in("top", 8, &level)?;
    match eighth_flat_witness(&level.complex, &ray, ray.walls()[0])? {
        EighthFlatOutcome::Witness(w) => println!("sector: {} vertices, f = {:?}", w.vertices.len(), w.f),
        EighthFlatOutcome::Failure { reason, .. } => println!("no sector: {reason:?}"),
    }

    let quarter = make_family(FamilySpec::Orthant { dim: 3 })?;
    let x = &quarter.level(6)?.complex;
    let axis = |p: &str| (0..x.wall_count()).filter(|&w| x.label(w).starts_with(p)).collect::<Vec<_>>();
    let mut prefixes: Vec<String> = (0..x.wall_count()).map(|w| x.label(w)[..1].to_string()).collect();
    prefixes.sort();
    prefixes.dedup();
    let sets: Vec<Vec<usize>> = prefixes.iter().map(|p| axis(p)).collect();
    let o = orthant_witness(x, &sets)?;
    println!("orthant with side lengths {:?}, {} vertices", o.dims(), o.vertex_count);

    // The carrier of a vertical wall in the flat sees two of the four boundary points.
    let flat = make_family(FamilySpec::Flat)?;
    let sub = boundary_of_subcomplex(
        &flat,
        &[8, 12, 16],
        |l| ConvexSubcomplex::carrier(&l.complex, l.complex.wall_by_label("V0").unwrap()),
        2,
        3,
    )?;
    println!(
        "carrier boundary: {} classes mapped to {:?}, injective {}, dimension preserving {}",
        sub.sub.vertex_count(),
        sub.map,
        sub.injective,
        sub.dimension_preserving
    );
    Ok(())
}
