//! The finite-scale simplicial boundary of each built-in family.

use cubix::boundary::boundary_complex;
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let families = [
        ("flat", FamilySpec::Flat),
        ("quarter-flat", FamilySpec::Orthant { dim: 2 }),
        ("eighth-flat", FamilySpec::EighthFlat { f: vec![1, 2] }),
        ("diagonal quarter-flat", FamilySpec::DiagonalQuarterFlat { f1: vec![1, 2], f2: vec![1, 2] }),
        ("half-flat", FamilySpec::HalfFlat { diagonal: false, f1: vec![1, 2], f2: vec![1, 2] }),
        ("diagonal half-flat", FamilySpec::HalfFlat { diagonal: true, f1: vec![1, 2], f2: vec![1, 2] }),
        ("spiral", FamilySpec::Spiral { stages: 3, offset: 1 }),
    ];
    for (name, spec) in families {
        let ts = make_family(spec)?;
        let b = boundary_complex(&ts, &[8, 12, 16], 2, 3)?;
        println!(
            "{name}: {} classes, {} edges, diameter {}, certified {}",
            b.vertex_count(),
            b.edges().len(),
            b.skeleton_diameter()?,
            b.is_certified()
        );
        for c in &b.classes {
            println!("  class {}: {}", c.id, b.class_sample(c.id, 4).join(","));
        }
    }

    // The records format used by the command line.
    let flat = make_family(FamilySpec::Flat)?;
    print!("{}", boundary_complex(&flat, &[8, 12, 16], 2, 3)?.to_records());
    Ok(())
}
