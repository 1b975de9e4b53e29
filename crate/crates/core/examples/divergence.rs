//! Divergence of rays and completeness of orthants.

use cubix::geodesic::{completeness_check, divergence_profile};
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let flat = make_family(FamilySpec::Flat)?;
    let level = flat.level(16)?;
    let a = flat.ray_in("axis:+x", 8, &level)?;
    let b = flat.ray_in("axis:+y", 8, &level)?;
    let p = divergence_profile(&level.complex, &a, &b, 8)?;
    print!("{}", p.to_csv());
    println!("flat log-log slope: {:.2}", p.loglog_slope(1, 8).unwrap());

    let tree = make_family(FamilySpec::Tree { degree: 3, branching: None })?;
    let level = tree.level(6)?;
    let a = tree.ray_in("end:0", 6, &level)?;
    let b = tree.ray_in("end:1", 6, &level)?;
    let p = divergence_profile(&level.complex, &a, &b, 6)?;
    println!("tree: dive(3) = {}", p.values[3]);

    for (name, spec) in [("flat", FamilySpec::Flat), ("quarter-flat", FamilySpec::Orthant { dim: 2 })] {
        let ts = make_family(spec)?;
        let rep = completeness_check(&ts.level(8)?.complex, 3)?;
        println!("{name}: {} cubes checked, complete to depth 3: {}", rep.cubes_checked, rep.complete());
    }
    Ok(())
}
