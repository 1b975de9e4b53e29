//! Checking the axioms of an unidirectional boundary set and splitting it
//! into minimal pieces.

use cubix::boundary::{minimal_decomposition, ubs_flags};
use cubix::witness::visibility_report;
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let ts = make_family(FamilySpec::EighthFlat { f: vec![1, 2] })?;
    let x = &ts.level(12)?.complex;
    let all: Vec<usize> = (0..x.wall_count()).collect();

    let flags = ubs_flags(x, &all, 2)?;
    println!("all walls: passes {} ({flags:?})", flags.passed());

    let d = minimal_decomposition(x, &all, 2)?;
    for (i, piece) in d.pieces.iter().enumerate() {
        let names: Vec<&str> = piece.iter().take(5).map(|&w| x.label(w)).collect();
        println!("piece {i}: {} walls, starting {}", piece.len(), names.join(","));
    }
    println!("defect: {} walls, dominance {:?}", d.defect.len(), d.dominance);

    for (name, prefix) in [("horizontal", "H"), ("vertical", "V")] {
        let walls: Vec<usize> = all.iter().copied().filter(|&w| x.label(w).starts_with(prefix)).collect();
        let rep = visibility_report(x, &walls, 2)?;
        println!("{name} walls: {}", rep.verdict);
    }

    // A tree branches in every direction, so its walls are not unidirectional.
    let tree = make_family(FamilySpec::Tree { degree: 3, branching: None })?;
    let t = &tree.level(3)?.complex;
    match minimal_decomposition(t, &(0..t.wall_count()).collect::<Vec<_>>(), 0) {
        Ok(d) => println!("tree decomposes into {} pieces", d.pieces.len()),
        Err(e) => println!("tree: {e}"),
    }
    Ok(())
}
