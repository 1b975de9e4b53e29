//! Crossing and contact graphs, their diameters, and product structure.

use cubix::complex::{product, shapes};
use cubix::graphs::{
    contact_graph, crossing_graph, detect_join, diameter_chain_report, graph_diameter, pseudoproduct_layers,
    reconstruct_product,
};
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let spiral = make_family(FamilySpec::Spiral { stages: 3, offset: 1 })?;
    let x = &spiral.level(16)?.complex;
    println!("spiral3: crossing diameter {}", graph_diameter(&crossing_graph(x))?);
    println!("spiral3: contact diameter {}", graph_diameter(&contact_graph(x))?);

    let flat = make_family(FamilySpec::Flat)?;
    let chain = diameter_chain_report(&flat.level(6)?.complex, Some(cubix::Dist::Finite(2)))?;
    println!(
        "flat: contact {} <= crossing {} <= boundary {:?}, violations {:?}",
        chain.diam_contact, chain.diam_crossing, chain.diam_boundary, chain.violations
    );

    // A tree times a path splits along the join of its crossing graph.
    let (p, _, _) = product(&shapes::star(3), &shapes::path(2))?;
    let (a, b) = detect_join(&p).expect("a product has a join");
    let rec = reconstruct_product(&p, &a, &b)?;
    println!(
        "factors with {} and {} vertices, isomorphism verified: {}",
        rec.first.vertex_count(),
        rec.second.vertex_count(),
        rec.iso_verified
    );

    // An eighth-flat peels into layers graded by distance from its bottom wall.
    let eighth = make_family(FamilySpec::EighthFlat { f: vec![1, 2] })?;
    let level = eighth.level(8)?;
    let h0 = level.complex.wall_by_label("H0").unwrap();
    let rep = pseudoproduct_layers(&level.complex, h0, 2)?;
    for l in &rep.layers {
        println!("layer: grade {} keeps {} walls, peels {}", l.top_grade, l.v1.len(), l.v2.len());
    }
    println!("terminal carrier is a product: {}", rep.carrier_is_product);
    Ok(())
}
