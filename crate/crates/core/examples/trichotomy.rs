//! Measurements separating the three behaviours of a geodesic ray.

use cubix::graphs::contact_graph;
use cubix::witness::trichotomy_report;
use cubix::{make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let cases = [
        ("tree", FamilySpec::Tree { degree: 3, branching: None }, "end:0"),
        ("flat", FamilySpec::Flat, "diagonal"),
        ("strip", FamilySpec::Strip { height: 2 }, "axis:+x"),
    ];
    for (name, spec, ray) in cases {
        let ts = make_family(spec)?;
        let g = ts.canonical_ray(ray, 8)?;
        let x = &ts.level(8)?.complex;
        let rep = trichotomy_report(x, &g, &[0, 1, 2], 6)?;
        println!(
            "{name}: qi {:.2}, bipartite {}, dwell {:?}, labels {:?}",
            rep.qi_estimate,
            rep.bipartite,
            rep.dwell,
            rep.labels(g.len(), 6)
        );
        println!("  contact graph has {} vertices", contact_graph(x).len());
    }
    Ok(())
}
