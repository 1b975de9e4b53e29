//! Golden-file tests for the command line. Set `CUBIX_BLESS=1` to rewrite
//! the expected outputs.

use std::fs;
use std::path::Path;

fn run(args: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cubix").chain(args.split_whitespace());
    let code = cubix::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn render(args: &str) -> String {
    let (code, out, err) = run(args);
    format!("$ cubix {args}\nexit: {code}\n--- stdout\n{out}--- stderr\n{err}")
}

const CASES: &[(&str, &str)] = &[
    ("validate_bad", "validate tests/fixtures/bad.complex"),
    ("validate_prism", "validate tests/fixtures/prism.complex"),
    ("dual_square", "dual tests/fixtures/square.wallspace"),
    ("hyperplanes_prism", "hyperplanes tests/fixtures/prism.complex"),
    ("graph_crossing", "graph --crossing tests/fixtures/prism.complex"),
    ("graph_contact_dot", "graph --contact --dot tests/fixtures/prism.complex"),
    ("diam_spiral", "diam --crossing tests/fixtures/spiral3.family --radius 16"),
    ("diam_contact_flat", "diam --contact tests/fixtures/flat.family --radius 4"),
    ("decompose_product", "decompose --product tests/fixtures/prism.complex"),
    ("decompose_irreducible", "decompose --product tests/fixtures/tree.family --radius 3"),
    ("decompose_pseudo", "decompose --pseudoproduct --base H0 -k 2 tests/fixtures/eighth.family --radius 8"),
    ("hull", "hull --vertices 100,010 tests/fixtures/prism.complex"),
    ("gate_carrier", "gate --vertex 001 --carrier w0 tests/fixtures/prism.complex"),
    ("gate_hull", "gate --vertex 101 --hull 000,010 tests/fixtures/prism.complex"),
    ("geodesic", "geodesic --from 001 --to 110 tests/fixtures/square.wallspace"),
    ("geodesic_missing_vertex", "geodesic --from 000 --to 111 tests/fixtures/prism.complex"),
    ("divergence_flat", "divergence --rayA axis:+x --rayB axis:+y --rmax 6 tests/fixtures/flat.family --radius 12"),
    ("divergence_csv", "divergence --rayA axis:+x --rayB axis:-x --rmax 4 --csv tests/fixtures/flat.family --radius 8"),
    ("trichotomy_tree", "trichotomy --ray end:0 --radius 6 tests/fixtures/tree.family"),
    ("trichotomy_flat", "trichotomy --ray diagonal --radius 6 tests/fixtures/flat.family"),
    ("boundary_flat", "boundary --radii 8,12,16 tests/fixtures/flat.family"),
    ("boundary_eighth", "boundary --radii 8,12,16 tests/fixtures/eighth.family"),
    ("eta_flat", "eta 0 3 tests/fixtures/flat.family"),
    ("eta_unknown", "eta 0 99 tests/fixtures/flat.family"),
    ("visibility_escaping", "visibility --walls H0,H1,H2,H3,H4,H5,H6,H7,H8,H9 tests/fixtures/eighth.family --radius 10"),
    ("visibility_visible", "visibility --walls V0,V1,V2,V3 tests/fixtures/eighth.family --radius 10"),
    ("completeness_flat", "completeness --depth 3 tests/fixtures/flat.family --radius 8"),
    ("completeness_prism", "completeness --depth 1 tests/fixtures/prism.complex"),
    ("witness_eighth", "witness --eighth-flat --ray top --h0 H0 --radius 8 tests/fixtures/eighth.family"),
    ("witness_eighth_tree", "witness --eighth-flat --ray end:0 --h0 0 --radius 6 tests/fixtures/tree.family"),
    ("witness_orthant", "witness --orthant --classes 0,1 tests/fixtures/quarter.family"),
    ("missing_file", "validate tests/fixtures/nonexistent.complex"),
    ("family_needs_radius", "diam --crossing tests/fixtures/flat.family"),
    ("bad_flag", "diam --sideways tests/fixtures/flat.family"),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("CUBIX_BLESS").is_some();
    let dir = Path::new("tests/golden");
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        let got = render(args);
        let path = dir.join(format!("{name}.out"));
        if bless {
            fs::create_dir_all(dir).unwrap();
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            mismatched.push(format!("{name}:\n{got}"));
        }
    }
    assert!(mismatched.is_empty(), "golden mismatches:\n{}", mismatched.join("\n"));
}

#[test]
fn every_subcommand_has_a_golden_case() {
    for sub in [
        "validate", "dual", "hyperplanes", "graph", "diam", "decompose", "hull", "gate", "geodesic", "divergence",
        "trichotomy", "boundary", "eta", "visibility", "completeness", "witness",
    ] {
        assert!(CASES.iter().any(|(_, a)| a.split_whitespace().next() == Some(sub)), "{sub}");
    }
}

#[test]
fn flat_boundary_is_a_certified_four_cycle() {
    let (code, out, _) = run("boundary --radii 8,12,16 tests/fixtures/flat.family");
    assert_eq!(code, 0);
    assert!(out.starts_with("certificate: PRESENT\n"));
    let blocks: Vec<&str> = out.split("\n\n").skip(1).collect();
    let verts = blocks.iter().filter(|b| b.contains("dimension: 0")).count();
    let edges: Vec<&str> = blocks.iter().filter(|b| b.contains("dimension: 1")).copied().collect();
    assert_eq!((verts, edges.len()), (4, 4));
    let mut degree = [0; 4];
    for e in edges {
        let line = e.lines().find(|l| l.starts_with("vertices: ")).unwrap();
        for v in line["vertices: ".len()..].split(',') {
            degree[v.parse::<usize>().unwrap()] += 1;
        }
    }
    assert_eq!(degree, [2; 4]);
}

#[test]
fn spiral_crossing_diameter_is_four() {
    assert_eq!(run("diam --crossing tests/fixtures/spiral3.family --radius 16"), (0, "4\n".into(), String::new()));
}

#[test]
fn bad_complex_reports_a_median_witness() {
    let (code, out, _) = run("validate tests/fixtures/bad.complex");
    assert_eq!(code, 1);
    let line = out.lines().find(|l| l.starts_with("median-closed")).unwrap();
    assert!(line.contains("FAIL (m(") && line.ends_with("absent)"), "{line}");
}

#[test]
fn exit_codes_follow_error_kind() {
    assert_eq!(run("validate tests/fixtures/nonexistent.complex").0, 2);
    assert_eq!(run("diam --sideways tests/fixtures/flat.family").0, 2);
    assert_eq!(run("eta 0 99 tests/fixtures/flat.family").0, 1);
    assert_eq!(run("--help").0, 0);
}

#[test]
fn output_is_deterministic() {
    for args in ["boundary --radii 8,12,16 tests/fixtures/eighth.family", "graph --contact --dot tests/fixtures/prism.complex"] {
        assert_eq!(run(args), run(args));
    }
}
