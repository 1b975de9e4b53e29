//! The `cubix` command line.
//!
//! Exit codes: 0 on success, 1 when a mathematical precondition fails, 2 on
//! unreadable input or bad arguments.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::boundary::{boundary_complex, BoundaryComplexApprox};
use crate::complex::{dual_complex, validate, CubeComplex, Vertex, WallId};
use crate::error::{CubixError, Result};
use crate::families::TruncationSystem;
use crate::geodesic::{bfs_geodesic, completeness_check, divergence_profile, GeodesicPath};
use crate::graphs::{
    contact_graph, crossing_graph, detect_join, graph_diameter, pseudoproduct_layers, reconstruct_product,
};
use crate::hyperplane::{carrier_gate, convex_hull, gate};
use crate::witness::{eighth_flat_witness, orthant_witness, trichotomy_report, visibility_report, EighthFlatOutcome};
use crate::{io, make_family, FamilySpec};

#[derive(Parser, Debug)]
#[command(name = "cubix", version, about = "Combinatorial invariants of CAT(0) cube complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// A `.complex`, `.wallspace` or `.family` file.
    file: PathBuf,
    /// Level of a family to use.
    #[arg(long)]
    radius: Option<usize>,
}

#[derive(Args, Debug)]
struct Radii {
    #[arg(long, value_delimiter = ',', default_values_t = [8, 12, 16])]
    radii: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    theta: usize,
    #[arg(long, default_value_t = 3)]
    window: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the median-graph invariants of a vertex list.
    Validate { file: PathBuf },
    /// Dual cube complex of a wallspace.
    Dual { file: PathBuf },
    /// One line per hyperplane: carrier size and crossings.
    Hyperplanes(Input),
    /// Contact or crossing graph as an edge list or DOT.
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "crossing")]
        contact: bool,
        #[arg(long)]
        crossing: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Diameter of the contact or crossing graph.
    Diam {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "crossing")]
        contact: bool,
        #[arg(long)]
        crossing: bool,
    },
    /// Product or pseudoproduct decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "pseudoproduct")]
        product: bool,
        #[arg(long, requires = "base")]
        pseudoproduct: bool,
        #[arg(long)]
        base: Option<String>,
        #[arg(short, default_value_t = 3)]
        k: usize,
    },
    /// Convex hull of vertices given as bitstrings.
    Hull {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Gate of a vertex in a carrier or in the hull of vertices.
    Gate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
        #[arg(long, conflicts_with = "hull")]
        carrier: Option<String>,
        #[arg(long, value_delimiter = ',')]
        hull: Vec<String>,
    },
    /// A combinatorial geodesic between two vertices.
    Geodesic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// r-avoiding divergence of two rays from the basepoint.
    Divergence {
        #[command(flatten)]
        input: Input,
        #[arg(long = "rayA")]
        ray_a: String,
        #[arg(long = "rayB")]
        ray_b: String,
        #[arg(long)]
        rmax: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Contact-projection, bipartite and dwell measurements along a ray.
    Trichotomy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ray: String,
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2])]
        dwell: Vec<usize>,
        #[arg(long = "p-cap", default_value_t = 6)]
        p_cap: usize,
    },
    /// Finite-scale simplicial boundary of a family.
    Boundary {
        file: PathBuf,
        #[command(flatten)]
        radii: Radii,
    },
    /// Simplex-path distance between two boundary simplices.
    Eta {
        u: usize,
        v: usize,
        file: PathBuf,
        #[command(flatten)]
        radii: Radii,
    },
    /// Visibility of an inseparable wall set.
    Visibility {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        walls: Vec<String>,
        #[arg(long, default_value_t = 2)]
        threshold: usize,
    },
    /// Checks that every orthant at a maximal cube near the basepoint
    /// reaches the given depth.
    Completeness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: usize,
    },
    /// Eighth-flat sector or orthant witnesses.
    Witness {
        file: PathBuf,
        #[arg(long = "eighth-flat", conflicts_with = "orthant", requires_all = ["ray", "h0"])]
        eighth_flat: bool,
        #[arg(long, requires = "classes")]
        orthant: bool,
        #[arg(long)]
        ray: Option<String>,
        #[arg(long)]
        h0: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        classes: Vec<usize>,
        #[command(flatten)]
        radii: Radii,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    let result = execute(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

enum Loaded {
    Complex(CubeComplex),
    Family(TruncationSystem),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CubixError::Io(format!("{}: {e}", path.display())))
}

fn first_content_line(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("")
}

fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let head = first_content_line(&text);
    if head == "cubix-family v1" || head.starts_with("kind ") {
        return Ok(Loaded::Family(make_family(FamilySpec::parse(&text)?)?));
    }
    if head == io::WALLSPACE_MAGIC || head.starts_with("points") {
        return Ok(Loaded::Complex(dual_complex(&io::parse_wallspace(&text)?)?));
    }
    Ok(Loaded::Complex(io::parse_complex(&text)?))
}

fn load_family(path: &Path) -> Result<TruncationSystem> {
    match load(path)? {
        Loaded::Family(ts) => Ok(ts),
        Loaded::Complex(_) => Err(CubixError::Precondition("this command needs a family file".into())),
    }
}

/// The complex itself, or the requested level of a family.
fn load_complex(input: &Input) -> Result<(CubeComplex, Option<TruncationSystem>)> {
    match load(&input.file)? {
        Loaded::Complex(x) => Ok((x, None)),
        Loaded::Family(ts) => {
            let r = input
                .radius
                .ok_or_else(|| CubixError::Precondition("family input needs --radius".into()))?;
            let x = ts.level(r)?.complex.clone();
            Ok((x, Some(ts)))
        }
    }
}

fn wall(x: &CubeComplex, name: &str) -> Result<WallId> {
    if let Some(w) = x.wall_by_label(name) {
        return Ok(w);
    }
    let i: usize = name
        .parse()
        .map_err(|_| CubixError::InvalidWall { wall: name.into(), reason: "no such label".into() })?;
    x.check_wall(i)?;
    Ok(i)
}

fn vertex(x: &CubeComplex, bits: &str) -> Result<Vertex> {
    if bits.len() != x.wall_count() {
        return Err(CubixError::LengthMismatch { expected: x.wall_count(), got: bits.len() });
    }
    let v = Vertex::from_bitstring(bits).ok_or_else(|| CubixError::UnknownVertex(bits.into()))?;
    x.check_vertex(&v)?;
    Ok(v)
}

fn bits(x: &CubeComplex, v: &Vertex) -> String {
    v.to_bitstring(x.wall_count())
}

fn labels(x: &CubeComplex, walls: &[WallId]) -> String {
    walls.iter().map(|&w| x.label(w)).collect::<Vec<_>>().join(",")
}

/// A named ray of a family, or a file of vertex bitstrings.
fn ray(x: &CubeComplex, ts: Option<&TruncationSystem>, spec: &str, len: usize, radius: usize) -> Result<GeodesicPath> {
    if let Some(ts) = ts {
        if !Path::new(spec).exists() {
            let level = ts.level(radius)?;
            return ts.ray_in(spec, len, &level);
        }
    }
    let text = read(Path::new(spec))?;
    let vs = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| vertex(x, l))
        .collect::<Result<Vec<_>>>()?;
    GeodesicPath::new(x, vs)
}

fn graph_of(x: &CubeComplex, contact: bool, crossing: bool) -> Result<crate::HypGraph> {
    match (contact, crossing) {
        (true, false) => Ok(contact_graph(x)),
        (false, true) => Ok(crossing_graph(x)),
        _ => Err(CubixError::Precondition("choose one of --contact or --crossing".into())),
    }
}

fn boundary(file: &Path, r: &Radii) -> Result<(TruncationSystem, BoundaryComplexApprox)> {
    let ts = load_family(file)?;
    let b = boundary_complex(&ts, &r.radii, r.theta, r.window)?;
    Ok((ts, b))
}

fn execute(cmd: Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Validate { file } => {
            let (m, verts) = io::parse_complex_raw(&read(&file)?)?;
            let report = validate(m, &verts);
            out.push_str(&report.to_string());
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Dual { file } => {
            let text = read(&file)?;
            let x = dual_complex(&io::parse_wallspace(&text)?)?;
            out.push_str(&io::write_complex(&x));
        }
        Command::Hyperplanes(input) => {
            let (x, _) = load_complex(&input)?;
            for w in 0..x.wall_count() {
                let _ = writeln!(
                    out,
                    "{}\tcarrier={}\tcrosses={}",
                    x.label(w),
                    x.carrier(w).len(),
                    labels(&x, x.crossing_walls(w))
                );
            }
        }
        Command::Graph { input, contact, crossing, dot } => {
            let (x, _) = load_complex(&input)?;
            let g = graph_of(&x, contact, crossing)?;
            if dot {
                out.push_str(&g.to_dot(&x));
            } else {
                for &a in g.vertices() {
                    for b in g.neighbors(a) {
                        if a < b {
                            let _ = writeln!(out, "{} {}", x.label(a), x.label(b));
                        }
                    }
                }
            }
        }
        Command::Diam { input, contact, crossing } => {
            let (x, _) = load_complex(&input)?;
            let _ = writeln!(out, "{}", graph_diameter(&graph_of(&x, contact, crossing)?)?);
        }
        Command::Decompose { input, product, pseudoproduct, base, k } => {
            let (x, _) = load_complex(&input)?;
            if product {
                let Some((a, b)) = detect_join(&x) else {
                    out.push_str("irreducible\n");
                    return Ok(0);
                };
                let rec = reconstruct_product(&x, &a, &b)?;
                let _ = writeln!(out, "factor1\t{}\t{} vertices", labels(&x, &a), rec.first.vertex_count());
                let _ = writeln!(out, "factor2\t{}\t{} vertices", labels(&x, &b), rec.second.vertex_count());
                let _ = writeln!(out, "isomorphism\t{}", if rec.iso_verified { "verified" } else { "FAILED" });
                return Ok(if rec.iso_verified { 0 } else { 1 });
            }
            if !pseudoproduct {
                return Err(CubixError::Precondition("choose one of --product or --pseudoproduct".into()));
            }
            let h0 = wall(&x, base.as_deref().unwrap_or_default())?;
            let rep = pseudoproduct_layers(&x, h0, k)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            for (i, l) in rep.layers.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "layer {}\tgrade={}\tV1={}\tV2={}\tconvex={}\tlarge={}\thull={}\tcrosses={}",
                    i + 1,
                    l.top_grade,
                    l.v1.len(),
                    labels(&x, &l.v2),
                    yn(l.convex_embedding),
                    yn(l.v2_large),
                    yn(l.hull_full),
                    yn(l.v2_crosses_v1)
                );
            }
            let _ = writeln!(out, "carrier\t{}\tproduct={}", labels(&x, &rep.carrier_walls), yn(rep.carrier_is_product));
            let _ = writeln!(out, "depth\t{}", rep.depth());
            return Ok(if rep.passed() { 0 } else { 1 });
        }
        Command::Hull { input, vertices } => {
            let (x, _) = load_complex(&input)?;
            let vs = vertices.iter().map(|s| vertex(&x, s)).collect::<Result<Vec<_>>>()?;
            let h = convex_hull(&x, &vs)?;
            let mut rows: Vec<String> = h.vertices(&x).map(|v| bits(&x, v)).collect();
            rows.sort();
            for r in rows {
                let _ = writeln!(out, "{r}");
            }
        }
        Command::Gate { input, vertex: v, carrier, hull } => {
            let (x, _) = load_complex(&input)?;
            let v = vertex(&x, &v)?;
            let g = match carrier {
                Some(c) => carrier_gate(&x, &v, wall(&x, &c)?),
                None if !hull.is_empty() => {
                    let vs = hull.iter().map(|s| vertex(&x, s)).collect::<Result<Vec<_>>>()?;
                    gate(&x, &v, &convex_hull(&x, &vs)?)?
                }
                None => return Err(CubixError::Precondition("choose one of --carrier or --hull".into())),
            };
            let _ = writeln!(out, "{}", bits(&x, &g));
        }
        Command::Geodesic { input, from, to } => {
            let (x, _) = load_complex(&input)?;
            let p = bfs_geodesic(&x, &vertex(&x, &from)?, &vertex(&x, &to)?)?;
            for s in p.to_bitstrings(x.wall_count()) {
                let _ = writeln!(out, "{s}");
            }
        }
        Command::Divergence { input, ray_a, ray_b, rmax, csv } => {
            let (x, ts) = load_complex(&input)?;
            let r = input.radius.unwrap_or(rmax);
            let g1 = ray(&x, ts.as_ref(), &ray_a, rmax, r)?;
            let g2 = ray(&x, ts.as_ref(), &ray_b, rmax, r)?;
            let p = divergence_profile(&x, &g1, &g2, rmax)?;
            if csv {
                out.push_str(&p.to_csv());
            } else {
                for (r, d) in p.values.iter().enumerate() {
                    let _ = writeln!(out, "{r}\t{d}");
                }
                if let Some(s) = p.loglog_slope(1, rmax) {
                    let _ = writeln!(out, "slope\t{s:.3}");
                }
            }
        }
        Command::Trichotomy { input, ray: name, dwell, p_cap } => {
            let (x, ts) = load_complex(&input)?;
            let len = input.radius.unwrap_or(0);
            let g = ray(&x, ts.as_ref(), &name, len, len)?;
            let rep = trichotomy_report(&x, &g, &dwell, p_cap)?;
            let _ = writeln!(out, "qi_estimate\t{:.3}", rep.qi_estimate);
            let _ = writeln!(out, "bipartite\t{}{}", rep.bipartite, if rep.bipartite_exact { "" } else { " (lower bound)" });
            for (r, d) in &rep.dwell {
                let _ = writeln!(out, "dwell R={r}\t{d}");
            }
            let _ = writeln!(out, "labels\t{}", rep.labels(g.len(), p_cap).join(","));
        }
        Command::Boundary { file, radii } => {
            let (_, b) = boundary(&file, &radii)?;
            out.push_str(&b.to_records());
        }
        Command::Eta { file, u, v, radii } => {
            let (_, b) = boundary(&file, &radii)?;
            let _ = writeln!(out, "{}", b.eta_distance(u, v)?);
        }
        Command::Visibility { input, walls, threshold } => {
            let (x, _) = load_complex(&input)?;
            let ws = walls.iter().map(|w| wall(&x, w)).collect::<Result<Vec<_>>>()?;
            let rep = visibility_report(&x, &ws, threshold)?;
            for (i, s) in rep.stages.iter().enumerate() {
                let _ = writeln!(out, "stage {}\tsize={}\tstart={}", i + 1, s.size, s.min_start);
            }
            let _ = writeln!(out, "omega_depth\t{}", rep.omega_depth);
            match rep.full_depth_start {
                Some(d) => writeln!(out, "full_depth_start\t{d}"),
                None => writeln!(out, "full_depth_start\tnone"),
            }
            .ok();
            let _ = writeln!(out, "verdict\t{}", rep.verdict);
        }
        Command::Completeness { input, depth } => {
            let (x, _) = load_complex(&input)?;
            let rep = completeness_check(&x, depth)?;
            let _ = writeln!(out, "cubes_checked\t{}", rep.cubes_checked);
            for f in &rep.failures {
                let signed: Vec<String> = f
                    .walls
                    .iter()
                    .zip(&f.orientation)
                    .map(|(&w, &side)| format!("{}{}", if side { '+' } else { '-' }, x.label(w)))
                    .collect();
                let _ = writeln!(out, "short orthant\t{}\treach={}", signed.join(","), f.reach);
            }
            let _ = writeln!(out, "{}", if rep.complete() { "complete" } else { "INCOMPLETE" });
            return Ok(if rep.complete() { 0 } else { 1 });
        }
        Command::Witness { file, eighth_flat, orthant, ray: name, h0, radius, classes, radii } => {
            if eighth_flat {
                let input = Input { file, radius };
                let (x, ts) = load_complex(&input)?;
                let len = radius.unwrap_or(0);
                let g = ray(&x, ts.as_ref(), name.as_deref().unwrap_or_default(), len, len)?;
                let h0 = wall(&x, h0.as_deref().unwrap_or_default())?;
                return Ok(match eighth_flat_witness(&x, &g, h0)? {
                    EighthFlatOutcome::Witness(w) => {
                        let _ = writeln!(out, "witness\tsector with {} vertices", w.vertices.len());
                        let _ = writeln!(out, "f\t{}", join(&w.f));
                        let _ = writeln!(out, "strips\t{}", join(&w.strips));
                        let _ = writeln!(out, "bounded_f\t{}", w.bounded_f);
                        0
                    }
                    EighthFlatOutcome::Failure { reason, f } => {
                        let _ = writeln!(out, "no witness\t{reason:?}");
                        let _ = writeln!(out, "f\t{}", join(&f));
                        1
                    }
                });
            }
            if !orthant {
                return Err(CubixError::Precondition("choose one of --eighth-flat or --orthant".into()));
            }
            let (ts, b) = boundary(&file, &radii)?;
            let top = ts.level(*radii.radii.last().expect("boundary checked radii"))?;
            let sets = classes
                .iter()
                .map(|&c| {
                    b.classes
                        .get(c)
                        .map(|k| k.representative.clone())
                        .ok_or(CubixError::UnknownSimplex(c))
                })
                .collect::<Result<Vec<_>>>()?;
            let w = orthant_witness(&top.complex, &sets)?;
            let _ = writeln!(out, "orthant\tdims={}\tvertices={}", join(&w.dims()), w.vertex_count);
            for (c, r) in classes.iter().zip(&w.rays) {
                let _ = writeln!(out, "class {c}\t{}", labels(&top.complex, r.walls()));
            }
        }
    }
    Ok(0)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
