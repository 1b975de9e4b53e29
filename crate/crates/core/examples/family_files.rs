//! Family descriptions and complexes as text.

use cubix::{io, make_family, FamilySpec};

fn main() -> cubix::Result<()> {
    let text = "cubix-family v1\nkind product\nbegin left\nkind tree\nparam degree=3\nend\nbegin right\nkind strip\nparam height=1\nend\n";
    let spec = FamilySpec::parse(text)?;
    print!("{}", spec.to_text());
    let ts = make_family(spec)?;
    for r in [2, 4, 6] {
        let l = ts.level(r)?;
        println!("radius {r}: {} vertices, {} walls", l.complex.vertex_count(), l.complex.wall_count());
    }
    println!("levels nest: {}", ts.check_inclusion(4)?);

    let x = &ts.level(2)?.complex;
    let written = io::write_complex(x);
    let back = io::parse_complex(&written)?;
    println!("round trip keeps {} vertices", back.vertex_count());

    match io::parse_complex("walls 2\n00\n1x\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
