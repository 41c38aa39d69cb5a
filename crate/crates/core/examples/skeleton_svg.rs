//! Components of the skeleton of a stacky fan and their SVG picture.
//!
//! ```text
//! cargo run --example skeleton_svg -- [out.svg]
//! ```

use toric_ccc::fans::FanJson;
use toric_ccc::skeleton;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu3 = FanJson::parse(r#"{"rank":1,"max_cones":[[[1]]],"beta":[[3]]}"#)?.to_stacky()?;
    let comps = skeleton::fltz_components(&mu3)?;
    for c in &comps {
        println!("{}  chi = ({})", c.cone, c.character.join(","));
    }
    let svg = skeleton::components_svg(1, &comps)?;
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, svg)?,
        None => println!("{} bytes of svg", svg.len()),
    }
    Ok(())
}
