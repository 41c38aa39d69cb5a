//! Chambers of the wall arrangement on the torus and their quiver.
//!
//! ```text
//! cargo run --example chambers -- 3
//! ```

use toric_ccc::picsym::PicMonomial;
use toric_ccc::skeleton;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let cs = skeleton::enumerate_chambers(n);
    println!("{} chambers, by step {:?}", cs.len(), skeleton::step_histogram(n, &cs));
    for c in &cs {
        println!("  {c}  step {}", c.step());
    }
    let q = skeleton::chamber_quiver(n, &vec![PicMonomial::unit(0); n]);
    println!("quiver: {} vertices, {} edges", q.vertices.len(), q.edges.len());
    for e in &q.edges {
        println!("  {} -> {}", q.vertices[e.source].chamber, q.vertices[e.target].chamber);
    }
}
