//! Chamber quiver with Picard labels for `n = 2`, twisted by `L` and `M`,
//! printed as text and as DOT.
//!
//! ```text
//! cargo run --example twisted_quiver | dot -Tsvg > quiver.svg
//! ```

use toric_ccc::conside;
use toric_ccc::picsym::PicMonomial;
use toric_ccc::skeleton;

fn main() {
    let pic = vec![PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)];
    let names = ["L", "M"];
    let t = conside::twisted_rep_template(2, &pic);
    for (i, v) in t.quiver.vertices.iter().enumerate() {
        eprintln!("{:<8} {}", v.chamber.to_string(), t.vertex_text(i, &names));
    }
    println!("{}", conside::quiver_dot(&t.quiver, &names));

    let circle = skeleton::chamber_quiver(1, &[PicMonomial::generator(1, 0)]);
    eprintln!("circle: {}", skeleton::render_circle_quiver(&circle, &["L"]));
}
