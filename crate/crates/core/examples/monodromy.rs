//! Monodromy of the Picard labels around the loops of the torus.
//!
//! ```text
//! cargo run --example monodromy
//! ```

use toric_ccc::picsym::{self, Ikari, PicMonomial};
use toric_ccc::skeleton;
use toric_ccc::zlin::IntMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let beta = IntMatrix::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]);
    let bundles = vec![PicMonomial::generator(1, 0); 3];
    // exact Picard sequence: every loop acts trivially
    let m = picsym::monodromy(&beta, &Ikari::from_bundles(&bundles, 1))?;
    for (i, l) in m.loop_images().iter().enumerate() {
        println!("loop {i}: {}", l.render(&["O(1)"]));
    }

    let pic = [PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)];
    let labels = skeleton::transport_labels(2, &pic)?;
    let names = ["L", "M"];
    for (c, l) in skeleton::enumerate_chambers(2).iter().zip(&labels) {
        println!("{c}  {}", l.render(&names));
    }
    Ok(())
}
