//! Smith normal form, cokernels and the character group of a stacky chart.
//!
//! ```text
//! cargo run --example smith_normal_form
//! ```

use toric_ccc::cohside;
use toric_ccc::verify::stacky_line;
use toric_ccc::zlin::{self, IntMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = zlin::smith_normal_form(&a);
    println!("invariant factors: {:?}", s.invariants().iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);

    let g = zlin::cokernel(&a);
    println!("cokernel order {:?}, free rank {}", g.order().map(|o| o.to_string()), g.free_rank);

    // the line with beta = [5]: five characters, one object of Gamma each
    let chart = cohside::gamma_category(&stacky_line(5))?;
    let chars: Vec<String> = chart.objects().iter().map(ToString::to_string).collect();
    println!("characters of mu_5: {}", chars.join(" "));
    Ok(())
}
