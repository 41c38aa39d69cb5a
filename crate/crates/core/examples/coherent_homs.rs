//! Graded homs on the coherent side: the stacky line `[A^1 / mu_n]`, line
//! bundle cohomology on projective space, and a Čech comparison.
//!
//! ```text
//! cargo run --example coherent_homs
//! ```

use toric_ccc::cohside;
use toric_ccc::verify::{self, stacky_line};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = cohside::gamma_category(&stacky_line(4))?;
    let objs = g.objects();
    let h = cohside::hom_graded(&g, &objs[1], &objs[3], 10)?;
    println!("mu_4, Hom(chi_1, chi_3) by degree: {:?}", h.dims);
    assert_eq!(h.dims, cohside::cyclic_quiver_paths(4, 1, 3, 10));

    for d in -4..=2 {
        println!("H^*(P^2, O({d})) = {:?}", cohside::pn_line_bundle_cohomology(2, d, 6)?);
    }
    println!("chi(O(0), O(2)) on P^2 = {}", cohside::euler_pairing_coherent(2, 0, 2)?);
    println!("{}", verify::kappa_line(3, 8));
    Ok(())
}
