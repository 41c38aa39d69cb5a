//! Generators of the chamber category, their Gram matrix, and how they
//! generate: a random dimension vector is peeled back to zero.
//!
//! ```text
//! cargo run --example beilinson -- 3
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_ccc::conside::{self, Reducer};
use toric_ccc::verify::{self, DEFAULT_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    for row in verify::beilinson_gram(n) {
        println!("{row:?}");
    }
    for g in conside::beilinson_generators(n) {
        let labels: Vec<String> = g.labels.iter().map(ToString::to_string).collect();
        println!("G{}: {:?}  [{}]", g.k, g.class_dims, labels.join(", "));
    }

    let reducer = Reducer::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let per_class: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
    let d = reducer.lift(&per_class);
    println!("d = {d:?}");
    for step in reducer.reduce(&d)? {
        println!("  - {} G{} -> {:?}", step.coefficient, step.k, step.remainder);
    }
    Ok(())
}
