//! Representations of finite posets and their derived homs.
//!
//! ```text
//! cargo run --example poset_reps
//! ```

use std::collections::BTreeMap;

use toric_ccc::conside::{self, FinitePoset, Rep};
use toric_ccc::linalg::{q, QMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = FinitePoset::chain(3);
    let cat = p.to_category();
    let simple = |v: usize| Rep::interval(&cat, &(0..3).map(|c| c == v).collect::<Vec<_>>());
    let (s0, s1) = (simple(0)?, simple(1)?);
    println!("Ext(S0, S1) = {:?}", conside::rep_hom(&cat, &s0, &s1)?);
    println!("Ext(S1, S0) = {:?}", conside::rep_hom(&cat, &s1, &s0)?);

    // a rep built from its cover maps: k -> k^2 -> k
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), QMatrix::from_fn(2, 1, |i, _| q(i64::from(i == 0))));
    maps.insert((1, 2), QMatrix::from_fn(1, 2, |_, j| q(i64::from(j == 1))));
    let m = Rep::from_covers(&p, vec![1, 2, 1], &maps)?;
    let whole = Rep::interval(&cat, &[true, true, true])?;
    let ext = conside::rep_hom(&cat, &whole, &m)?;
    let euler = conside::euler_form(&cat, &whole.dim_vector(), &m.dim_vector());
    println!("Ext(k, M) = {ext:?}, Euler form {euler}");

    let diamond = FinitePoset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])?;
    let dcat = diamond.to_category();
    println!("diamond Cartan matrix: {:?}", conside::cartan_matrix(&dcat).to_rows());
    Ok(())
}
