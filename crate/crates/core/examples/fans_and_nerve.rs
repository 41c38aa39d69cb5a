//! Fans from JSON, dual cones and the Čech nerve of the maximal cones.
//!
//! ```text
//! cargo run --example fans_and_nerve
//! ```

use toric_ccc::cli::fan_info;
use toric_ccc::fans::{self, Cone, FanJson, StandardFan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = FanJson::parse(r#"{"rank":2,"max_cones":[[[1,0],[0,1]],[[0,1],[-1,-1]],[[-1,-1],[1,0]]]}"#)?.to_stacky()?;
    println!("P^2: {}", fan_info(&p2));

    let nerve = fans::cech_nerve(&fans::standard_fan(StandardFan::Pn(3)));
    for (s, meet) in nerve.simplices.iter().filter(|(s, _)| s.len() == 2) {
        println!("  U{} ∩ U{} = {meet}", s[0], s[1]);
    }

    let c = Cone::new(2, &[vec![1, 0], vec![1, 2]])?;
    println!("dual of {c} is {}", fans::dual_cone(&c));

    // overlapping cones are rejected
    let bad = FanJson::parse(r#"{"rank":2,"max_cones":[[[1,0],[1,1]],[[1,0],[0,1]]]}"#)?.to_stacky();
    println!("overlap: {}", bad.unwrap_err());
    Ok(())
}
