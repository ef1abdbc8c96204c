//! Prints the distance score against distance for a few (alpha, beta)
//! settings as CSV.
//!
//! cargo run --example distance_curve > curve.csv

use frontier_explore::{distance_score, HeuristicParams};

fn main() -> frontier_explore::Result<()> {
    let settings = [(2.0, 1.75), (2.0, 4.0), (2.0, 16.0), (4.0, 1.75)];
    print!("d");
    for (a, b) in settings {
        print!(",a{a}_b{b}");
    }
    println!();
    for k in 0..=100 {
        let d = k as f64 * 0.1;
        print!("{d:.1}");
        for (alpha, beta) in settings {
            let p = HeuristicParams::new(alpha, beta, 0.5)?;
            print!(",{:.6}", distance_score(d, &p)?);
        }
        println!();
    }
    Ok(())
}
