//! Explores a generated map with every selector and writes each trace as
//! CSV next to a summary line.
//!
//! cargo run --release --example explore_room -- [tier] [seed]

use frontier_explore::explorer::{benchmark_config, start_for_seed};
use frontier_explore::{generate_world, run_exploration, SelectorKind, Tier};

fn main() -> frontier_explore::Result<()> {
    let mut args = std::env::args().skip(1);
    let tier = match args.next().as_deref() {
        Some("medium") => Tier::Medium,
        Some("high") => Tier::High,
        _ => Tier::Low,
    };
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let truth = generate_world(tier, seed);
    let start = start_for_seed(&truth, seed)?;
    let cfg = benchmark_config();
    for kind in [
        SelectorKind::FrontierHeuristic,
        SelectorKind::NearestFrontier,
        SelectorKind::LargestFrontier,
        SelectorKind::RandomFrontier { seed },
    ] {
        let rec = run_exploration(&truth, start, kind, &cfg)?;
        let path =
            std::env::temp_dir().join(format!("explore_{}_{}.csv", tier.label(), kind.label()));
        std::fs::write(&path, rec.to_csv()).expect("writable temp dir");
        println!(
            "{:<8} {:?}: {:.1} m, {:.0} s, {:.1}% in {} decisions -> {}",
            kind.label(),
            rec.outcome,
            rec.distance(),
            rec.time(),
            100.0 * rec.exploration_rate(),
            rec.decisions.len(),
            path.display()
        );
    }
    Ok(())
}
