//! Benchmarks the frontier heuristic against nearest-frontier on the
//! generated multi-room maps and prints per-tier means. Uses the
//! benchmark tuning (`beta` stretched to building scale).
//!
//! cargo run --release --example compare_selectors -- [seeds] [jobs]

use frontier_explore::explorer::{
    benchmark_config, benchmark_maps, compare_selectors, CompareSpec,
};
use frontier_explore::SelectorKind;

fn main() -> frontier_explore::Result<()> {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let jobs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let spec = CompareSpec {
        maps: benchmark_maps(),
        selectors: vec![
            SelectorKind::FrontierHeuristic,
            SelectorKind::NearestFrontier,
        ],
        seeds: (0..seeds).collect(),
        config: benchmark_config(),
        jobs,
    };
    let cmp = compare_selectors(&spec)?;
    for r in &cmp.runs {
        if r.outcome != frontier_explore::Outcome::Complete {
            println!(
                "incomplete: {} {} seed {} {:?} rate {:.3}",
                r.map, r.selector, r.seed, r.outcome, r.exploration_rate
            );
        }
    }
    println!(
        "{:<8} {:<8} {:>5} {:>10} {:>10} {:>8}",
        "tier", "selector", "runs", "dist_m", "time_s", "expr_%"
    );
    for g in &cmp.groups {
        println!(
            "{:<8} {:<8} {:>5} {:>10.2} {:>10.1} {:>8.2}",
            g.map, g.selector, g.runs, g.distance.mean, g.time.mean, g.exploration_rate.mean
        );
    }
    Ok(())
}
