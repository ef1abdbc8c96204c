//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use frontier_explore::explorer::{
    benchmark_config, benchmark_maps, run_exploration_with_map, start_for_seed, CompareSpec,
    Comparison,
};
use frontier_explore::frontier::DEFAULT_MIN_SEGMENT_SIZE;
use frontier_explore::grid::remap_cost;
use frontier_explore::{
    cluster_segments, compare_selectors, compute_reward, detect_frontiers, distance_score,
    find_segments, fixtures, occupancy_score, reward_terms, select_waypoint, CellState,
    DistanceTermForm, ExplorationConfig, FrontierSegment, HeuristicParams, InflationParams,
    OccupancyGrid, Outcome, RewardConfig, SelectorKind, StepObservation, Tier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn brute_frontiers(g: &OccupancyGrid) -> Vec<bool> {
    let (w, h) = (g.width() as i64, g.height() as i64);
    (0..g.len())
        .map(|k| {
            let (i, j) = g.coords(k);
            let (i, j) = (i as i64, j as i64);
            g.states()[k] == CellState::Free
                && [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().any(|&(di, dj)| {
                    let (ni, nj) = (i + di, j + dj);
                    ni >= 0
                        && nj >= 0
                        && ni < w
                        && nj < h
                        && g.state(ni as usize, nj as usize) == CellState::Unknown
                })
        })
        .collect()
}

fn frontier_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut agree = 0;
    for _ in 0..1000 {
        let (w, h) = (rng.gen_range(1..=32), rng.gen_range(1..=32));
        let po = rng.gen_range(0.0..0.4);
        let pu = rng.gen_range(0.0..(1.0 - po));
        let g = common::random_belief(&mut rng, w, h, 0.1, [po, pu]);
        if detect_frontiers(&g).marks == brute_frontiers(&g) {
            agree += 1;
        }
    }
    let took = start.elapsed();
    verdict(
        agree == 1000 && took < Duration::from_secs(10),
        format!("{agree}/1000 grids agree, {:.2} s", took.as_secs_f64()),
    )
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Checks 50 `(alpha, beta)` pairs drawn log-uniformly from `[1e-3, 1e3]`,
/// keeping only pairs with `alpha / beta <= max_ratio`.
fn distance_regimes(max_ratio: f64) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut zero_ok, mut limit_ok, mut finite_ok, mut mono_ok) = (0, 0, 0, 0);
    let mut dips: Vec<(f64, f64, f64)> = Vec::new();
    let mut far: Vec<f64> = Vec::new();
    let mut drawn = 0;
    while drawn < 50 {
        let alpha = log_uniform(&mut rng, 1e-3, 1e3);
        let beta = log_uniform(&mut rng, 1e-3, 1e3);
        if alpha / beta > max_ratio {
            continue;
        }
        drawn += 1;
        let p = HeuristicParams {
            alpha,
            beta,
            ..HeuristicParams::default()
        };
        let d = |x: f64| distance_score(x, &p).unwrap();
        zero_ok += (d(0.0) == 0.0) as usize;
        limit_ok += (d(1e3 * beta) >= 1.0 - 1e-9) as usize;

        let n = 10_000;
        let grid: Vec<f64> = (0..n)
            .map(|k| 1e3 * beta * k as f64 / (n - 1) as f64)
            .collect();
        let values: Vec<f64> = grid.iter().map(|&x| d(x)).collect();
        let worst = values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
        if worst > 0.0 {
            dips.push((alpha, beta, worst));
        } else {
            mono_ok += 1;
        }

        let extremes = [0.0, 1e-300, 1e-9, 1e-3, alpha, beta, 1e3, 1e6, 1e9];
        let all_finite = extremes
            .iter()
            .chain(&grid)
            .all(|&x| (0.0..1.0).contains(&d(x)));
        finite_ok += all_finite as usize;
        if d(1e3 * beta) < 1.0 - 1e-9 {
            far.push(alpha / beta);
        }
    }
    let mut detail = format!(
        "D(0)=0 {zero_ok}/50, monotone {mono_ok}/50, D(1e3 beta)>=1-1e-9 {limit_ok}/50, finite in [0,1) {finite_ok}/50"
    );
    if !dips.is_empty() {
        let ratios: Vec<String> = dips
            .iter()
            .map(|(a, b, w)| format!("a/b={:.3} dip={w:.1e}", a / b))
            .collect();
        detail.push_str(&format!("; non-monotone pairs: {}", ratios.join(", ")));
    }
    if !far.is_empty() {
        let ratios: Vec<String> = far.iter().map(|r| format!("{r:.0}")).collect();
        detail.push_str(&format!(
            "; unsaturated at 1e3 beta for a/b = {}",
            ratios.join(", ")
        ));
    }
    verdict(
        zero_ok == 50 && mono_ok == 50 && limit_ok == 50 && finite_ok == 50,
        detail,
    )
}

fn occupancy_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut fixtures_ok, mut segments, mut worst) = (0, 0, 0.0f64);
    for _ in 0..500 {
        let (w, h) = (rng.gen_range(2..=64), rng.gen_range(2..=64));
        let res = [0.05, 0.1, 0.2][rng.gen_range(0..3)];
        let mut g = common::random_belief(&mut rng, w, h, res, [0.15, 0.35]);
        g.inflate(InflationParams::default()).unwrap();
        let params = HeuristicParams {
            af_scale: rng.gen_range(0.0..3.0),
            ..HeuristicParams::default()
        };
        let mut ok = true;
        for seg in find_segments(&g, 1) {
            let r = seg.radius_r.max(res);
            let (mut sum, mut count) = (0.0, 0usize);
            for j in 0..h {
                for i in 0..w {
                    let (x, y) = g.cell_center(i, j);
                    let d2 = (x - seg.centroid.0).powi(2) + (y - seg.centroid.1).powi(2);
                    if d2 <= r * r + 1e-9 * res * res {
                        sum += remap_cost(g.cost(i, j));
                        count += 1;
                    }
                }
            }
            let want = sum / count as f64 / (params.af_scale * seg.length_af).cosh();
            let got = occupancy_score(&seg, &g, &params);
            let rel = if want == 0.0 {
                got.abs()
            } else {
                ((got - want) / want).abs()
            };
            worst = worst.max(rel);
            ok &= rel <= 1e-12;
            segments += 1;
        }
        fixtures_ok += ok as usize;
    }
    verdict(
        fixtures_ok == 500,
        format!(
            "{fixtures_ok}/500 fixtures ({segments} segments), worst relative error {worst:.1e}"
        ),
    )
}

fn segment_at(segs: &[FrontierSegment], at: (f64, f64)) -> Option<usize> {
    segs.iter()
        .position(|s| (s.centroid.0 - at.0).abs() < 1e-9 && (s.centroid.1 - at.1).abs() < 1e-9)
}

fn frontier_types() -> Verdict {
    let fx = fixtures::frontier_types();
    let params = HeuristicParams {
        gamma: 0.5,
        ..HeuristicParams::default()
    };
    let segs = find_segments(&fx.belief, DEFAULT_MIN_SEGMENT_SIZE);
    let ids = [fx.closed, fx.open_wide, fx.door_gap].map(|c| segment_at(&segs, c));
    let [Some(closed), Some(open), Some(door)] = ids else {
        return verdict(false, "fixture segments not found");
    };
    let (chosen, rows) = select_waypoint(&segs, &fx.robot, &fx.belief, &params).unwrap();
    let o = |k: usize| rows[k].occupancy_score;
    verdict(
        o(closed) < o(open) && o(open) < o(door) && chosen == closed,
        format!(
            "O closed={:.4} open-wide={:.4} door-gap={:.4}, d={:.2}/{:.2}/{:.2}, chosen {}",
            o(closed),
            o(open),
            o(door),
            rows[closed].d,
            rows[open].d,
            rows[door].d,
            if chosen == closed { "closed" } else { "other" }
        ),
    )
}

fn case_study() -> Verdict {
    let cs = fixtures::case_study();
    let params = HeuristicParams::default();
    let segs = find_segments(&cs.belief, DEFAULT_MIN_SEGMENT_SIZE);
    let (Some(near), Some(far)) = (
        segment_at(&segs, cs.near_door),
        segment_at(&segs, cs.enclosed),
    ) else {
        return verdict(false, "fixture segments not found");
    };
    let (chosen, rows) = select_waypoint(&segs, &cs.robot, &cs.belief, &params).unwrap();
    verdict(
        chosen == far && rows[far].d > rows[near].d,
        format!(
            "frontier 1 d={:.3} h={:.4}, frontier 2 d={:.3} h={:.4}, chosen frontier {}",
            rows[near].d,
            rows[near].h,
            rows[far].d,
            rows[far].h,
            if chosen == far { 2 } else { 1 }
        ),
    )
}

fn reward_contract() -> Verdict {
    let neutral = StepObservation {
        lidar_min: 10.0,
        d_goal_init: 2.0,
        d_goal_now: 2.0,
        goal_angle: 0.0,
        action_linear: 0.0,
        action_angular: 0.0,
    };
    let at_goal = StepObservation {
        d_goal_now: 0.0,
        ..neutral
    };
    let crash = StepObservation {
        lidar_min: 0.0,
        ..neutral
    };
    let mut failures = Vec::new();
    let mut probes = 0;
    for (name, form, expected) in [
        (
            "paren_minus_one",
            DistanceTermForm::ParenMinusOne,
            [0.0, 5001.0, -2050.0],
        ),
        (
            "literal",
            DistanceTermForm::Literal,
            [4.0 / 3.0, 5004.0, 4.0 / 3.0 - 2050.0],
        ),
    ] {
        let cfg = RewardConfig {
            distance_term_form: form,
            ..RewardConfig::default()
        };
        for (obs, want) in [neutral, at_goal, crash].iter().zip(expected) {
            let got = compute_reward(obs, &cfg).unwrap();
            if (got - want).abs() > 1e-12 * want.abs().max(1.0) {
                failures.push(format!("{name}: R={got}, want {want}"));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let obs = StepObservation {
                lidar_min: rng.gen_range(0.0..5.0),
                d_goal_init: rng.gen_range(0.05..20.0),
                d_goal_now: rng.gen_range(0.0..20.0),
                goal_angle: rng.gen_range(-3.2..3.2),
                action_linear: rng.gen_range(-0.3..0.3),
                action_angular: rng.gen_range(-2.0..2.0),
            };
            let cfg = RewardConfig {
                include_r_linear: rng.gen_bool(0.5),
                ..cfg
            };
            if form == DistanceTermForm::Literal && obs.d_goal_init + obs.d_goal_now == 1.0 {
                continue;
            }
            probes += 1;
            let r = |o: &StepObservation| compute_reward(o, &cfg).unwrap();
            let base = r(&obs);
            let wider = StepObservation {
                goal_angle: obs.goal_angle.signum()
                    * (obs.goal_angle.abs() + rng.gen_range(0.0..3.0)),
                ..obs
            };
            let turn = StepObservation {
                action_angular: obs.action_angular.signum()
                    * (obs.action_angular.abs() + rng.gen_range(0.0..2.0)),
                ..obs
            };
            let tc = cfg.collision_threshold;
            let lid = |l: f64| {
                r(&StepObservation {
                    lidar_min: l,
                    ..obs
                })
            };
            let clear = lid(1.5 * tc);
            let near = lid(1.5 * tc * (1.0 - 1e-9));
            let hit = lid(tc * (1.0 - 1e-9));
            let mut ok = r(&wider) <= base
                && r(&turn) <= base
                && r(&obs) == base
                && (clear - near - 50.0).abs() < 1e-9
                && (near - hit - 2000.0).abs() < 1e-9;
            if form == DistanceTermForm::ParenMinusOne {
                let rd = reward_terms(&obs, &cfg).unwrap().r_distance;
                let start = StepObservation {
                    d_goal_now: obs.d_goal_init,
                    ..obs
                };
                let at_start = reward_terms(&start, &cfg).unwrap().r_distance;
                ok &= rd > -1.0 && rd <= 1.0 && at_start == 0.0;
            }
            if !ok {
                failures.push(format!("{name}: probe {obs:?}"));
            }
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("3 examples and {probes} probes pass in both forms")
        } else {
            failures.join("; ")
        },
    )
}

struct Benchmark {
    completeness: Verdict,
    cases: Vec<frontier_explore::explorer::MapCase>,
}

fn completeness() -> Benchmark {
    let cases = benchmark_maps();
    let cfg = ExplorationConfig::default();
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut runs = 0;
    for case in &cases {
        let pose = start_for_seed(&case.truth, 0).unwrap();
        for kind in [
            SelectorKind::FrontierHeuristic,
            SelectorKind::NearestFrontier,
        ] {
            let (rec, _) = run_exploration_with_map(&case.truth, pose, kind, &cfg).unwrap();
            runs += 1;
            if rec.outcome != Outcome::Complete || rec.exploration_rate() < 0.99 {
                bad.push(format!(
                    "{} {kind}: {:?} {:.4}",
                    case.name,
                    rec.outcome,
                    rec.exploration_rate()
                ));
            }
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < Duration::from_secs(300);
    let mut detail = format!(
        "{}/{runs} runs complete on {} maps, {:.1} s single-threaded",
        runs - bad.len(),
        cases.len(),
        took.as_secs_f64()
    );
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join(", ")));
    }
    Benchmark {
        completeness: verdict(pass, detail),
        cases,
    }
}

fn tier_table(cmp: &Comparison) -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for tier in [Tier::Low, Tier::Medium, Tier::High] {
        let g = tier.label();
        let fh = cmp.group_row(g, SelectorKind::FrontierHeuristic).unwrap();
        let nf = cmp.group_row(g, SelectorKind::NearestFrontier).unwrap();
        let dist_ok = tier == Tier::Low || fh.distance.mean <= nf.distance.mean;
        let time_ok = fh.time.mean <= nf.time.mean;
        pass &= dist_ok && time_ok;
        parts.push(format!(
            "{g}: dist {:.1}/{:.1} m{}, time {:.0}/{:.0} s{}",
            fh.distance.mean,
            nf.distance.mean,
            if dist_ok { "" } else { " (FH worse)" },
            fh.time.mean,
            nf.time.mean,
            if time_ok { "" } else { " (FH worse)" },
        ));
    }
    (pass, parts.join("; "))
}

fn directional(cases: &[frontier_explore::explorer::MapCase]) -> (Verdict, String) {
    let spec = |config: ExplorationConfig| CompareSpec {
        maps: cases.to_vec(),
        selectors: vec![
            SelectorKind::FrontierHeuristic,
            SelectorKind::NearestFrontier,
        ],
        seeds: (0..5).collect(),
        config,
        jobs: 1,
    };
    let tuned = compare_selectors(&spec(benchmark_config())).unwrap();
    let (pass, table) = tier_table(&tuned);
    let incomplete = tuned
        .runs
        .iter()
        .filter(|r| r.outcome != Outcome::Complete)
        .count();
    let main = verdict(
        pass,
        format!(
            "FH/NF over {} runs with beta={} ({} incomplete): {table}",
            tuned.runs.len(),
            frontier_explore::explorer::BENCHMARK_BETA,
            incomplete
        ),
    );
    let defaults = compare_selectors(&spec(ExplorationConfig::default())).unwrap();
    let (dpass, dtable) = tier_table(&defaults);
    let note = format!(
        "with default beta={}: {} ({dtable})",
        HeuristicParams::default().beta,
        if dpass {
            "direction holds"
        } else {
            "direction does not hold"
        }
    );
    (main, note)
}

fn determinism(cases: &[frontier_explore::explorer::MapCase]) -> Verdict {
    let cfg = benchmark_config();
    let mut checked = 0;
    let mut differ = Vec::new();
    for case in cases.iter().step_by(4) {
        for (seed, kind) in [
            (0, SelectorKind::FrontierHeuristic),
            (1, SelectorKind::NearestFrontier),
            (2, SelectorKind::RandomFrontier { seed: 2 }),
        ] {
            let pose = start_for_seed(&case.truth, seed).unwrap();
            let run = || {
                let (rec, _) = run_exploration_with_map(&case.truth, pose, kind, &cfg).unwrap();
                (serde_json::to_string_pretty(&rec).unwrap(), rec.to_csv())
            };
            checked += 1;
            if run() != run() {
                differ.push(format!("{} {kind}", case.name));
            }
        }
    }
    verdict(
        differ.is_empty(),
        format!(
            "{}/{checked} repeated runs byte-identical {}",
            checked - differ.len(),
            differ.join(" ")
        ),
    )
}

fn performance() -> Verdict {
    // Explored rooms with ragged edges: a realistic mid-run belief.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 1000;
    let mut states = vec![CellState::Unknown; n * n];
    for _ in 0..400 {
        let (ci, cj) = (rng.gen_range(0..n as i64), rng.gen_range(0..n as i64));
        let r = rng.gen_range(5..40i64);
        for j in (cj - r).max(0)..(cj + r).min(n as i64) {
            for i in (ci - r).max(0)..(ci + r).min(n as i64) {
                let k = i as usize + n * j as usize;
                let d2 = (i - ci).pow(2) + (j - cj).pow(2);
                if d2 < r * r - rng.gen_range(0..r) {
                    states[k] = if rng.gen_bool(0.03) {
                        CellState::Occupied
                    } else {
                        CellState::Free
                    };
                }
            }
        }
    }
    let g = OccupancyGrid::from_states(n, n, 0.05, states).unwrap();
    let mut times = Vec::new();
    let mut segments = 0;
    for _ in 0..5 {
        let t = Instant::now();
        let mask = detect_frontiers(&g);
        let segs = cluster_segments(&mask, &g, 1);
        times.push(t.elapsed());
        segments = segs.len();
    }
    let worst = times.iter().max().unwrap();
    verdict(
        *worst < Duration::from_millis(150),
        format!(
            "1000x1000 grid, {segments} segments, slowest of 5 passes {:.1} ms",
            worst.as_secs_f64() * 1e3
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Verdict)> = vec![
        (1, "frontier oracle equivalence", frontier_oracle()),
        (2, "distance score regimes", distance_regimes(f64::INFINITY)),
        (3, "occupancy score oracle", occupancy_oracle()),
        (4, "frontier-type ordering", frontier_types()),
        (5, "case-study selection", case_study()),
        (6, "reward contract", reward_contract()),
    ];
    let bench = completeness();
    let (dir, note) = directional(&bench.cases);
    results.push((7, "completeness", bench.completeness));
    results.push((8, "directional comparison", dir));
    results.push((9, "determinism", determinism(&bench.cases)));
    results.push((10, "performance floor", performance()));

    for (n, name, v) in &results {
        println!(
            "criterion {n:>2} {:<28} {}  {}",
            name,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    let narrow = distance_regimes(4.0);
    println!(
        "note: criterion 2 restricted to alpha <= 4 beta: {}  {}",
        if narrow.pass { "PASS" } else { "FAIL" },
        narrow.detail
    );
    println!("note: criterion 8 {note}");
    let failed = results.iter().filter(|r| !r.2.pass).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
