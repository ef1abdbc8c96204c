use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{run_exploration, ExplorationConfig, Outcome, SelectorKind};
use crate::error::{Error, Result};
use crate::grid::{reachable_mask, CellState, OccupancyGrid, Pose, COST_FREE, COST_INSCRIBED};

#[derive(Debug, Clone)]
pub struct MapCase {
    pub name: String,
    /// Reporting group, such as a complexity tier.
    pub group: String,
    pub truth: OccupancyGrid,
    /// Fixed start pose; when absent each seed draws its own.
    pub start: Option<Pose>,
}

#[derive(Debug, Clone)]
pub struct CompareSpec {
    pub maps: Vec<MapCase>,
    /// A random selector's own seed is replaced by each run's seed.
    pub selectors: Vec<SelectorKind>,
    pub seeds: Vec<u64>,
    pub config: ExplorationConfig,
    /// Worker threads; 0 picks the machine default.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub map: String,
    pub group: String,
    pub selector: SelectorKind,
    pub seed: u64,
    pub start: Pose,
    pub outcome: Outcome,
    pub ticks: usize,
    pub distance: f64,
    pub time: f64,
    pub exploration_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation; zero for a single value.
    pub sd: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "statistics of an empty set");
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sd = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, min, max, sd }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    /// Map name, or group name for group rows.
    pub map: String,
    pub selector: String,
    pub runs: usize,
    pub complete: usize,
    /// Meters.
    pub distance: Stats,
    /// Seconds.
    pub time: Stats,
    /// Percent.
    pub exploration_rate: Stats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub runs: Vec<RunSummary>,
    /// One row per (map, selector).
    pub rows: Vec<AggregateRow>,
    /// One row per (group, selector).
    pub groups: Vec<AggregateRow>,
}

impl Comparison {
    pub fn group_row(&self, group: &str, selector: SelectorKind) -> Option<&AggregateRow> {
        self.groups
            .iter()
            .find(|r| r.map == group && r.selector == selector.label())
    }
}

pub const AGGREGATE_CSV_HEADER: &str = "map,selector,runs,complete,\
avg_dist_m,min_dist_m,max_dist_m,sd_dist_m,\
avg_time_s,min_time_s,max_time_s,sd_time_s,\
avg_expr_pct,min_expr_pct,max_expr_pct,sd_expr_pct";

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from(AGGREGATE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let s = |s: &Stats| format!("{},{},{},{}", s.mean, s.min, s.max, s.sd);
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.map,
            r.selector,
            r.runs,
            r.complete,
            s(&r.distance),
            s(&r.time),
            s(&r.exploration_rate)
        ));
    }
    out
}

/// A seeded start pose on a traversable cell, preferring cells clear of
/// any inflation.
pub fn start_for_seed(truth: &OccupancyGrid, seed: u64) -> Result<Pose> {
    let pick = |max_cost: u8| -> Vec<usize> {
        (0..truth.len())
            .filter(|&k| truth.states()[k] == CellState::Free && truth.costs()[k] <= max_cost)
            .collect()
    };
    let mut cells = pick(COST_FREE);
    if cells.is_empty() {
        cells = pick(COST_INSCRIBED - 1);
    }
    if cells.is_empty() {
        return Err(Error::StartUnreachable);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = cells[rng.gen_range(0..cells.len())];
    let theta = rng.gen_range(-PI..PI);
    let (i, j) = truth.coords(k);
    let (x, y) = truth.cell_center(i, j);
    Ok(Pose::new(x, y, theta))
}

fn with_run_seed(kind: SelectorKind, seed: u64) -> SelectorKind {
    match kind {
        SelectorKind::RandomFrontier { .. } => SelectorKind::RandomFrontier { seed },
        other => other,
    }
}

fn aggregate<'a>(
    runs: impl Iterator<Item = &'a RunSummary>,
    map: &str,
    selector: SelectorKind,
) -> Option<AggregateRow> {
    let runs: Vec<&RunSummary> = runs.collect();
    if runs.is_empty() {
        return None;
    }
    let col = |f: fn(&RunSummary) -> f64| runs.iter().map(|r| f(r)).collect::<Vec<_>>();
    Some(AggregateRow {
        map: map.to_string(),
        selector: selector.label().to_string(),
        runs: runs.len(),
        complete: runs
            .iter()
            .filter(|r| r.outcome == Outcome::Complete)
            .count(),
        distance: Stats::of(&col(|r| r.distance)),
        time: Stats::of(&col(|r| r.time)),
        exploration_rate: Stats::of(&col(|r| 100.0 * r.exploration_rate)),
    })
}

/// Runs every (map, selector, seed) combination and aggregates the results.
///
/// All selectors share the seed's start pose on a given map. Output order
/// follows the input order regardless of `jobs`.
pub fn compare_selectors(spec: &CompareSpec) -> Result<Comparison> {
    if spec.maps.is_empty() {
        return Err(Error::param("maps", "at least one map is required"));
    }
    if spec.selectors.is_empty() {
        return Err(Error::param(
            "selectors",
            "at least one selector is required",
        ));
    }
    if spec.seeds.is_empty() {
        return Err(Error::param("seeds", "at least one seed is required"));
    }
    spec.config.validate()?;

    let mut tasks = Vec::new();
    for (m, case) in spec.maps.iter().enumerate() {
        for &seed in &spec.seeds {
            let start = match case.start {
                Some(p) => p,
                None => start_for_seed(&case.truth, seed)?,
            };
            reachable_mask(&case.truth, &start)?;
            for &sel in &spec.selectors {
                tasks.push((m, seed, start, sel));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::param("jobs", e.to_string()))?;
    let results: Vec<Result<RunSummary>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(m, seed, start, sel)| {
                let case = &spec.maps[m];
                let kind = with_run_seed(sel, seed);
                let rec = run_exploration(&case.truth, start, kind, &spec.config)?;
                Ok(RunSummary {
                    map: case.name.clone(),
                    group: case.group.clone(),
                    selector: sel,
                    seed,
                    start,
                    outcome: rec.outcome,
                    ticks: rec.ticks,
                    distance: rec.distance(),
                    time: rec.time(),
                    exploration_rate: rec.exploration_rate(),
                })
            })
            .collect()
    });
    let runs = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for case in &spec.maps {
        for &sel in &spec.selectors {
            rows.extend(aggregate(
                runs.iter()
                    .filter(|r| r.map == case.name && r.selector == sel),
                &case.name,
                sel,
            ));
        }
    }
    let mut group_names: Vec<&str> = Vec::new();
    for case in &spec.maps {
        if !group_names.contains(&case.group.as_str()) {
            group_names.push(&case.group);
        }
    }
    let mut groups = Vec::new();
    for g in group_names {
        for &sel in &spec.selectors {
            groups.extend(aggregate(
                runs.iter().filter(|r| r.group == g && r.selector == sel),
                g,
                sel,
            ));
        }
    }
    Ok(Comparison { runs, rows, groups })
}
