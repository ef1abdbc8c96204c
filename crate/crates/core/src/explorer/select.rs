use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::frontier::FrontierSegment;
use crate::grid::{OccupancyGrid, Pose};
use crate::scoring::{compare_breakdowns, score_segments, HeuristicParams, ScoreBreakdown};

/// Frontier selection policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorKind {
    /// Lowest weighted distance/occupancy heuristic.
    FrontierHeuristic,
    /// Closest centroid.
    NearestFrontier,
    /// Longest segment.
    LargestFrontier,
    /// Uniform pick from a seeded generator.
    RandomFrontier { seed: u64 },
}

impl SelectorKind {
    /// Short name used in file names and tables.
    pub fn label(&self) -> &'static str {
        match self {
            SelectorKind::FrontierHeuristic => "fh",
            SelectorKind::NearestFrontier => "nf",
            SelectorKind::LargestFrontier => "largest",
            SelectorKind::RandomFrontier { .. } => "random",
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectorKind::RandomFrontier { seed } => write!(f, "random(seed={seed})"),
            other => f.write_str(other.label()),
        }
    }
}

/// A selector together with its random stream, kept for the length of a run.
#[derive(Debug, Clone)]
pub struct Selector {
    kind: SelectorKind,
    rng: Option<ChaCha8Rng>,
}

impl Selector {
    pub fn new(kind: SelectorKind) -> Self {
        let rng = match kind {
            SelectorKind::RandomFrontier { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Self { kind, rng }
    }

    pub fn kind(&self) -> SelectorKind {
        self.kind
    }

    /// Orders segments from most to least preferred and returns every
    /// segment's score breakdown alongside.
    pub fn rank(
        &mut self,
        segments: &[FrontierSegment],
        robot: &Pose,
        belief: &OccupancyGrid,
        params: &HeuristicParams,
    ) -> Result<(Vec<usize>, Vec<ScoreBreakdown>)> {
        if segments.is_empty() {
            return Err(Error::NoFrontiers);
        }
        let scores = score_segments(segments, robot, belief, params)?;
        let mut order: Vec<usize> = (0..segments.len()).collect();
        let by_distance =
            |a: &usize, b: &usize| scores[*a].d.total_cmp(&scores[*b].d).then(a.cmp(b));
        match self.kind {
            SelectorKind::FrontierHeuristic => {
                order.sort_by(|&a, &b| compare_breakdowns(&scores[a], &scores[b]))
            }
            SelectorKind::NearestFrontier => order.sort_by(by_distance),
            SelectorKind::LargestFrontier => order.sort_by(|a, b| {
                segments[*b]
                    .length_af
                    .total_cmp(&segments[*a].length_af)
                    .then_with(|| by_distance(a, b))
            }),
            SelectorKind::RandomFrontier { .. } => {
                let rng = self.rng.as_mut().expect("random selector has a generator");
                order.shuffle(rng);
            }
        }
        Ok((order, scores))
    }
}

/// One-shot selection with any policy.
pub fn select_baseline(
    kind: SelectorKind,
    segments: &[FrontierSegment],
    robot: &Pose,
    belief: &OccupancyGrid,
    params: &HeuristicParams,
) -> Result<usize> {
    Selector::new(kind)
        .rank(segments, robot, belief, params)
        .map(|(order, _)| order[0])
}
