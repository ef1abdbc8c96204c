//! TOML experiment configuration.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use super::CliError;
use crate::explorer::{start_for_seed, ExplorationConfig, MapCase, RunLimits, SelectorKind, Tier};
use crate::grid::{load_map, InflationParams, LidarModel, MapFormat, OccupancyGrid, PgmMeta, Pose};
use crate::navigator::{KinematicLimits, PlannerConfig};
use crate::reward::{DistanceTermForm, RewardConfig};
use crate::scoring::HeuristicParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub run: RunSection,
    pub heuristic: HeuristicSection,
    pub lidar: LidarModel,
    pub kinematics: KinematicLimits,
    pub inflation: InflationParams,
    pub navigator: PlannerConfig,
    pub reward: RewardSection,
    pub score: ScoreSection,
    pub output: OutputSection,
    pub maps: Vec<MapSource>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            run: RunSection::default(),
            heuristic: HeuristicSection::default(),
            lidar: LidarModel::default(),
            kinematics: KinematicLimits::default(),
            inflation: InflationParams::default(),
            navigator: PlannerConfig::default(),
            reward: RewardSection::default(),
            score: ScoreSection::default(),
            output: OutputSection::default(),
            maps: vec![MapSource {
                name: "low_0".into(),
                generator: Some(GeneratorSpec {
                    tier: Tier::Low,
                    seed: 0,
                }),
                ..MapSource::default()
            }],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorName {
    #[serde(alias = "fh")]
    FrontierHeuristic,
    #[serde(alias = "nf")]
    NearestFrontier,
    #[serde(alias = "largest")]
    LargestFrontier,
    #[serde(alias = "random")]
    RandomFrontier,
}

impl SelectorName {
    /// The random selector draws from the run seed.
    pub fn with_seed(self, seed: u64) -> SelectorKind {
        match self {
            SelectorName::FrontierHeuristic => SelectorKind::FrontierHeuristic,
            SelectorName::NearestFrontier => SelectorKind::NearestFrontier,
            SelectorName::LargestFrontier => SelectorKind::LargestFrontier,
            SelectorName::RandomFrontier => SelectorKind::RandomFrontier { seed },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub selectors: Vec<SelectorName>,
    pub seeds: Vec<u64>,
    pub max_ticks: usize,
    pub target_rate: f64,
    pub min_segment_size: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        let limits = RunLimits::default();
        Self {
            selectors: vec![
                SelectorName::FrontierHeuristic,
                SelectorName::NearestFrontier,
            ],
            seeds: vec![0],
            max_ticks: limits.max_ticks,
            target_rate: limits.target_rate,
            min_segment_size: crate::frontier::DEFAULT_MIN_SEGMENT_SIZE,
        }
    }
}

/// Heuristic weights; `beta` defaults to half the LiDAR range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeuristicSection {
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub gamma: f64,
    pub af_scale: f64,
    pub exp_arg_cap: f64,
}

impl Default for HeuristicSection {
    fn default() -> Self {
        let p = HeuristicParams::default();
        Self {
            alpha: p.alpha,
            beta: None,
            gamma: p.gamma,
            af_scale: p.af_scale,
            exp_arg_cap: p.exp_arg_cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardSection {
    pub max_linear: f64,
    pub collision_threshold: f64,
    pub goal_threshold: f64,
    pub include_r_linear: bool,
    pub distance_term_form: DistanceTermForm,
    /// JSON-lines observation file, or `-` for standard input.
    pub input: String,
}

impl Default for RewardSection {
    fn default() -> Self {
        let r = RewardConfig::default();
        Self {
            max_linear: r.max_linear,
            collision_threshold: r.collision_threshold,
            goal_threshold: r.goal_threshold,
            include_r_linear: r.include_r_linear,
            distance_term_form: r.distance_term_form,
            input: "-".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ScoreSection {
    /// ASCII belief snapshot; `?` marks unknown cells.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub belief: Option<PathBuf>,
    /// Robot pose `[x, y, theta]`.
    pub robot: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub json: bool,
    pub csv: bool,
    pub svg: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            json: true,
            csv: true,
            svg: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MapFileFormat {
    #[default]
    Ascii,
    Pgm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub tier: Tier,
    pub seed: u64,
}

/// One ground-truth map: a file or a generated world.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct MapSource {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: MapFileFormat,
    /// Sidecar with `resolution` and `occupied_threshold` for PGM maps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    /// Fixed start `[x, y, theta]`; otherwise drawn per seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<[f64; 3]>,
    /// Reporting group; defaults to the generator tier or `default`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

fn read_text(path: &Path, field: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("{field}: cannot read {}: {e}", path.display())))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))
    }

    pub fn defaults_toml() -> String {
        let body = toml::to_string_pretty(&Config::default()).expect("defaults serialize");
        format!(
            "# heuristic.beta defaults to half of lidar.max_range when omitted.\n\
             # Map entries take either `path` (with `format` and, for pgm, `meta`)\n\
             # or `generator = {{ tier = \"low\" | \"medium\" | \"high\", seed = N }}`.\n\n{body}"
        )
    }

    /// Loads a config file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let text = read_text(path, "--config")?;
        let cfg = Self::parse(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    pub fn heuristic_params(&self) -> Result<HeuristicParams, CliError> {
        let h = &self.heuristic;
        let p = HeuristicParams {
            alpha: h.alpha,
            beta: h.beta.unwrap_or(self.lidar.max_range / 2.0),
            gamma: h.gamma,
            af_scale: h.af_scale,
            exp_arg_cap: h.exp_arg_cap,
        };
        p.validate()
            .map_err(|e| CliError::config(format!("heuristic: {e}")))?;
        Ok(p)
    }

    pub fn exploration(&self) -> Result<ExplorationConfig, CliError> {
        let cfg = ExplorationConfig {
            heuristic: self.heuristic_params()?,
            lidar: self.lidar,
            kinematics: self.kinematics,
            planner: self.navigator,
            limits: RunLimits {
                max_ticks: self.run.max_ticks,
                target_rate: self.run.target_rate,
            },
            min_segment_size: self.run.min_segment_size,
        };
        self.lidar
            .validate()
            .map_err(|e| CliError::config(format!("lidar: {e}")))?;
        self.kinematics
            .validate()
            .map_err(|e| CliError::config(format!("kinematics: {e}")))?;
        self.inflation
            .validate()
            .map_err(|e| CliError::config(format!("inflation: {e}")))?;
        cfg.validate()
            .map_err(|e| CliError::config(format!("run: {e}")))?;
        Ok(cfg)
    }

    pub fn reward_config(&self) -> Result<RewardConfig, CliError> {
        let r = &self.reward;
        let cfg = RewardConfig {
            max_linear: r.max_linear,
            collision_threshold: r.collision_threshold,
            goal_threshold: r.goal_threshold,
            include_r_linear: r.include_r_linear,
            distance_term_form: r.distance_term_form,
        };
        cfg.validate()
            .map_err(|e| CliError::config(format!("reward: {e}")))?;
        Ok(cfg)
    }

    pub fn check_run_lists(&self) -> Result<(), CliError> {
        if self.maps.is_empty() {
            return Err(CliError::config("maps: at least one map is required"));
        }
        if self.run.selectors.is_empty() {
            return Err(CliError::config(
                "run.selectors: at least one selector is required",
            ));
        }
        if self.run.seeds.is_empty() {
            return Err(CliError::config("run.seeds: at least one seed is required"));
        }
        Ok(())
    }

    /// Loads and inflates every map.
    pub fn load_maps(&self, base: &Path) -> Result<Vec<MapCase>, CliError> {
        let mut seen = std::collections::HashSet::new();
        self.maps
            .iter()
            .enumerate()
            .map(|(n, m)| {
                let field = format!("maps[{n}]");
                if m.name.is_empty() || m.name.contains(['/', '\\']) {
                    return Err(CliError::config(format!(
                        "{field}.name: must be a non-empty file-name-safe string"
                    )));
                }
                if !seen.insert(m.name.clone()) {
                    return Err(CliError::config(format!(
                        "{field}.name: duplicate {:?}",
                        m.name
                    )));
                }
                let mut truth = self.load_truth(m, base, &field)?;
                truth
                    .inflate(self.inflation)
                    .map_err(|e| CliError::config(format!("inflation: {e}")))?;
                let start = m.start.map(|[x, y, t]| Pose::new(x, y, t));
                let group = m.group.clone().unwrap_or_else(|| match m.generator {
                    Some(g) => g.tier.label().to_string(),
                    None => "default".to_string(),
                });
                Ok(MapCase {
                    name: m.name.clone(),
                    group,
                    truth,
                    start,
                })
            })
            .collect()
    }

    fn load_truth(
        &self,
        m: &MapSource,
        base: &Path,
        field: &str,
    ) -> Result<OccupancyGrid, CliError> {
        match (&m.path, &m.generator) {
            (Some(_), Some(_)) => Err(CliError::config(format!(
                "{field}: give either path or generator, not both"
            ))),
            (None, None) => Err(CliError::config(format!(
                "{field}: needs a path or a generator"
            ))),
            (None, Some(g)) => Ok(crate::explorer::generate_world(g.tier, g.seed)),
            (Some(p), None) => {
                let path = base.join(p);
                let bytes = std::fs::read(&path).map_err(|e| {
                    CliError::config(format!("{field}.path: cannot read {}: {e}", path.display()))
                })?;
                let format = match m.format {
                    MapFileFormat::Ascii => MapFormat::Ascii,
                    MapFileFormat::Pgm => {
                        let meta_path = m.meta.as_ref().ok_or_else(|| {
                            CliError::config(format!("{field}.meta: required for pgm maps"))
                        })?;
                        let text = read_text(&base.join(meta_path), &format!("{field}.meta"))?;
                        MapFormat::Pgm(
                            PgmMeta::parse(&text)
                                .map_err(|e| CliError::config(format!("{field}.meta: {e}")))?,
                        )
                    }
                };
                load_map(&bytes, format).map_err(|e| CliError::config(format!("{field}.path: {e}")))
            }
        }
    }
}

/// Start pose for one run of a map.
pub fn start_for(case: &MapCase, seed: u64) -> Result<Pose, CliError> {
    match case.start {
        Some(p) => Ok(p),
        None => start_for_seed(&case.truth, seed)
            .map_err(|e| CliError::config(format!("maps.{}: {e}", case.name))),
    }
}
