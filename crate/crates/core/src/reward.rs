//! Step reward for goal-driven local navigation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GOAL_BONUS: f64 = 5000.0;
const COLLISION_PENALTY: f64 = 2000.0;
const PROXIMITY_PENALTY: f64 = 50.0;
const PROXIMITY_FACTOR: f64 = 1.5;
const LINEAR_GAIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepObservation {
    /// Shortest beam range, meters.
    pub lidar_min: f64,
    /// Goal distance at the start of the episode, meters.
    pub d_goal_init: f64,
    /// Current goal distance, meters.
    pub d_goal_now: f64,
    /// Signed heading error to the goal, radians.
    pub goal_angle: f64,
    pub action_linear: f64,
    pub action_angular: f64,
}

impl StepObservation {
    pub fn validate(&self) -> Result<()> {
        if !(self.lidar_min >= 0.0) {
            return Err(Error::param("lidar_min", "must be >= 0"));
        }
        if !(self.d_goal_init > 0.0) {
            return Err(Error::param("d_goal_init", "must be > 0"));
        }
        if !(self.d_goal_now >= 0.0) {
            return Err(Error::param("d_goal_now", "must be >= 0"));
        }
        if !(self.goal_angle.is_finite()
            && self.action_linear.is_finite()
            && self.action_angular.is_finite())
        {
            return Err(Error::param(
                "observation",
                "angles and actions must be finite",
            ));
        }
        Ok(())
    }
}

/// How the goal-progress term is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceTermForm {
    /// `2 d_init / (d_init + d_now) - 1`: zero at the start, one at the goal.
    #[default]
    ParenMinusOne,
    /// `2 d_init / (d_init + d_now - 1)`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardConfig {
    pub max_linear: f64,
    pub collision_threshold: f64,
    pub goal_threshold: f64,
    /// Adds the linear-velocity term to the sum (off by default).
    pub include_r_linear: bool,
    pub distance_term_form: DistanceTermForm,
}

impl Default for RewardConfig {
    fn default() -> Self {
        Self {
            max_linear: 0.26,
            collision_threshold: 0.2,
            goal_threshold: 0.3,
            include_r_linear: false,
            distance_term_form: DistanceTermForm::ParenMinusOne,
        }
    }
}

impl RewardConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_linear.is_finite() && self.max_linear > 0.0) {
            return Err(Error::param("max_linear", "must be > 0"));
        }
        if !(self.collision_threshold.is_finite() && self.collision_threshold > 0.0) {
            return Err(Error::param("collision_threshold", "must be > 0"));
        }
        if !(self.goal_threshold.is_finite() && self.goal_threshold > 0.0) {
            return Err(Error::param("goal_threshold", "must be > 0"));
        }
        Ok(())
    }
}

/// Every term of one reward evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardTerms {
    pub r_yaw: f64,
    pub r_linear: f64,
    pub r_angular: f64,
    pub r_distance: f64,
    pub r_obstacle: f64,
    pub goal_bonus: f64,
    pub collision_penalty: f64,
    pub total: f64,
}

impl RewardTerms {
    pub const CSV_HEADER: &'static str =
        "r_yaw,r_linear,r_angular,r_distance,r_obstacle,goal_bonus,collision_penalty,R";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.r_yaw,
            self.r_linear,
            self.r_angular,
            self.r_distance,
            self.r_obstacle,
            self.goal_bonus,
            self.collision_penalty,
            self.total
        )
    }
}

pub fn reward_terms(obs: &StepObservation, cfg: &RewardConfig) -> Result<RewardTerms> {
    obs.validate()?;
    cfg.validate()?;
    let r_yaw = -obs.goal_angle.abs();
    let r_linear = -((cfg.max_linear - obs.action_linear) * LINEAR_GAIN).powi(2);
    let r_angular = -obs.action_angular.powi(2);
    let r_distance = match cfg.distance_term_form {
        DistanceTermForm::ParenMinusOne => {
            let denom = obs.d_goal_init + obs.d_goal_now;
            if denom == 0.0 {
                return Err(Error::DegenerateDistance);
            }
            2.0 * obs.d_goal_init / denom - 1.0
        }
        DistanceTermForm::Literal => {
            let denom = obs.d_goal_init + obs.d_goal_now - 1.0;
            if denom == 0.0 {
                return Err(Error::DegenerateDistance);
            }
            2.0 * obs.d_goal_init / denom
        }
    };
    let r_obstacle = if obs.lidar_min < PROXIMITY_FACTOR * cfg.collision_threshold {
        -PROXIMITY_PENALTY
    } else {
        0.0
    };

    let mut total = r_yaw + r_angular + r_distance + r_obstacle;
    if cfg.include_r_linear {
        total += r_linear;
    }
    let goal_bonus = if obs.d_goal_now < cfg.goal_threshold {
        GOAL_BONUS
    } else {
        0.0
    };
    let collision_penalty = if obs.lidar_min < cfg.collision_threshold {
        -COLLISION_PENALTY
    } else {
        0.0
    };
    total += goal_bonus;
    total += collision_penalty;

    Ok(RewardTerms {
        r_yaw,
        r_linear,
        r_angular,
        r_distance,
        r_obstacle,
        goal_bonus,
        collision_penalty,
        total,
    })
}

pub fn compute_reward(obs: &StepObservation, cfg: &RewardConfig) -> Result<f64> {
    reward_terms(obs, cfg).map(|t| t.total)
}
