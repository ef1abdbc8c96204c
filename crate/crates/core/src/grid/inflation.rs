use serde::{Deserialize, Serialize};

use super::{COST_INSCRIBED, COST_LETHAL, COST_UNKNOWN};
use crate::error::{Error, Result};

/// Maximum cost assigned by the exponential decay band.
const DECAY_PEAK: f64 = 252.0;

/// Tolerance on squared cell distances when comparing against radii.
const RADIUS_EPS: f64 = 1e-9;

/// Obstacle inflation settings (meters and 1/meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InflationParams {
    pub inscribed_radius: f64,
    pub inflation_radius: f64,
    pub decay_rate: f64,
}

impl Default for InflationParams {
    fn default() -> Self {
        Self {
            inscribed_radius: 0.15,
            inflation_radius: 0.5,
            decay_rate: 5.0,
        }
    }
}

impl InflationParams {
    pub fn new(inscribed_radius: f64, inflation_radius: f64, decay_rate: f64) -> Result<Self> {
        let p = Self {
            inscribed_radius,
            inflation_radius,
            decay_rate,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.inscribed_radius.is_finite()
            && self.inflation_radius.is_finite()
            && self.inscribed_radius > 0.0
            && self.inscribed_radius <= self.inflation_radius;
        if !ok {
            return Err(Error::InvalidRadii {
                inscribed: self.inscribed_radius,
                inflation: self.inflation_radius,
            });
        }
        if !(self.decay_rate.is_finite() && self.decay_rate >= 0.0) {
            return Err(Error::param("decay_rate", "must be finite and >= 0"));
        }
        Ok(())
    }

    /// Raw cost of a Free cell at `distance` meters from the nearest obstacle.
    pub fn cost_at(&self, distance: f64) -> u8 {
        if distance <= self.inscribed_radius + RADIUS_EPS {
            COST_INSCRIBED
        } else if distance <= self.inflation_radius + RADIUS_EPS {
            let c = DECAY_PEAK * (-self.decay_rate * (distance - self.inscribed_radius)).exp();
            c.round() as u8
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KernelEntry {
    pub di: i32,
    pub dj: i32,
    pub cost: u8,
}

/// Precomputed offsets and costs inside the inflation radius.
#[derive(Debug, Clone, PartialEq)]
pub struct InflationKernel {
    entries: Vec<KernelEntry>,
}

impl InflationKernel {
    pub fn new(params: &InflationParams, resolution: f64) -> Self {
        let reach = params.inflation_radius / resolution;
        let n = reach.ceil() as i32;
        let mut entries = Vec::new();
        for dj in -n..=n {
            for di in -n..=n {
                if di == 0 && dj == 0 {
                    continue;
                }
                let d2 = (di * di + dj * dj) as f64;
                if d2 > reach * reach + RADIUS_EPS {
                    continue;
                }
                let cost = params.cost_at(d2.sqrt() * resolution);
                if cost > 0 {
                    entries.push(KernelEntry { di, dj, cost });
                }
            }
        }
        Self { entries }
    }

    pub(crate) fn entries(&self) -> &[KernelEntry] {
        &self.entries
    }
}

/// Maps a raw cost byte to the `[0, 1]` occupancy value used for scoring.
///
/// Unknown becomes 0, every other value is shifted up by one and divided by
/// 255, so lethal lands on exactly 1.
pub fn remap_cost(raw: u8) -> f64 {
    match raw {
        COST_UNKNOWN => 0.0,
        COST_LETHAL => 1.0,
        c => (c as f64 + 1.0) / 255.0,
    }
}
