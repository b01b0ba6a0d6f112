use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Tuning constants of the switching mechanism.
///
/// Defaults are the values used in the reference experiments:
/// capacity 100, switch threshold 30, reset level 60, window 5,
/// saturation top-up 0.05, credit threshold 80 and closeness 10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct YieldParams {
    /// Yielory capacity.
    pub upsilon_max: f64,
    /// Falling below this many Yielons forces intrinsic exploration.
    pub upsilon_min: f64,
    /// Level the Yielory is reset to after every switch.
    pub upsilon_initial: f64,
    /// Number of recent normalized credits the squeezing factor sees.
    pub window_size: usize,
    /// Small top-up applied while credits are flat and above threshold.
    pub saturation_gain: f64,
    /// Minimum desirable normalized credit, on the 0..=100 scale.
    pub c_min_norm: f64,
    /// Two Yielon counts closer than this are considered equal when
    /// choosing between intrinsic and extrinsic exploration.
    pub epsilon: f64,
    /// |sigma| at or below this counts as a flat window.
    pub sigma_tol: f64,
    /// Yielon gap below the archipelago mean that lets the G-Island reach
    /// for unused algorithms.
    pub delta_g: f64,
}

impl Default for YieldParams {
    fn default() -> Self {
        Self {
            upsilon_max: 100.0,
            upsilon_min: 30.0,
            upsilon_initial: 60.0,
            window_size: 5,
            saturation_gain: 0.05,
            c_min_norm: 80.0,
            epsilon: 10.0,
            sigma_tol: 0.5,
            delta_g: 10.0,
        }
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> CoreError {
    CoreError::InvalidParam {
        field,
        reason: reason.into(),
    }
}

impl YieldParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("upsilon_max", self.upsilon_max),
            ("upsilon_min", self.upsilon_min),
            ("upsilon_initial", self.upsilon_initial),
            ("saturation_gain", self.saturation_gain),
            ("c_min_norm", self.c_min_norm),
            ("epsilon", self.epsilon),
            ("sigma_tol", self.sigma_tol),
            ("delta_g", self.delta_g),
        ];
        for (field, v) in finite {
            if !v.is_finite() {
                return Err(invalid(field, format!("must be finite, got {v}")));
            }
        }
        if self.upsilon_min <= 0.0 {
            return Err(invalid("upsilon_min", "must be > 0"));
        }
        if self.upsilon_min >= self.upsilon_initial {
            return Err(invalid(
                "upsilon_min",
                format!(
                    "must be below upsilon_initial ({} >= {})",
                    self.upsilon_min, self.upsilon_initial
                ),
            ));
        }
        if self.upsilon_initial > self.upsilon_max {
            return Err(invalid(
                "upsilon_initial",
                format!(
                    "must not exceed upsilon_max ({} > {})",
                    self.upsilon_initial, self.upsilon_max
                ),
            ));
        }
        if self.window_size < 2 {
            return Err(invalid("window_size", "must be at least 2"));
        }
        if self.saturation_gain <= 0.0 {
            return Err(invalid("saturation_gain", "must be > 0"));
        }
        if !(0.0..=100.0).contains(&self.c_min_norm) {
            return Err(invalid("c_min_norm", "must lie in [0, 100]"));
        }
        if self.epsilon <= 0.0 {
            return Err(invalid("epsilon", "must be > 0"));
        }
        if self.sigma_tol < 0.0 {
            return Err(invalid("sigma_tol", "must be >= 0"));
        }
        if self.delta_g <= 0.0 {
            return Err(invalid("delta_g", "must be > 0"));
        }
        Ok(())
    }
}
