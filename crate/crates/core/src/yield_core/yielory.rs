use super::YieldParams;

/// Bounded store of Yielons. The count always lies in `[0, upsilon_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Yielory {
    current: f64,
}

impl Yielory {
    /// A Yielory holding `level` Yielons, clamped into range.
    pub fn new(level: f64, params: &YieldParams) -> Self {
        Self {
            current: level.clamp(0.0, params.upsilon_max),
        }
    }

    /// A freshly reset Yielory.
    pub fn initial(params: &YieldParams) -> Self {
        Self::new(params.upsilon_initial, params)
    }

    pub fn level(&self) -> f64 {
        self.current
    }
}

/// Which form of the Yielon update applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YielonUpdate {
    /// The window is moving: charge or drain in proportion to sigma.
    Squeeze(f64),
    /// The window is flat and credits are acceptable: top up slightly.
    Saturated,
}

/// Charges or drains the Yielory in proportion to its fill ratio.
///
/// `new = cur + torque * cur / max`, where the torque is sigma for a moving
/// window and the saturation gain for a flat one. The result is clamped.
pub fn update_yielons(yielory: Yielory, update: YielonUpdate, params: &YieldParams) -> Yielory {
    let torque = match update {
        YielonUpdate::Squeeze(sigma) => sigma,
        YielonUpdate::Saturated => params.saturation_gain,
    };
    let cur = yielory.current;
    Yielory::new(cur + torque * (cur / params.upsilon_max), params)
}

/// Margin of the current normalized credit over the acceptable minimum.
pub fn delta_test(c_norm: f64, params: &YieldParams) -> f64 {
    c_norm - params.c_min_norm
}
