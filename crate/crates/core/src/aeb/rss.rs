use serde::{Deserialize, Serialize};

use super::SimError;

/// RSS longitudinal constants; all accelerations are magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RssParams {
    pub tau: f64,
    pub a_max_acc: f64,
    pub a_min_br: f64,
    pub a_max_br: f64,
}

impl Default for RssParams {
    fn default() -> Self {
        RssParams { tau: 0.5, a_max_acc: 2.0, a_min_br: 4.0, a_max_br: 8.0 }
    }
}

impl RssParams {
    pub fn validate(&self) -> Result<(), SimError> {
        let finite = [self.tau, self.a_max_acc, self.a_min_br, self.a_max_br].iter().all(|v| v.is_finite());
        if !finite || self.tau < 0.0 || self.a_max_acc < 0.0 || !(0.0 < self.a_min_br && self.a_min_br <= self.a_max_br)
        {
            return Err(SimError::InvalidParams(format!(
                "RSS constants need tau >= 0, a_max_acc >= 0 and 0 < a_min_br <= a_max_br, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Minimum safe gap between a back vehicle and the vehicle in front of it.
pub fn rss_safe_distance(v_front: f64, v_back: f64, rss: &RssParams) -> Result<f64, SimError> {
    for v in [v_front, v_back] {
        if v < 0.0 || v.is_nan() {
            return Err(SimError::NegativeVelocity(v));
        }
    }
    let RssParams { tau, a_max_acc, a_min_br, a_max_br } = *rss;
    let v_reacted = v_back + a_max_acc * tau;
    let d = v_back * tau + a_max_acc * tau * tau / 2.0 + v_reacted * v_reacted / (2.0 * a_min_br)
        - v_front * v_front / (2.0 * a_max_br);
    Ok(d.max(0.0))
}
