use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rss_safe_distance, RssParams, SimError};
use crate::stl::Trace;

/// Channel names of simulated traces, in column order.
pub const CHANNELS: [&str; 9] =
    ["x_ego", "v_ego", "a_ego", "x_lead", "v_lead", "a_lead", "dist", "d_safe", "beta_lead"];

/// Parameters exposed to the search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioParams {
    /// Gap below which the AEB triggers, m.
    pub safe_dist: f64,
    /// Ego cruise set speed, m/s.
    pub ego_speed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConstants {
    pub init_dist: f64,
    pub lead_speed: f64,
    pub brake_delay: f64,
    pub dt: f64,
    pub horizon: f64,
    pub ego_max_brake: f64,
    pub vehicle_length: f64,
    /// Delay between the AEB decision and full braking, s.
    pub actuator_lag: f64,
    /// Proportional gain of the ego speed tracker, 1/s.
    pub speed_gain: f64,
}

impl Default for SimConstants {
    fn default() -> Self {
        SimConstants {
            init_dist: 30.0,
            lead_speed: 10.0,
            brake_delay: 4.0,
            dt: 0.1,
            horizon: 20.0,
            ego_max_brake: 8.0,
            vehicle_length: 4.5,
            actuator_lag: 0.8,
            speed_gain: 1.0,
        }
    }
}

fn grid_steps(name: &str, value: f64, dt: f64) -> Result<usize, SimError> {
    let s = value / dt;
    if (s - s.round()).abs() > 1e-9 * s.abs().max(1.0) {
        return Err(SimError::InvalidParams(format!("{name} = {value} is not a multiple of dt = {dt}")));
    }
    Ok(s.round() as usize)
}

impl SimConstants {
    pub fn validate(&self) -> Result<(), SimError> {
        let fields = [
            ("init_dist", self.init_dist),
            ("lead_speed", self.lead_speed),
            ("brake_delay", self.brake_delay),
            ("dt", self.dt),
            ("horizon", self.horizon),
            ("ego_max_brake", self.ego_max_brake),
            ("vehicle_length", self.vehicle_length),
            ("actuator_lag", self.actuator_lag),
            ("speed_gain", self.speed_gain),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SimError::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        grid_steps("horizon", self.horizon, self.dt)?;
        grid_steps("brake_delay", self.brake_delay, self.dt)?;
        grid_steps("actuator_lag", self.actuator_lag, self.dt)?;
        Ok(())
    }
}

/// Parameters hidden from the search; drawn from the seed when enabled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuisanceParams {
    pub seed: u64,
    pub enabled: bool,
    /// Lead braking magnitude, m/s².
    pub lead_brake_decel: f64,
    /// Offset added to the initial gap, m.
    pub spawn_jitter: f64,
}

impl NuisanceParams {
    pub fn new(seed: u64, enabled: bool) -> Self {
        if !enabled {
            return NuisanceParams { seed, enabled, lead_brake_decel: 2.0, spawn_jitter: 0.0 };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lead_brake_decel = rng.gen_range(1.5..=4.0);
        let spawn_jitter = rng.gen_range(-1.0..=1.0);
        NuisanceParams { seed, enabled, lead_brake_decel, spawn_jitter }
    }

    pub fn disabled() -> Self {
        Self::new(0, false)
    }
}

#[derive(Clone, Copy)]
struct State {
    x_ego: f64,
    v_ego: f64,
    a_ego: f64,
    x_lead: f64,
    v_lead: f64,
    a_lead: f64,
    gap: f64,
}

/// Runs the scenario and returns its trace, one column per entry of [`CHANNELS`].
///
/// The lead cruises, then brakes once at `brake_delay` until it stops. The ego
/// tracks its set speed; when the gap is below `safe_dist` while closing in, it
/// commands full braking, which takes effect `actuator_lag` later. On contact
/// both vehicles are held at rest for the remaining samples.
pub fn simulate(p: &ScenarioParams, c: &SimConstants, n: &NuisanceParams, rss: &RssParams) -> Result<Trace, SimError> {
    c.validate()?;
    rss.validate()?;
    if !(p.safe_dist >= 0.0 && p.safe_dist.is_finite() && p.ego_speed >= 0.0 && p.ego_speed.is_finite()) {
        return Err(SimError::InvalidParams(format!("scenario parameters out of range: {p:?}")));
    }
    if !(n.lead_brake_decel > 0.0 && n.lead_brake_decel.is_finite() && n.spawn_jitter.is_finite()) {
        return Err(SimError::InvalidParams(format!("nuisance parameters out of range: {n:?}")));
    }
    let samples = grid_steps("horizon", c.horizon, c.dt)? + 1;
    let brake_step = grid_steps("brake_delay", c.brake_delay, c.dt)?;
    let lag = grid_steps("actuator_lag", c.actuator_lag, c.dt)?;

    let mut commands = vec![false; lag];
    let mut rows: Vec<State> = Vec::with_capacity(samples);
    let (mut x_ego, mut v_ego) = (0.0, p.ego_speed);
    let (mut x_lead, mut v_lead) = (c.init_dist + n.spawn_jitter, c.lead_speed);
    for k in 0..samples {
        let gap = x_lead - x_ego - c.vehicle_length;
        commands.push(gap < p.safe_dist && v_ego > v_lead);
        let mut a_lead = if k >= brake_step { -n.lead_brake_decel } else { 0.0 };
        let mut a_ego = if commands[k] {
            -c.ego_max_brake
        } else {
            (c.speed_gain * (p.ego_speed - v_ego)).clamp(-c.ego_max_brake, rss.a_max_acc)
        };
        if v_ego <= 0.0 && a_ego < 0.0 {
            a_ego = 0.0;
        }
        if v_lead <= 0.0 && a_lead < 0.0 {
            a_lead = 0.0;
        }
        if gap <= 0.0 {
            rows.push(State { x_ego, v_ego: 0.0, a_ego: 0.0, x_lead, v_lead: 0.0, a_lead: 0.0, gap });
            break;
        }
        rows.push(State { x_ego, v_ego, a_ego, x_lead, v_lead, a_lead, gap });
        x_ego += v_ego * c.dt;
        v_ego = (v_ego + a_ego * c.dt).max(0.0);
        x_lead += v_lead * c.dt;
        v_lead = (v_lead + a_lead * c.dt).max(0.0);
    }
    let last = *rows.last().expect("at least one sample");
    rows.resize(samples, last);

    let mut columns = vec![Vec::with_capacity(samples); CHANNELS.len()];
    for s in &rows {
        let d_safe = rss_safe_distance(s.v_lead, s.v_ego, rss)?;
        let values = [s.x_ego, s.v_ego, s.a_ego, s.x_lead, s.v_lead, s.a_lead, s.gap, d_safe, (-s.a_lead).max(0.0)];
        for (col, v) in columns.iter_mut().zip(values) {
            col.push(v + 0.0);
        }
    }
    Trace::from_columns(CHANNELS.iter().map(|s| s.to_string()).collect(), c.dt, columns)
        .map_err(|e| SimError::InvalidParams(e.to_string()))
}
