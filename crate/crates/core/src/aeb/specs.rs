use crate::stl::{parse, Formula, IaSpec};

use super::RssParams;

/// Maximum lead deceleration the ego function is designed for, m/s².
pub const BETA_MAX: f64 = 2.0;

/// Environment-controlled channels.
pub const INPUTS: [&str; 3] = ["v_lead", "a_lead", "beta_lead"];
/// Ego-controlled channels.
pub const OUTPUTS: [&str; 2] = ["v_ego", "a_ego"];

pub const CLAUSE_NAMES: [&str; 3] = ["velocity", "acceleration", "distance"];

fn parse_shipped(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("built-in specification `{text}` does not parse: {e}"))
}

/// The three RSS clauses: non-negative speeds, bounded accelerations, and
/// braking whenever the gap is below the safe distance.
pub fn rss_clauses(rss: &RssParams) -> [Formula; 3] {
    let RssParams { a_max_acc, a_max_br, .. } = *rss;
    [
        parse_shipped("always (v_lead >= 0 and v_ego >= 0)"),
        parse_shipped(&format!(
            "always (a_lead >= -{a_max_br} and a_lead <= {a_max_acc} and a_ego >= -{a_max_br} and a_ego <= {a_max_acc})"
        )),
        rss_guarantee(rss),
    ]
}

/// `always (dist < d_safe -> a_ego ∈ [-a_max_br, -a_min_br])`.
pub fn rss_guarantee(rss: &RssParams) -> Formula {
    parse_shipped(&format!("always (dist < d_safe -> (a_ego <= -{} and a_ego >= -{}))", rss.a_min_br, rss.a_max_br))
}

/// Conjunction of all RSS clauses with lead channels as inputs and ego channels as outputs.
pub fn rss_spec(rss: &RssParams) -> IaSpec {
    let [c1, c2, c3] = rss_clauses(rss);
    IaSpec::new(INPUTS, OUTPUTS, Formula::and(Formula::and(c1, c2), c3)).expect("input and output sets are disjoint")
}

/// `beta_max - beta_lead >= 0`.
pub fn assumption_spec(beta_max: f64) -> Formula {
    parse_shipped(&format!("{beta_max} - beta_lead >= 0"))
}
