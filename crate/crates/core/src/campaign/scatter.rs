use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter};
use std::path::Path;

use super::record::Line;
use super::CampaignError;

pub const SCATTER_HEADER: [&str; 5] = ["run", "safe_dist", "ego_speed", "robustness", "falsified"];

/// Writes one CSV row per run record of a results file and returns the row count.
///
/// A malformed final line (an interrupted write) is skipped.
pub fn export_scatter(results: &Path, out: &Path) -> Result<usize, CampaignError> {
    let file = File::open(results).map_err(|e| CampaignError::io(results, e))?;
    let lines: Vec<String> =
        BufReader::new(file).lines().collect::<Result<_, _>>().map_err(|e| CampaignError::io(results, e))?;
    let last = lines.iter().rposition(|l| !l.trim().is_empty());

    let mut rows = Vec::new();
    for (i, text) in lines.iter().enumerate() {
        if text.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Line>(text) {
            Ok(Line::Run(r)) => rows.push([
                r.run.to_string(),
                r.params.get("safe_dist").map(f64::to_string).unwrap_or_default(),
                r.params.get("ego_speed").map(f64::to_string).unwrap_or_default(),
                r.objective.to_string(),
                u8::from(r.falsified()).to_string(),
            ]),
            Ok(Line::Summary(_)) => {}
            Err(_) if Some(i) == last => {}
            Err(e) => return Err(CampaignError::Results(format!("line {}: {e}", i + 1))),
        }
    }

    let file = File::create(out).map_err(|e| CampaignError::io(out, e))?;
    let mut writer = csv::Writer::from_writer(BufWriter::new(file));
    let io = |e: csv::Error| CampaignError::io(out, e);
    writer.write_record(SCATTER_HEADER).map_err(io)?;
    for row in &rows {
        writer.write_record(row).map_err(io)?;
    }
    writer.flush().map_err(|e| CampaignError::io(out, e))?;
    Ok(rows.len())
}
