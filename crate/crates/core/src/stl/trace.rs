use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use super::StlError;

/// Tolerance on the constant time step when reading traces.
const STEP_TOLERANCE: f64 = 1e-9;

/// Uniformly sampled multivariate signal `w : [t0, t0 + (n-1)·dt] -> R^n`.
///
/// Values are stored column-major, one column per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    var_names: Vec<String>,
    dt: f64,
    t0: f64,
    columns: Vec<Vec<f64>>,
}

impl Trace {
    /// Builds a trace from rows (one row per time step).
    pub fn from_rows(var_names: Vec<String>, dt: f64, rows: Vec<Vec<f64>>) -> Result<Self, StlError> {
        let mut columns = vec![Vec::with_capacity(rows.len()); var_names.len()];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != var_names.len() {
                return Err(StlError::InvalidTrace(format!(
                    "row {i} has {} values, expected {}",
                    row.len(),
                    var_names.len()
                )));
            }
            for (col, v) in columns.iter_mut().zip(row) {
                col.push(*v);
            }
        }
        if rows.is_empty() {
            return Err(StlError::InvalidTrace("trace has no samples".into()));
        }
        Self::from_columns(var_names, dt, columns)
    }

    /// Builds a trace from per-variable columns of equal length.
    pub fn from_columns(var_names: Vec<String>, dt: f64, columns: Vec<Vec<f64>>) -> Result<Self, StlError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(StlError::InvalidTrace(format!("dt must be positive, got {dt}")));
        }
        if var_names.len() != columns.len() {
            return Err(StlError::InvalidTrace(format!("{} names for {} columns", var_names.len(), columns.len())));
        }
        let mut seen = HashSet::new();
        for name in &var_names {
            if name == "time" {
                return Err(StlError::InvalidTrace("`time` is reserved for the time axis".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(StlError::InvalidTrace(format!("duplicate variable `{name}`")));
            }
        }
        let len = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != len) {
            return Err(StlError::InvalidTrace("columns differ in length".into()));
        }
        if len == 0 && !columns.is_empty() {
            return Err(StlError::InvalidTrace("trace has no samples".into()));
        }
        if columns.iter().flatten().any(|v| !v.is_finite()) {
            return Err(StlError::InvalidTrace("trace values must be finite".into()));
        }
        Ok(Trace { var_names, dt, t0: 0.0, columns })
    }

    pub fn with_t0(mut self, t0: f64) -> Self {
        self.t0 = t0;
        self
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time(&self, index: usize) -> f64 {
        self.t0 + index as f64 * self.dt
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.index_of(name).map(|i| self.columns[i].as_slice())
    }

    pub(crate) fn column_at(&self, index: usize) -> &[f64] {
        &self.columns[index]
    }

    pub fn row(&self, index: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[index]).collect()
    }

    /// Projection `w_R` onto the named variables, in trace order.
    pub fn project(&self, names: &[&str]) -> Result<Trace, StlError> {
        for name in names {
            if self.index_of(name).is_none() {
                return Err(StlError::UnknownVariable((*name).to_string()));
            }
        }
        let (var_names, columns) = self
            .var_names
            .iter()
            .zip(&self.columns)
            .filter(|(n, _)| names.contains(&n.as_str()))
            .map(|(n, c)| (n.clone(), c.clone()))
            .unzip();
        Ok(Trace { var_names, dt: self.dt, t0: self.t0, columns })
    }

    /// Reads the CSV format: a `time` column followed by one column per variable.
    pub fn read_csv<R: Read>(reader: R) -> Result<Trace, StlError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.get(0) != Some("time") {
            return Err(StlError::InvalidTrace("first column must be `time`".into()));
        }
        let var_names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut times = Vec::new();
        let mut rows = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let mut values = Vec::with_capacity(record.len());
            for field in record.iter() {
                values.push(parse_decimal(field).ok_or_else(|| {
                    StlError::InvalidTrace(format!("row {}: `{field}` is not a decimal number", line + 1))
                })?);
            }
            times.push(values[0]);
            rows.push(values[1..].to_vec());
        }
        if rows.is_empty() {
            return Err(StlError::InvalidTrace("trace has no samples".into()));
        }
        let dt = if times.len() > 1 { times[1] - times[0] } else { 1.0 };
        if dt.is_nan() || dt <= 0.0 {
            return Err(StlError::InvalidTrace("time must be strictly increasing".into()));
        }
        for (i, pair) in times.windows(2).enumerate() {
            let step = pair[1] - pair[0];
            if step.is_nan() || step <= 0.0 || (step - dt).abs() > STEP_TOLERANCE {
                return Err(StlError::InvalidTrace(format!(
                    "time step between rows {} and {} is {step}, expected {dt}",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(Trace::from_rows(var_names, dt, rows)?.with_t0(times[0]))
    }

    pub fn read_csv_path(path: impl AsRef<Path>) -> Result<Trace, StlError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| StlError::Io(format!("{}: {e}", path.display())))?;
        Self::read_csv(std::io::BufReader::new(file))
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), StlError> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["time".to_string()];
        header.extend(self.var_names.iter().cloned());
        wtr.write_record(&header)?;
        for i in 0..self.len() {
            let mut record = vec![format_decimal(self.time(i))];
            record.extend(self.columns.iter().map(|c| format_decimal(c[i])));
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn format_decimal(v: f64) -> String {
    // `Display` for f64 is the shortest round-trip form and never uses an exponent.
    format!("{}", v + 0.0)
}

fn parse_decimal(field: &str) -> Option<f64> {
    let digits = field.strip_prefix(['-', '+']).unwrap_or(field);
    let mut parts = digits.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    let ok = int.chars().all(|c| c.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.chars().all(|c| c.is_ascii_digit()))
        && !(int.is_empty() && frac.is_none());
    if !ok || (int.is_empty() && frac.is_some_and(str::is_empty)) {
        return None;
    }
    field.parse().ok()
}
