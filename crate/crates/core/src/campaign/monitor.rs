use crate::stl::{
    classify, input_vacuity, output_robustness, parse, robustness, ExtReal, IaSpec, StlError, Trace, Verdict,
};

/// Result of monitoring one trace.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorOutcome {
    pub robustness: ExtReal,
    pub mu: ExtReal,
    pub nu: ExtReal,
    pub verdict: Result<Verdict, StlError>,
}

/// Evaluates `spec_text` on `trace` at sample `t` with the given interface.
pub fn monitor(
    trace: &Trace,
    spec_text: &str,
    inputs: &[String],
    outputs: &[String],
    t: usize,
) -> Result<MonitorOutcome, StlError> {
    let formula = parse(spec_text)?;
    let spec = IaSpec::new(inputs.iter().cloned(), outputs.iter().cloned(), formula)?;
    let rho = robustness(spec.formula(), trace, t)?;
    let mu = output_robustness(&spec, trace, t)?;
    let nu = input_vacuity(&spec, trace, t)?;
    Ok(MonitorOutcome { robustness: rho, mu, nu, verdict: classify(mu, nu) })
}
