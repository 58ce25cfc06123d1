//! Signal temporal logic: syntax, traces and (interface-aware) robustness.

mod ast;
mod error;
mod ext_real;
mod parser;
mod robustness;
mod trace;
mod verdict;

pub use ast::{Formula, Interval, Term};
pub use error::StlError;
pub use ext_real::ExtReal;
pub use parser::{parse, parse_term};
pub use robustness::{
    eval_term, input_vacuity, output_robustness, relative_robustness, relative_robustness_signal, robustness,
    robustness_signal, IaSpec,
};
pub use trace::Trace;
pub use verdict::{classify, Verdict};
