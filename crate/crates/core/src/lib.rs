//! Specification-guided search for critical driving scenarios.
//!
//! Traces are monitored against interface-aware STL specifications and
//! assume/guarantee contracts; samplers search a scenario parameter box for
//! low-robustness concrete scenarios on a built-in car-following simulator.

pub mod aeb;
pub mod campaign;
pub mod contract;
pub mod sampling;
pub mod stl;
