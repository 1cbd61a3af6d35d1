//! Bipartite boolean quadratic programming: maximize `x'Qy + cx + dy` over
//! binary `x` and `y`.
//!
//! The crate provides exact average-value formulas, rounding and
//! alternating heuristics with average-value guarantees, neighborhood
//! search, adversarial instance constructions, ILP model emission, and a
//! brute-force oracle for small instances.

pub mod average;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod fractional;
pub mod generators;
pub mod heuristics;
pub mod ilp;
pub mod instance;
pub mod oracle;
pub mod rational;

pub use average::{
    average_nontrivial, average_upper_bound, average_value, best_corner_solution,
    best_trivial_solution, complement_class, corner_solutions,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use fractional::{evaluate_fractional, evaluate_fractional_exact, FractionalPoint};
pub use instance::{Instance, Marginals, Solution};
pub use rational::QuarterRational;
