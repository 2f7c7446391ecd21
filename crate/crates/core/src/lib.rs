//! Exact expected payoffs, optimal cutoff rules and asymptotic constants for
//! the classic secretary problem and its Best-or-Worst and Postdoc variants.
//!
//! The crate is organised in layers:
//!
//! - [`model`]: problem specifications, strategies and evaluation results.
//! - [`exact`]: finite-`n` evaluators (exact rationals where affordable) and
//!   argmax scans over cutoff values.
//! - [`asymptotics`]: Lambert-W, root solvers, limiting constants and the
//!   scaled payoff profiles they maximise.
//! - [`oracle`]: permutation enumeration and backward-induction dynamic
//!   programming, used as independent ground truth.
//! - [`montecarlo`]: reproducible randomized estimates.

pub mod asymptotics;
mod error;
pub mod exact;
pub mod model;
pub mod montecarlo;
pub mod numeric;
pub mod oracle;

pub use error::{Error, Result};
pub use model::{EvalResult, Method, PayoffRegime, ProblemSpec, Strategy, Variant};
