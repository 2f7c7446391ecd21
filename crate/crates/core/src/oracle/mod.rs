//! Independent ground truth.
//!
//! [`enumerate_permutations`] averages a rule over all `n!` interview orders.
//! [`dp_solve`] runs backward induction over the full relative-rank state
//! space and assumes nothing about the shape of the optimal rule.
//! [`extract_thresholds`] then checks whether that shape is a cutoff rule.

mod dp;
mod enumerate;
mod recurrence;
mod thresholds;

use num_rational::BigRational;

use crate::numeric::Field;
use crate::{Error, Result};

pub use dp::{dp_solve, Decision, Policy, Preference, DP_EXACT_LIMIT, DP_LIMIT};
pub use enumerate::{enumerate_permutations, enumerate_strategies, ENUMERATION_LIMIT};
pub use recurrence::{recurrence_check_t, recurrence_first_failure, t_recurrence};
pub use thresholds::{extract_thresholds, ThresholdReport, Violation};

/// The `k`-th interview revealed a candidate of relative rank `j` among the
/// first `k` (`j = 1` best so far, `j = k` worst so far).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankState {
    pub k: u32,
    pub j: u32,
}

impl RankState {
    pub fn new(k: u32, j: u32) -> Result<Self> {
        if j == 0 || j > k {
            return Err(Error::Domain(format!("need 1 <= j <= k, got k={k}, j={j}")));
        }
        Ok(RankState { k, j })
    }
}

/// Probability that the `k`-th candidate, of relative rank `j`, has overall
/// rank `i` among `n`: `C(i-1, j-1) C(n-i, k-j) / C(n, k)`.
pub fn overall_rank_prob(n: u32, k: u32, j: u32, i: u32) -> Result<BigRational> {
    if j == 0 || j > k || k > n || i == 0 || i > n {
        return Err(Error::Domain(format!(
            "need 1 <= j <= k <= n and 1 <= i <= n, got n={n}, k={k}, j={j}, i={i}"
        )));
    }
    Ok(<BigRational as Field>::rank_prob(n, k, j, i))
}
