//! Domain types shared by every other module.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::Field;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Success means selecting the overall best candidate.
    Classic,
    /// Success means selecting the overall best or the overall worst.
    BestOrWorst,
    /// Success means selecting the overall second best.
    Postdoc,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Classic, Variant::BestOrWorst, Variant::Postdoc];

    pub fn label(self) -> &'static str {
        match self {
            Variant::Classic => "classic",
            Variant::BestOrWorst => "bw",
            Variant::Postdoc => "postdoc",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How a successful selection at interview `k` is rewarded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum PayoffRegime {
    /// 1 on success.
    Binary,
    /// `1 - k/n` on success at interview `k`.
    Cost,
    /// `1 + k/n` on success at interview `k`.
    Perquisite,
    /// Best-or-Worst only: `best` for the overall best, `worst` for the
    /// overall worst (the `M` and `m` of the literature).
    Unbalanced {
        #[serde(rename = "m")]
        worst: f64,
        #[serde(rename = "M")]
        best: f64,
    },
}

impl PayoffRegime {
    pub fn label(&self) -> &'static str {
        match self {
            PayoffRegime::Binary => "binary",
            PayoffRegime::Cost => "cost",
            PayoffRegime::Perquisite => "perq",
            PayoffRegime::Unbalanced { .. } => "unbalanced",
        }
    }
}

impl fmt::Display for PayoffRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayoffRegime::Unbalanced { worst, best } => write!(f, "unbalanced(m={worst},M={best})"),
            other => f.write_str(other.label()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub variant: Variant,
    pub payoff: PayoffRegime,
    /// Number of candidates.
    pub n: u32,
}

impl ProblemSpec {
    /// Builds a spec and checks the spec-level invariants.
    pub fn new(variant: Variant, payoff: PayoffRegime, n: u32) -> Result<Self> {
        let spec = ProblemSpec { variant, payoff, n };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameters("n must be at least 1".into()));
        }
        if let PayoffRegime::Unbalanced { worst, best } = self.payoff {
            if self.variant != Variant::BestOrWorst {
                return Err(Error::InvalidCombination(format!(
                    "unbalanced payoff requires the best-or-worst variant, got {}",
                    self.variant
                )));
            }
            if !worst.is_finite() || !best.is_finite() || worst < 0.0 || best <= 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "unbalanced payoff needs 0 <= m and 0 < M, got m={worst}, M={best}"
                )));
            }
            if worst > best {
                return Err(Error::InvalidParameters(format!(
                    "unbalanced payoff needs m <= M, got m={worst}, M={best}"
                )));
            }
        }
        if self.variant == Variant::Postdoc && self.n < 2 {
            return Err(Error::InvalidCombination(
                "postdoc variant needs n >= 2 so that a second best exists".into(),
            ));
        }
        Ok(())
    }

    /// Payoff multiplier for accepting at interview `k` (before the rank weight).
    pub fn multiplier<T: Field>(&self, k: u32) -> T {
        let ratio = T::ratio(k as i64, self.n as i64);
        match self.payoff {
            PayoffRegime::Cost => T::one() - ratio,
            PayoffRegime::Perquisite => T::one() + ratio,
            PayoffRegime::Binary | PayoffRegime::Unbalanced { .. } => T::one(),
        }
    }

    /// Reward weights for the overall best and overall worst in the
    /// Best-or-Worst variant.
    pub fn bow_weights<T: Field>(&self) -> (T, T) {
        match self.payoff {
            PayoffRegime::Unbalanced { worst, best } => (T::from_f64(best), T::from_f64(worst)),
            _ => (T::one(), T::one()),
        }
    }

    /// Reward weight of a selected candidate with overall rank `rank`
    /// (1 = best). With `n = 1` the single candidate counts as the best.
    pub fn rank_weight<T: Field>(&self, rank: u32) -> T {
        match self.variant {
            Variant::Classic if rank == 1 => T::one(),
            Variant::Postdoc if rank == 2 => T::one(),
            Variant::BestOrWorst => {
                let (best, worst) = self.bow_weights::<T>();
                if rank == 1 {
                    best
                } else if rank == self.n {
                    worst
                } else {
                    T::zero()
                }
            }
            _ => T::zero(),
        }
    }

    /// Overall ranks that carry a nonzero reward weight.
    pub fn target_ranks(&self) -> Vec<u32> {
        match self.variant {
            Variant::Classic => vec![1],
            Variant::Postdoc => vec![2],
            Variant::BestOrWorst if self.n == 1 => vec![1],
            Variant::BestOrWorst => vec![1, self.n],
        }
    }

    /// Realized payoff for accepting the candidate of overall rank `rank` at
    /// interview `k`.
    pub fn realized_payoff(&self, k: u32, rank: u32) -> f64 {
        self.multiplier::<f64>(k) * self.rank_weight::<f64>(rank)
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} n={}", self.variant, self.payoff, self.n)
    }
}

/// A cutoff rule.
///
/// `OneThreshold { r }` rejects the first `r` candidates and then accepts the
/// first eligible one: relatively best (classic), relatively best or worst
/// (Best-or-Worst), or relatively second best (Postdoc).
///
/// `TwoThreshold { r, s }` rejects the first `r`, accepts only relatively
/// best candidates on interviews `r+1..=s`, and after `s` widens the class to
/// relatively best-or-worst (Best-or-Worst) or relatively best-or-second
/// (Postdoc).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    OneThreshold { r: u32 },
    TwoThreshold { r: u32, s: u32 },
}

impl Strategy {
    pub fn r(&self) -> u32 {
        match *self {
            Strategy::OneThreshold { r } | Strategy::TwoThreshold { r, .. } => r,
        }
    }

    pub fn s(&self) -> Option<u32> {
        match *self {
            Strategy::OneThreshold { .. } => None,
            Strategy::TwoThreshold { s, .. } => Some(s),
        }
    }

    /// Whether the rule accepts a candidate with relative rank `j` among the
    /// first `k` interviewed. Only `j == 1`, `j == 2` and `j == k` are ever
    /// eligible, so callers may pass any other value for "none of these".
    pub fn accepts(&self, variant: Variant, k: u32, j: u32) -> bool {
        let best = j == 1;
        let worst = j == k;
        let second = j == 2;
        match *self {
            Strategy::OneThreshold { r } => {
                k > r
                    && match variant {
                        Variant::Classic => best,
                        Variant::BestOrWorst => best || worst,
                        Variant::Postdoc => second,
                    }
            }
            Strategy::TwoThreshold { r, s } => {
                if k <= r {
                    false
                } else if k <= s {
                    best
                } else {
                    match variant {
                        Variant::Classic => best,
                        Variant::BestOrWorst => best || worst,
                        Variant::Postdoc => best || second,
                    }
                }
            }
        }
    }

    /// Every feasible strategy of the shapes supported for `spec`.
    pub fn all_feasible(spec: &ProblemSpec) -> Vec<Strategy> {
        let n = spec.n;
        let mut out: Vec<Strategy> = (0..n).map(|r| Strategy::OneThreshold { r }).collect();
        if spec.variant != Variant::Classic {
            for r in 0..n {
                for s in r..n {
                    out.push(Strategy::TwoThreshold { r, s });
                }
            }
        }
        out
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::OneThreshold { r } => write!(f, "r={r}"),
            Strategy::TwoThreshold { r, s } => write!(f, "r={r},s={s}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidThreshold(format!("cannot parse strategy {text:?}"));
        let mut parts = text.trim().split(',');
        let r = parts
            .next()
            .and_then(|p| p.trim().strip_prefix("r="))
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(bad)?;
        let strategy = match parts.next() {
            None => Strategy::OneThreshold { r },
            Some(p) => {
                let s = p
                    .trim()
                    .strip_prefix("s=")
                    .and_then(|v| v.parse::<u32>().ok())
                    .ok_or_else(bad)?;
                Strategy::TwoThreshold { r, s }
            }
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(strategy)
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks that `strat` is a feasible rule for `spec`.
pub fn validate(spec: &ProblemSpec, strat: &Strategy) -> Result<()> {
    spec.check()?;
    let n = spec.n;
    match *strat {
        Strategy::OneThreshold { r } => {
            if r >= n {
                return Err(Error::InvalidThreshold(format!(
                    "need 0 <= r <= n-1, got r={r}, n={n}"
                )));
            }
        }
        Strategy::TwoThreshold { r, s } => {
            if spec.variant == Variant::Classic {
                return Err(Error::InvalidCombination(
                    "two-threshold rules need the best-or-worst or postdoc variant".into(),
                ));
            }
            if r > s || s >= n {
                return Err(Error::InvalidThreshold(format!(
                    "need 0 <= r <= s <= n-1, got r={r}, s={s}, n={n}"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    Summation,
    #[serde(rename = "DP")]
    Dp,
    MonteCarlo,
    /// Average over every interview order.
    Enumeration,
}

/// An expected payoff, exact when it was computed in rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub exact: Option<BigRational>,
    pub method: Method,
}

impl EvalResult {
    pub fn from_exact(exact: BigRational, method: Method) -> Self {
        let value = ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
        EvalResult {
            value,
            exact: Some(exact),
            method,
        }
    }

    pub fn from_float(value: f64, method: Method) -> Self {
        EvalResult {
            value,
            exact: None,
            method,
        }
    }

    /// `"num/den"` when exact.
    pub fn exact_string(&self) -> Option<String> {
        self.exact
            .as_ref()
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
    }
}

impl Serialize for EvalResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            value: f64,
            exact_num: Option<String>,
            exact_den: Option<String>,
            method: Method,
        }
        Repr {
            value: self.value,
            exact_num: self.exact.as_ref().map(|q| q.numer().to_string()),
            exact_den: self.exact.as_ref().map(|q| q.denom().to_string()),
            method: self.method,
        }
        .serialize(serializer)
    }
}
