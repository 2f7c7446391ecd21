use std::fmt;

use serde::Serialize;

use super::dp::{Decision, Policy, Preference};
use crate::model::{PayoffRegime, ProblemSpec, Strategy, Variant};
use crate::{Error, Result};

/// A reachable state whose strict preference contradicts the cutoff rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: u32,
    pub j: u32,
    pub preference: Preference,
    pub expected: Decision,
}

/// What [`extract_thresholds`] found in a solved policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub spec: ProblemSpec,
    /// Interviews after this one are never reached under optimal play.
    pub last_reachable: u32,
    /// Cutoff for relatively best candidates.
    pub leading_cutoff: u32,
    /// Cutoff for the variant's second class (relatively worst for
    /// Best-or-Worst, relatively second for Postdoc).
    pub secondary_cutoff: Option<u32>,
    /// Whether a relatively best candidate is ever strictly worth accepting.
    pub leading_ever_accepted: bool,
    pub violations: Vec<Violation>,
    /// Set when the cutoffs exist but do not fit the rule shape expected
    /// for the spec.
    pub shape_mismatch: Option<String>,
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: leading cutoff {}", self.spec, self.leading_cutoff)?;
        if let Some(s) = self.secondary_cutoff {
            write!(f, ", secondary cutoff {s}")?;
        }
        write!(f, ", {} offending states", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(
                f,
                " ({}, {}) {:?} where {:?} expected;",
                v.k, v.j, v.preference, v.expected
            )?;
        }
        if let Some(m) = &self.shape_mismatch {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

fn in_leading(_k: u32, j: u32) -> bool {
    j == 1
}

fn in_secondary(variant: Variant, k: u32, j: u32) -> bool {
    match variant {
        Variant::Classic => false,
        Variant::BestOrWorst => j == k,
        Variant::Postdoc => j == 2,
    }
}

/// Reads cutoff rules off a solved policy, or explains why none fits.
///
/// Each class's cutoff is one less than the first interview at which a
/// state of that class is strictly worth accepting. Every reachable state
/// must then agree: strictly accepting only inside the union of class
/// regions, and never strictly rejecting inside it.
pub fn extract_thresholds(policy: &Policy) -> Result<Strategy> {
    let spec = *policy.spec();
    let n = spec.n;
    let variant = spec.variant;
    let last_reachable = (1..=n)
        .find(|&k| (1..=k).all(|j| policy.preference(k, j) == Preference::Accept))
        .unwrap_or(n);
    let first_accept = |member: &dyn Fn(u32, u32) -> bool| {
        (1..=last_reachable).find(|&k| {
            (1..=k).any(|j| member(k, j) && policy.preference(k, j) == Preference::Accept)
        })
    };
    let leading_first = first_accept(&in_leading);
    let leading_cutoff = leading_first.map_or(n - 1, |k| k - 1);
    let secondary_cutoff = if variant == Variant::Classic {
        None
    } else {
        Some(first_accept(&|k, j| in_secondary(variant, k, j)).map_or(n - 1, |k| k - 1))
    };

    let mut violations = Vec::new();
    for k in 1..=last_reachable {
        for j in 1..=k {
            let accepting = (in_leading(k, j) && k > leading_cutoff)
                || secondary_cutoff.is_some_and(|s| in_secondary(variant, k, j) && k > s);
            let preference = policy.preference(k, j);
            let expected = if accepting {
                Decision::Accept
            } else {
                Decision::Reject
            };
            let contradicts = match expected {
                Decision::Accept => preference == Preference::Reject,
                Decision::Reject => preference == Preference::Accept,
            };
            if contradicts {
                violations.push(Violation {
                    k,
                    j,
                    preference,
                    expected,
                });
            }
        }
    }

    let staged = matches!(
        (variant, spec.payoff),
        (Variant::BestOrWorst, PayoffRegime::Unbalanced { .. })
            | (Variant::Postdoc, PayoffRegime::Cost)
    );
    let shape = match (variant, secondary_cutoff) {
        (Variant::Classic, _) => Ok(Strategy::OneThreshold { r: leading_cutoff }),
        (_, Some(s)) if staged => {
            if leading_cutoff <= s {
                Ok(Strategy::TwoThreshold {
                    r: leading_cutoff,
                    s,
                })
            } else {
                Err(format!(
                    "leading cutoff {leading_cutoff} exceeds secondary cutoff {s}"
                ))
            }
        }
        (Variant::BestOrWorst, Some(s)) => {
            if leading_cutoff == s {
                Ok(Strategy::OneThreshold { r: s })
            } else {
                Err(format!(
                    "best and worst cutoffs differ ({leading_cutoff} vs {s})"
                ))
            }
        }
        (Variant::Postdoc, Some(s)) => {
            if leading_first.is_none() {
                Ok(Strategy::OneThreshold { r: s })
            } else {
                Err("a relatively best candidate is strictly worth accepting".into())
            }
        }
        (_, None) => unreachable!("only the classic variant lacks a secondary class"),
    };

    match shape {
        Ok(strategy) if violations.is_empty() => Ok(strategy),
        shape => Err(Error::NotThreshold(Box::new(ThresholdReport {
            spec,
            last_reachable,
            leading_cutoff,
            secondary_cutoff,
            leading_ever_accepted: leading_first.is_some(),
            violations,
            shape_mismatch: shape.err(),
        }))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dp_solve;

    fn extract(variant: Variant, payoff: PayoffRegime, n: u32) -> Result<Strategy> {
        extract_thresholds(&dp_solve(&ProblemSpec::new(variant, payoff, n).unwrap()).unwrap())
    }

    #[test]
    fn best_or_worst_binary_fifty() {
        assert_eq!(
            extract(Variant::BestOrWorst, PayoffRegime::Binary, 50).unwrap(),
            Strategy::OneThreshold { r: 25 }
        );
    }

    #[test]
    fn unbalanced_two_hundred() {
        let payoff = PayoffRegime::Unbalanced {
            worst: 1.0,
            best: 3.0,
        };
        let Strategy::TwoThreshold { r, s } = extract(Variant::BestOrWorst, payoff, 200).unwrap()
        else {
            panic!("expected a staged rule");
        };
        let x = (-2.0f64 / 3.0).exp() * 0.75;
        assert!((r as f64 / 200.0 - x).abs() <= 5.0 / 200.0, "r={r}");
        assert!((s as f64 / 200.0 - 0.75).abs() <= 5.0 / 200.0, "s={s}");
    }

    #[test]
    fn postdoc_perquisite_fifty() {
        let spec = ProblemSpec::new(Variant::Postdoc, PayoffRegime::Perquisite, 50).unwrap();
        let policy = dp_solve(&spec).unwrap();
        let strat = extract_thresholds(&policy).unwrap();
        assert!(matches!(strat, Strategy::OneThreshold { .. }));
        for k in 1..=50 {
            assert_ne!(policy.preference(k, 1), Preference::Accept);
        }
    }

    #[test]
    fn postdoc_cost_sixty_is_staged() {
        let strat = extract(Variant::Postdoc, PayoffRegime::Cost, 60).unwrap();
        assert!(
            matches!(strat, Strategy::TwoThreshold { r, s } if r < s),
            "{strat}"
        );
    }

    #[test]
    fn early_stop_makes_later_states_unreachable() {
        let strat = extract(Variant::BestOrWorst, PayoffRegime::Cost, 7).unwrap();
        assert_eq!(strat, Strategy::OneThreshold { r: 0 });
    }
}
