//! Finite-`n` expected payoffs of cutoff rules and argmax scans over cutoffs.
//!
//! Each rule's value is a sum over the interview `k` at which it stops of
//! `p(k) * P(stop at k on the target candidate)`. The per-`k` probabilities:
//!
//! | rule | stop on target at `k` |
//! |------|------------------------|
//! | classic, `r >= 1` | `r / (n (k-1))` |
//! | best-or-worst, stage `r < k <= s` (best only) | `r / (n (k-1))` |
//! | best-or-worst, after `s` (best or worst each) | `q(k) / n` |
//! | postdoc second-only, `r >= 1` | `r / (n (n-1))` |
//! | postdoc staged, `r < k <= s` | `r (n-k) / (n (n-1) (k-1))` |
//! | postdoc staged, after `s` | `q(k) / n` |
//!
//! with `q(k) = r (s-1) / ((k-1)(k-2))` for `k >= 3` and `q(2) = 1`. A cutoff
//! of `r = 0` accepts the very first candidate in every variant except the
//! second-only Postdoc rule, where `r = 0` behaves as `r = 1`.
//!
//! Values are exact rationals whenever a closed form exists or
//! `n <= EXACT_LIMIT`; larger sums use compensated double precision.

use num_rational::BigRational;

use crate::model::{validate, EvalResult, Method, PayoffRegime, ProblemSpec, Strategy, Variant};
use crate::numeric::{Field, Neumaier};
use crate::{Error, Result};

/// Largest `n` for which summation forms are evaluated in exact rationals.
pub const EXACT_LIMIT: u32 = 1000;

/// Largest `n` for which two-threshold argmax scans the full grid by default.
pub const FULL_GRID_LIMIT: u32 = 2000;

/// Relative width of the near-tie band that argmax re-checks exactly.
const TIE_BAND: f64 = 1e-10;

/// Per-interview term of one stage of a staged rule, in floats.
type StageTerm<'a> = Box<dyn Fn(u32) -> f64 + 'a>;

/// Expected payoff of `strat` for `spec` in the arithmetic `T`.
pub fn value_in<T: Field>(spec: &ProblemSpec, strat: &Strategy) -> Result<T> {
    validate(spec, strat)?;
    Ok(match (spec.variant, *strat) {
        (Variant::Classic, Strategy::OneThreshold { r }) => classic(spec, r),
        (Variant::BestOrWorst, Strategy::OneThreshold { r }) => best_or_worst(spec, r, r),
        (Variant::BestOrWorst, Strategy::TwoThreshold { r, s }) => best_or_worst(spec, r, s),
        (Variant::Postdoc, Strategy::OneThreshold { r }) => postdoc_second_only(spec, r),
        (Variant::Postdoc, Strategy::TwoThreshold { r, s }) => postdoc_staged(spec, r, s),
        (Variant::Classic, Strategy::TwoThreshold { .. }) => unreachable!("rejected by validate"),
    })
}

/// `p(k) / den` as a single ratio where the product fits in `i64`.
fn paid<T: Field>(spec: &ProblemSpec, k: u32, den: i64) -> T {
    let n = spec.n as i64;
    let num = match spec.payoff {
        PayoffRegime::Cost => n - k as i64,
        PayoffRegime::Perquisite => n + k as i64,
        PayoffRegime::Binary | PayoffRegime::Unbalanced { .. } => n,
    };
    match n.checked_mul(den) {
        Some(d) => T::ratio(num, d),
        None => T::ratio(num, n) * T::ratio(1, den),
    }
}

fn classic<T: Field>(spec: &ProblemSpec, r: u32) -> T {
    let n = spec.n as i64;
    if r == 0 {
        return spec.multiplier::<T>(1) * T::ratio(1, n);
    }
    let terms = (r + 1..=spec.n).map(|k| paid::<T>(spec, k, k as i64 - 1));
    T::sum(terms) * T::ratio(r as i64, n)
}

/// `sum over k in s+1..=n of p(k) q(k)`, where `q(k)` is the probability
/// that the maximum of the first `k-1` lies in the first `r` and the
/// minimum (or runner-up) in the first `s`: `r(s-1)/((k-1)(k-2))`, or 1 at
/// `k = 2`. Requires `s <= n - 1`.
fn late_stage<T: Field>(spec: &ProblemSpec, r: u32, s: u32) -> T {
    if s == 1 {
        // a single earlier candidate cannot be both extremes once k >= 3
        return spec.multiplier::<T>(2);
    }
    let terms = (s + 1..=spec.n).map(|k| paid::<T>(spec, k, (k as i64 - 1) * (k as i64 - 2)));
    T::sum(terms) * T::from_i64(r as i64 * (s as i64 - 1))
}

fn best_or_worst<T: Field>(spec: &ProblemSpec, r: u32, s: u32) -> T {
    let n = spec.n as i64;
    let (best, worst) = spec.bow_weights::<T>();
    if r == 0 {
        let weight = if spec.n == 1 { best } else { best + worst };
        return spec.multiplier::<T>(1) * weight * T::ratio(1, n);
    }
    let stage_two =
        T::sum((r + 1..=s).map(|k| paid::<T>(spec, k, k as i64 - 1))) * T::from_i64(r as i64);
    (best.clone() * stage_two + (best + worst) * late_stage::<T>(spec, r, s)) * T::ratio(1, n)
}

fn postdoc_second_only<T: Field>(spec: &ProblemSpec, r: u32) -> T {
    let r = r.max(1);
    let n = spec.n as i64;
    let terms = (r + 1..=spec.n).map(|k| spec.multiplier::<T>(k));
    T::sum(terms) * T::ratio(r as i64, n) * T::ratio(1, n - 1)
}

fn postdoc_staged<T: Field>(spec: &ProblemSpec, r: u32, s: u32) -> T {
    let n = spec.n as i64;
    if r == 0 {
        return spec.multiplier::<T>(1) * T::ratio(1, n);
    }
    let stage_two =
        (r + 1..=s).map(|k| paid::<T>(spec, k, k as i64 - 1) * T::from_i64(n - k as i64));
    let stage_two = T::sum(stage_two) * T::ratio(r as i64, n - 1);
    (stage_two + late_stage::<T>(spec, r, s)) * T::ratio(1, n)
}

/// Closed forms, where the literature provides one.
fn closed_form(spec: &ProblemSpec, strat: &Strategy) -> Option<BigRational> {
    let n = spec.n as i64;
    let Strategy::OneThreshold { r } = *strat else {
        return None;
    };
    let r = r as i64;
    let ratio = <BigRational as Field>::ratio;
    match (spec.variant, spec.payoff) {
        (Variant::BestOrWorst, PayoffRegime::Binary) => Some(match (n, r) {
            (1, _) => ratio(1, 1),
            (_, 0) => ratio(2, n),
            _ => ratio(2 * r * (n - r), n * (n - 1)),
        }),
        (Variant::Postdoc, PayoffRegime::Binary) => {
            let r = r.max(1);
            Some(ratio(r * (n - r), n * (n - 1)))
        }
        (Variant::Postdoc, PayoffRegime::Perquisite) => {
            let r = r.max(1);
            Some(ratio(r * (n - r), 2 * n * n) * ratio(3 * n + 1 + r, n - 1))
        }
        _ => None,
    }
}

/// Expected payoff of `strat`, exact when affordable.
pub fn evaluate(spec: &ProblemSpec, strat: &Strategy) -> Result<EvalResult> {
    validate(spec, strat)?;
    if let Some(exact) = closed_form(spec, strat) {
        return Ok(EvalResult::from_exact(exact, Method::ClosedForm));
    }
    if spec.n <= EXACT_LIMIT {
        let exact = value_in::<BigRational>(spec, strat)?;
        Ok(EvalResult::from_exact(exact, Method::Summation))
    } else {
        let value = value_in::<f64>(spec, strat)?;
        Ok(EvalResult::from_float(value, Method::Summation))
    }
}

fn spec_of(variant: Variant, payoff: PayoffRegime, n: u32) -> ProblemSpec {
    ProblemSpec { variant, payoff, n }
}

pub fn classic_binary(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Classic, PayoffRegime::Binary, n),
        &Strategy::OneThreshold { r },
    )
}

pub fn classic_cost(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Classic, PayoffRegime::Cost, n),
        &Strategy::OneThreshold { r },
    )
}

pub fn classic_perquisite(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Classic, PayoffRegime::Perquisite, n),
        &Strategy::OneThreshold { r },
    )
}

pub fn bw_binary(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::BestOrWorst, PayoffRegime::Binary, n),
        &Strategy::OneThreshold { r },
    )
}

pub fn bw_cost(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::BestOrWorst, PayoffRegime::Cost, n),
        &Strategy::OneThreshold { r },
    )
}

pub fn bw_perquisite(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::BestOrWorst, PayoffRegime::Perquisite, n),
        &Strategy::OneThreshold { r },
    )
}

/// Best-or-Worst with payment `best` (M) for the overall best and `worst` (m)
/// for the overall worst, under the staged rule `{r, s}`.
pub fn bw_unbalanced(n: u32, r: u32, s: u32, worst: f64, best: f64) -> Result<EvalResult> {
    let spec = spec_of(
        Variant::BestOrWorst,
        PayoffRegime::Unbalanced { worst, best },
        n,
    );
    evaluate(&spec, &Strategy::TwoThreshold { r, s })
}

pub fn pd_binary(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Postdoc, PayoffRegime::Binary, n),
        &Strategy::OneThreshold { r },
    )
}

/// Postdoc with interview cost under the staged rule `{r, s}`.
pub fn pd_cost(n: u32, r: u32, s: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Postdoc, PayoffRegime::Cost, n),
        &Strategy::TwoThreshold { r, s },
    )
}

pub fn pd_perquisite(n: u32, r: u32) -> Result<EvalResult> {
    evaluate(
        &spec_of(Variant::Postdoc, PayoffRegime::Perquisite, n),
        &Strategy::OneThreshold { r },
    )
}

/// Real maximizer of the Postdoc perquisite payoff, a cubic in `r`.
pub fn pd_perquisite_cutoff_exact(n: u32) -> f64 {
    let n = n as f64;
    (-1.0 - 2.0 * n + (1.0 + 7.0 * n + 13.0 * n * n).sqrt()) / 3.0
}

/// `floor((n - 1/2)/e + 1/2)`.
pub fn gilbert_mosteller_cutoff(n: u32) -> u32 {
    ((n as f64 - 0.5) / std::f64::consts::E + 0.5).floor() as u32
}

/// Double-precision values of every one-threshold rule `r = 0..n-1`, in
/// `O(n)` total via suffix sums.
pub fn one_threshold_profile(spec: &ProblemSpec) -> Result<Vec<f64>> {
    spec.check()?;
    let n = spec.n;
    let nf = n as f64;
    let p = |k: u32| spec.multiplier::<f64>(k);
    // suffix[t] = sum over k in t..=n of term(k)
    let suffix = |term: &dyn Fn(u32) -> f64, from: u32| -> Vec<f64> {
        let mut out = vec![0.0; n as usize + 2];
        let mut acc = Neumaier::default();
        for k in (from..=n).rev() {
            acc.add(term(k));
            out[k as usize] = acc.total();
        }
        out
    };
    let values = match spec.variant {
        Variant::Classic => {
            let tail = suffix(&|k| p(k) / (k as f64 - 1.0), 2);
            (0..n)
                .map(|r| {
                    if r == 0 {
                        p(1) / nf
                    } else {
                        r as f64 / nf * tail[r as usize + 1]
                    }
                })
                .collect()
        }
        Variant::BestOrWorst => {
            let (best, worst) = spec.bow_weights::<f64>();
            let tail = suffix(&|k| p(k) / ((k as f64 - 1.0) * (k as f64 - 2.0)), 3);
            (0..n)
                .map(|r| match r {
                    0 if n == 1 => p(1) * best,
                    0 => p(1) * (best + worst) / nf,
                    1 => p(2) * (best + worst) / nf,
                    _ => {
                        let rf = r as f64;
                        (best + worst) * rf * (rf - 1.0) / nf * tail[r as usize + 1]
                    }
                })
                .collect()
        }
        Variant::Postdoc => {
            let tail = suffix(&p, 1);
            (0..n)
                .map(|r| {
                    let r = r.max(1);
                    r as f64 / (nf * (nf - 1.0)) * tail[r as usize + 1]
                })
                .collect()
        }
    };
    Ok(values)
}

/// Constant-time double-precision evaluation of every staged rule `{r, s}`.
pub struct TwoThresholdTable {
    spec: ProblemSpec,
    /// `stage_two[t]` = sum over `k in 2..=t` of the stage-two term.
    stage_two: Vec<f64>,
    /// `stage_three[t]` = sum over `k in t..=n` (`k >= 3`) of the stage-three term.
    stage_three: Vec<f64>,
    first: f64,
    at_two: f64,
}

impl TwoThresholdTable {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        spec.check()?;
        if spec.variant == Variant::Classic {
            return Err(Error::InvalidCombination(
                "two-threshold rules need bw or postdoc".into(),
            ));
        }
        let n = spec.n;
        let nf = n as f64;
        let p = |k: u32| spec.multiplier::<f64>(k);
        let (best, worst) = spec.bow_weights::<f64>();
        let (two, three): (StageTerm<'_>, StageTerm<'_>) = match spec.variant {
            Variant::BestOrWorst => (
                Box::new(move |k| best * p(k) / ((k as f64 - 1.0) * nf)),
                Box::new(move |k| {
                    (best + worst) * p(k) / (nf * (k as f64 - 1.0) * (k as f64 - 2.0))
                }),
            ),
            _ => (
                Box::new(move |k| p(k) * (nf - k as f64) / (nf * (nf - 1.0) * (k as f64 - 1.0))),
                Box::new(move |k| p(k) / (nf * (k as f64 - 1.0) * (k as f64 - 2.0))),
            ),
        };
        let mut stage_two = vec![0.0; n as usize + 2];
        let mut acc = Neumaier::default();
        for k in 2..=n {
            acc.add(two(k));
            stage_two[k as usize] = acc.total();
        }
        let mut stage_three = vec![0.0; n as usize + 2];
        let mut acc = Neumaier::default();
        for k in (3..=n).rev() {
            acc.add(three(k));
            stage_three[k as usize] = acc.total();
        }
        let (first, at_two) = match spec.variant {
            Variant::BestOrWorst if n == 1 => (p(1) * best, 0.0),
            Variant::BestOrWorst => (
                p(1) * (best + worst) / nf,
                if n >= 2 {
                    p(2) * (best + worst) / nf
                } else {
                    0.0
                },
            ),
            _ => (p(1) / nf, if n >= 2 { p(2) / nf } else { 0.0 }),
        };
        Ok(TwoThresholdTable {
            spec: *spec,
            stage_two,
            stage_three,
            first,
            at_two,
        })
    }

    /// Value of `{r, s}`; requires `0 <= r <= s <= n-1`.
    pub fn value(&self, r: u32, s: u32) -> f64 {
        debug_assert!(r <= s && s < self.spec.n);
        if r == 0 {
            return self.first;
        }
        let rf = r as f64;
        let two = rf * (self.stage_two[s as usize] - self.stage_two[r as usize]);
        let three = if s == 1 {
            self.at_two
        } else {
            rf * (s as f64 - 1.0) * self.stage_three[s as usize + 1]
        };
        two + three
    }
}

/// Outcome of an argmax scan over cutoff rules.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ArgmaxResult {
    pub best_strategy: Strategy,
    pub best_value: EvalResult,
    /// Number of rules whose value was compared.
    pub scanned: u64,
}

/// Keeps the running maximum and every rule within the tie band of it, in
/// scan order.
struct Tracker {
    best: f64,
    near: Vec<(Strategy, f64)>,
    scanned: u64,
}

impl Tracker {
    fn new() -> Self {
        Tracker {
            best: f64::NEG_INFINITY,
            near: Vec::new(),
            scanned: 0,
        }
    }

    fn band(v: f64) -> f64 {
        TIE_BAND * v.abs().max(1.0)
    }

    fn push(&mut self, strat: Strategy, value: f64) {
        self.scanned += 1;
        if value > self.best {
            self.best = value;
            let floor = value - Self::band(value);
            self.near.retain(|(_, v)| *v >= floor);
        }
        if value >= self.best - Self::band(self.best) {
            self.near.push((strat, value));
        }
    }

    /// Resolves near-ties exactly when the evaluator is exact, else by the
    /// float value; ties go to the earliest pushed rule.
    fn finish(self, spec: &ProblemSpec) -> Result<ArgmaxResult> {
        let mut chosen: Option<(Strategy, EvalResult)> = None;
        for (strat, _) in &self.near {
            let eval = evaluate(spec, strat)?;
            let better = match &chosen {
                None => true,
                Some((_, cur)) => match (&eval.exact, &cur.exact) {
                    (Some(a), Some(b)) => a > b,
                    _ => eval.value > cur.value,
                },
            };
            if better {
                chosen = Some((*strat, eval));
            }
        }
        let (best_strategy, best_value) = chosen
            .ok_or_else(|| Error::InvalidParameters("no feasible strategy to scan".into()))?;
        Ok(ArgmaxResult {
            best_strategy,
            best_value,
            scanned: self.scanned,
        })
    }
}

/// Best one-threshold rule by exhaustive scan; ties go to the smallest `r`.
///
/// The Postdoc scan starts at `r = 1`, since its `r = 0` rule coincides with
/// `r = 1`.
pub fn argmax_one(spec: &ProblemSpec) -> Result<ArgmaxResult> {
    let values = one_threshold_profile(spec)?;
    let start = if spec.variant == Variant::Postdoc {
        1
    } else {
        0
    };
    let mut tracker = Tracker::new();
    for r in start..spec.n {
        tracker.push(Strategy::OneThreshold { r }, values[r as usize]);
    }
    tracker.finish(spec)
}

/// Best staged rule `{r, s}`; ties go to the smallest `r`, then `s`.
///
/// Scans the full grid when `n <= FULL_GRID_LIMIT` or `full_scan` is set.
/// Otherwise it scans a coarse grid of stride `ceil(n/1000)` and refines
/// `+-stride` around the coarse maximum, which is a heuristic.
pub fn argmax_two(spec: &ProblemSpec, full_scan: bool) -> Result<ArgmaxResult> {
    let table = TwoThresholdTable::new(spec)?;
    let n = spec.n;
    let mut tracker = Tracker::new();
    if full_scan || n <= FULL_GRID_LIMIT {
        for r in 0..n {
            for s in r..n {
                tracker.push(Strategy::TwoThreshold { r, s }, table.value(r, s));
            }
        }
        return tracker.finish(spec);
    }
    let stride = n.div_ceil(1000);
    let mut coarse = (0u32, 0u32, f64::NEG_INFINITY);
    let mut scanned = 0u64;
    for r in (0..n).step_by(stride as usize) {
        for s in (r..n).step_by(stride as usize) {
            scanned += 1;
            let v = table.value(r, s);
            if v > coarse.2 {
                coarse = (r, s, v);
            }
        }
    }
    let (r0, s0, _) = coarse;
    for r in r0.saturating_sub(stride)..=(r0 + stride).min(n - 1) {
        for s in s0.saturating_sub(stride).max(r)..=(s0 + stride).min(n - 1) {
            tracker.push(Strategy::TwoThreshold { r, s }, table.value(r, s));
        }
    }
    let mut result = tracker.finish(spec)?;
    result.scanned += scanned;
    Ok(result)
}

/// Best-or-Worst binary argmax over `1 <= r <= n-1`, scanned rather than
/// assumed. For `n = 3` every `r` ties and the smallest (`r = 1`) is kept.
pub fn bw_argmax(n: u32) -> Result<ArgmaxResult> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!(
            "bw_argmax needs n >= 3, got {n}"
        )));
    }
    let spec = spec_of(Variant::BestOrWorst, PayoffRegime::Binary, n);
    let nf = n as f64;
    let mut tracker = Tracker::new();
    for r in 1..n {
        let rf = r as f64;
        tracker.push(
            Strategy::OneThreshold { r },
            2.0 * rf * (nf - rf) / (nf * (nf - 1.0)),
        );
    }
    tracker.finish(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        <BigRational as Field>::ratio(num, den)
    }

    fn exact(r: Result<EvalResult>) -> BigRational {
        r.unwrap().exact.expect("exact value")
    }

    #[test]
    fn classic_binary_examples() {
        assert_eq!(exact(classic_binary(4, 1)), q(11, 24));
        assert_eq!(exact(classic_binary(2, 1)), q(1, 2));
        assert_eq!(exact(classic_binary(7, 0)), q(1, 7));
        let big = classic_binary(10_000, (10_000f64 / std::f64::consts::E).floor() as u32).unwrap();
        assert!((big.value - (-1f64).exp()).abs() < 2e-3);
        assert!(big.exact.is_none());
    }

    #[test]
    fn gilbert_mosteller_examples() {
        assert_eq!(gilbert_mosteller_cutoff(2), 1);
        assert_eq!(gilbert_mosteller_cutoff(3), 1);
        assert_eq!(gilbert_mosteller_cutoff(100), 37);
    }

    #[test]
    fn cost_and_perquisite_examples() {
        assert_eq!(exact(classic_cost(4, 1)), q(5, 32));
        assert_eq!(exact(classic_cost(2, 1)), q(0, 1));
        assert_eq!(exact(classic_perquisite(2, 1)), q(1, 1));
        assert_eq!(exact(classic_perquisite(4, 2)), q(37, 48));
        assert_eq!(exact(bw_cost(4, 2)), q(1, 8));
        assert_eq!(exact(bw_cost(3, 2)), q(0, 1));
        assert_eq!(exact(bw_perquisite(3, 2)), q(4, 3));
        assert_eq!(exact(bw_perquisite(4, 3)), q(1, 1));
    }

    #[test]
    fn best_or_worst_binary_examples() {
        assert_eq!(exact(bw_binary(4, 2)), q(2, 3));
        assert_eq!(exact(bw_binary(5, 2)), q(3, 5));
        assert_eq!(exact(bw_binary(6, 1)), q(1, 3));
        assert_eq!(exact(bw_binary(6, 0)), q(1, 3));
        assert_eq!(exact(bw_binary(1, 0)), q(1, 1));
        assert_eq!(exact(bw_binary(2, 0)), q(1, 1));
        assert_eq!(exact(bw_binary(2, 1)), q(1, 1));
    }

    #[test]
    fn closed_form_matches_summation() {
        for n in 1..60 {
            for r in 0..n {
                let spec = spec_of(Variant::BestOrWorst, PayoffRegime::Binary, n);
                let strat = Strategy::OneThreshold { r };
                assert_eq!(
                    closed_form(&spec, &strat).unwrap(),
                    value_in::<BigRational>(&spec, &strat).unwrap()
                );
                if n >= 2 {
                    for payoff in [PayoffRegime::Binary, PayoffRegime::Perquisite] {
                        let spec = spec_of(Variant::Postdoc, payoff, n);
                        assert_eq!(
                            closed_form(&spec, &strat).unwrap(),
                            value_in::<BigRational>(&spec, &strat).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bw_argmax_examples() {
        let a = bw_argmax(10).unwrap();
        assert_eq!(a.best_strategy, Strategy::OneThreshold { r: 5 });
        assert_eq!(a.best_value.exact.unwrap(), q(5, 9));
        let a = bw_argmax(11).unwrap();
        assert_eq!(a.best_strategy, Strategy::OneThreshold { r: 5 });
        assert_eq!(a.best_value.exact.unwrap(), q(6, 11));
        let a = bw_argmax(3).unwrap();
        assert_eq!(a.best_strategy, Strategy::OneThreshold { r: 1 });
        assert_eq!(a.best_value.exact.unwrap(), q(2, 3));
        assert_eq!(a.scanned, 2);
        assert!(bw_argmax(2).is_err());
    }

    #[test]
    fn unbalanced_examples() {
        assert_eq!(exact(bw_unbalanced(5, 2, 2, 1.0, 1.0)), q(3, 5));
        assert_eq!(exact(bw_unbalanced(4, 1, 2, 0.0, 1.0)), q(5, 12));
        assert!(matches!(
            bw_unbalanced(4, 1, 2, 2.0, 1.0),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            bw_unbalanced(4, 3, 2, 0.0, 1.0),
            Err(Error::InvalidThreshold(_))
        ));
    }

    #[test]
    fn postdoc_examples() {
        assert_eq!(exact(pd_binary(4, 2)), q(1, 3));
        assert_eq!(exact(pd_binary(2, 1)), q(1, 2));
        assert_eq!(exact(pd_binary(5, 2)), q(3, 10));
        assert_eq!(exact(pd_perquisite(4, 2)), q(5, 8));
        assert_eq!(exact(pd_perquisite(2, 1)), q(1, 1));
        assert_eq!(exact(pd_binary(9, 0)), exact(pd_binary(9, 1)));
        // stage three at k=3 pays 0; stage two at k=2 contributes (1/3)(1/6)
        assert_eq!(exact(pd_cost(3, 1, 2)), q(1, 18));
    }

    #[test]
    fn perquisite_cutoff_formula() {
        assert!((pd_perquisite_cutoff_exact(10) - (-21.0 + 1371f64.sqrt()) / 3.0).abs() < 1e-12);
        assert!((pd_perquisite_cutoff_exact(10) - 5.3423).abs() < 1e-4);
        assert!((pd_perquisite_cutoff_exact(2) - (-5.0 + 67f64.sqrt()) / 3.0).abs() < 1e-12);
        assert_eq!(pd_perquisite_cutoff_exact(2).round(), 1.0);
        let ratio = pd_perquisite_cutoff_exact(1_000_000) / 1e6;
        assert!((ratio - (13f64.sqrt() - 2.0) / 3.0).abs() < 1e-6);
        let spec = spec_of(Variant::Postdoc, PayoffRegime::Perquisite, 10);
        assert_eq!(
            argmax_one(&spec).unwrap().best_strategy,
            Strategy::OneThreshold { r: 5 }
        );
    }

    #[test]
    fn argmax_examples() {
        let classic = spec_of(Variant::Classic, PayoffRegime::Binary, 100);
        assert_eq!(
            argmax_one(&classic).unwrap().best_strategy,
            Strategy::OneThreshold { r: 37 }
        );
        let bw = spec_of(Variant::BestOrWorst, PayoffRegime::Binary, 1000);
        assert_eq!(
            argmax_one(&bw).unwrap().best_strategy,
            Strategy::OneThreshold { r: 500 }
        );
        let pd = spec_of(Variant::Postdoc, PayoffRegime::Binary, 1000);
        let a = argmax_one(&pd).unwrap();
        assert_eq!(a.best_strategy, Strategy::OneThreshold { r: 500 });
        assert_eq!(a.scanned, 999);
    }

    #[test]
    fn scan_tables_match_generic_evaluator() {
        let payoffs = [
            PayoffRegime::Binary,
            PayoffRegime::Cost,
            PayoffRegime::Perquisite,
            PayoffRegime::Unbalanced {
                worst: 0.5,
                best: 2.0,
            },
        ];
        for n in [2u32, 3, 4, 7, 30] {
            for variant in Variant::ALL {
                for payoff in payoffs {
                    let spec = spec_of(variant, payoff, n);
                    if spec.check().is_err() {
                        continue;
                    }
                    let profile = one_threshold_profile(&spec).unwrap();
                    for r in 0..n {
                        let v = value_in::<f64>(&spec, &Strategy::OneThreshold { r }).unwrap();
                        assert!((profile[r as usize] - v).abs() < 1e-13, "{spec} r={r}");
                    }
                    if variant == Variant::Classic {
                        continue;
                    }
                    let table = TwoThresholdTable::new(&spec).unwrap();
                    for r in 0..n {
                        for s in r..n {
                            let v =
                                value_in::<f64>(&spec, &Strategy::TwoThreshold { r, s }).unwrap();
                            assert!((table.value(r, s) - v).abs() < 1e-13, "{spec} r={r} s={s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coarse_to_fine_agrees_with_full_grid_on_smooth_surface() {
        let spec = spec_of(Variant::Postdoc, PayoffRegime::Cost, 2500);
        let coarse = argmax_two(&spec, false).unwrap();
        let full = argmax_two(&spec, true).unwrap();
        assert_eq!(coarse.best_strategy, full.best_strategy);
        assert!(coarse.scanned < full.scanned);
    }
}
