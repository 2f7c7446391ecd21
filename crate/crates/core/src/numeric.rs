//! Scalar abstraction shared by the exact (rational) and floating evaluators.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arithmetic needed by the evaluators and the dynamic program.
///
/// Implemented for [`BigRational`] (exact) and `f64` (compensated sums,
/// tolerant comparisons).
pub trait Field:
    Clone
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    /// Exact for rationals: the binary value of `v` is converted without rounding.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sum<I: IntoIterator<Item = Self>>(terms: I) -> Self;
    /// Ordering that treats values within the type's rounding slack as equal.
    fn compare(&self, other: &Self) -> Ordering;
    /// Probability that the `k`-th candidate, of relative rank `j` among the
    /// first `k`, has overall rank `i` among `n`.
    fn rank_prob(n: u32, k: u32, j: u32, i: u32) -> Self;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn max_of(self, other: Self) -> Self {
        if other.compare(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

/// Relative slack for float comparisons in the dynamic program.
pub const FLOAT_SLACK: f64 = 1e-9;

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sum<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        let mut acc = Neumaier::default();
        for t in terms {
            acc.add(t);
        }
        acc.total()
    }

    fn compare(&self, other: &Self) -> Ordering {
        let scale = self.abs().max(other.abs()).max(1.0);
        if (self - other).abs() <= FLOAT_SLACK * scale {
            Ordering::Equal
        } else if self < other {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn rank_prob(n: u32, k: u32, j: u32, i: u32) -> Self {
        if !rank_prob_support(n, k, j, i) {
            return 0.0;
        }
        let ln = ln_binomial(i - 1, j - 1) + ln_binomial(n - i, k - j) - ln_binomial(n, k);
        ln.exp()
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite payoff parameter")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sum<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(<BigRational as Zero>::zero(), |acc, t| acc + t)
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn rank_prob(n: u32, k: u32, j: u32, i: u32) -> Self {
        if !rank_prob_support(n, k, j, i) {
            return <BigRational as Zero>::zero();
        }
        let num = binomial(i - 1, j - 1) * binomial(n - i, k - j);
        BigRational::new(BigInt::from(num), BigInt::from(binomial(n, k)))
    }
}

fn rank_prob_support(n: u32, k: u32, j: u32, i: u32) -> bool {
    1 <= j && j <= k && k <= n && j <= i && i + k <= n + j
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// `ln C(n, k)` in double precision.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: u32) -> f64 {
    // Stirling series beyond the table; the table covers every n the DP uses.
    const TABLE: usize = 8192;
    static LN_FACT: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
    let table = LN_FACT.get_or_init(|| {
        let mut acc = Neumaier::default();
        let mut out = Vec::with_capacity(TABLE);
        out.push(0.0);
        for v in 1..TABLE {
            acc.add((v as f64).ln());
            out.push(acc.total());
        }
        out
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => {
            let x = n as f64 + 1.0;
            (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
                - 1.0 / (360.0 * x * x * x)
        }
    }
}

/// Harmonic number `H_n = 1 + 1/2 + ... + 1/n` as an exact rational.
pub fn harmonic(n: u32) -> BigRational {
    <BigRational as Field>::sum((1..=n).map(|k| <BigRational as Field>::ratio(1, k as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn float_rank_prob_matches_exact() {
        for (n, k, j, i) in [
            (10, 3, 1, 1),
            (10, 3, 2, 4),
            (40, 17, 5, 9),
            (100, 50, 50, 100),
        ] {
            let exact = <BigRational as Field>::rank_prob(n, k, j, i);
            let float = <f64 as Field>::rank_prob(n, k, j, i);
            let e = Field::to_f64(&exact);
            assert!(
                (e - float).abs() <= 1e-12 * e.max(1e-300),
                "{n} {k} {j} {i}: {e} vs {float}"
            );
        }
    }

    #[test]
    fn stirling_tail_is_continuous_with_table() {
        let direct = (1..=9000u32).map(|v| (v as f64).ln()).sum::<f64>();
        assert!((ln_factorial(9000) - direct).abs() < 1e-8);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let terms = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000));
        let s = <f64 as Field>::sum(terms);
        assert!((s - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn float_compare_slack() {
        assert_eq!(1.0f64.compare(&(1.0 + 1e-12)), Ordering::Equal);
        assert_eq!(1.0f64.compare(&1.001), Ordering::Less);
    }

    #[test]
    fn harmonic_small() {
        assert_eq!(harmonic(4), <BigRational as Field>::ratio(25, 12));
        assert_eq!(harmonic(0), <BigRational as Zero>::zero());
    }
}
