use std::cmp::Ordering;
use std::io::{self, Write};

use num_rational::BigRational;
use serde::Serialize;

use crate::model::{EvalResult, Method, ProblemSpec};
use crate::numeric::Field;
use crate::{Error, Result};

/// Largest `n` solved in exact rationals.
pub const DP_EXACT_LIMIT: u32 = 300;
/// Largest `n` accepted by [`dp_solve`].
pub const DP_LIMIT: u32 = 5000;

/// Strict comparison of accepting against continuing at one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    Accept,
    Reject,
    Indifferent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn label(self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        }
    }
}

/// Optimal decisions and values over every `(k, j)` with `1 <= j <= k <= n`.
#[derive(Debug, Clone)]
pub struct Policy {
    spec: ProblemSpec,
    /// Row-major lower triangle: `(k, j)` lives at `k(k-1)/2 + j - 1`.
    accept: Vec<f64>,
    /// `reject[k]` for `k = 0..=n`.
    reject: Vec<f64>,
    preference: Vec<Preference>,
    root: EvalResult,
}

fn slot(k: u32, j: u32) -> usize {
    let k = k as usize;
    k * (k - 1) / 2 + (j as usize - 1)
}

struct Tables<T> {
    accept: Vec<T>,
    reject: Vec<T>,
    preference: Vec<Preference>,
}

fn backward<T: Field>(spec: &ProblemSpec) -> Tables<T> {
    let n = spec.n;
    let targets: Vec<(u32, T)> = spec
        .target_ranks()
        .into_iter()
        .map(|i| (i, spec.rank_weight::<T>(i)))
        .collect();
    let mut accept = Vec::with_capacity(slot(n + 1, 1));
    for k in 1..=n {
        let multiplier = spec.multiplier::<T>(k);
        for j in 1..=k {
            let hit = T::sum(
                targets
                    .iter()
                    .map(|(i, w)| w.clone() * T::rank_prob(n, k, j, *i)),
            );
            accept.push(multiplier.clone() * hit);
        }
    }
    let mut reject = vec![T::zero(); n as usize + 1];
    for k in (0..n).rev() {
        let next = reject[k as usize + 1].clone();
        let row = &accept[slot(k + 1, 1)..slot(k + 2, 1)];
        let mut waiting = 0i64;
        let mut stopping = Vec::new();
        for a in row {
            if a.compare(&next) == Ordering::Greater {
                stopping.push(a.clone());
            } else {
                waiting += 1;
            }
        }
        reject[k as usize] =
            (T::from_i64(waiting) * next + T::sum(stopping)) * T::ratio(1, k as i64 + 1);
    }
    let mut preference = Vec::with_capacity(accept.len());
    for k in 1..=n {
        for j in 1..=k {
            preference.push(match accept[slot(k, j)].compare(&reject[k as usize]) {
                Ordering::Greater => Preference::Accept,
                Ordering::Less => Preference::Reject,
                Ordering::Equal => Preference::Indifferent,
            });
        }
    }
    Tables {
        accept,
        reject,
        preference,
    }
}

/// Backward induction over relative-rank states.
///
/// Exact for `n <= DP_EXACT_LIMIT`; double precision with relative
/// comparison slack [`crate::numeric::FLOAT_SLACK`] above.
pub fn dp_solve(spec: &ProblemSpec) -> Result<Policy> {
    spec.check()?;
    if spec.n > DP_LIMIT {
        return Err(Error::SizeLimit(format!(
            "dp_solve supports n <= {DP_LIMIT}, got {}",
            spec.n
        )));
    }
    fn floats<T: Field>(v: &[T]) -> Vec<f64> {
        v.iter().map(Field::to_f64).collect()
    }
    if spec.n <= DP_EXACT_LIMIT {
        let t = backward::<BigRational>(spec);
        let root = EvalResult::from_exact(t.reject[0].clone(), Method::Dp);
        Ok(Policy {
            spec: *spec,
            accept: floats(&t.accept),
            reject: floats(&t.reject),
            preference: t.preference,
            root,
        })
    } else {
        let t = backward::<f64>(spec);
        let root = EvalResult::from_float(t.reject[0], Method::Dp);
        Ok(Policy {
            spec: *spec,
            accept: t.accept,
            reject: t.reject,
            preference: t.preference,
            root,
        })
    }
}

impl Policy {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    /// Optimal expected payoff before the first interview.
    pub fn root(&self) -> &EvalResult {
        &self.root
    }

    fn check(&self, k: u32, j: u32) {
        assert!(
            1 <= j && j <= k && k <= self.spec.n,
            "state (k={k}, j={j}) outside n={}",
            self.spec.n
        );
    }

    /// Expected payoff of accepting at `(k, j)`.
    pub fn accept_value(&self, k: u32, j: u32) -> f64 {
        self.check(k, j);
        self.accept[slot(k, j)]
    }

    /// Expected payoff of continuing optimally after rejecting at interview
    /// `k`, for `k = 0..=n`.
    pub fn reject_value(&self, k: u32) -> f64 {
        self.reject[k as usize]
    }

    pub fn value(&self, k: u32, j: u32) -> f64 {
        self.accept_value(k, j).max(self.reject_value(k))
    }

    pub fn preference(&self, k: u32, j: u32) -> Preference {
        self.check(k, j);
        self.preference[slot(k, j)]
    }

    /// Optimal action; ties resolve to rejecting.
    pub fn decision(&self, k: u32, j: u32) -> Decision {
        match self.preference(k, j) {
            Preference::Accept => Decision::Accept,
            Preference::Reject | Preference::Indifferent => Decision::Reject,
        }
    }

    /// Writes `k,j,decision,value` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "k,j,decision,value")?;
        for k in 1..=self.spec.n {
            for j in 1..=k {
                writeln!(
                    out,
                    "{k},{j},{},{}",
                    self.decision(k, j).label(),
                    self.value(k, j)
                )?;
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}
