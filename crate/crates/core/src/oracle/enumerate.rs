use num_rational::BigRational;
use rayon::prelude::*;

use crate::model::{validate, EvalResult, Method, ProblemSpec, Strategy};
use crate::numeric::Field;
use crate::{Error, Result};

/// Largest `n` accepted by the enumerators.
pub const ENUMERATION_LIMIT: u32 = 10;

/// `counts[s][k][i]`: orders on which strategy `s` stops at interview `k`
/// on the candidate of overall rank `i`.
type Counts = Vec<Vec<Vec<u64>>>;

fn tally(
    order: &[u32],
    strats: &[Strategy],
    spec: &ProblemSpec,
    relative: &mut [u32],
    counts: &mut Counts,
) {
    for (k, &rank) in order.iter().enumerate() {
        relative[k] = 1 + order[..k].iter().filter(|&&earlier| earlier < rank).count() as u32;
    }
    for (s, strat) in strats.iter().enumerate() {
        let stop = (1..=spec.n).find(|&k| strat.accepts(spec.variant, k, relative[k as usize - 1]));
        if let Some(k) = stop {
            counts[s][k as usize][order[k as usize - 1] as usize] += 1;
        }
    }
}

/// Visits every ordering of `rest` behind the fixed first element (Heap's
/// algorithm, iterative).
fn for_each_order(first: u32, rest: &mut [u32], mut visit: impl FnMut(&[u32])) {
    let mut order = Vec::with_capacity(rest.len() + 1);
    let mut emit = |rest: &[u32]| {
        order.clear();
        order.push(first);
        order.extend_from_slice(rest);
        visit(&order);
    };
    emit(rest);
    let mut c = vec![0usize; rest.len()];
    let mut i = 1;
    while i < rest.len() {
        if c[i] < i {
            if i % 2 == 0 {
                rest.swap(0, i);
            } else {
                rest.swap(c[i], i);
            }
            emit(rest);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Exact values of several rules for one spec in a single pass over all
/// `n!` orders.
pub fn enumerate_strategies(spec: &ProblemSpec, strats: &[Strategy]) -> Result<Vec<EvalResult>> {
    spec.check()?;
    if spec.n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit(format!(
            "enumeration supports n <= {ENUMERATION_LIMIT}, got {}",
            spec.n
        )));
    }
    for strat in strats {
        validate(spec, strat)?;
    }
    let n = spec.n;
    let empty = || vec![vec![vec![0u64; n as usize + 1]; n as usize + 1]; strats.len()];
    let counts = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut counts = empty();
            let mut relative = vec![0u32; n as usize];
            let mut rest: Vec<u32> = (1..=n).filter(|&v| v != first).collect();
            for_each_order(first, &mut rest, |order| {
                tally(order, strats, spec, &mut relative, &mut counts)
            });
            counts
        })
        .reduce(empty, |mut acc, part| {
            for (a, p) in acc
                .iter_mut()
                .flatten()
                .flatten()
                .zip(part.iter().flatten().flatten())
            {
                *a += p;
            }
            acc
        });
    let orders: u64 = (1..=n as u64).product();
    let results = counts
        .iter()
        .map(|per_strategy| {
            let mut total = <BigRational as Field>::zero();
            for k in 1..=n {
                for i in 1..=n {
                    let count = per_strategy[k as usize][i as usize];
                    if count > 0 {
                        let payoff =
                            spec.multiplier::<BigRational>(k) * spec.rank_weight::<BigRational>(i);
                        total += payoff * <BigRational as Field>::from_i64(count as i64);
                    }
                }
            }
            EvalResult::from_exact(
                total / <BigRational as Field>::from_i64(orders as i64),
                Method::Enumeration,
            )
        })
        .collect();
    Ok(results)
}

/// Exact value of `strat` averaged over all `n!` interview orders.
pub fn enumerate_permutations(spec: &ProblemSpec, strat: &Strategy) -> Result<EvalResult> {
    Ok(enumerate_strategies(spec, std::slice::from_ref(strat))?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PayoffRegime, Variant};
    use std::collections::HashSet;

    #[test]
    fn heap_visits_every_order_once() {
        let mut seen = HashSet::new();
        let mut rest = vec![1, 2, 3, 4];
        for_each_order(0, &mut rest, |o| {
            assert!(seen.insert(o.to_vec()));
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn examples() {
        let one = |variant, n, r| {
            let spec = ProblemSpec::new(variant, PayoffRegime::Binary, n).unwrap();
            enumerate_permutations(&spec, &Strategy::OneThreshold { r })
                .unwrap()
                .exact_string()
                .unwrap()
        };
        assert_eq!(one(Variant::Classic, 4, 1), "11/24");
        assert_eq!(one(Variant::BestOrWorst, 4, 2), "2/3");
        assert_eq!(one(Variant::Postdoc, 4, 2), "1/3");
        assert_eq!(one(Variant::Postdoc, 5, 2), "3/10");
        assert_eq!(one(Variant::BestOrWorst, 3, 1), "2/3");
    }

    #[test]
    fn size_limit() {
        let spec = ProblemSpec::new(Variant::Classic, PayoffRegime::Binary, 11).unwrap();
        assert!(matches!(
            enumerate_permutations(&spec, &Strategy::OneThreshold { r: 3 }),
            Err(Error::SizeLimit(_))
        ));
    }
}
