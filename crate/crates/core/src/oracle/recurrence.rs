use num_rational::BigRational;

use crate::exact::pd_binary;
use crate::numeric::{binomial, Field};

fn ratio(a: i64, b: i64) -> BigRational {
    <BigRational as Field>::ratio(a, b)
}

/// `T_n(r)` for `r = 1..=n-1` (index `r - 1`) from the backward recurrence
/// `T(r) = C(r+1, 2) / ((r+1) C(n, 2)) + r T(r+1) / (r+1)`, `T(n-1) = 1/n`.
pub fn t_recurrence(n: u32) -> Vec<BigRational> {
    if n < 2 {
        return Vec::new();
    }
    let pairs = BigRational::from_integer(binomial(n, 2).into());
    let mut t = vec![ratio(1, n as i64); n as usize - 1];
    for r in (1..n - 1).rev() {
        let r64 = r as i64;
        let first = BigRational::from_integer(binomial(r + 1, 2).into()) / pairs.clone()
            * ratio(1, r64 + 1);
        t[r as usize - 1] = first + ratio(r64, r64 + 1) * t[r as usize].clone();
    }
    t
}

/// First `r` at which the recurrence disagrees with the Postdoc binary
/// payoff, if any.
pub fn recurrence_first_failure(n: u32) -> Option<u32> {
    t_recurrence(n).into_iter().zip(1..).find_map(|(t, r)| {
        let direct = pd_binary(n, r).ok().and_then(|e| e.exact);
        (direct.as_ref() != Some(&t)).then_some(r)
    })
}

/// Whether the recurrence reproduces the Postdoc binary payoff for every
/// `1 <= r <= n-1`.
pub fn recurrence_check_t(n: u32) -> bool {
    recurrence_first_failure(n).is_none()
}
