//! Bracketed scalar root finding.

use crate::{Error, Result};

/// Root of `f` in `[lo, hi]` by bisection to a narrow bracket, then Newton
/// steps with derivative `df`, kept inside the bracket.
pub fn bisect_newton(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    while hi - lo > 1e-6 * (1.0 + lo.abs()) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let step = f(x) / df(x);
        let next = x - step;
        x = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x);
        if fx == 0.0 || step.abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
    }
    Err(Error::Convergence(format!(
        "Newton polish did not settle near {x}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let x = bisect_newton(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn missing_sign_change_is_reported() {
        assert!(matches!(
            bisect_newton(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0),
            Err(Error::Convergence(_))
        ));
    }
}
