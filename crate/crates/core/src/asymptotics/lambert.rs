//! Real branches of the Lambert-W function.

use std::f64::consts::E;

use crate::{Error, Result};

const TOL: f64 = 1e-14;
const MAX_ITER: usize = 50;
const BRANCH_SLACK: f64 = 1e-15;
const BRANCH_POINT: f64 = -1.0 / E;

/// Halley refinement of `w e^w = x` from `w`.
fn halley(x: f64, mut w: f64) -> Result<f64> {
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        // residual at rounding level: near the branch point the step
        // criterion is unreachable
        if wp1 == 0.0 || f.abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(w);
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            return Ok(w);
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= TOL * (1.0 + w.abs()) {
            return Ok(w);
        }
    }
    Err(Error::Convergence(format!(
        "Lambert-W Halley iteration did not settle for x={x}"
    )))
}

/// `sqrt(2 (e x + 1))`, the branch-point expansion variable.
fn branch_distance(x: f64) -> f64 {
    (2.0 * (E * x + 1.0)).max(0.0).sqrt()
}

fn check_lower(x: f64) -> Result<()> {
    if x.is_nan() || x < BRANCH_POINT - BRANCH_SLACK {
        return Err(Error::Domain(format!("Lambert-W needs x >= -1/e, got {x}")));
    }
    Ok(())
}

/// Principal branch `W0`, with `W0(x) >= -1`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    check_lower(x)?;
    if x <= BRANCH_POINT {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let guess = if x < -0.3 {
        let p = branch_distance(x);
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 3.0 {
        x.ln_1p() * (1.0 - x.ln_1p() / (2.0 + x.ln_1p()))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    Ok(halley(x, guess)?.max(-1.0))
}

/// Lower branch `W-1` on `[-1/e, 0)`, with `W-1(x) <= -1`.
pub fn lambert_wm1(x: f64) -> Result<f64> {
    check_lower(x)?;
    if x.is_nan() || x >= 0.0 {
        return Err(Error::Domain(format!(
            "Lambert-W lower branch needs x < 0, got {x}"
        )));
    }
    if x <= BRANCH_POINT {
        return Ok(-1.0);
    }
    let guess = if x < -0.25 {
        let p = branch_distance(x);
        -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p
    } else {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    Ok(halley(x, guess)?.min(-1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn principal_branch_examples() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_w0(2.0).unwrap() - 0.852_605_502_013_725_5).abs() < 1e-14);
        assert!((lambert_w0(-1.0 / E).unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(lambert_w0(-0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn lower_branch_examples() {
        assert!((lambert_wm1(-1.0 / E).unwrap() + 1.0).abs() < 1e-12);
        let x = -1.0 / (2.0 * 0.5f64.exp());
        let w = lambert_wm1(x).unwrap();
        assert!((w + 1.756_431_208_626_17).abs() < 1e-12, "{w}");
        let w = lambert_wm1(-0.1).unwrap();
        let (mut lo, mut hi) = (-10.0f64, -1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            // w e^w is decreasing on (-inf, -1]
            if mid * mid.exp() > -0.1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((w - 0.5 * (lo + hi)).abs() < 1e-12);
        assert!(matches!(lambert_wm1(0.0), Err(Error::Domain(_))));
        assert!(matches!(lambert_wm1(-0.4), Err(Error::Domain(_))));
    }

    #[test]
    fn residuals_are_small() {
        for x in [-0.367, -0.3, -0.1, 1e-8, 0.5, 3.0, 100.0, 1e6] {
            let w = lambert_w0(x).unwrap();
            assert!(
                (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1e-300),
                "w0({x})"
            );
        }
        for x in [-0.367, -0.3, -0.1, -1e-3, -1e-8] {
            let w = lambert_wm1(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs(), "wm1({x})");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn principal_round_trip(w in -1.0f64..10.0) {
            // sensitivity diverges at the branch point
            prop_assume!(w > -1.0 + 1e-4);
            let back = lambert_w0(w * w.exp()).unwrap();
            prop_assert!((back - w).abs() < 1e-10, "{} -> {}", w, back);
        }

        #[test]
        fn lower_round_trip(w in -20.0f64..-1.0) {
            prop_assume!(w < -1.0 - 1e-4);
            let back = lambert_wm1(w * w.exp()).unwrap();
            prop_assert!((back - w).abs() < 1e-10, "{} -> {}", w, back);
        }
    }
}
