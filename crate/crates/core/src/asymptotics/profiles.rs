//! Limit profiles: the pointwise limits of a rule's expected payoff when the
//! cutoffs scale as `r = x n` (and `s = y n`) with `n -> infinity`.

use crate::model::{PayoffRegime, Variant};
use crate::{Error, Result};

fn unit_interval(x: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must lie in [0, 1], got {x}")))
    }
}

/// Limit of the one-threshold payoff at cutoff ratio `x`.
pub fn scaled_profile(variant: Variant, payoff: PayoffRegime, x: f64) -> Result<f64> {
    unit_interval(x, "x")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let l = x.ln();
    Ok(match (variant, payoff) {
        (Variant::Classic, PayoffRegime::Binary) => -x * l,
        (Variant::Classic, PayoffRegime::Cost) => x * (-1.0 + x - l),
        (Variant::Classic, PayoffRegime::Perquisite) => -x * (-1.0 + x + l),
        (Variant::BestOrWorst, PayoffRegime::Binary) => 2.0 * x * (1.0 - x),
        (Variant::BestOrWorst, PayoffRegime::Cost) => 2.0 * x * (1.0 - x + x * l),
        (Variant::BestOrWorst, PayoffRegime::Perquisite) => -2.0 * x * (-1.0 + x + x * l),
        (Variant::Postdoc, PayoffRegime::Binary) => x * (1.0 - x),
        (Variant::Postdoc, PayoffRegime::Cost) => x * (1.0 - x) * (1.0 - x) / 2.0,
        (Variant::Postdoc, PayoffRegime::Perquisite) => x * (1.0 - x) * (3.0 + x) / 2.0,
        (_, PayoffRegime::Unbalanced { .. }) => {
            return Err(Error::Domain(
                "the unbalanced payoff has a two-threshold profile".into(),
            ))
        }
    })
}

/// Limit of the two-threshold payoff at cutoff ratios `x <= y`.
pub fn scaled_profile2(variant: Variant, payoff: PayoffRegime, x: f64, y: f64) -> Result<f64> {
    unit_interval(x, "x")?;
    unit_interval(y, "y")?;
    if x > y {
        return Err(Error::Domain(format!("need x <= y, got x={x}, y={y}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    match (variant, payoff) {
        (Variant::BestOrWorst, PayoffRegime::Unbalanced { worst, best }) => {
            let total = best + worst;
            Ok(total * x - total * x * y + best * x * (y / x).ln())
        }
        (Variant::Postdoc, PayoffRegime::Cost) => {
            let body =
                2.0 - 6.0 * y + y * y + 4.0 * x - x * x + 2.0 * (1.0 + y) * y.ln() - 2.0 * x.ln();
            Ok(x * body / 2.0)
        }
        _ => Err(Error::Domain(format!(
            "no two-threshold profile for {variant}/{payoff}"
        ))),
    }
}

/// Gradient of the Postdoc cost profile.
pub(crate) fn pd_cost_gradient(x: f64, y: f64) -> (f64, f64) {
    let dx = -3.0 * y + y * y / 2.0 + 4.0 * x - 1.5 * x * x + (1.0 + y) * y.ln() - x.ln();
    let dy = x * (-2.0 + y + y.ln() + 1.0 / y);
    (dx, dy)
}

/// Hessian `(xx, xy, yy)` of the Postdoc cost profile.
pub(crate) fn pd_cost_hessian(x: f64, y: f64) -> (f64, f64, f64) {
    let xx = 4.0 - 3.0 * x - 1.0 / x;
    let xy = -2.0 + y + y.ln() + 1.0 / y;
    let yy = x * (1.0 + 1.0 / y - 1.0 / (y * y));
    (xx, xy, yy)
}
