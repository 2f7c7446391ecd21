use crate::{Error, Result};

/// Digamma function `psi(x)` for `x > 0`: upward recurrence to `x >= 10`,
/// then the asymptotic series.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "digamma needs finite x > 0, got {x}"
        )));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    Ok(shift + x.ln() - 0.5 / x - series)
}
