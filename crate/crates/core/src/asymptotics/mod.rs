//! Limiting cutoff ratios (ACV) and limiting payoffs (AMP) as `n -> infinity`.
//!
//! Each named constant is the interior maximizer of a limit profile from
//! [`scaled_profile`] or [`scaled_profile2`]. It is computed by two
//! independent routes (see [`Route`]) so that each route checks the other.

mod digamma;
mod lambert;
mod profiles;
mod roots;

use std::f64::consts::E;

use serde::Serialize;

use crate::model::{PayoffRegime, Variant};
use crate::{Error, Result};

pub use digamma::digamma;
pub use lambert::{lambert_w0, lambert_wm1};
pub use profiles::{scaled_profile, scaled_profile2};
pub use roots::bisect_newton;

/// How a constant is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Lambert-W or radical closed forms; Newton on the profile gradient for
    /// the Postdoc cost pair.
    ClosedForm,
    /// Bisection plus Newton polish on the first-order condition, bracketed
    /// at the published decimal value `+- 0.1`.
    Bracketed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub value: f64,
    pub defining_equation: &'static str,
    /// Limit profile evaluated at the constant.
    pub limit_payoff: f64,
}

struct Definition {
    name: &'static str,
    equation: &'static str,
    variant: Variant,
    payoff: PayoffRegime,
    f: fn(f64) -> f64,
    df: fn(f64) -> f64,
    published: f64,
    closed_form: fn() -> Result<f64>,
}

const ONE_THRESHOLD: [Definition; 5] = [
    Definition {
        name: "rho",
        equation: "-2 + 2x - log(x) = 0",
        variant: Variant::Classic,
        payoff: PayoffRegime::Cost,
        f: |x| -2.0 + 2.0 * x - x.ln(),
        df: |x| 2.0 - 1.0 / x,
        published: 0.20318,
        closed_form: || Ok(-lambert_w0(-2.0 * (-2.0f64).exp())? / 2.0),
    },
    Definition {
        name: "mu",
        equation: "2x + log(x) = 0",
        variant: Variant::Classic,
        payoff: PayoffRegime::Perquisite,
        f: |x| 2.0 * x + x.ln(),
        df: |x| 2.0 + 1.0 / x,
        published: 0.42630,
        closed_form: || Ok(lambert_w0(2.0)? / 2.0),
    },
    Definition {
        name: "theta",
        equation: "2x log(x) = x - 1",
        variant: Variant::BestOrWorst,
        payoff: PayoffRegime::Cost,
        f: |x| 2.0 * x * x.ln() - x + 1.0,
        df: |x| 2.0 * x.ln() + 1.0,
        published: 0.284668,
        closed_form: || Ok(-1.0 / (2.0 * lambert_wm1(-1.0 / (2.0 * 0.5f64.exp()))?)),
    },
    Definition {
        name: "vartheta",
        equation: "1 - 3x - 2x log(x) = 0",
        variant: Variant::BestOrWorst,
        payoff: PayoffRegime::Perquisite,
        f: |x| 1.0 - 3.0 * x - 2.0 * x * x.ln(),
        df: |x| -5.0 - 2.0 * x.ln(),
        published: 0.552001,
        closed_form: || Ok(1.0 / (2.0 * lambert_w0(1.5f64.exp() / 2.0)?)),
    },
    Definition {
        name: "pd_perquisite_cutoff",
        equation: "3 - 4x - 3x^2 = 0",
        variant: Variant::Postdoc,
        payoff: PayoffRegime::Perquisite,
        f: |x| 3.0 - 4.0 * x - 3.0 * x * x,
        df: |x| -4.0 - 6.0 * x,
        published: 0.53518,
        closed_form: || Ok((13f64.sqrt() - 2.0) / 3.0),
    },
];

const ALPHA_EQUATION: &str =
    "1 - 1/beta - 2 beta - beta^2/2 + 4 alpha - 3 alpha^2/2 - log(alpha) = 0";
const BETA_EQUATION: &str = "-2 + 1/beta + beta + log(beta) = 0";
const PUBLISHED_ALPHA: f64 = 0.17248;
const PUBLISHED_BETA: f64 = 0.39422;

fn beta_equation(b: f64) -> f64 {
    -2.0 + 1.0 / b + b + b.ln()
}

fn alpha_equation(a: f64, b: f64) -> f64 {
    1.0 - 1.0 / b - 2.0 * b - b * b / 2.0 + 4.0 * a - 1.5 * a * a - a.ln()
}

/// The Postdoc cost pair `(alpha, beta)`: `beta` by bracketed root finding,
/// then `alpha` given `beta`.
pub fn solve_pd_cost_constants() -> Result<(f64, f64)> {
    let beta = bisect_newton(
        beta_equation,
        |b| -1.0 / (b * b) + 1.0 + 1.0 / b,
        PUBLISHED_BETA - 0.1,
        PUBLISHED_BETA + 0.1,
    )?;
    let alpha = bisect_newton(
        |a| alpha_equation(a, beta),
        |a| 4.0 - 3.0 * a - 1.0 / a,
        PUBLISHED_ALPHA - 0.1,
        PUBLISHED_ALPHA + 0.1,
    )?;
    Ok((alpha, beta))
}

/// The Postdoc cost pair by two-dimensional Newton on the profile gradient.
pub fn pd_cost_constants_by_gradient() -> Result<(f64, f64)> {
    let (mut x, mut y) = (0.2, 0.4);
    for _ in 0..50 {
        let (gx, gy) = profiles::pd_cost_gradient(x, y);
        let (hxx, hxy, hyy) = profiles::pd_cost_hessian(x, y);
        let det = hxx * hyy - hxy * hxy;
        let dx = (hyy * gx - hxy * gy) / det;
        let dy = (hxx * gy - hxy * gx) / det;
        x -= dx;
        y -= dy;
        if !(x > 0.0 && y > x && y < 1.0) {
            break;
        }
        if dx.abs().max(dy.abs()) <= 1e-15 {
            return Ok((x, y));
        }
    }
    Err(Error::Convergence(
        "gradient Newton for the Postdoc cost pair did not settle".into(),
    ))
}

/// Every named constant, computed along `route`.
pub fn constants_via(route: Route) -> Result<Vec<Constant>> {
    let mut out = Vec::with_capacity(7);
    for def in &ONE_THRESHOLD {
        let value = match route {
            Route::ClosedForm => (def.closed_form)()?,
            Route::Bracketed => {
                bisect_newton(def.f, def.df, def.published - 0.1, def.published + 0.1)?
            }
        };
        out.push(Constant {
            name: def.name,
            value,
            defining_equation: def.equation,
            limit_payoff: scaled_profile(def.variant, def.payoff, value)?,
        });
    }
    let (alpha, beta) = match route {
        Route::ClosedForm => pd_cost_constants_by_gradient()?,
        Route::Bracketed => solve_pd_cost_constants()?,
    };
    let amp = scaled_profile2(Variant::Postdoc, PayoffRegime::Cost, alpha, beta)?;
    out.push(Constant {
        name: "alpha",
        value: alpha,
        defining_equation: ALPHA_EQUATION,
        limit_payoff: amp,
    });
    out.push(Constant {
        name: "beta",
        value: beta,
        defining_equation: BETA_EQUATION,
        limit_payoff: amp,
    });
    Ok(out)
}

/// Every named constant along the closed-form route.
pub fn constants() -> Vec<Constant> {
    constants_via(Route::ClosedForm).expect("closed forms are evaluated inside their domains")
}

/// Looks up a constant by name along the closed-form route.
pub fn constant(name: &str) -> Option<Constant> {
    constants().into_iter().find(|c| c.name == name)
}

/// Residual of the defining equation at `c.value`; `beta` is taken from
/// the closed-form route when checking `alpha`.
pub fn residual(c: &Constant) -> Result<f64> {
    if let Some(def) = ONE_THRESHOLD.iter().find(|d| d.name == c.name) {
        return Ok((def.f)(c.value));
    }
    match c.name {
        "beta" => Ok(beta_equation(c.value)),
        "alpha" => Ok(alpha_equation(c.value, pd_cost_constants_by_gradient()?.1)),
        other => Err(Error::InvalidParameters(format!(
            "unknown constant {other}"
        ))),
    }
}

/// Limiting `(r/n, s/n, payoff)` of the unbalanced Best-or-Worst problem.
pub fn unbalanced_limit(worst: f64, best: f64) -> Result<(f64, f64, f64)> {
    if !(worst >= 0.0 && best > 0.0 && worst <= best) {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= m <= M, 0 < M, got m={worst}, M={best}"
        )));
    }
    let scale = (-1.0 + worst / best).exp();
    let total = best + worst;
    Ok((
        scale * best / total,
        best / total,
        scale * best * best / total,
    ))
}

/// Asymptotic cutoff: a single ratio, or the `(r/n, s/n)` pair of a staged rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Acv {
    One(f64),
    Two(f64, f64),
}

/// One cell of the asymptotic payoff-by-variant grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitCell {
    pub variant: Variant,
    pub payoff: PayoffRegime,
    pub acv: Acv,
    pub amp: f64,
}

/// The 3x3 grid, payoff-major (binary, cost, perquisite) and variant-minor
/// (classic, Best-or-Worst, Postdoc).
pub fn limit_cells() -> Vec<LimitCell> {
    let named = constants();
    let get = |name: &str| {
        named
            .iter()
            .find(|c| c.name == name)
            .expect("named constant")
    };
    let one = |variant, payoff, x: f64| LimitCell {
        variant,
        payoff,
        acv: Acv::One(x),
        amp: scaled_profile(variant, payoff, x).expect("constant lies in [0, 1]"),
    };
    let (alpha, beta) = (get("alpha"), get("beta"));
    vec![
        one(Variant::Classic, PayoffRegime::Binary, 1.0 / E),
        one(Variant::BestOrWorst, PayoffRegime::Binary, 0.5),
        one(Variant::Postdoc, PayoffRegime::Binary, 0.5),
        one(Variant::Classic, PayoffRegime::Cost, get("rho").value),
        one(Variant::BestOrWorst, PayoffRegime::Cost, get("theta").value),
        LimitCell {
            variant: Variant::Postdoc,
            payoff: PayoffRegime::Cost,
            acv: Acv::Two(alpha.value, beta.value),
            amp: alpha.limit_payoff,
        },
        one(Variant::Classic, PayoffRegime::Perquisite, get("mu").value),
        one(
            Variant::BestOrWorst,
            PayoffRegime::Perquisite,
            get("vartheta").value,
        ),
        one(
            Variant::Postdoc,
            PayoffRegime::Perquisite,
            get("pd_perquisite_cutoff").value,
        ),
    ]
}
