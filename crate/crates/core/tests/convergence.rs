use std::f64::consts::E;

use stoprule::asymptotics::{constant, scaled_profile, scaled_profile2, unbalanced_limit};
use stoprule::exact::{argmax_one, one_threshold_profile, TwoThresholdTable};
use stoprule::{PayoffRegime, ProblemSpec, Variant};

const PAYOFFS: [PayoffRegime; 3] = [
    PayoffRegime::Binary,
    PayoffRegime::Cost,
    PayoffRegime::Perquisite,
];

fn limit_ratio(variant: Variant, payoff: PayoffRegime) -> f64 {
    let named = |name| constant(name).unwrap().value;
    match (variant, payoff) {
        (Variant::Classic, PayoffRegime::Binary) => 1.0 / E,
        (Variant::Classic, PayoffRegime::Cost) => named("rho"),
        (Variant::Classic, PayoffRegime::Perquisite) => named("mu"),
        (Variant::BestOrWorst, PayoffRegime::Binary) | (Variant::Postdoc, PayoffRegime::Binary) => {
            0.5
        }
        (Variant::BestOrWorst, PayoffRegime::Cost) => named("theta"),
        (Variant::BestOrWorst, PayoffRegime::Perquisite) => named("vartheta"),
        (Variant::Postdoc, PayoffRegime::Perquisite) => named("pd_perquisite_cutoff"),
        // not a table entry: the one-threshold Postdoc cost profile peaks at 1/3
        (Variant::Postdoc, PayoffRegime::Cost) => 1.0 / 3.0,
        _ => unreachable!(),
    }
}

#[test]
fn one_threshold_payoffs_converge_to_their_profiles() {
    for variant in Variant::ALL {
        for payoff in PAYOFFS {
            let mut errors = Vec::new();
            for n in [100u32, 1000, 10_000] {
                let spec = ProblemSpec::new(variant, payoff, n).unwrap();
                let values = one_threshold_profile(&spec).unwrap();
                let err = (1..100)
                    .map(|i| {
                        let x = i as f64 / 100.0;
                        let r = (n as f64 * x).floor() as usize;
                        (values[r] - scaled_profile(variant, payoff, x).unwrap()).abs()
                    })
                    .fold(0.0, f64::max);
                errors.push(err);

                let best = argmax_one(&spec).unwrap().best_strategy.r() as f64 / n as f64;
                let c = limit_ratio(variant, payoff);
                assert!(
                    (best - c).abs() <= 10.0 / n as f64 + 1e-2,
                    "{spec}: {best} vs {c}"
                );
            }
            assert!(
                errors[0] > errors[1] && errors[1] > errors[2],
                "{variant}/{payoff}: {errors:?}"
            );
            assert!(errors[2] < 1e-3, "{variant}/{payoff}: {errors:?}");
        }
    }
}

#[test]
fn two_threshold_payoffs_converge_to_their_profiles() {
    let cases = [
        (
            Variant::BestOrWorst,
            PayoffRegime::Unbalanced {
                worst: 1.0,
                best: 3.0,
            },
        ),
        (
            Variant::BestOrWorst,
            PayoffRegime::Unbalanced {
                worst: 0.0,
                best: 2.0,
            },
        ),
        (Variant::Postdoc, PayoffRegime::Cost),
    ];
    for (variant, payoff) in cases {
        let mut errors = Vec::new();
        for n in [100u32, 1000, 10_000] {
            let spec = ProblemSpec::new(variant, payoff, n).unwrap();
            let table = TwoThresholdTable::new(&spec).unwrap();
            let mut err: f64 = 0.0;
            for i in 1..20 {
                for l in i..20 {
                    let (x, y) = (i as f64 / 20.0, l as f64 / 20.0);
                    let r = (n as f64 * x).floor() as u32;
                    let s = (n as f64 * y).floor() as u32;
                    err = err.max(
                        (table.value(r, s) - scaled_profile2(variant, payoff, x, y).unwrap()).abs(),
                    );
                }
            }
            errors.push(err);
        }
        assert!(
            errors[0] > errors[1] && errors[1] > errors[2],
            "{variant}/{payoff}: {errors:?}"
        );
    }
}

#[test]
fn unbalanced_limit_maximizes_its_profile() {
    for (m, big_m) in [(1.0, 3.0), (1.0, 2.0), (0.5, 4.0), (1.0, 1.0)] {
        let payoff = PayoffRegime::Unbalanced {
            worst: m,
            best: big_m,
        };
        let (x, y, v) = unbalanced_limit(m, big_m).unwrap();
        let h = |a: f64, b: f64| scaled_profile2(Variant::BestOrWorst, payoff, a, b).unwrap();
        assert!((h(x, y) - v).abs() < 1e-12);
        for (dx, dy) in [
            (1e-3, 0.0),
            (-1e-3, 0.0),
            (0.0, 1e-3),
            (0.0, -1e-3),
            (1e-3, 1e-3),
        ] {
            if x + dx <= y + dy {
                assert!(h(x + dx, y + dy) < v);
            }
        }
    }
}
