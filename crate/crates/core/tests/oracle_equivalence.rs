use stoprule::exact::evaluate;
use stoprule::oracle::{dp_solve, enumerate_strategies, extract_thresholds};
use stoprule::{PayoffRegime, ProblemSpec, Strategy, Variant};

fn specs(n: u32) -> Vec<ProblemSpec> {
    let payoffs = [
        PayoffRegime::Binary,
        PayoffRegime::Cost,
        PayoffRegime::Perquisite,
        PayoffRegime::Unbalanced {
            worst: 1.0,
            best: 3.0,
        },
        PayoffRegime::Unbalanced {
            worst: 0.0,
            best: 1.0,
        },
        PayoffRegime::Unbalanced {
            worst: 0.5,
            best: 0.5,
        },
    ];
    Variant::ALL
        .into_iter()
        .flat_map(|v| {
            payoffs.into_iter().map(move |p| ProblemSpec {
                variant: v,
                payoff: p,
                n,
            })
        })
        .filter(|s| s.check().is_ok())
        .collect()
}

#[test]
fn enumeration_matches_evaluators_and_dp_small_n() {
    for n in 1..=7 {
        for spec in specs(n) {
            let strats = Strategy::all_feasible(&spec);
            let enumerated = enumerate_strategies(&spec, &strats).unwrap();
            let mut best = None;
            for (strat, by_enumeration) in strats.iter().zip(&enumerated) {
                let direct = evaluate(&spec, strat).unwrap();
                assert_eq!(direct.exact, by_enumeration.exact, "{spec} {strat}");
                let v = direct.exact.unwrap();
                if best.as_ref().is_none_or(|b| &v > b) {
                    best = Some(v);
                }
            }
            let policy = dp_solve(&spec).unwrap();
            assert_eq!(policy.root().exact, best, "{spec}");
            let extracted = extract_thresholds(&policy).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(
                evaluate(&spec, &extracted).unwrap().exact,
                best,
                "{spec} {extracted}"
            );
        }
    }
}

#[test]
fn extracted_rules_achieve_the_optimum_at_moderate_n() {
    for n in [20u32, 45, 80] {
        for spec in specs(n) {
            let policy = dp_solve(&spec).unwrap();
            let strat = extract_thresholds(&policy).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(
                evaluate(&spec, &strat).unwrap().exact,
                policy.root().exact,
                "{spec}"
            );
        }
    }
}
