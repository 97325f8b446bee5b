mod common;

use proptest::prelude::*;
use prodinv_core::allocation::{essential_players, in_core, owen_point, pmas};
use prodinv_core::axioms::{anonymity_relabelings, check_all, cloning_preserves_prices, OwenRule};
use prodinv_core::coalition::sub_coalitions;
use prodinv_core::constructions::sum_situations;
use prodinv_core::lp::{build_dlpi, solve_lp, LpOutcome};
use prodinv_core::model::validate;
use prodinv_core::rational::Rational;
use prodinv_core::solver::{aggregate, build_game, char_value, dual_solution, oracle_cost_with, primal_plan, OracleLimits};
use prodinv_core::{coalitions, Coalition, PISituation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn situation(max_players: usize, max_periods: usize) -> impl Strategy<Value = PISituation> {
    any::<u64>().prop_map(move |seed| {
        common::random_situation(&mut ChaCha8Rng::seed_from_u64(seed), max_players, max_periods)
    })
}

fn with_coalition(max_players: usize, max_periods: usize) -> impl Strategy<Value = (PISituation, Coalition)> {
    situation(max_players, max_periods).prop_flat_map(|sit| {
        let n = sit.n() as u32;
        (Just(sit), (1u32..1 << n).prop_map(Coalition::from_bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_oracle_and_lp((sit, s) in with_coalition(3, 4)) {
        let c = char_value(&sit, s).unwrap();
        let limits = OracleLimits { max_units: 36, max_periods: 4 };
        prop_assert_eq!(&oracle_cost_with(&sit, s, limits).unwrap(), &c);
        let lp = build_dlpi(&sit, s).unwrap();
        let LpOutcome::Optimal { value, point } = solve_lp(&lp) else { panic!("DLPI has an optimum") };
        prop_assert_eq!(&value, &c);
        prop_assert!(lp.is_feasible(&point));
    }

    #[test]
    fn dual_prices_feasible_and_primal_matches((sit, s) in with_coalition(4, 5)) {
        let params = aggregate(&sit, s).unwrap();
        let y = dual_solution(&sit, s).unwrap();
        prop_assert!(y.is_feasible_for(&params));
        let plan = primal_plan(&sit, s).unwrap();
        prop_assert!(plan.is_feasible_for(&params.demand));
        prop_assert_eq!(plan.cost(&params), char_value(&sit, s).unwrap());
    }

    #[test]
    fn prices_fall_as_coalitions_grow(sit in situation(4, 4)) {
        for r in coalitions(sit.n()) {
            let yr = dual_solution(&sit, r).unwrap();
            for s in sub_coalitions(r) {
                let ys = dual_solution(&sit, s).unwrap();
                for (a, b) in ys.prices.iter().zip(&yr.prices) {
                    prop_assert!(a >= b);
                }
            }
        }
    }

    #[test]
    fn adding_a_player_never_raises_costs((sit, s) in with_coalition(4, 4)) {
        let small = aggregate(&sit, s).unwrap();
        for i in (0..sit.n()).filter(|&i| !s.contains(i)) {
            let big = aggregate(&sit, s.with(i)).unwrap();
            prop_assert!(big.demand.iter().zip(&small.demand).all(|(a, b)| a >= b));
            prop_assert!(big.production.iter().zip(&small.production).all(|(a, b)| a <= b));
            prop_assert!(big.holding.iter().zip(&small.holding).all(|(a, b)| a <= b));
            prop_assert!(big.backlogging.iter().zip(&small.backlogging).all(|(a, b)| a <= b));
        }
    }

    #[test]
    fn restrict_is_idempotent((sit, s) in with_coalition(4, 3)) {
        let once = sit.restrict(s).unwrap();
        let twice = once.restrict(once.grand()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(char_value(&once, once.grand()).unwrap(), char_value(&sit, s).unwrap());
    }

    #[test]
    fn raw_round_trip(sit in situation(4, 4)) {
        let back = validate(&sit.to_raw()).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(back.situation, sit);
    }

    #[test]
    fn owen_point_is_efficient_and_in_core(sit in situation(4, 4)) {
        let game = build_game(&sit).unwrap();
        let o = owen_point(&sit);
        prop_assert_eq!(o.total(), game.value(game.grand()).clone());
        prop_assert!(in_core(&game, &o).unwrap().is_in_core());
    }

    #[test]
    fn scheme_is_valid(sit in situation(4, 3)) {
        let game = build_game(&sit).unwrap();
        prop_assert_eq!(pmas(&sit).unwrap().check(&game), Ok(()));
    }

    #[test]
    fn inessential_players_pay_their_complement(sit in situation(4, 4)) {
        let report = essential_players(&sit);
        let o = owen_point(&sit);
        for i in report.inessential(sit.n()) {
            let rest = sit.grand().without(i);
            if !rest.is_empty() {
                prop_assert_eq!(o.coalition_sum(rest), char_value(&sit, rest).unwrap());
            }
        }
    }

    #[test]
    fn sum_of_situations_sums_games(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let (t1, t2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = common::situation(&mut rng, n, t1);
        let b = common::situation(&mut rng, n, t2);
        let combined = sum_situations(&a, &b).unwrap();
        prop_assert_eq!(combined.horizon(), t1 + t2 + 1);
        prop_assert_eq!(build_game(&combined).unwrap(), build_game(&a).unwrap().sum(&build_game(&b).unwrap()).unwrap());
    }

    #[test]
    fn cost_is_additive_in_demand(sit in situation(4, 4)) {
        for s in coalitions(sit.n()) {
            let whole = char_value(&sit, s).unwrap();
            let parts: Rational = (0..sit.n()).map(|k| char_value(&sit.isolate_demand(k), s).unwrap()).sum();
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn cloning_a_player_keeps_prices(sit in situation(3, 4), j in 0usize..3) {
        prop_assert!(cloning_preserves_prices(&sit, j % sit.n()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn owen_rule_satisfies_every_axiom(sit in situation(5, 4), seed in any::<u64>()) {
        let sigmas = anonymity_relabelings(&sit, seed, 3);
        for v in check_all(&OwenRule, &sit, &sigmas) {
            prop_assert!(v.passed, "{} failed: {:?}", v.axiom, v.witness);
        }
    }
}
