use proptest::prelude::*;
use threegap_core::engine::{classify_intervals, gap_report, translation_check, GapConfig, SequenceSpec};
use threegap_core::exact::{AlphaLinear, AlphaOracle, Rational};
use threegap_core::lambda_frac::FracVariant;
use threegap_core::special::{nearest_int_gaps, nearest_int_gaps_via_circle, NEAREST_INT_BOUND};

fn alpha(idx: usize) -> AlphaOracle {
    match idx {
        0 => AlphaOracle::golden_ratio(),
        1 => AlphaOracle::sqrt(2).unwrap(),
        2 => AlphaOracle::sqrt(3).unwrap(),
        3 => AlphaOracle::nth_root(Rational::from_integer(15), 3).unwrap(),
        _ => AlphaOracle::quadratic(Rational::new(1, 3), Rational::new(2, 5), 11).unwrap(),
    }
}

fn sequence() -> impl Strategy<Value = SequenceSpec> {
    (
        prop::sample::select(vec![-6i64, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6]),
        (-8i64..8, 1i64..5, -2i64..3),
        0u64..20,
        1u64..40,
    )
        .prop_map(|(p, (ku, kd, kv), n, len)| {
            SequenceSpec::new(
                p,
                AlphaLinear::new(Rational::new(ku, kd), Rational::from_integer(kv)),
                n,
                n + len,
            )
        })
}

fn config() -> impl Strategy<Value = GapConfig> {
    (
        0usize..5,
        1u64..5,
        prop::collection::vec(sequence(), 1..5),
        prop::sample::select(vec![(1i64, 1i64), (1, 2), (3, 1), (7, 5)]),
        prop::option::weighted(0.8, 1u64..4),
        any::<bool>(),
    )
        .prop_map(|(a, q, sequences, (pn, pd), t, double)| GapConfig {
            alpha: alpha(a),
            q,
            sequences,
            modulus: Rational::new(pn, pd),
            lambda_multiplier: t,
            variant: if double && t.is_some() {
                FracVariant::DoublePrime
            } else {
                FracVariant::Prime
            },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn gaps_bounded_and_sum_to_modulus(cfg in config()) {
        let rep = gap_report(&cfg).unwrap();
        prop_assert!(rep.bound_satisfied, "{} > {}", rep.distinct_gaps.len(), rep.bound_data.bound);
        prop_assert!(rep.gap_sum_is_modulus());
        prop_assert_eq!(rep.total_points() as u64, cfg.total_points());
    }

    #[test]
    fn rigid_structure(cfg in config()) {
        prop_assert!(translation_check(&cfg).unwrap());
        let (rep, cls) = classify_intervals(&cfg).unwrap();
        prop_assert!(cls.within_bound());
        prop_assert!(cls.lengths_covered(&rep));
        prop_assert!(cls.orbits_acyclic());
    }

    #[test]
    fn nearest_int_paths_agree(a in 0usize..5, m in 2u64..150) {
        let o = alpha(a);
        let direct = nearest_int_gaps(&o, m).unwrap();
        let (via, _) = nearest_int_gaps_via_circle(&o, m).unwrap();
        prop_assert!(direct.distinct.len() <= NEAREST_INT_BOUND);
        prop_assert_eq!(direct, via);
    }
}
