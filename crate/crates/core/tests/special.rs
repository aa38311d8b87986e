use threegap_core::exact::{decimal, AlphaOracle, Rational};
use threegap_core::special::{
    classical_three_gap, cube_root_15, pwl_gaps, scan_nearest_int, search_remark, GapConvention, Piece,
    PwlFunction, REMARK_GAPS,
};
use threegap_core::AlphaLinear;

#[test]
fn remark_values_appear_with_wraparound() {
    let s = search_remark(140).unwrap();
    assert!(s.interval_matches.is_empty());
    assert!(s.max_distinct_interval <= 3);
    let ms: Vec<u64> = s.wraparound_matches.iter().map(|m| m.m).collect();
    assert_eq!(ms.first(), Some(&75));
    assert_eq!(ms.last(), Some(&132));
    assert_eq!(ms.len(), 58);
    let mut rounded = s.wraparound_matches[0].rounded.clone();
    rounded.sort();
    assert_eq!(rounded, REMARK_GAPS);
}

#[test]
fn remark_gap_high_precision() {
    let alpha = cube_root_15();
    let mut seen = None;
    scan_nearest_int(&alpha, 75, |step| {
        if step.m == 75 {
            seen = Some(step.distinct(GapConvention::Wraparound));
        }
        Ok(())
    })
    .unwrap();
    let mut digits: Vec<String> = seen
        .unwrap()
        .iter()
        .map(|g| decimal::to_fixed(g, 12, &alpha).unwrap())
        .collect();
    digits.sort();
    assert_eq!(
        digits,
        [
            "0.000612999090",
            "0.006205885953",
            "0.006818885043",
            "0.007125384588"
        ]
    );
}

#[test]
fn classical_golden_small_n() {
    let phi = AlphaOracle::golden_ratio();
    for n in 1..60 {
        let d = classical_three_gap(&phi, n).unwrap().distinct_gaps.len();
        assert!((1..=3).contains(&d));
    }
}

#[test]
fn tent_map_within_k_f() {
    let half = Rational::new(1, 2);
    let f = PwlFunction::new(
        1,
        vec![half.clone()],
        vec![
            Piece {
                p: 2,
                k: AlphaLinear::zero(),
            },
            Piece {
                p: -2,
                k: AlphaLinear::rational(Rational::from_integer(2)),
            },
        ],
    )
    .unwrap();
    let alpha = AlphaOracle::sqrt(2).unwrap();
    let small = AlphaOracle::quadratic(Rational::zero(), Rational::new(1, 10), 2).unwrap();
    for o in [alpha, small] {
        for m in 2..30 {
            let rep = pwl_gaps(&f, &o, m, &Rational::one()).unwrap();
            assert!(rep.report.distinct_gaps.len() as u64 <= rep.k_f);
        }
    }
}
