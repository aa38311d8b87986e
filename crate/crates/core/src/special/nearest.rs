//! Gaps of the nearest-integer distances `‖mα‖`, `1 <= m <= M`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::engine::distinct_values;
use crate::engine::{gap_report, verify_bound, GapConfig, GapReport, SequenceSpec};
use crate::error::{ConfigError, Error, Result};
use crate::exact::{compare, sort_by_value, AlphaLinear, AlphaOracle, Rational};
use crate::lambda_frac::{frac_part, FracVariant, LambdaSpec};

/// Proven bound on the number of distinct gaps.
pub const NEAREST_INT_BOUND: usize = 6;

/// Values in `[0, 1/2]` with gaps taken along the interval, without
/// wraparound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearestIntReport {
    pub values: Vec<AlphaLinear>,
    pub gaps: Vec<AlphaLinear>,
    pub distinct: Vec<AlphaLinear>,
}

/// `‖x‖ = min({|x|}, 1 - {|x|})`.
pub fn nearest_int(x: &AlphaLinear, oracle: &AlphaOracle) -> Result<AlphaLinear> {
    let ax = x.abs(oracle)?;
    let f = frac_part(
        &ax,
        &LambdaSpec::Finite(Rational::one()),
        FracVariant::DoublePrime,
        oracle,
    )?;
    let g = (-&f).add_rational(&Rational::one());
    Ok(match compare(&f, &g, oracle)? {
        Ordering::Greater => g,
        _ => f,
    })
}

/// Direct computation: evaluate, sort, difference.
pub fn nearest_int_gaps(alpha: &AlphaOracle, m: u64) -> Result<NearestIntReport> {
    check_m(m)?;
    let values = (1..=m)
        .map(|k| nearest_int(&AlphaLinear::alpha_multiple(k), alpha))
        .collect::<Result<Vec<_>>>()?;
    let values = sort_by_value(values, |x| x, |_, _| Ordering::Equal, alpha)?;
    finish(values, alpha)
}

/// The two-family configuration whose points are `{mα}` and `1 - {mα}`.
pub fn nearest_circle_config(alpha: &AlphaOracle, m: u64) -> GapConfig {
    GapConfig {
        alpha: alpha.clone(),
        q: 1,
        sequences: vec![
            SequenceSpec::new(1, AlphaLinear::zero(), 0, m),
            SequenceSpec::new(-1, AlphaLinear::rational(Rational::one()), 0, m),
        ],
        modulus: Rational::one(),
        lambda_multiplier: Some(1),
        variant: FracVariant::DoublePrime,
    }
}

/// Computes the same report by restricting the circle configuration of
/// [`nearest_circle_config`] to its points in `[0, 1/2]`.
///
/// Checks at runtime that all circle points are distinct, that the points
/// outside `[0, 1/2]` lie in `(1/2, 1)`, and that the restricted points form
/// a `≺`-prefix, so that consecutive values are consecutive on the circle.
pub fn nearest_int_gaps_via_circle(alpha: &AlphaOracle, m: u64) -> Result<(NearestIntReport, GapReport)> {
    check_m(m)?;
    let cfg = nearest_circle_config(alpha, m);
    let report = verify_bound(&cfg)?;
    let half = AlphaLinear::rational(Rational::new(1, 2));
    let sorted = &report.sorted_points;
    if sorted.windows(2).any(|w| w[0].gamma == w[1].gamma) {
        return Err(Error::InvariantViolation("circle points are not distinct".into()));
    }
    let mut in_half = Vec::with_capacity(sorted.len());
    for pt in sorted {
        in_half.push(compare(&pt.gamma, &half, alpha)? == Ordering::Less);
    }
    let prefix = in_half.iter().take_while(|&&b| b).count();
    if in_half[prefix..].iter().any(|&b| b) {
        return Err(Error::InvariantViolation(
            "points in [0, 1/2] are not a prefix".into(),
        ));
    }
    if prefix as u64 != m {
        return Err(Error::InvariantViolation(format!(
            "{prefix} points in [0, 1/2], expected {m}"
        )));
    }
    let values: Vec<AlphaLinear> = sorted[..prefix].iter().map(|p| p.gamma.clone()).collect();
    // interval gaps are exactly the circle gaps g_2..g_M
    if values
        .windows(2)
        .zip(&report.gaps[1..prefix])
        .any(|(w, g)| &(&w[1] - &w[0]) != g)
    {
        return Err(Error::InvariantViolation(
            "interval gaps differ from circle gaps".into(),
        ));
    }
    Ok((finish(values, alpha)?, report))
}

fn finish(values: Vec<AlphaLinear>, alpha: &AlphaOracle) -> Result<NearestIntReport> {
    let gaps: Vec<AlphaLinear> = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    let distinct = distinct_values(&gaps, alpha)?;
    if distinct.len() > NEAREST_INT_BOUND {
        return Err(Error::TheoremViolation {
            distinct: distinct.len(),
            bound: NEAREST_INT_BOUND,
            report: None,
        });
    }
    Ok(NearestIntReport {
        values,
        gaps,
        distinct,
    })
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(ConfigError::Other(format!("M = {m} must exceed 1")).into());
    }
    Ok(())
}

/// The classical three-gap configuration `{mα}`, `1 <= m <= N`.
pub fn classical_config(alpha: &AlphaOracle, n: u64) -> GapConfig {
    GapConfig {
        alpha: alpha.clone(),
        q: 1,
        sequences: vec![SequenceSpec::new(1, AlphaLinear::zero(), 0, n)],
        modulus: Rational::one(),
        lambda_multiplier: Some(1),
        variant: FracVariant::DoublePrime,
    }
}

pub fn classical_three_gap(alpha: &AlphaOracle, n: u64) -> Result<GapReport> {
    verify_bound(&classical_config(alpha, n))
}

/// Like [`classical_three_gap`] but without failing on a bound violation.
pub fn classical_report(alpha: &AlphaOracle, n: u64) -> Result<GapReport> {
    gap_report(&classical_config(alpha, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn nearest_int_examples() {
        let phi = AlphaOracle::golden_ratio();
        let rat = |n, d| AlphaLinear::rational(r(n, d));
        assert_eq!(nearest_int(&rat(7, 10), &phi).unwrap(), rat(3, 10));
        assert_eq!(nearest_int(&rat(-7, 10), &phi).unwrap(), rat(3, 10));
        assert_eq!(
            nearest_int(&AlphaLinear::alpha_multiple(1), &phi).unwrap(),
            AlphaLinear::new(r(2, 1), r(-1, 1))
        );
    }

    #[test]
    fn golden_three() {
        let phi = AlphaOracle::golden_ratio();
        let rep = nearest_int_gaps(&phi, 3).unwrap();
        // ‖3α‖ = 5 - 3α, ‖2α‖ = 2α - 3, ‖α‖ = 2 - α
        let al = |u, v| AlphaLinear::new(r(u, 1), r(v, 1));
        assert_eq!(rep.values, vec![al(5, -3), al(-3, 2), al(2, -1)]);
        assert_eq!(rep.gaps.len(), 2);
        assert_eq!(rep.distinct.len(), 2);
        let (via, _) = nearest_int_gaps_via_circle(&phi, 3).unwrap();
        assert_eq!(via, rep);
    }

    #[test]
    fn two_values_one_gap() {
        let o = AlphaOracle::sqrt(11).unwrap();
        let rep = nearest_int_gaps(&o, 2).unwrap();
        assert_eq!((rep.gaps.len(), rep.distinct.len()), (1, 1));
        assert!(nearest_int_gaps(&o, 1).is_err());
    }

    #[test]
    fn classical_examples() {
        let phi = AlphaOracle::golden_ratio();
        assert_eq!(classical_three_gap(&phi, 5).unwrap().distinct_gaps.len(), 2);
        let one = classical_three_gap(&phi, 1).unwrap();
        assert_eq!(one.gaps, vec![AlphaLinear::rational(Rational::one())]);
        let sqrt2 = AlphaOracle::sqrt(2).unwrap();
        assert!(classical_three_gap(&sqrt2, 100).unwrap().distinct_gaps.len() <= 3);
    }
}
