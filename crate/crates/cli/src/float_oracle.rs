//! Brute-force recomputation of a gap configuration in decimal fixed point.
//!
//! Values are integers scaled by `10^(digits + GUARD)`. `α` comes from integer
//! square and n-th roots, so nothing here shares code with the exact engine's
//! enclosures. Equality decisions are heuristic; use this to cross-check only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;
use threegap_core::engine::{GapConfig, GapReport};
use threegap_core::exact::decimal::to_fixed;
use threegap_core::lambda_frac::LambdaSpec;
use threegap_core::{AlphaKind, AlphaOracle, Rational};

/// Smallest accepted working precision.
pub const MIN_DIGITS: u32 = 30;
const GUARD: u32 = 20;
/// Values closer than `10^(-digits + TIE_SLACK)` are treated as equal.
const TIE_SLACK: u32 = 5;
/// Distinct values closer than `10^(-digits + WARN_SLACK)` trigger a warning.
const WARN_SLACK: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle needs at least {MIN_DIGITS} digits, got {0}")]
pub struct DigitsTooLow(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub digits: u32,
    /// Circle gaps in `≺` order of the oracle's own sort, rounded to `digits` places.
    pub gaps_decimal: Vec<String>,
    /// The same gaps as integers scaled by `10^digits`.
    pub gaps_scaled: Vec<BigInt>,
    pub distinct_count: usize,
    pub warnings: Vec<String>,
}

struct Fixed {
    scale: BigInt,
    tie: BigInt,
    warn: BigInt,
}

impl Fixed {
    fn new(digits: u32) -> Self {
        let ten = BigInt::from(10);
        Fixed {
            scale: ten.pow(digits + GUARD),
            tie: ten.pow(GUARD + TIE_SLACK),
            warn: ten.pow(GUARD + WARN_SLACK),
        }
    }

    fn rational(&self, r: &Rational) -> BigInt {
        div_round(&(r.numer() * &self.scale), r.denom())
    }

    fn mul(&self, x: &BigInt, r: &Rational) -> BigInt {
        div_round(&(x * r.numer()), r.denom())
    }

    /// `floor(x / r)` for positive rational `r`, snapping to the nearest
    /// integer when `x` is within the tie tolerance of a multiple of `r`.
    fn floor_by(&self, x: &BigInt, r: &Rational) -> BigInt {
        let den = r.numer() * &self.scale;
        let num = x * r.denom();
        let (q, rem) = num.div_mod_floor(&den);
        let slack = &self.tie * r.denom();
        if &den - &rem <= slack {
            q + 1
        } else {
            q
        }
    }

    fn alpha(&self, kind: &AlphaKind) -> BigInt {
        match kind {
            AlphaKind::Quadratic { a, b, d } => {
                let root = (d * &self.scale * &self.scale).sqrt();
                self.rational(a) + self.mul(&root, b)
            }
            AlphaKind::NthRoot { r, n } => {
                let den = r.denom();
                let radicand = r.numer() * den.pow(n - 1) * self.scale.pow(*n);
                radicand.nth_root(*n) / den
            }
            AlphaKind::Decimal { digits, .. } => {
                let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
                let places = self.scale.to_string().len() - 1;
                let mut frac: String = frac.chars().take(places).collect();
                frac.extend(std::iter::repeat_n('0', places - frac.len()));
                format!("{int}{frac}").parse().expect("validated decimal literal")
            }
        }
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let twice: BigInt = a * 2 + b;
    twice.div_floor(&(b * 2))
}

struct Point {
    value: BigInt,
    seq: usize,
    m: u64,
}

/// Recomputes every point, sorts, and returns the gap multiset.
pub fn float_oracle_gaps(config: &GapConfig, digits: u32) -> Result<OracleResult, DigitsTooLow> {
    if digits < MIN_DIGITS {
        return Err(DigitsTooLow(digits));
    }
    let fx = Fixed::new(digits);
    let alpha = fx.alpha(config.alpha.kind());
    let modulus = &config.modulus;
    let lambda = config.lambda();
    let mut points = Vec::with_capacity(config.total_points() as usize);
    for (idx, s) in config.sequences.iter().enumerate() {
        let slope = Rational::new(s.p, config.q);
        let shift = fx.rational(&s.k.u) + fx.mul(&alpha, &s.k.v);
        for m in s.n + 1..=s.big_n {
            let x = &alpha * m;
            let frac = match &lambda {
                LambdaSpec::Finite(l) => &x - fx.rational(&(l * &Rational::from_integer(fx.floor_by(&x, l)))),
                LambdaSpec::Infinite => x,
            };
            let y = fx.mul(&frac, &slope) + &shift;
            let wraps = fx.floor_by(&y, modulus);
            let value = y - fx.rational(&(modulus * &Rational::from_integer(wraps)));
            points.push(Point {
                value,
                seq: idx + 1,
                m,
            });
        }
    }

    points.sort_by(|a, b| a.value.cmp(&b.value));
    let mut warnings = Vec::new();
    // clusters of tied values, each reordered by label
    let mut start = 0;
    for j in 1..=points.len() {
        if j < points.len() {
            let diff = &points[j].value - &points[j - 1].value;
            if diff <= fx.tie {
                continue;
            }
            if diff < fx.warn {
                warnings.push(format!(
                    "points ({}, {}) and ({}, {}) differ by less than 1e-{}",
                    points[j - 1].seq,
                    points[j - 1].m,
                    points[j].seq,
                    points[j].m,
                    digits - WARN_SLACK
                ));
            }
        }
        points[start..j].sort_by_key(|p| (p.seq, p.m));
        start = j;
    }

    let mut gaps = Vec::with_capacity(points.len());
    if let (Some(first), Some(last)) = (points.first(), points.last()) {
        gaps.push(fx.rational(modulus) + &first.value - &last.value);
    }
    gaps.extend(points.windows(2).map(|w| &w[1].value - &w[0].value));

    let mut sorted = gaps.clone();
    sorted.sort();
    let distinct_count = if sorted.is_empty() {
        0
    } else {
        1 + sorted.windows(2).filter(|w| &w[1] - &w[0] > fx.tie).count()
    };

    let unit = BigInt::from(10).pow(GUARD);
    let gaps_scaled: Vec<BigInt> = gaps.iter().map(|g| div_round(g, &unit)).collect();
    let gaps_decimal = gaps_scaled.iter().map(|g| format_scaled(g, digits)).collect();
    Ok(OracleResult {
        digits,
        gaps_decimal,
        gaps_scaled,
        distinct_count,
        warnings,
    })
}

/// Renders `x / 10^places` positionally.
pub fn format_scaled(x: &BigInt, places: u32) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let mut s = x.abs().to_string();
    let places = places as usize;
    if s.len() <= places {
        s.insert_str(0, &"0".repeat(places + 1 - s.len()));
    }
    if places > 0 {
        s.insert(s.len() - places, '.');
    }
    format!("{sign}{s}")
}

/// Result of comparing the oracle against the exact engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// Sorted gap multisets agree within `10^-agree_digits`.
    pub gaps_agree: bool,
    pub distinct_agree: bool,
    /// Decimal digits of agreement of the worst gap, capped at the oracle precision.
    pub worst_digits: u32,
}

impl Agreement {
    pub fn ok(&self) -> bool {
        self.gaps_agree && self.distinct_agree
    }
}

/// Compares the oracle's gap multiset with the exact report, elementwise
/// after sorting.
pub fn compare_with_exact(
    report: &GapReport,
    result: &OracleResult,
    agree_digits: u32,
    alpha: &AlphaOracle,
) -> threegap_core::Result<Agreement> {
    let digits = result.digits;
    let mut exact = report
        .gaps
        .iter()
        .map(|g| Ok(parse_scaled(&to_fixed(g, digits, alpha)?)))
        .collect::<threegap_core::Result<Vec<BigInt>>>()?;
    exact.sort();
    let mut approx = result.gaps_scaled.clone();
    approx.sort();
    let worst = if exact.len() == approx.len() {
        exact
            .iter()
            .zip(&approx)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_default()
    } else {
        BigInt::from(10).pow(digits)
    };
    let worst_digits = if worst.is_zero() {
        digits
    } else {
        digits.saturating_sub(worst.to_string().len() as u32 - 1)
    };
    let tolerance = BigInt::from(10).pow(digits.saturating_sub(agree_digits));
    Ok(Agreement {
        gaps_agree: exact.len() == approx.len() && worst <= tolerance,
        distinct_agree: report.distinct_gaps.len() == result.distinct_count,
        worst_digits,
    })
}

fn parse_scaled(s: &str) -> BigInt {
    s.replace('.', "").parse().expect("decimal rendering")
}

#[cfg(test)]
mod tests {
    use super::*;
    use threegap_core::engine::{gap_report, GapConfig, SequenceSpec};
    use threegap_core::lambda_frac::FracVariant;
    use threegap_core::special::classical_config;
    use threegap_core::AlphaLinear;

    #[test]
    fn rejects_low_precision() {
        let cfg = classical_config(&AlphaOracle::golden_ratio(), 5);
        assert_eq!(float_oracle_gaps(&cfg, 10), Err(DigitsTooLow(10)));
    }

    #[test]
    fn golden_ratio_matches_exact() {
        let phi = AlphaOracle::golden_ratio();
        let cfg = classical_config(&phi, 5);
        let res = float_oracle_gaps(&cfg, 50).unwrap();
        assert_eq!(res.gaps_decimal.len(), 5);
        let report = gap_report(&cfg).unwrap();
        let agreement = compare_with_exact(&report, &res, 40, &phi).unwrap();
        assert!(agreement.ok(), "{agreement:?}");
        assert!(agreement.worst_digits >= 45);
        assert!(res.warnings.is_empty());
    }

    #[test]
    fn coincident_points_have_same_multiplicity() {
        // sequences 1 and 2 are identical, so every gap between twins is zero
        let alpha = AlphaOracle::sqrt(3).unwrap();
        let seq = SequenceSpec::new(2, AlphaLinear::zero(), 0, 7);
        let cfg = GapConfig {
            alpha: alpha.clone(),
            q: 3,
            sequences: vec![seq.clone(), seq],
            modulus: Rational::new(1, 2),
            lambda_multiplier: Some(2),
            variant: FracVariant::DoublePrime,
        };
        let report = gap_report(&cfg).unwrap();
        let res = float_oracle_gaps(&cfg, 60).unwrap();
        let zeros = res.gaps_scaled.iter().filter(|g| g.is_zero()).count();
        assert_eq!(zeros, report.gaps.iter().filter(|g| g.is_zero()).count());
        assert_eq!(zeros, 7);
        assert!(compare_with_exact(&report, &res, 50, &alpha).unwrap().ok());
    }

    #[test]
    fn nth_root_and_infinite_lambda() {
        let alpha = AlphaOracle::nth_root(Rational::new(15, 1), 3).unwrap();
        let cfg = GapConfig {
            alpha: alpha.clone(),
            q: 2,
            sequences: vec![
                SequenceSpec::new(-3, AlphaLinear::new(Rational::new(1, 3), Rational::one()), 2, 30),
                SequenceSpec::new(5, AlphaLinear::zero(), 0, 11),
            ],
            modulus: Rational::new(7, 5),
            lambda_multiplier: None,
            variant: FracVariant::Prime,
        };
        let report = gap_report(&cfg).unwrap();
        let res = float_oracle_gaps(&cfg, 80).unwrap();
        assert!(compare_with_exact(&report, &res, 60, &alpha).unwrap().ok());
    }

    #[test]
    fn scaled_formatting() {
        assert_eq!(format_scaled(&BigInt::from(5), 3), "0.005");
        assert_eq!(format_scaled(&BigInt::from(-12345), 2), "-123.45");
        assert_eq!(format_scaled(&BigInt::from(7), 0), "7");
    }
}
