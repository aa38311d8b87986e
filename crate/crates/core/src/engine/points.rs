use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::config::{bound_3c, BoundData, GapConfig};
use crate::error::{Error, Result};
use crate::exact::{reduce_mod, sort_by_value, AlphaLinear, AlphaOracle, Rational};
use crate::lambda_frac::frac_part;

/// The triple `(γ, i, m)`; `seq` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoint {
    pub gamma: AlphaLinear,
    pub seq: usize,
    pub m: u64,
}

impl LabeledPoint {
    pub fn label(&self) -> (usize, u64) {
        (self.seq, self.m)
    }
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub sorted_points: Vec<LabeledPoint>,
    /// `gaps[0]` is the wraparound `P + b_1 - b_N`; `gaps[j] = b_{j+1} - b_j` after.
    pub gaps: Vec<AlphaLinear>,
    /// Distinct gap values in increasing numeric order.
    pub distinct_gaps: Vec<AlphaLinear>,
    pub bound_data: BoundData,
    pub bound_satisfied: bool,
    pub modulus: Rational,
}

impl GapReport {
    pub fn total_points(&self) -> usize {
        self.sorted_points.len()
    }

    /// Whether the gaps sum to `P` as an exact coefficient identity.
    pub fn gap_sum_is_modulus(&self) -> bool {
        let sum = self.gaps.iter().fold(AlphaLinear::zero(), |acc, g| &acc + g);
        sum == AlphaLinear::rational(self.modulus.clone())
    }
}

/// `γ_im` for sequence `seq` (0-based) and multiplier `m`.
pub fn point_value(config: &GapConfig, seq: usize, m: u64) -> Result<AlphaLinear> {
    let s = &config.sequences[seq];
    let oracle = &config.alpha;
    let x = AlphaLinear::alpha_multiple(m);
    let frac = frac_part(&x, &config.lambda(), config.variant, oracle)?;
    let slope = Rational::new(s.p, config.q);
    let value = &frac.scale(&slope) + &s.k;
    reduce_mod(&value, &config.modulus, oracle)
}

/// All `N` labeled points, in `(i, m)` order.
pub fn generate_points(config: &GapConfig) -> Result<Vec<LabeledPoint>> {
    config.validate()?;
    let mut points = Vec::with_capacity(config.total_points() as usize);
    for (idx, s) in config.sequences.iter().enumerate() {
        for m in s.n + 1..=s.big_n {
            points.push(LabeledPoint {
                gamma: point_value(config, idx, m)?,
                seq: idx + 1,
                m,
            });
        }
    }
    Ok(points)
}

/// Sorts by `≺`: by `γ`, then by `i`, then by `m`.
pub fn sort_points(points: Vec<LabeledPoint>, oracle: &AlphaOracle) -> Result<Vec<LabeledPoint>> {
    sort_by_value(points, |p| &p.gamma, |a, b| a.label().cmp(&b.label()), oracle)
}

/// Circle gaps and their distinct values.
pub fn compute_gaps(
    sorted: &[LabeledPoint],
    modulus: &Rational,
    oracle: &AlphaOracle,
) -> Result<(Vec<AlphaLinear>, Vec<AlphaLinear>)> {
    let Some((first, last)) = sorted.first().zip(sorted.last()) else {
        return Ok((Vec::new(), Vec::new()));
    };
    let mut gaps = Vec::with_capacity(sorted.len());
    gaps.push((&first.gamma - &last.gamma).add_rational(modulus));
    gaps.extend(sorted.windows(2).map(|w| &w[1].gamma - &w[0].gamma));
    let distinct = distinct_values(&gaps, oracle)?;
    Ok((gaps, distinct))
}

/// Structurally distinct values, sorted numerically.
pub fn distinct_values(values: &[AlphaLinear], oracle: &AlphaOracle) -> Result<Vec<AlphaLinear>> {
    let set: BTreeSet<&AlphaLinear> = values.iter().collect();
    let distinct: Vec<AlphaLinear> = set.into_iter().cloned().collect();
    sort_by_value(distinct, |x| x, |_, _| Ordering::Equal, oracle)
}

/// Runs generate, sort and gaps; fails with `TheoremViolation` if the
/// distinct gap count exceeds `3c`.
pub fn verify_bound(config: &GapConfig) -> Result<GapReport> {
    let report = gap_report(config)?;
    if !report.bound_satisfied {
        return Err(Error::TheoremViolation {
            distinct: report.distinct_gaps.len(),
            bound: report.bound_data.bound as usize,
            report: Some(Box::new(report)),
        });
    }
    Ok(report)
}

/// The pipeline without the bound assertion.
pub fn gap_report(config: &GapConfig) -> Result<GapReport> {
    let bound_data = bound_3c(config)?;
    let points = generate_points(config)?;
    let sorted = sort_points(points, &config.alpha)?;
    let (gaps, distinct_gaps) = compute_gaps(&sorted, &config.modulus, &config.alpha)?;
    let bound_satisfied = distinct_gaps.len() as u64 <= bound_data.bound;
    Ok(GapReport {
        sorted_points: sorted,
        gaps,
        distinct_gaps,
        bound_data,
        bound_satisfied,
        modulus: config.modulus.clone(),
    })
}

/// Checks `γ_im + ℓ₀α ≡ γ_i(m+c_i) (mod P)` wherever both indices are in range.
pub fn translation_check(config: &GapConfig) -> Result<bool> {
    let bound = bound_3c(config)?;
    let shift = AlphaLinear::new(Rational::zero(), bound.ell0.clone());
    for (idx, s) in config.sequences.iter().enumerate() {
        let c = bound.c_list[idx] as i128;
        for m in s.n + 1..=s.big_n {
            let target = m as i128 + c;
            if !s.contains(target) {
                continue;
            }
            let moved = reduce_mod(
                &(&point_value(config, idx, m)? + &shift),
                &config.modulus,
                &config.alpha,
            )?;
            if moved != point_value(config, idx, target as u64)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
