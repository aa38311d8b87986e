//! Incremental scan of the nearest-integer gap sets as `M` grows, and the
//! search for the four gap sizes printed for `α = 15^(1/3)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::nearest::nearest_int;
use crate::engine::distinct_values;
use crate::error::Result;
use crate::exact::{compare, decimal, AlphaLinear, AlphaOracle, Rational};

/// The four gap sizes, to nine decimals, reported for the cube root of 15.
pub const REMARK_GAPS: [&str; 4] = ["0.000612999", "0.006205886", "0.006818885", "0.007125385"];
/// Decimal places used when matching against [`REMARK_GAPS`].
pub const REMARK_DECIMALS: u32 = 9;

/// How the gaps of `{‖mα‖}` are collected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapConvention {
    /// Successive differences inside `[0, 1/2]`.
    Interval,
    /// As on a circle of length `1/2`: adds `1/2 - max + min`.
    Wraparound,
}

impl GapConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            GapConvention::Interval => "interval",
            GapConvention::Wraparound => "wraparound",
        }
    }
}

/// Gap structure of `{‖mα‖ : m <= M}` at one `M`.
#[derive(Clone, Debug)]
pub struct ScanStep<'a> {
    pub m: u64,
    /// Interval gaps with multiplicities, keyed structurally.
    pub interval: &'a BTreeMap<AlphaLinear, usize>,
    pub wrap_gap: AlphaLinear,
}

impl ScanStep<'_> {
    pub fn distinct_count(&self, convention: GapConvention) -> usize {
        match convention {
            GapConvention::Interval => self.interval.len(),
            GapConvention::Wraparound => {
                self.interval.len() + usize::from(!self.interval.contains_key(&self.wrap_gap))
            }
        }
    }

    /// Distinct gaps under `convention`, in structural order.
    pub fn distinct(&self, convention: GapConvention) -> Vec<AlphaLinear> {
        let mut out: Vec<AlphaLinear> = self.interval.keys().cloned().collect();
        if convention == GapConvention::Wraparound && !self.interval.contains_key(&self.wrap_gap) {
            out.push(self.wrap_gap.clone());
        }
        out
    }
}

/// Inserts `‖mα‖` for `m = 1, 2, …, max_m`, maintaining the gap multiset,
/// and calls `visit` after each `m >= 2`.
pub fn scan_nearest_int(
    alpha: &AlphaOracle,
    max_m: u64,
    mut visit: impl FnMut(&ScanStep<'_>) -> Result<()>,
) -> Result<()> {
    let half = Rational::new(1, 2);
    let mut values: Vec<AlphaLinear> = Vec::new();
    let mut gaps: BTreeMap<AlphaLinear, usize> = BTreeMap::new();
    for m in 1..=max_m {
        let x = nearest_int(&AlphaLinear::alpha_multiple(m), alpha)?;
        let pos = insertion_point(&values, &x, alpha)?;
        let left = pos.checked_sub(1).map(|i| values[i].clone());
        let right = values.get(pos).cloned();
        if let (Some(l), Some(r)) = (&left, &right) {
            remove(&mut gaps, &(r - l));
        }
        if let Some(l) = &left {
            *gaps.entry(&x - l).or_default() += 1;
        }
        if let Some(r) = &right {
            *gaps.entry(r - &x).or_default() += 1;
        }
        values.insert(pos, x);
        if m >= 2 {
            let (first, last) = (&values[0], &values[values.len() - 1]);
            let wrap_gap = (first - last).add_rational(&half);
            visit(&ScanStep {
                m,
                interval: &gaps,
                wrap_gap,
            })?;
        }
    }
    Ok(())
}

fn insertion_point(values: &[AlphaLinear], x: &AlphaLinear, alpha: &AlphaOracle) -> Result<usize> {
    let (mut lo, mut hi) = (0, values.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if compare(&values[mid], x, alpha)? == Ordering::Less {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn remove(gaps: &mut BTreeMap<AlphaLinear, usize>, g: &AlphaLinear) {
    if let Some(c) = gaps.get_mut(g) {
        *c -= 1;
        if *c == 0 {
            gaps.remove(g);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkMatch {
    pub m: u64,
    pub convention: GapConvention,
    /// Exact gap values, increasing.
    pub gaps: Vec<AlphaLinear>,
    /// The same values rounded to [`REMARK_DECIMALS`] places.
    pub rounded: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct RemarkSearch {
    pub interval_matches: Vec<RemarkMatch>,
    pub wraparound_matches: Vec<RemarkMatch>,
    pub max_distinct_interval: usize,
    pub max_distinct_wraparound: usize,
}

impl RemarkSearch {
    pub fn first_match(&self) -> Option<&RemarkMatch> {
        self.interval_matches.first().or(self.wraparound_matches.first())
    }
}

/// Every `M` in `2..=max_m` whose gap set has exactly the four values of
/// `target` after rounding to `decimals` places, under either convention.
pub fn search_gap_values(
    alpha: &AlphaOracle,
    max_m: u64,
    target: &[&str],
    decimals: u32,
) -> Result<RemarkSearch> {
    let mut out = RemarkSearch::default();
    let mut sorted_target: Vec<&str> = target.to_vec();
    sorted_target.sort_unstable();
    scan_nearest_int(alpha, max_m, |step| {
        for convention in [GapConvention::Interval, GapConvention::Wraparound] {
            let count = step.distinct_count(convention);
            let (max, matches) = match convention {
                GapConvention::Interval => (&mut out.max_distinct_interval, &mut out.interval_matches),
                GapConvention::Wraparound => (&mut out.max_distinct_wraparound, &mut out.wraparound_matches),
            };
            *max = (*max).max(count);
            if count != sorted_target.len() {
                continue;
            }
            let gaps = distinct_values(&step.distinct(convention), alpha)?;
            let rounded = gaps
                .iter()
                .map(|g| decimal::to_fixed(g, decimals, alpha))
                .collect::<Result<Vec<String>>>()?;
            let mut sorted_rounded: Vec<&str> = rounded.iter().map(String::as_str).collect();
            sorted_rounded.sort_unstable();
            if sorted_rounded == sorted_target {
                matches.push(RemarkMatch {
                    m: step.m,
                    convention,
                    gaps,
                    rounded,
                });
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// `15^(1/3)`.
pub fn cube_root_15() -> AlphaOracle {
    AlphaOracle::nth_root(Rational::from_integer(15), 3).expect("15 is not a cube")
}

/// Scans `M = 2..=max_m` for `α = 15^(1/3)`.
pub fn search_remark(max_m: u64) -> Result<RemarkSearch> {
    search_gap_values(&cube_root_15(), max_m, &REMARK_GAPS, REMARK_DECIMALS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::nearest::nearest_int_gaps;

    #[test]
    fn too_small_range_is_empty() {
        let s = search_remark(2).unwrap();
        assert!(s.interval_matches.is_empty() && s.wraparound_matches.is_empty());
    }

    #[test]
    fn incremental_scan_matches_batch() {
        let alpha = AlphaOracle::sqrt(7).unwrap();
        scan_nearest_int(&alpha, 60, |step| {
            let batch = nearest_int_gaps(&alpha, step.m)?;
            let mut scanned = distinct_values(&step.distinct(GapConvention::Interval), &alpha)?;
            scanned.sort();
            let mut expected = batch.distinct.clone();
            expected.sort();
            assert_eq!(scanned, expected);
            assert_eq!(step.interval.values().sum::<usize>(), batch.gaps.len());
            Ok(())
        })
        .unwrap();
    }
}
