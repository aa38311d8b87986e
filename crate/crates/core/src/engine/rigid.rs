//! Classification of gap intervals under translation by `ℓ₀α`.
//!
//! A gap interval is rigid when its translate is not a gap interval. Either
//! an endpoint leaves the point set (its index runs past the sequence range,
//! so it is a start point), or the translate swallows another point, which
//! then must be a finish point. At most `2c + c` intervals are rigid, and
//! every gap length is the length of some rigid interval.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::config::{bound_3c, BoundData, GapConfig, SequenceSpec};
use super::points::{gap_report, point_value, GapReport, LabeledPoint};
use crate::error::{Error, Result};
use crate::exact::{reduce_mod, AlphaLinear};

/// The start and finish sets of sequence `seq` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSet {
    /// `{m : N - c + 1 <= m <= N}`, `c > 0`.
    S(usize),
    /// `{m : n + 1 <= m <= n - c}`, `c < 0`.
    T(usize),
    /// `{m : N + c + 1 <= m <= N}`, `c < 0`.
    SPrime(usize),
    /// `{m : n + 1 <= m <= n + c}`, `c > 0`.
    TPrime(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rigidity {
    /// The translate is the gap interval with this index.
    NonRigid { image: usize },
    /// An endpoint has no translate in the point set.
    CaseI {
        endpoint: LabeledPoint,
        witness: WitnessSet,
    },
    /// The translate has endpoints in the set but contains another point.
    CaseII {
        internal: LabeledPoint,
        witness: WitnessSet,
    },
}

impl Rigidity {
    pub fn is_rigid(&self) -> bool {
        !matches!(self, Rigidity::NonRigid { .. })
    }
}

/// Per-interval classification. Interval `j` runs from `b_{j-1}` to `b_j`
/// (cyclically) and has length `report.gaps[j]`.
#[derive(Clone, Debug)]
pub struct IntervalClassification {
    pub intervals: Vec<Rigidity>,
    pub rigid_count: usize,
    pub bound: BoundData,
    /// Distinct rigid-interval lengths, in the report's numeric order.
    pub rigid_lengths: Vec<AlphaLinear>,
}

impl IntervalClassification {
    pub fn within_bound(&self) -> bool {
        self.rigid_count as u64 <= self.bound.bound
    }

    /// Whether every distinct gap length is the length of a rigid interval.
    pub fn lengths_covered(&self, report: &GapReport) -> bool {
        report
            .distinct_gaps
            .iter()
            .all(|g| self.rigid_lengths.contains(g))
    }

    /// Follows translations from every interval: no orbit may revisit an
    /// interval, and every orbit must end at a rigid one.
    pub fn orbits_acyclic(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Active,
            Done,
        }
        let mut mark = vec![Mark::Fresh; self.intervals.len()];
        for start in 0..self.intervals.len() {
            let mut path = Vec::new();
            let mut cur = start;
            loop {
                match mark[cur] {
                    Mark::Done => break,
                    Mark::Active => return false,
                    Mark::Fresh => {}
                }
                mark[cur] = Mark::Active;
                path.push(cur);
                match self.intervals[cur] {
                    Rigidity::NonRigid { image } => cur = image,
                    _ => break,
                }
            }
            for j in path {
                mark[j] = Mark::Done;
            }
        }
        true
    }
}

/// Runs the pipeline and classifies every gap interval.
pub fn classify_intervals(config: &GapConfig) -> Result<(GapReport, IntervalClassification)> {
    let report = gap_report(config)?;
    let classification = classify_report(config, &report)?;
    Ok((report, classification))
}

/// Classifies the gap intervals of an existing report of `config`.
pub fn classify_report(config: &GapConfig, report: &GapReport) -> Result<IntervalClassification> {
    let bound = bound_3c(config)?;
    let seqs = &config.sequences;
    let sorted = &report.sorted_points;
    let total = sorted.len();

    // position of (i, m) in ≺-order
    let mut position: Vec<Vec<usize>> = seqs.iter().map(|s| vec![usize::MAX; s.len() as usize]).collect();
    for (pos, pt) in sorted.iter().enumerate() {
        position[pt.seq - 1][(pt.m - seqs[pt.seq - 1].n - 1) as usize] = pos;
    }
    let translate = |pt: &LabeledPoint| -> Option<usize> {
        let s = &seqs[pt.seq - 1];
        let target = pt.m as i128 + bound.c_list[pt.seq - 1] as i128;
        s.contains(target)
            .then(|| position[pt.seq - 1][(target as u64 - s.n - 1) as usize])
    };

    // the index map must agree with the numeric translation
    let shift = AlphaLinear::new(Default::default(), bound.ell0.clone());
    for pt in sorted {
        if let Some(pos) = translate(pt) {
            let moved = reduce_mod(&(&pt.gamma + &shift), &config.modulus, &config.alpha)?;
            if moved != sorted[pos].gamma {
                return Err(inconsistency(
                    0,
                    format!("translate of {:?} is not {:?}", pt.label(), sorted[pos].label()),
                ));
            }
        }
    }

    let mut intervals = Vec::with_capacity(total);
    for j in 0..total {
        let left = &sorted[(j + total - 1) % total];
        let right = &sorted[j];
        let rigidity = match (translate(left), translate(right)) {
            (None, _) => case_one(j, left, seqs, &bound)?,
            (_, None) => case_one(j, right, seqs, &bound)?,
            (Some(pl), Some(pr)) if pr == (pl + 1) % total => {
                if report.gaps[j] != report.gaps[pr] {
                    return Err(inconsistency(j, "translate changed the gap length".into()));
                }
                Rigidity::NonRigid { image: pr }
            }
            (Some(pl), Some(_)) => case_two(j, &sorted[(pl + 1) % total], seqs, &bound)?,
        };
        intervals.push(rigidity);
    }

    let rigid_set: BTreeSet<&AlphaLinear> = intervals
        .iter()
        .zip(&report.gaps)
        .filter(|(r, _)| r.is_rigid())
        .map(|(_, g)| g)
        .collect();
    let rigid_lengths = report
        .distinct_gaps
        .iter()
        .filter(|g| rigid_set.contains(g))
        .cloned()
        .collect();
    let rigid_count = intervals.iter().filter(|r| r.is_rigid()).count();
    Ok(IntervalClassification {
        intervals,
        rigid_count,
        bound,
        rigid_lengths,
    })
}

fn case_one(j: usize, endpoint: &LabeledPoint, seqs: &[SequenceSpec], bound: &BoundData) -> Result<Rigidity> {
    let s = &seqs[endpoint.seq - 1];
    let c = bound.c_list[endpoint.seq - 1];
    let m = endpoint.m as i128;
    let (witness, lo, hi) = if c > 0 {
        (
            WitnessSet::S(endpoint.seq),
            s.big_n as i128 - c as i128 + 1,
            s.big_n as i128,
        )
    } else {
        (
            WitnessSet::T(endpoint.seq),
            s.n as i128 + 1,
            s.n as i128 - c as i128,
        )
    };
    if !(lo..=hi).contains(&m) {
        return Err(inconsistency(
            j,
            format!("endpoint {:?} is not a start point", endpoint.label()),
        ));
    }
    Ok(Rigidity::CaseI {
        endpoint: endpoint.clone(),
        witness,
    })
}

fn case_two(j: usize, internal: &LabeledPoint, seqs: &[SequenceSpec], bound: &BoundData) -> Result<Rigidity> {
    let s = &seqs[internal.seq - 1];
    let c = bound.c_list[internal.seq - 1];
    let m = internal.m as i128;
    if s.contains(m - c as i128) {
        return Err(inconsistency(
            j,
            format!("internal point {:?} has a preimage", internal.label()),
        ));
    }
    let (witness, lo, hi) = if c > 0 {
        (
            WitnessSet::TPrime(internal.seq),
            s.n as i128 + 1,
            s.n as i128 + c as i128,
        )
    } else {
        (
            WitnessSet::SPrime(internal.seq),
            s.big_n as i128 + c as i128 + 1,
            s.big_n as i128,
        )
    };
    if !(lo..=hi).contains(&m) {
        return Err(inconsistency(
            j,
            format!("internal point {:?} is not a finish point", internal.label()),
        ));
    }
    Ok(Rigidity::CaseII {
        internal: internal.clone(),
        witness,
    })
}

fn inconsistency(interval: usize, detail: String) -> Error {
    Error::ClassificationInconsistency { interval, detail }
}

/// Start points `S_i ∪ T_i` of every sequence, as labeled points.
pub fn start_points(config: &GapConfig) -> Result<Vec<LabeledPoint>> {
    witness_points(config, |s, c| {
        if c > 0 {
            (s.big_n as i128 - c + 1, s.big_n as i128)
        } else {
            (s.n as i128 + 1, s.n as i128 - c)
        }
    })
}

/// Finish points `S'_i ∪ T'_i` of every sequence.
pub fn finish_points(config: &GapConfig) -> Result<Vec<LabeledPoint>> {
    witness_points(config, |s, c| {
        if c > 0 {
            (s.n as i128 + 1, s.n as i128 + c)
        } else {
            (s.big_n as i128 + c + 1, s.big_n as i128)
        }
    })
}

fn witness_points(
    config: &GapConfig,
    range: impl Fn(&SequenceSpec, i128) -> (i128, i128),
) -> Result<Vec<LabeledPoint>> {
    let bound = bound_3c(config)?;
    let mut out = Vec::new();
    for (idx, s) in config.sequences.iter().enumerate() {
        let (lo, hi) = range(s, bound.c_list[idx] as i128);
        for m in lo.max(s.n as i128 + 1)..=hi.min(s.big_n as i128) {
            let m = m as u64;
            out.push(LabeledPoint {
                gamma: point_value(config, idx, m)?,
                seq: idx + 1,
                m,
            });
        }
    }
    Ok(out)
}
