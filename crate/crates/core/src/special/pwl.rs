//! Continuous piecewise-linear maps with rational slopes, reduced to
//! configurations of the gap engine.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;

use crate::engine::{
    compute_gaps, distinct_values, verify_bound, GapConfig, GapReport, LabeledPoint, SequenceSpec,
};
use crate::error::{Error, Result};
use crate::exact::{compare, reduce_mod, sort_by_value, AlphaLinear, AlphaOracle, Rational};
use crate::lambda_frac::FracVariant;

/// `x ↦ (p/q)·x + k` on one piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub p: i64,
    pub k: AlphaLinear,
}

/// Piece `j` applies on `[β_{j-1}, β_j]` with `β_{-1} = -∞` and
/// `β_r = +∞`, where `β` are the breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlFunction {
    pub q: u64,
    pub breakpoints: Vec<Rational>,
    pub pieces: Vec<Piece>,
}

impl PwlFunction {
    pub fn new(q: u64, breakpoints: Vec<Rational>, pieces: Vec<Piece>) -> Result<Self> {
        let f = PwlFunction {
            q,
            breakpoints,
            pieces,
        };
        f.validate()?;
        Ok(f)
    }

    /// A single linear piece.
    pub fn linear(p: i64, q: u64, k: AlphaLinear) -> Self {
        PwlFunction {
            q,
            breakpoints: Vec::new(),
            pieces: alloc::vec![Piece { p, k }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidPwl(msg));
        if self.q == 0 {
            return bad("q must be positive".into());
        }
        if self.pieces.len() != self.breakpoints.len() + 1 {
            return bad(format!(
                "{} pieces for {} breakpoints",
                self.pieces.len(),
                self.breakpoints.len()
            ));
        }
        if self.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing".into());
        }
        for (j, b) in self.breakpoints.iter().enumerate() {
            let x = AlphaLinear::rational(b.clone());
            if self.piece_value(j, &x) != self.piece_value(j + 1, &x) {
                return bad(format!("discontinuous at breakpoint {b}"));
            }
        }
        Ok(())
    }

    fn piece_value(&self, j: usize, x: &AlphaLinear) -> AlphaLinear {
        let piece = &self.pieces[j];
        &x.scale(&Rational::new(piece.p, self.q)) + &piece.k
    }

    /// Index of the piece containing `x`; at a breakpoint the left piece.
    pub fn piece_index(&self, x: &AlphaLinear, oracle: &AlphaOracle) -> Result<usize> {
        let mut idx = 0;
        for b in &self.breakpoints {
            if compare(x, &AlphaLinear::rational(b.clone()), oracle)? == Ordering::Greater {
                idx += 1;
            } else {
                break;
            }
        }
        Ok(idx)
    }

    pub fn eval(&self, x: &AlphaLinear, oracle: &AlphaOracle) -> Result<AlphaLinear> {
        Ok(self.piece_value(self.piece_index(x, oracle)?, x))
    }

    /// `ℓ_f` over all pieces; `None` if some slope is zero.
    fn slope_lcm(&self) -> Option<u64> {
        self.pieces.iter().try_fold(1u64, |acc, piece| {
            (piece.p != 0).then(|| acc.lcm(&piece.p.unsigned_abs()))
        })
    }

    /// `k_f = 3·Σ_j |ℓ_f / p_j|` over every piece, independent of `M` and `α`.
    pub fn k_f(&self) -> Result<u64> {
        let ell = self.slope_lcm().ok_or_else(|| Error::ZeroSlopePiece {
            piece: self.pieces.iter().position(|p| p.p == 0).unwrap_or(0),
        })?;
        Ok(3 * self.pieces.iter().map(|p| ell / p.p.unsigned_abs()).sum::<u64>())
    }
}

/// One part of `[0, Mα]`: the multiples `mα` with `n < m <= N` lie on
/// piece `piece`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlPart {
    pub piece: usize,
    pub p: i64,
    pub k: AlphaLinear,
    pub n: u64,
    pub big_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlDecomposition {
    pub q: u64,
    pub m: u64,
    pub parts: Vec<PwlPart>,
}

impl PwlDecomposition {
    /// Configuration with `λ = ∞`, prime variant, and one sequence per
    /// part that actually holds multiples.
    pub fn to_config(&self, alpha: &AlphaOracle, modulus: Rational) -> GapConfig {
        GapConfig {
            alpha: alpha.clone(),
            q: self.q,
            sequences: self
                .parts
                .iter()
                .filter(|part| part.big_n > part.n)
                .map(|part| SequenceSpec::new(part.p, part.k.clone(), part.n, part.big_n))
                .collect(),
            modulus,
            lambda_multiplier: None,
            variant: FracVariant::Prime,
        }
    }
}

/// Splits `[0, Mα]` at the breakpoints inside it and assigns each multiple
/// `mα` to its part.
pub fn pwl_decompose(f: &PwlFunction, alpha: &AlphaOracle, m: u64) -> Result<PwlDecomposition> {
    f.validate()?;
    if m == 0 {
        return Err(Error::InvalidPwl("M must be positive".into()));
    }
    let top = AlphaLinear::alpha_multiple(m);
    // number of multiples below each breakpoint
    let below = f
        .breakpoints
        .iter()
        .enumerate()
        .map(|(j, b)| count_below(b, j, alpha, m))
        .collect::<Result<Vec<u64>>>()?;
    let mut parts = Vec::new();
    for (j, piece) in f.pieces.iter().enumerate() {
        let left = j.checked_sub(1).map(|i| &f.breakpoints[i]);
        let right = f.breakpoints.get(j);
        // piece meets [0, Mα] in more than a point
        let starts_before_top = match left {
            Some(b) => compare(&AlphaLinear::rational(b.clone()), &top, alpha)? == Ordering::Less,
            None => true,
        };
        let ends_after_zero = right.is_none_or(|b| b.is_positive());
        if !(starts_before_top && ends_after_zero) {
            continue;
        }
        let n = j.checked_sub(1).map_or(0, |i| below[i]);
        let big_n = below.get(j).copied().unwrap_or(m);
        if big_n > n && piece.p == 0 {
            return Err(Error::ZeroSlopePiece { piece: j });
        }
        parts.push(PwlPart {
            piece: j,
            p: piece.p,
            k: piece.k.clone(),
            n,
            big_n,
        });
    }
    Ok(PwlDecomposition { q: f.q, m, parts })
}

/// `#{1 <= m <= M : mα < b}` by binary search.
fn count_below(b: &Rational, idx: usize, alpha: &AlphaOracle, m: u64) -> Result<u64> {
    let target = AlphaLinear::rational(b.clone());
    let (mut lo, mut hi) = (0u64, m);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match compare(&AlphaLinear::alpha_multiple(mid), &target, alpha)? {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid - 1,
            Ordering::Equal => {
                return Err(Error::BreakpointHit {
                    m: mid,
                    breakpoint: idx,
                })
            }
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug)]
pub struct PwlReport {
    pub decomposition: PwlDecomposition,
    pub report: GapReport,
    pub k_f: u64,
}

/// Gaps of `f(mα) mod P`, `1 <= m <= M`, checked against both `3c` for
/// the active parts and the global `k_f`.
pub fn pwl_gaps(f: &PwlFunction, alpha: &AlphaOracle, m: u64, modulus: &Rational) -> Result<PwlReport> {
    if m < 2 {
        return Err(Error::InvalidPwl(format!("M = {m} must exceed 1")));
    }
    let k_f = f.k_f()?;
    let decomposition = pwl_decompose(f, alpha, m)?;
    let report = verify_bound(&decomposition.to_config(alpha, modulus.clone()))?;
    if report.distinct_gaps.len() as u64 > k_f {
        return Err(Error::TheoremViolation {
            distinct: report.distinct_gaps.len(),
            bound: k_f as usize,
            report: Some(alloc::boxed::Box::new(report)),
        });
    }
    Ok(PwlReport {
        decomposition,
        report,
        k_f,
    })
}

/// Circle gaps of `f(mα) mod P` evaluated directly. Zero slopes are
/// allowed here; no bound is claimed.
pub fn pwl_gaps_empirical(
    f: &PwlFunction,
    alpha: &AlphaOracle,
    m: u64,
    modulus: &Rational,
) -> Result<(Vec<LabeledPoint>, Vec<AlphaLinear>, Vec<AlphaLinear>)> {
    f.validate()?;
    let mut points = Vec::with_capacity(m as usize);
    for k in 1..=m {
        let x = AlphaLinear::alpha_multiple(k);
        let seq = f.piece_index(&x, alpha)? + 1;
        let gamma = reduce_mod(&f.eval(&x, alpha)?, modulus, alpha)?;
        points.push(LabeledPoint { gamma, seq, m: k });
    }
    let sorted = sort_by_value(points, |p| &p.gamma, |a, b| a.m.cmp(&b.m), alpha)?;
    let (gaps, distinct) = compute_gaps(&sorted, modulus, alpha)?;
    debug_assert_eq!(distinct, distinct_values(&gaps, alpha)?);
    Ok((sorted, gaps, distinct))
}
