//! Descriptions of the irrational `α` together with rigorous rational
//! enclosures of any requested width.

use alloc::format;
use alloc::string::{String, ToString};
use core::cell::RefCell;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// First precision tried by sign and floor decisions.
pub const START_BITS: u32 = 64;
/// Hard cap of the doubling schedule.
pub const MAX_BITS: u32 = 1 << 20;

/// What `α` is. Plain data; see [`AlphaOracle`] for the evaluating wrapper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaKind {
    /// `a + b·√d`, with `d` a positive non-square integer and `b ≠ 0`.
    Quadratic { a: Rational, b: Rational, d: BigInt },
    /// `r^(1/n)` for positive `r` that is not an exact `n`-th power.
    NthRoot { r: Rational, n: u32 },
    /// `α` lies in `[digits, digits + 10^-k]` where `k` is the number of
    /// fractional digits. Irrationality is the caller's assertion.
    Decimal { digits: String, precision_bits: u32 },
}

impl fmt::Display for AlphaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaKind::Quadratic { a, b, d } => write!(f, "quadratic:{a}:{b}:{d}"),
            AlphaKind::NthRoot { r, n } => write!(f, "nthroot:{r}:{n}"),
            AlphaKind::Decimal { digits, .. } => write!(f, "decimal:{digits}"),
        }
    }
}

/// Rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Dyadic bounds `lo/2^bits <= α <= hi/2^bits`.
#[derive(Clone, Debug)]
pub(crate) struct DyadicBounds {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

/// Bounds on `a + b·α` as `lo/den <= value <= hi/den`, `den > 0`.
#[derive(Clone, Debug)]
pub(crate) struct LinearBounds {
    pub lo: BigInt,
    pub hi: BigInt,
    pub den: BigInt,
}

/// An irrational `α > 0` with memoized enclosures.
///
/// The memo is a `RefCell`, so an oracle is `Send` but not `Sync`; clone it
/// per thread.
#[derive(Clone)]
pub struct AlphaOracle {
    kind: AlphaKind,
    decimal: Option<DecimalValue>,
    // Best floor(α·2^bits) computed so far.
    memo: RefCell<Option<(u32, BigInt)>>,
}

#[derive(Clone, Debug)]
struct DecimalValue {
    value: Rational,
    ulp: Rational,
}

impl fmt::Debug for AlphaOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("AlphaOracle").field(&self.kind).finish()
    }
}

impl PartialEq for AlphaOracle {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl AlphaOracle {
    pub fn new(kind: AlphaKind) -> Result<Self> {
        let decimal = match &kind {
            AlphaKind::Quadratic { b, d, .. } => {
                if *d < BigInt::from(2) || d.sqrt().pow(2) == *d {
                    return Err(invalid(format!("D = {d} must be a positive non-square integer")));
                }
                if b.is_zero() {
                    return Err(invalid("b must be nonzero".into()));
                }
                None
            }
            AlphaKind::NthRoot { r, n } => {
                if !r.is_positive() {
                    return Err(invalid("r must be positive".into()));
                }
                if *n < 2 {
                    return Err(invalid("n must be at least 2".into()));
                }
                let exact = |x: &BigInt| x.nth_root(*n).pow(*n) == *x;
                if exact(r.numer()) && exact(r.denom()) {
                    return Err(invalid(format!("{r} is an exact {n}-th power")));
                }
                None
            }
            AlphaKind::Decimal {
                digits,
                precision_bits,
            } => Some(parse_decimal(digits, *precision_bits)?),
        };
        let oracle = AlphaOracle {
            kind,
            decimal,
            memo: RefCell::new(None),
        };
        if let AlphaKind::Quadratic { .. } = oracle.kind {
            if !oracle.le_scaled(&BigInt::zero(), 0) {
                return Err(invalid("alpha must be positive".into()));
            }
        }
        Ok(oracle)
    }

    pub fn quadratic(a: Rational, b: Rational, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(AlphaKind::Quadratic { a, b, d: d.into() })
    }

    pub fn nth_root(r: Rational, n: u32) -> Result<Self> {
        Self::new(AlphaKind::NthRoot { r, n })
    }

    pub fn decimal(digits: &str, precision_bits: u32) -> Result<Self> {
        Self::new(AlphaKind::Decimal {
            digits: digits.to_string(),
            precision_bits,
        })
    }

    /// `(1 + √5)/2`.
    pub fn golden_ratio() -> Self {
        Self::quadratic(Rational::new(1, 2), Rational::new(1, 2), 5).expect("valid")
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Self::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn kind(&self) -> &AlphaKind {
        &self.kind
    }

    /// Largest precision the doubling schedule may reach for this oracle.
    pub fn max_bits(&self) -> u32 {
        match &self.kind {
            AlphaKind::Decimal { precision_bits, .. } => precision_bits + 2,
            _ => MAX_BITS,
        }
    }

    /// Rational interval of width at most `2^-bits` containing `α`.
    ///
    /// Intervals for larger `bits` are nested in those for smaller `bits`.
    pub fn enclosure(&self, bits: u32) -> Result<Interval> {
        if bits == 0 {
            return Err(invalid("bits must be positive".into()));
        }
        let internal = match &self.kind {
            AlphaKind::Decimal { precision_bits, .. } => {
                if bits > *precision_bits {
                    return Err(Error::PrecisionExhausted { bits });
                }
                bits + 2
            }
            _ => bits,
        };
        let b = self.dyadic(internal)?;
        let scale = Rational::pow2_neg(b.bits);
        Ok(Interval {
            lo: Rational::from_integer(b.lo) * &scale,
            hi: Rational::from_integer(b.hi) * scale,
        })
    }

    pub(crate) fn dyadic(&self, bits: u32) -> Result<DyadicBounds> {
        if bits > self.max_bits() {
            return Err(Error::PrecisionExhausted { bits });
        }
        match &self.decimal {
            Some(dv) => {
                let scale = Rational::from_integer(BigInt::one() << bits as usize);
                let lo = (&dv.value * &scale).floor();
                let hi = ((&dv.value + &dv.ulp) * scale).ceil();
                Ok(DyadicBounds { lo, hi, bits })
            }
            None => {
                let lo = self.floor_scaled(bits);
                let hi = &lo + 1u32;
                Ok(DyadicBounds { lo, hi, bits })
            }
        }
    }

    /// Bounds on `a + b·α` at `bits` of α precision.
    pub(crate) fn linear_bounds(&self, a: &Rational, b: &Rational, bits: u32) -> Result<LinearBounds> {
        let al = self.dyadic(bits)?;
        let (an, ad) = (a.numer(), a.denom());
        let (bn, bd) = (b.numer(), b.denom());
        let base = (an * bd) << bits as usize;
        let coef = bn * ad;
        let (x, y) = (&base + &coef * &al.lo, base + &coef * &al.hi);
        let den = (ad * bd) << bits as usize;
        let (lo, hi) = if coef.is_negative() { (y, x) } else { (x, y) };
        Ok(LinearBounds { lo, hi, den })
    }

    /// Sign of `a + b·α`, exact.
    pub fn sign_of(&self, a: &Rational, b: &Rational) -> Result<Ordering> {
        if b.is_zero() {
            return Ok(a.signum());
        }
        self.refine(|bits| {
            let lb = self.linear_bounds(a, b, bits)?;
            Ok(if lb.lo.is_positive() {
                Some(Ordering::Greater)
            } else if lb.hi.is_negative() {
                Some(Ordering::Less)
            } else {
                None
            })
        })
    }

    /// `floor(a + b·α)`, exact.
    pub fn floor_of(&self, a: &Rational, b: &Rational) -> Result<BigInt> {
        if b.is_zero() {
            return Ok(a.floor());
        }
        self.refine(|bits| {
            let lb = self.linear_bounds(a, b, bits)?;
            let fl = lb.lo.div_floor(&lb.den);
            let fh = lb.hi.div_floor(&lb.den);
            Ok((fl == fh).then_some(fl))
        })
    }

    /// Runs `step` on the doubling precision schedule until it decides.
    pub(crate) fn refine<T>(&self, mut step: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
        let cap = self.max_bits();
        let mut bits = START_BITS.min(cap);
        loop {
            if let Some(t) = step(bits)? {
                return Ok(t);
            }
            if bits >= cap {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = bits.saturating_mul(2).min(cap);
        }
    }

    /// floor(α·2^bits) by bisection against the defining polynomial.
    fn floor_scaled(&self, bits: u32) -> BigInt {
        let mut memo = self.memo.borrow_mut();
        let (mut lo, mut hi) = match &*memo {
            Some((mb, ms)) if *mb >= bits => return ms >> (mb - bits) as usize,
            Some((mb, ms)) => {
                let shift = (bits - mb) as usize;
                (ms << shift, (ms + 1u32) << shift)
            }
            None => (BigInt::zero(), self.integer_upper_bound() << bits as usize),
        };
        // le(lo) holds, le(hi) fails
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1usize;
            if self.le_scaled(&mid, bits) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *memo = Some((bits, lo.clone()));
        lo
    }

    fn integer_upper_bound(&self) -> BigInt {
        match &self.kind {
            AlphaKind::Quadratic { a, b, d } => {
                let bound = a.abs() + b.abs() * Rational::from_integer(d.clone());
                bound.floor() + 1u32
            }
            AlphaKind::NthRoot { r, .. } => r.floor().max(BigInt::one()) + 1u32,
            AlphaKind::Decimal { .. } => unreachable!("decimal oracles are not bisected"),
        }
    }

    /// Whether `s/2^bits <= α`. Never an equality for the exact kinds.
    fn le_scaled(&self, s: &BigInt, bits: u32) -> bool {
        match &self.kind {
            AlphaKind::Quadratic { a, b, d } => {
                // s/2^bits - a <= b√d, scaled by ad·bd·2^bits
                let (an, ad) = (a.numer(), a.denom());
                let (bn, bd) = (b.numer(), b.denom());
                let lhs = (s * ad - (an << bits as usize)) * bd;
                let rhs = (bn * ad) << bits as usize;
                let lhs_sq = &lhs * &lhs;
                let rhs_sq = &rhs * &rhs * d;
                if rhs.is_positive() {
                    !lhs.is_positive() || lhs_sq <= rhs_sq
                } else {
                    lhs.is_negative() && lhs_sq >= rhs_sq
                }
            }
            AlphaKind::NthRoot { r, n } => {
                if s.is_negative() {
                    return true;
                }
                s.pow(*n) * r.denom() <= r.numer() << (*n as usize * bits as usize)
            }
            AlphaKind::Decimal { .. } => unreachable!("decimal oracles are not bisected"),
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidAlpha(msg)
}

fn parse_decimal(digits: &str, precision_bits: u32) -> Result<DecimalValue> {
    let bad = || invalid(format!("malformed decimal literal {digits:?}"));
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |s: &str| s.bytes().all(|c| c.is_ascii_digit());
    if int_part.is_empty() || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let k = frac_part.len() as i32;
    let mantissa: BigInt = [int_part, frac_part].concat().parse().map_err(|_| bad())?;
    let ulp = Rational::pow10(-k);
    let value = Rational::from_integer(mantissa) * &ulp;
    if !value.is_positive() {
        return Err(invalid("alpha must be positive".into()));
    }
    if precision_bits == 0 {
        return Err(invalid("precision_bits must be positive".into()));
    }
    // need 10^-k <= 2^-(precision_bits + 1)
    if ulp > Rational::pow2_neg(precision_bits + 1) {
        return Err(invalid(format!(
            "{k} fractional digits cannot support {precision_bits} bits"
        )));
    }
    Ok(DecimalValue { value, ulp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_root_15() -> AlphaOracle {
        AlphaOracle::nth_root(Rational::from_integer(15), 3).unwrap()
    }

    #[test]
    fn rejects_rational_alphas() {
        assert!(AlphaOracle::quadratic(Rational::zero(), Rational::one(), 4).is_err());
        assert!(AlphaOracle::quadratic(Rational::one(), Rational::zero(), 5).is_err());
        assert!(AlphaOracle::nth_root(Rational::new(8, 27), 3).is_err());
        assert!(AlphaOracle::nth_root(Rational::from_integer(2), 1).is_err());
        assert!(AlphaOracle::nth_root(Rational::from_integer(-2), 3).is_err());
        // 1 - √2 < 0
        assert!(AlphaOracle::quadratic(Rational::one(), Rational::from_integer(-1), 2).is_err());
    }

    #[test]
    fn sqrt2_at_four_bits() {
        let e = AlphaOracle::sqrt(2).unwrap().enclosure(4).unwrap();
        assert_eq!(e.lo, Rational::new(22, 16));
        assert_eq!(e.hi, Rational::new(23, 16));
    }

    #[test]
    fn cube_root_15_at_thirty_bits() {
        let e = cube_root_15().enclosure(30).unwrap();
        assert!(e.width() <= Rational::pow2_neg(30));
        // independent check: lo^3 <= 15 <= hi^3
        let cube = |x: &Rational| x * &(x * x);
        assert!(cube(&e.lo) <= Rational::from_integer(15));
        assert!(cube(&e.hi) >= Rational::from_integer(15));
        // 15^(1/3) = 2.4662120743...
        let truncated = Rational::new(24662120743u64, 10_000_000_000u64);
        let tenth_ulp = Rational::new(1, 10_000_000_000u64);
        assert!(truncated <= e.hi);
        assert!(e.lo <= truncated + tenth_ulp);
    }

    #[test]
    fn memo_serves_lower_precision() {
        let o = cube_root_15();
        let hi = o.enclosure(200).unwrap();
        let lo = o.enclosure(70).unwrap();
        assert!(lo.contains_interval(&hi));
        let fresh = cube_root_15().enclosure(70).unwrap();
        assert_eq!(lo, fresh);
    }

    #[test]
    fn decimal_literal_caps_precision() {
        let o = AlphaOracle::decimal("2.46621207433047010149161132376", 90).unwrap();
        assert!(o.enclosure(90).is_ok());
        assert!(matches!(o.enclosure(91), Err(Error::PrecisionExhausted { .. })));
        assert!(AlphaOracle::decimal("2.4662", 30).is_err());
        assert!(AlphaOracle::decimal("-1.5", 3).is_err());
        assert!(AlphaOracle::decimal("1.x5", 3).is_err());
    }

    #[test]
    fn decimal_sign_undecidable_is_exhausted() {
        let o = AlphaOracle::decimal("1.41421356237309504880", 60).unwrap();
        // 1 - α·(1/1.41421356237309504880) is within the literal's resolution
        let a = Rational::one();
        let b = -Rational::new(100000000000000000000u128, 141421356237309504880u128);
        assert!(matches!(o.sign_of(&a, &b), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn golden_ratio_signs() {
        let phi = AlphaOracle::golden_ratio();
        // 1 - α < 0
        assert_eq!(
            phi.sign_of(&Rational::one(), &Rational::from_integer(-1))
                .unwrap(),
            Ordering::Less
        );
        // α² = α + 1: floor(α) = 1
        assert_eq!(
            phi.floor_of(&Rational::zero(), &Rational::one()).unwrap(),
            BigInt::one()
        );
    }
}
