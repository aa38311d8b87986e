use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use super::{AlphaOracle, Rational};
use crate::error::Result;

/// The real number `u + v·α`.
///
/// Because `α` is irrational, two values are equal exactly when their
/// coefficients are, so the derived `Eq` is numeric equality. The derived
/// `Ord` is the lexicographic order on `(u, v)`, which is only a structural
/// key; use [`compare`] for the numeric order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AlphaLinear {
    pub u: Rational,
    pub v: Rational,
}

impl AlphaLinear {
    pub fn new(u: Rational, v: Rational) -> Self {
        AlphaLinear { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        AlphaLinear {
            u,
            v: Rational::zero(),
        }
    }

    /// `m·α`.
    pub fn alpha_multiple(m: impl Into<BigInt>) -> Self {
        AlphaLinear {
            u: Rational::zero(),
            v: Rational::from_integer(m),
        }
    }

    pub fn zero() -> Self {
        AlphaLinear::default()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AlphaLinear {
            u: &self.u * s,
            v: &self.v * s,
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        AlphaLinear {
            u: &self.u + r,
            v: self.v.clone(),
        }
    }

    pub fn sign(&self, oracle: &AlphaOracle) -> Result<Ordering> {
        oracle.sign_of(&self.u, &self.v)
    }

    pub fn abs(&self, oracle: &AlphaOracle) -> Result<Self> {
        Ok(match self.sign(oracle)? {
            Ordering::Less => -self,
            _ => self.clone(),
        })
    }

    /// Dyadic enclosure `[lo, hi]·2^-bits` used as a fast sort key.
    pub fn sort_key(&self, oracle: &AlphaOracle, bits: u32) -> Result<SortKey> {
        let lb = oracle.linear_bounds(&self.u, &self.v, bits)?;
        let lo = (lb.lo << bits as usize).div_floor(&lb.den);
        let hi = -((-(lb.hi << bits as usize)).div_floor(&lb.den));
        Ok(SortKey { lo, hi })
    }
}

impl fmt::Debug for AlphaLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·α)", self.u, self.v)
    }
}

impl Add for &AlphaLinear {
    type Output = AlphaLinear;
    fn add(self, rhs: &AlphaLinear) -> AlphaLinear {
        AlphaLinear {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl Add for AlphaLinear {
    type Output = AlphaLinear;
    fn add(self, rhs: AlphaLinear) -> AlphaLinear {
        &self + &rhs
    }
}

impl Sub for &AlphaLinear {
    type Output = AlphaLinear;
    fn sub(self, rhs: &AlphaLinear) -> AlphaLinear {
        AlphaLinear {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl Sub for AlphaLinear {
    type Output = AlphaLinear;
    fn sub(self, rhs: AlphaLinear) -> AlphaLinear {
        &self - &rhs
    }
}

impl Neg for &AlphaLinear {
    type Output = AlphaLinear;
    fn neg(self) -> AlphaLinear {
        AlphaLinear {
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl Neg for AlphaLinear {
    type Output = AlphaLinear;
    fn neg(self) -> AlphaLinear {
        -&self
    }
}

/// Outward-rounded dyadic enclosure of an [`AlphaLinear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortKey {
    lo: BigInt,
    hi: BigInt,
}

impl SortKey {
    /// `Some` when the enclosures are disjoint.
    pub fn separate(&self, other: &SortKey) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Numeric order of `x` and `y`. `Equal` exactly when the coefficients agree.
pub fn compare(x: &AlphaLinear, y: &AlphaLinear, oracle: &AlphaOracle) -> Result<Ordering> {
    if x == y {
        return Ok(Ordering::Equal);
    }
    oracle.sign_of(&(&x.u - &y.u), &(&x.v - &y.v))
}

/// The integer `k` with `k·s <= x < (k+1)·s`. Panics unless `s > 0`.
pub fn floor_div(x: &AlphaLinear, s: &Rational, oracle: &AlphaOracle) -> Result<BigInt> {
    assert!(s.is_positive(), "floor_div requires a positive divisor");
    let inv = s.recip();
    oracle.floor_of(&(&x.u * &inv), &(&x.v * &inv))
}

/// Representative of `x` modulo `P` in `[0, P)`; only `u` changes.
pub fn reduce_mod(x: &AlphaLinear, modulus: &Rational, oracle: &AlphaOracle) -> Result<AlphaLinear> {
    let k = floor_div(x, modulus, oracle)?;
    Ok(x.add_rational(&-(Rational::from_integer(k) * modulus)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn al(u: Rational, v: Rational) -> AlphaLinear {
        AlphaLinear::new(u, v)
    }

    #[test]
    fn compare_examples() {
        let sqrt2 = AlphaOracle::sqrt(2).unwrap();
        let half = AlphaLinear::rational(r(1, 2));
        assert_eq!(compare(&half, &half.clone(), &sqrt2).unwrap(), Ordering::Equal);
        let alpha = AlphaLinear::alpha_multiple(1);
        let one = AlphaLinear::rational(r(1, 1));
        assert_eq!(compare(&alpha, &one, &sqrt2).unwrap(), Ordering::Greater);

        // 1 + φ ≈ 2.618 versus 2φ ≈ 3.236
        let phi = AlphaOracle::golden_ratio();
        let x = al(r(1, 1), r(1, 1));
        let y = al(r(0, 1), r(2, 1));
        assert_eq!(compare(&x, &y, &phi).unwrap(), Ordering::Less);
    }

    #[test]
    fn floor_div_examples() {
        let sqrt2 = AlphaOracle::sqrt(2).unwrap();
        let one = r(1, 1);
        assert_eq!(
            floor_div(&AlphaLinear::rational(r(27, 10)), &one, &sqrt2).unwrap(),
            2.into()
        );
        assert_eq!(
            floor_div(&AlphaLinear::rational(r(-3, 10)), &one, &sqrt2).unwrap(),
            (-1).into()
        );
        assert_eq!(
            floor_div(&AlphaLinear::alpha_multiple(1), &r(1, 2), &sqrt2).unwrap(),
            2.into()
        );
    }

    #[test]
    fn reduce_mod_examples() {
        let phi = AlphaOracle::golden_ratio();
        let one = r(1, 1);
        assert_eq!(
            reduce_mod(&AlphaLinear::rational(r(5, 2)), &one, &phi).unwrap(),
            AlphaLinear::rational(r(1, 2))
        );
        assert_eq!(
            reduce_mod(&AlphaLinear::alpha_multiple(2), &one, &phi).unwrap(),
            al(r(-3, 1), r(2, 1))
        );
        assert_eq!(
            reduce_mod(&AlphaLinear::rational(r(-3, 10)), &one, &phi).unwrap(),
            AlphaLinear::rational(r(7, 10))
        );
    }

    #[test]
    fn sort_key_brackets_value() {
        let phi = AlphaOracle::golden_ratio();
        let x = al(r(-3, 1), r(2, 1));
        let k = x.sort_key(&phi, 64).unwrap();
        let lo = AlphaLinear::rational(Rational::new(k.lo.clone(), BigInt::from(1u128 << 64)));
        let hi = AlphaLinear::rational(Rational::new(k.hi.clone(), BigInt::from(1u128 << 64)));
        assert_eq!(compare(&lo, &x, &phi).unwrap(), Ordering::Less);
        assert_eq!(compare(&x, &hi, &phi).unwrap(), Ordering::Less);
    }
}
