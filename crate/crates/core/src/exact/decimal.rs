//! Exact decimal rendering with round-half-away-from-zero.

use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlphaLinear, AlphaOracle, Rational};
use crate::error::Result;

/// Default number of significant digits in reports.
pub const DEFAULT_DIGITS: u32 = 30;

/// `x` rounded to `frac_digits` digits after the point.
pub fn to_fixed(x: &AlphaLinear, frac_digits: u32, oracle: &AlphaOracle) -> Result<String> {
    let negative = x.sign(oracle)? == Ordering::Less;
    let ax = if negative { -x } else { x.clone() };
    let scale = Rational::pow10(frac_digits as i32);
    let half = Rational::new(1, 2);
    let scaled = oracle.floor_of(&(&ax.u * &scale + half), &(&ax.v * &scale))?;
    Ok(format_scaled(&scaled, frac_digits, negative))
}

/// `x` rounded to `sig_digits` significant digits, in positional notation.
pub fn to_significant(x: &AlphaLinear, sig_digits: u32, oracle: &AlphaOracle) -> Result<String> {
    let sig_digits = sig_digits.max(1);
    let ax = x.abs(oracle)?;
    if ax.is_zero() {
        return Ok("0".into());
    }
    let exp = decimal_exponent(&ax, oracle)?;
    let frac = (sig_digits as i32 - 1 - exp).max(0) as u32;
    to_fixed(x, frac, oracle)
}

/// `e` with `10^e <= x < 10^(e+1)` for positive `x`.
fn decimal_exponent(x: &AlphaLinear, oracle: &AlphaOracle) -> Result<i32> {
    let ge = |e: i32| -> Result<bool> {
        let d = x.add_rational(&-Rational::pow10(e));
        Ok(d.sign(oracle)? != Ordering::Less)
    };
    let mut e = 0;
    while ge(e + 1)? {
        e += 1;
    }
    while !ge(e)? {
        e -= 1;
    }
    Ok(e)
}

fn format_scaled(scaled: &BigInt, frac_digits: u32, negative: bool) -> String {
    let mut digits = scaled.to_string();
    let k = frac_digits as usize;
    if digits.len() <= k {
        let pad = k + 1 - digits.len();
        digits.insert_str(0, &"0".repeat(pad));
    }
    if k > 0 {
        digits.insert(digits.len() - k, '.');
    }
    if negative && !scaled.is_zero() {
        digits.insert(0, '-');
    }
    digits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> AlphaLinear {
        AlphaLinear::rational(Rational::new(n, d))
    }

    #[test]
    fn ties_round_away_from_zero() {
        let o = AlphaOracle::golden_ratio();
        assert_eq!(to_fixed(&rat(5, 2), 0, &o).unwrap(), "3");
        assert_eq!(to_fixed(&rat(-5, 2), 0, &o).unwrap(), "-3");
        assert_eq!(to_fixed(&rat(1, 8), 2, &o).unwrap(), "0.13");
        assert_eq!(to_fixed(&rat(-1, 1000), 2, &o).unwrap(), "0.00");
    }

    #[test]
    fn irrational_rendering() {
        let o = AlphaOracle::golden_ratio();
        let phi = AlphaLinear::alpha_multiple(1);
        assert_eq!(to_fixed(&phi, 9, &o).unwrap(), "1.618033989");
        assert_eq!(to_significant(&phi, 5, &o).unwrap(), "1.6180");
        // 2 - φ
        let x = AlphaLinear::new(Rational::from_integer(2), Rational::from_integer(-1));
        assert_eq!(to_significant(&x, 6, &o).unwrap(), "0.381966");
        assert_eq!(
            to_significant(&x.scale(&Rational::new(1, 1000)), 3, &o).unwrap(),
            "0.000382"
        );
    }
}
