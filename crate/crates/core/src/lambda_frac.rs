//! Floors, roofs and fractional parts relative to the lattice
//! `I_λ = {nλ : n ∈ ℤ}`.

use core::cmp::Ordering;
use core::fmt;

use crate::error::{ConfigError, Result};
use crate::exact::{floor_div, AlphaLinear, AlphaOracle, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSpec {
    Finite(Rational),
    /// `{x}'_∞ = x`.
    Infinite,
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Finite(l) => write!(f, "{l}"),
            LambdaSpec::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FracVariant {
    /// `{x}'_λ`: keeps the sign of `x`.
    Prime,
    /// `{x}''_λ = x - ⌊x⌋_λ`, always in `[0, λ)`.
    DoublePrime,
}

impl FracVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            FracVariant::Prime => "prime",
            FracVariant::DoublePrime => "double_prime",
        }
    }
}

/// Whether `x ∈ I_λ`.
pub fn in_lattice(x: &AlphaLinear, lambda: &Rational) -> bool {
    x.v.is_zero() && (&x.u / lambda).is_integer()
}

/// `⌊x⌋_λ`, the largest multiple of `λ` not exceeding `x`.
pub fn lambda_floor(x: &AlphaLinear, lambda: &Rational, oracle: &AlphaOracle) -> Result<AlphaLinear> {
    let k = floor_div(x, lambda, oracle)?;
    Ok(AlphaLinear::rational(Rational::from_integer(k) * lambda))
}

/// `⌈x⌉_λ`, the smallest multiple of `λ` not below `x`.
pub fn lambda_roof(x: &AlphaLinear, lambda: &Rational, oracle: &AlphaOracle) -> Result<AlphaLinear> {
    let floor = lambda_floor(x, lambda, oracle)?;
    if in_lattice(x, lambda) {
        Ok(floor)
    } else {
        Ok(floor.add_rational(lambda))
    }
}

pub fn frac_part(
    x: &AlphaLinear,
    lambda: &LambdaSpec,
    variant: FracVariant,
    oracle: &AlphaOracle,
) -> Result<AlphaLinear> {
    let lambda = match (lambda, variant) {
        (LambdaSpec::Infinite, FracVariant::Prime) => return Ok(x.clone()),
        (LambdaSpec::Infinite, FracVariant::DoublePrime) => {
            return Err(ConfigError::InfiniteLambdaRequiresPrime.into())
        }
        (LambdaSpec::Finite(l), _) => l,
    };
    let base = match variant {
        FracVariant::Prime if x.sign(oracle)? == Ordering::Less => lambda_roof(x, lambda, oracle)?,
        _ => lambda_floor(x, lambda, oracle)?,
    };
    Ok(x - &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn rat(n: i64, d: i64) -> AlphaLinear {
        AlphaLinear::rational(r(n, d))
    }

    #[test]
    fn floor_examples() {
        let o = AlphaOracle::nth_root(Rational::from_integer(15), 3).unwrap();
        assert_eq!(lambda_floor(&rat(27, 10), &r(1, 1), &o).unwrap(), rat(2, 1));
        assert_eq!(lambda_floor(&rat(27, 10), &r(1, 2), &o).unwrap(), rat(5, 2));
        assert_eq!(
            lambda_floor(&AlphaLinear::alpha_multiple(1), &r(2, 1), &o).unwrap(),
            rat(2, 1)
        );
    }

    #[test]
    fn roof_examples() {
        let o = AlphaOracle::sqrt(2).unwrap();
        assert_eq!(lambda_roof(&rat(27, 10), &r(1, 1), &o).unwrap(), rat(3, 1));
        assert_eq!(lambda_roof(&rat(2, 1), &r(1, 1), &o).unwrap(), rat(2, 1));
        assert_eq!(
            lambda_roof(&AlphaLinear::alpha_multiple(-1), &r(1, 1), &o).unwrap(),
            rat(-1, 1)
        );
    }

    #[test]
    fn frac_examples() {
        let o = AlphaOracle::sqrt(2).unwrap();
        let one = LambdaSpec::Finite(r(1, 1));
        let x = rat(-3, 10);
        assert_eq!(
            frac_part(&x, &one, FracVariant::DoublePrime, &o).unwrap(),
            rat(7, 10)
        );
        assert_eq!(frac_part(&x, &one, FracVariant::Prime, &o).unwrap(), rat(-3, 10));
        assert!(frac_part(&x, &LambdaSpec::Infinite, FracVariant::DoublePrime, &o).is_err());
    }

    fn arb_linear() -> impl Strategy<Value = AlphaLinear> {
        (-500i64..500, 1i64..40, -60i64..60, 1i64..12)
            .prop_map(|(a, b, c, d)| AlphaLinear::new(r(a, b), r(c, d)))
    }

    fn arb_lambda() -> impl Strategy<Value = Rational> {
        (1i64..30, 1i64..10).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn infinite_is_identity(x in arb_linear()) {
            let o = AlphaOracle::golden_ratio();
            prop_assert_eq!(frac_part(&x, &LambdaSpec::Infinite, FracVariant::Prime, &o).unwrap(), x);
        }

        #[test]
        fn double_prime_in_range_and_lattice(x in arb_linear(), l in arb_lambda()) {
            let o = AlphaOracle::golden_ratio();
            let f = frac_part(&x, &LambdaSpec::Finite(l.clone()), FracVariant::DoublePrime, &o).unwrap();
            prop_assert_ne!(f.sign(&o).unwrap(), Ordering::Less);
            prop_assert_eq!(f.add_rational(&-l.clone()).sign(&o).unwrap(), Ordering::Less);
            prop_assert!(in_lattice(&(&x - &f), &l));
        }

        #[test]
        fn prime_versus_double_prime(x in arb_linear(), l in arb_lambda()) {
            let o = AlphaOracle::sqrt(3).unwrap();
            let spec = LambdaSpec::Finite(l.clone());
            let p = frac_part(&x, &spec, FracVariant::Prime, &o).unwrap();
            let dp = frac_part(&x, &spec, FracVariant::DoublePrime, &o).unwrap();
            if x.sign(&o).unwrap() != Ordering::Less {
                prop_assert_eq!(p, dp);
            } else if !in_lattice(&x, &l) {
                prop_assert_eq!(p, dp.add_rational(&-l));
            }
        }

        #[test]
        fn periodic(x in arb_linear(), l in arb_lambda()) {
            let o = AlphaOracle::sqrt(7).unwrap();
            let spec = LambdaSpec::Finite(l.clone());
            let a = frac_part(&x, &spec, FracVariant::DoublePrime, &o).unwrap();
            let b = frac_part(&x.add_rational(&l), &spec, FracVariant::DoublePrime, &o).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn floor_and_roof_sandwich(x in arb_linear(), l in arb_lambda(), on_lattice in any::<bool>()) {
            let o = AlphaOracle::sqrt(5).unwrap();
            let x = if on_lattice { AlphaLinear::rational(l.clone() * Rational::from_integer(x.u.floor())) } else { x };
            let fl = lambda_floor(&x, &l, &o).unwrap();
            let rf = lambda_roof(&x, &l, &o).unwrap();
            prop_assert_ne!(crate::exact::compare(&fl, &x, &o).unwrap(), Ordering::Greater);
            prop_assert_ne!(crate::exact::compare(&x, &rf, &o).unwrap(), Ordering::Greater);
            prop_assert_eq!(fl == x && rf == x, in_lattice(&x, &l));
        }
    }
}
