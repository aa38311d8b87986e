use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{ConfigError, Result};
use crate::exact::{AlphaLinear, AlphaOracle, Rational};
use crate::lambda_frac::{FracVariant, LambdaSpec};

/// One arithmetic family `m ↦ (p/q)·{mα}_λ + k`, `n < m <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceSpec {
    /// Slope numerator; the denominator `q` is shared by all sequences.
    pub p: i64,
    pub k: AlphaLinear,
    pub n: u64,
    pub big_n: u64,
}

impl SequenceSpec {
    pub fn new(p: i64, k: AlphaLinear, n: u64, big_n: u64) -> Self {
        SequenceSpec { p, k, n, big_n }
    }

    /// Number of points contributed, `N - n`.
    pub fn len(&self) -> u64 {
        self.big_n.saturating_sub(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, m: i128) -> bool {
        m > self.n as i128 && m <= self.big_n as i128
    }
}

/// A full configuration of the generalized distance theorem.
#[derive(Clone, Debug, PartialEq)]
pub struct GapConfig {
    pub alpha: AlphaOracle,
    pub q: u64,
    pub sequences: Vec<SequenceSpec>,
    /// The circle length `P`.
    pub modulus: Rational,
    /// `t` with `λ = t·P·q`; `None` selects `λ = ∞`.
    pub lambda_multiplier: Option<u64>,
    pub variant: FracVariant,
}

impl GapConfig {
    pub fn lambda(&self) -> LambdaSpec {
        match self.lambda_multiplier {
            Some(t) => {
                LambdaSpec::Finite(Rational::from_integer(t) * &self.modulus * Rational::from_integer(self.q))
            }
            None => LambdaSpec::Infinite,
        }
    }

    /// Sets `λ` from its value, which must be a positive integer multiple of `P·q`.
    pub fn set_lambda(&mut self, lambda: &LambdaSpec) -> Result<()> {
        self.lambda_multiplier = match lambda {
            LambdaSpec::Infinite => None,
            LambdaSpec::Finite(l) => {
                let t = l / &(&self.modulus * &Rational::from_integer(self.q));
                if !t.is_integer() || !t.is_positive() {
                    return Err(ConfigError::LambdaNotMultiple.into());
                }
                Some(u64::try_from(t.floor()).map_err(|_| ConfigError::LambdaNotMultiple)?)
            }
        };
        Ok(())
    }

    /// `N = Σ (N_i - n_i)`.
    pub fn total_points(&self) -> u64 {
        self.sequences.iter().map(SequenceSpec::len).sum()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sequences.is_empty() {
            return Err(ConfigError::NoSequences);
        }
        if self.q == 0 {
            return Err(ConfigError::NonPositiveDenominator);
        }
        if !self.modulus.is_positive() {
            return Err(ConfigError::NonPositiveModulus);
        }
        match self.lambda_multiplier {
            Some(0) => return Err(ConfigError::LambdaNotMultiple),
            None if self.variant == FracVariant::DoublePrime => {
                return Err(ConfigError::InfiniteLambdaRequiresPrime)
            }
            _ => {}
        }
        for (index, s) in self.sequences.iter().enumerate() {
            if s.p == 0 {
                return Err(ConfigError::ZeroSlope { index: index + 1 });
            }
            if s.n > s.big_n {
                return Err(ConfigError::RangeInverted {
                    index: index + 1,
                    n: s.n,
                    big_n: s.big_n,
                });
            }
            if s.big_n == 0 {
                return Err(ConfigError::Other(format!(
                    "sequence {}: N must be positive",
                    index + 1
                )));
            }
        }
        if self.total_points() == 0 {
            return Err(ConfigError::EmptyConfig);
        }
        bound_3c(self).map(|_| ())
    }
}

/// `ℓ`, `ℓ₀ = ℓ/q`, the signed `c_i = ℓ/p_i`, `c = Σ|c_i|` and `3c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundData {
    pub ell: u64,
    pub ell0: Rational,
    pub c_list: Vec<i64>,
    pub c: u64,
    pub bound: u64,
}

/// `ℓ` is the positive lcm of the `|p_i|`, so each `c_i` carries the sign of `p_i`.
pub fn bound_3c(config: &GapConfig) -> Result<BoundData, ConfigError> {
    let overflow = || ConfigError::Other("lcm of slopes overflows u64".into());
    let mut ell: u64 = 1;
    for (index, s) in config.sequences.iter().enumerate() {
        if s.p == 0 {
            return Err(ConfigError::ZeroSlope { index: index + 1 });
        }
        let l = BigInt::from(ell).lcm(&BigInt::from(s.p.unsigned_abs()));
        ell = u64::try_from(l).map_err(|_| overflow())?;
    }
    let c_list: Vec<i64> = config
        .sequences
        .iter()
        .map(|s| i64::try_from(ell / s.p.unsigned_abs()).map(|c| c * s.p.signum()))
        .collect::<Result<_, _>>()
        .map_err(|_| overflow())?;
    let c: u64 = c_list.iter().map(|c| c.unsigned_abs()).sum();
    Ok(BoundData {
        ell,
        ell0: Rational::new(ell, config.q),
        c_list,
        c,
        bound: 3 * c,
    })
}
