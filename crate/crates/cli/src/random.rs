//! Seeded generators of irrationals and configurations for property runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threegap_core::engine::{GapConfig, SequenceSpec};
use threegap_core::lambda_frac::FracVariant;
use threegap_core::{AlphaKind, AlphaLinear, AlphaOracle, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Quadratic irrationals and real roots used by randomized runs.
pub fn alpha_pool() -> Vec<AlphaKind> {
    let quad = |a: (i64, i64), b: (i64, i64), d: i64| AlphaKind::Quadratic {
        a: Rational::new(a.0, a.1),
        b: Rational::new(b.0, b.1),
        d: d.into(),
    };
    let root = |r: (i64, i64), n: u32| AlphaKind::NthRoot {
        r: Rational::new(r.0, r.1),
        n,
    };
    vec![
        quad((1, 2), (1, 2), 5),
        quad((0, 1), (1, 1), 2),
        quad((0, 1), (1, 1), 3),
        quad((0, 1), (1, 1), 7),
        quad((-1, 1), (1, 1), 2),
        quad((2, 3), (1, 5), 13),
        quad((2, 1), (-1, 3), 10),
        root((15, 1), 3),
        root((2, 1), 3),
        root((3, 1), 4),
        root((5, 7), 5),
    ]
}

pub fn pool_oracles() -> Vec<AlphaOracle> {
    alpha_pool()
        .into_iter()
        .map(|k| AlphaOracle::new(k).expect("pool entries are valid"))
        .collect()
}

pub fn random_alpha(rng: &mut impl Rng) -> AlphaOracle {
    let pool = alpha_pool();
    AlphaOracle::new(pool.choose(rng).expect("nonempty pool").clone()).expect("pool entries are valid")
}

/// Shape limits for [`random_config`].
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_sequences: usize,
    pub max_abs_p: i64,
    pub max_q: u64,
    pub max_big_n: u64,
    /// Cap on `Σ (N_i - n_i)`.
    pub max_total: u64,
    /// Probability of `λ = ∞` (with the prime variant).
    pub infinite_lambda: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_sequences: 4,
            max_abs_p: 6,
            max_q: 4,
            max_big_n: 500,
            max_total: 2000,
            infinite_lambda: 0.0,
        }
    }
}

pub const MODULI: [(i64, i64); 4] = [(1, 1), (1, 2), (3, 1), (7, 5)];

fn random_shift(rng: &mut impl Rng) -> AlphaLinear {
    AlphaLinear::new(
        Rational::new(rng.gen_range(-12..=12), rng.gen_range(1..=6)),
        Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2)),
    )
}

pub fn random_config(rng: &mut impl Rng, limits: &Limits) -> GapConfig {
    let alpha = random_alpha(rng);
    let d = rng.gen_range(1..=limits.max_sequences);
    let per_seq = (limits.max_total / d as u64).max(1);
    let sequences = (0..d)
        .map(|_| {
            let mut p = 0;
            while p == 0 {
                p = rng.gen_range(-limits.max_abs_p..=limits.max_abs_p);
            }
            let big_n = rng.gen_range(1..=limits.max_big_n);
            let len = rng.gen_range(1..=big_n.min(per_seq));
            SequenceSpec::new(p, random_shift(rng), big_n - len, big_n)
        })
        .collect();
    let (pn, pd) = *MODULI.choose(rng).expect("nonempty");
    let (lambda_multiplier, variant) = if rng.gen_bool(limits.infinite_lambda) {
        (None, FracVariant::Prime)
    } else {
        let variant = if rng.gen_bool(0.5) {
            FracVariant::Prime
        } else {
            FracVariant::DoublePrime
        };
        (Some(rng.gen_range(1..=3)), variant)
    };
    GapConfig {
        alpha,
        q: rng.gen_range(1..=limits.max_q),
        sequences,
        modulus: Rational::new(pn, pd),
        lambda_multiplier,
        variant,
    }
}
