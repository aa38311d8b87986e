//! Exact gap structures of generalized three-distance configurations.
//!
//! Points `f_i(mα) mod P` with `f_i(x) = (p_i/q)·{x}_λ + k_i` are computed
//! exactly as numbers `u + v·α`, ordered on the circle of length `P`, and
//! their gaps counted against the bound `3c`. The crate is `no_std` and
//! needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod engine;
mod error;
pub mod exact;
pub mod lambda_frac;
pub mod special;

pub use error::{ConfigError, Error, Result};
pub use exact::{AlphaKind, AlphaLinear, AlphaOracle, Rational};
