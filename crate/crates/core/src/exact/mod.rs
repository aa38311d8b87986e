//! Exact arithmetic on numbers `u + v·α` with rational `u`, `v` and
//! irrational `α`.
//!
//! Comparisons are decided by refining rational enclosures of `α`. They
//! always terminate for the algebraic kinds since `a + b·α` vanishes only
//! when `a = b = 0`.

pub mod decimal;
mod linear;
mod oracle;
mod rational;
mod sort;

pub use linear::{compare, floor_div, reduce_mod, AlphaLinear, SortKey};
pub use oracle::{AlphaKind, AlphaOracle, Interval, MAX_BITS, START_BITS};
pub use rational::{ParseRationalError, Rational};
pub use sort::sort_by_value;
