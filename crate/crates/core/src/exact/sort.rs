use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{compare, AlphaLinear, AlphaOracle, SortKey};
use crate::error::{Error, Result};

/// Precision of the dyadic keys that settle most comparisons without
/// touching the exact path.
const KEY_BITS: u32 = 128;

/// Sorts `items` by numeric value, breaking exact ties with `tie`.
pub fn sort_by_value<T>(
    items: Vec<T>,
    value: impl Fn(&T) -> &AlphaLinear,
    tie: impl Fn(&T, &T) -> Ordering,
    oracle: &AlphaOracle,
) -> Result<Vec<T>> {
    let mut keyed = items
        .into_iter()
        .map(|t| Ok((value(&t).sort_key(oracle, KEY_BITS)?, t)))
        .collect::<Result<Vec<(SortKey, T)>>>()?;
    let mut failure: Option<Error> = None;
    keyed.sort_by(|(ka, a), (kb, b)| {
        if let Some(ord) = ka.separate(kb) {
            return ord;
        }
        let (va, vb) = (value(a), value(b));
        if va == vb {
            return tie(a, b);
        }
        match compare(va, vb, oracle) {
            Ok(ord) => ord,
            Err(e) => {
                failure.get_or_insert(e);
                Ordering::Equal
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(keyed.into_iter().map(|(_, t)| t).collect()),
    }
}
