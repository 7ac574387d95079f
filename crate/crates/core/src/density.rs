//! Empirical (Birkhoff) statistics of words and intersection densities of
//! sets given by indicator prefixes.

use serde::{Deserialize, Serialize};

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmpiricalMode {
    /// The word is one period of a periodic point; every start position counts.
    Cyclic,
    /// Only windows that fit inside the word count; the denominator stays `|w|`.
    Truncated,
}

/// `δ_{|w|}(x)(C)` for `x` the periodic (cyclic) or truncated extension of `w`.
pub fn empirical_measure(w: &Word, c: &Cylinder, mode: EmpiricalMode) -> Result<Rational> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let hits = match mode {
        EmpiricalMode::Cyclic => (0..n).filter(|&i| c.matches(|m| w.get((i + m) % n))).count(),
        EmpiricalMode::Truncated => {
            let order = c.order();
            if order > n {
                return Err(Error::CylinderTooLong { order, len: n });
            }
            (0..=n - order).filter(|&i| c.matches(|m| w.get(i + m))).count()
        }
    };
    Ok(ratio(hits, n))
}

/// `#{ i ∈ [0, n) : w[i + s] = 1 for every s ∈ shifts }`, by 64-bit AND and popcount.
pub fn count_windows(w: &Word, shifts: &[usize], n: usize) -> Result<u64> {
    let max_shift = *shifts
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidParameter("shift list is empty".into()))?;
    let need = n + max_shift;
    if w.len() < need {
        return Err(Error::PrefixTooShort { need: need as u128, have: w.len() as u128 });
    }
    let mut total = 0u64;
    let mut at = 0;
    while at < n {
        let take = (n - at).min(64);
        let mut acc = u64::MAX;
        for &s in shifts {
            acc &= w.chunk_at(at + s);
        }
        if take < 64 {
            acc &= (1u64 << take) - 1;
        }
        total += acc.count_ones() as u64;
        at += take;
    }
    Ok(total)
}

/// `|(∩ⱼ (E − nⱼ)) ∩ [0, N)| / N` where `w` is a prefix of the indicator of `E`.
/// The prefix must reach `N + max(shifts)`.
pub fn intersection_density(w: &Word, shifts: &[usize], n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    Ok(ratio(count_windows(w, shifts, n)?, n))
}
