//! Følner sequences in ℕ and the densities they define.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::word::Word;

/// Integer polynomial in `N`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<i64>);

impl Polynomial {
    pub fn eval(&self, n: u64) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.0.iter().rev() {
            acc = acc
                .checked_mul(n as i128)
                .and_then(|v| v.checked_add(c as i128))
                .ok_or_else(|| Error::Overflow(format!("polynomial {self:?} at {n}")))?;
        }
        Ok(acc)
    }

    fn eval_nonneg(&self, n: u64) -> Result<u64> {
        let v = self.eval(n)?;
        u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("polynomial {self:?} is negative at N={n}")))
    }
}

pub type SetGenerator = Arc<dyn Fn(u64) -> Vec<u64> + Send + Sync>;

#[derive(Clone)]
pub enum FolnerSequence {
    /// `F_N = {0, …, N−1}`.
    InitialIntervals,
    /// `F_N = {t_N, …, t_N + n_N − 1}`.
    ShiftedIntervals { offset: Polynomial, length: Polynomial },
    /// Any generator of finite subsets; the Følner property is not checked.
    Custom { name: String, generator: SetGenerator },
}

impl fmt::Debug for FolnerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InitialIntervals => f.write_str("InitialIntervals"),
            Self::ShiftedIntervals { offset, length } => {
                f.debug_struct("ShiftedIntervals").field("offset", offset).field("length", length).finish()
            }
            Self::Custom { name, .. } => f.debug_tuple("Custom").field(name).finish(),
        }
    }
}

/// A materialised `F_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerSet {
    Interval { start: u64, len: u64 },
    Points(Vec<u64>),
}

impl FolnerSet {
    pub fn len(&self) -> u64 {
        match self {
            Self::Interval { len, .. } => *len,
            Self::Points(p) => p.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One past the largest element.
    pub fn end(&self) -> u64 {
        match self {
            Self::Interval { start, len } => start + len,
            Self::Points(p) => p.last().map_or(0, |&x| x + 1),
        }
    }
}

impl FolnerSequence {
    /// Arithmetic progression `{start, start + step, …}` with `count(N)` terms.
    pub fn progression(start: u64, step: u64, count: Polynomial) -> Self {
        let name = format!("progression(start={start}, step={step}, count={:?})", count.0);
        let generator: SetGenerator = Arc::new(move |n| {
            let c = count.eval(n).unwrap_or(0).max(0) as u64;
            (0..c).map(|i| start + i * step).collect()
        });
        Self::Custom { name, generator }
    }

    pub fn set(&self, n: u64) -> Result<FolnerSet> {
        let set = match self {
            Self::InitialIntervals => FolnerSet::Interval { start: 0, len: n },
            Self::ShiftedIntervals { offset, length } => {
                FolnerSet::Interval { start: offset.eval_nonneg(n)?, len: length.eval_nonneg(n)? }
            }
            Self::Custom { generator, .. } => {
                let mut pts = generator(n);
                pts.sort_unstable();
                pts.dedup();
                FolnerSet::Points(pts)
            }
        };
        if set.is_empty() {
            return Err(Error::InvalidParameter(format!("F_{n} is empty")));
        }
        Ok(set)
    }
}

fn count_ones_range(w: &Word, start: usize, len: usize) -> u64 {
    let mut total = 0;
    let mut at = 0;
    while at < len {
        let take = (len - at).min(64);
        let mut chunk = w.chunk_at(start + at);
        if take < 64 {
            chunk &= (1u64 << take) - 1;
        }
        total += chunk.count_ones() as u64;
        at += take;
    }
    total
}

/// `|E ∩ F_N| / |F_N|` for `N = 1..=n_max`, with `w` a prefix of `1_E`.
pub fn upper_density(w: &Word, f: &FolnerSequence, n_max: u64) -> Result<Vec<(u64, Rational)>> {
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let set = f.set(n)?;
        if set.end() > w.len() as u64 {
            return Err(Error::PrefixTooShort { need: set.end() as u128, have: w.len() as u128 });
        }
        let hits = match &set {
            FolnerSet::Interval { start, len } => count_ones_range(w, *start as usize, *len as usize),
            FolnerSet::Points(p) => p.iter().filter(|&&x| w.get(x as usize)).count() as u64,
        };
        out.push((n, ratio(hits, set.len())));
    }
    Ok(out)
}

/// `|F_N Δ (F_N + t)| / |F_N|`.
pub fn folner_defect(f: &FolnerSequence, t: u64, n: u64) -> Result<Rational> {
    let set = f.set(n)?;
    let sym = match &set {
        FolnerSet::Interval { len, .. } => 2 * t.min(*len),
        FolnerSet::Points(p) => {
            let shifted: Vec<u64> = p.iter().map(|x| x + t).collect();
            let (mut i, mut j, mut common) = (0, 0, 0u64);
            while i < p.len() && j < shifted.len() {
                match p[i].cmp(&shifted[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        common += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            2 * (p.len() as u64 - common)
        }
    };
    Ok(ratio(sym, set.len()))
}
