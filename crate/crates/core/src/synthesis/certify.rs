//! Exact maximum of `|δ(C) − ν(C)|` over all cylinders of order `k`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::blocks::{Blocks, Exact};
use crate::rational::Rational;
use crate::word::Word;

/// Result of a certificate computation.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Certificate {
    /// Exact maximum when `exact`, otherwise a proven upper bound.
    pub value: Rational,
    pub exact: bool,
    /// True if the search stopped as soon as the bound was known to fail.
    pub failed_early: bool,
}

/// Cyclic `k`-block counts of `w`.
pub(crate) fn cyclic_counts(w: &Word, k: usize) -> Vec<u64> {
    let n = w.len();
    let mut counts = vec![0u64; 1 << k];
    if n == 0 {
        return counts;
    }
    let mask = (1u64 << k) - 1;
    let mut code = w.cyclic_block(0, k);
    counts[code as usize] += 1;
    let mut j = k % n;
    for _ in 1..n {
        code = ((code << 1) | w.get(j) as u64) & mask;
        counts[code as usize] += 1;
        j += 1;
        if j == n {
            j = 0;
        }
    }
    counts
}

struct Search<T> {
    best: T,
    stop_at: Option<T>,
    budget: u64,
    upper: T,
    exhausted: bool,
}

impl<T: Exact> Search<T> {
    fn stopped(&self) -> bool {
        self.stop_at.as_ref().is_some_and(|s| self.best >= *s)
    }

    /// `a` holds the partial sums indexed by the still-undecided positions
    /// (first undecided position most significant).
    fn visit(&mut self, a: &[T], star: bool) {
        let (mut pos, mut neg) = (T::zero(), T::zero());
        for v in a {
            if v.is_positive() {
                pos = pos + v.clone();
            } else if v.is_negative() {
                neg = neg - v.clone();
            }
        }
        // all remaining positions free
        let total = (pos.clone() - neg.clone()).abs();
        if total > self.best {
            self.best = total;
        }
        let bound = if pos > neg { pos } else { neg };
        if bound <= self.best || a.len() == 1 || self.stopped() {
            return;
        }
        if self.budget < a.len() as u64 {
            self.exhausted = true;
            if bound > self.upper {
                self.upper = bound;
            }
            return;
        }
        self.budget -= a.len() as u64;
        let half = a.len() / 2;
        if star {
            let merged: Vec<T> = a[..half].iter().zip(&a[half..]).map(|(x, y)| x.clone() + y.clone()).collect();
            self.visit(&merged, true);
        }
        self.visit(&a[..half], true);
        self.visit(&a[half..], true);
    }
}

/// `max_C |count_w(C)/|w| − ν(C)|` over every cylinder with constraints in
/// positions `0..k`, by branch and bound over positions.
///
/// Cylinders leaving position 0 free are skipped: both the cyclic counts
/// and `ν` are shift invariant, so such a cylinder has the same value as
/// its left shift, which is visited. A subtree is cut when the larger of its
/// positive and negative mass cannot beat the best value found. When
/// `limit` is given the search stops once some cylinder reaches it. After
/// `budget` summed entries the remaining subtrees contribute their bounds
/// and the result is only an upper bound.
pub(crate) fn certify<T: Exact>(w: &Word, blocks: &Blocks<T>, limit: Option<&Rational>, budget: u64) -> Certificate {
    let len = w.len() as u64;
    let counts = cyclic_counts(w, blocks.k);
    let tl = T::from_u64(len);
    let d: Vec<T> = counts
        .iter()
        .zip(&blocks.num)
        .map(|(&n, nu)| T::from_u64(n) * blocks.den.clone() - nu.clone() * tl.clone())
        .collect();
    let scale = BigInt::from(len) * blocks.den.to_big();
    let stop_at = limit.map(|eps| {
        let x = eps * Rational::from_integer(scale.clone());
        T::from_big(&x.ceil().to_integer())
    });
    let mut s = Search { best: T::zero(), stop_at, budget, upper: T::zero(), exhausted: false };
    let half = d.len() / 2;
    if d.len() == 1 {
        s.visit(&d, false);
    } else {
        s.visit(&d[..half], true);
        s.visit(&d[half..], true);
    }
    let failed_early = s.stopped();
    let top = if s.exhausted && s.upper > s.best && !failed_early { s.upper } else { s.best };
    Certificate {
        value: Rational::new(top.to_big(), scale),
        exact: !s.exhausted || failed_early,
        failed_early,
    }
    .normalized()
}

impl Certificate {
    fn normalized(self) -> Self {
        if self.value.is_zero() {
            Certificate { value: Rational::zero(), ..self }
        } else {
            self
        }
    }
}
