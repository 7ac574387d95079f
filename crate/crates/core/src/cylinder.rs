//! Cylinder events `[ω_{n₁} = i₁, …, ω_{n_r} = i_r]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite set of `(position, symbol)` constraints with strictly
/// increasing positions. The empty cylinder is the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cylinder {
    constraints: Vec<(usize, bool)>,
}

impl Cylinder {
    pub fn full() -> Self {
        Self::default()
    }

    /// Builds a cylinder, sorting by position. Conflicting constraints on the
    /// same position are rejected; exact duplicates are merged.
    pub fn new(mut constraints: Vec<(usize, bool)>) -> Result<Self> {
        constraints.sort_unstable();
        constraints.dedup();
        if let Some(pair) = constraints.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidCylinder(format!("position {} constrained twice", pair[0].0)));
        }
        Ok(Self { constraints })
    }

    /// `[ω_{n} = 1 for every n in shifts]`.
    pub fn ones(shifts: &[usize]) -> Self {
        let mut constraints: Vec<_> = shifts.iter().map(|&n| (n, true)).collect();
        constraints.sort_unstable();
        constraints.dedup();
        Self { constraints }
    }

    /// The fully specified cylinder `[ω₀…ω_{k−1} = block]`, where bit `k−1−i`
    /// of `code` is the symbol at position `i`.
    pub fn block(code: u64, k: usize) -> Self {
        let constraints = (0..k).map(|i| (i, (code >> (k - 1 - i)) & 1 == 1)).collect();
        Self { constraints }
    }

    pub fn constraints(&self) -> &[(usize, bool)] {
        &self.constraints
    }

    pub fn is_full(&self) -> bool {
        self.constraints.is_empty()
    }

    /// `1 + max position`, or 0 for the full space.
    pub fn order(&self) -> usize {
        self.constraints.last().map_or(0, |&(n, _)| n + 1)
    }

    pub fn shifted(&self, by: usize) -> Self {
        Self { constraints: self.constraints.iter().map(|&(n, b)| (n + by, b)).collect() }
    }

    /// `self ∧ [ω_m = bit]`; `None` if `m` is already constrained.
    pub fn with(&self, m: usize, bit: bool) -> Option<Self> {
        match self.constraints.binary_search_by_key(&m, |&(n, _)| n) {
            Ok(_) => None,
            Err(at) => {
                let mut constraints = self.constraints.clone();
                constraints.insert(at, (m, bit));
                Some(Self { constraints })
            }
        }
    }

    /// Does `sym(i)` satisfy every constraint, with `sym` reading position `i`?
    #[inline]
    pub fn matches(&self, sym: impl Fn(usize) -> bool) -> bool {
        self.constraints.iter().all(|&(n, b)| sym(n) == b)
    }

    /// Every cylinder whose positions lie in `[0, k)`: `3^k` of them.
    pub fn all_of_order(k: usize) -> impl Iterator<Item = Cylinder> {
        let total = 3u64.pow(k as u32);
        (0..total).map(move |mut code| {
            let mut constraints = Vec::new();
            for i in 0..k {
                match code % 3 {
                    0 => {}
                    1 => constraints.push((i, false)),
                    _ => constraints.push((i, true)),
                }
                code /= 3;
            }
            Cylinder { constraints }
        })
    }

    /// The `2^k` fully specified cylinders of order `k`.
    pub fn blocks_of_order(k: usize) -> impl Iterator<Item = Cylinder> {
        (0..1u64 << k).map(move |code| Cylinder::block(code, k))
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &(n, b)) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "ω{}={}", n, b as u8)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_validation() {
        assert_eq!(Cylinder::full().order(), 0);
        let c = Cylinder::new(vec![(2, true), (0, false)]).unwrap();
        assert_eq!(c.constraints(), &[(0, false), (2, true)]);
        assert_eq!(c.order(), 3);
        assert!(Cylinder::new(vec![(1, true), (1, false)]).is_err());
        assert_eq!(Cylinder::new(vec![(1, true), (1, true)]).unwrap().order(), 2);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Cylinder::all_of_order(3).count(), 27);
        assert_eq!(Cylinder::blocks_of_order(3).count(), 8);
        assert_eq!(Cylinder::block(0b10, 2).constraints(), &[(0, true), (1, false)]);
    }

    #[test]
    fn refinement() {
        let c = Cylinder::ones(&[0, 2]);
        assert!(c.with(2, false).is_none());
        assert_eq!(c.with(1, false).unwrap().order(), 3);
        assert_eq!(c.shifted(3).constraints(), &[(3, true), (5, true)]);
    }
}
