use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::rational::{parse_real, truncate_digits, Rational};

pub const DEFAULT_PRECISION: u32 = 50;

/// Coding of the rotation `x ↦ x + α (mod 1)` by the arc `A = [a, b)`:
/// `ω_n = 1_A(x + nα)` with `x` Lebesgue-distributed.
///
/// `α` is stored truncated to `precision` decimal digits, and every cylinder
/// is evaluated exactly for that truncation. A rational `α` is accepted and
/// gives a periodic measure.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationCoding {
    alpha: Rational,
    a: Rational,
    b: Rational,
    precision: u32,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl RotationCoding {
    pub fn new(alpha: &Rational, a: Rational, b: Rational, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidMeasure("rotation precision must be positive".into()));
        }
        if a.is_negative() || a >= b || b > Rational::one() {
            return Err(Error::InvalidMeasure(format!("interval [{a}, {b}) is not inside [0,1) with a < b")));
        }
        let alpha = truncate_digits(&frac(alpha), precision);
        Ok(Self { alpha, a, b, precision })
    }

    /// `alpha` in the syntax of [`parse_real`], e.g. `"sqrt(2)-1"`.
    pub fn parse(alpha: &str, a: Rational, b: Rational, precision: u32) -> Result<Self> {
        let value = parse_real(alpha, precision)?;
        Self::new(&value, a, b, precision)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Largest admissible cylinder order: the accumulated truncation error
    /// `n · 10^{−precision}` must stay below `10^{−precision/2}`.
    pub fn max_order(&self) -> u128 {
        let half = self.precision / 2;
        if half >= 38 {
            u128::MAX
        } else {
            10u128.pow(half)
        }
    }

    fn check_budget(&self, order: usize) -> Result<()> {
        if order as u128 > self.max_order() {
            return Err(Error::PrecisionExhausted { position: order, precision: self.precision });
        }
        Ok(())
    }

    fn in_arc(&self, y: &Rational) -> bool {
        *y >= self.a && *y < self.b
    }

    /// Cut points of the partition of the circle on which the symbols at the
    /// given positions are constant.
    fn cuts(&self, positions: impl Iterator<Item = usize>) -> Vec<Rational> {
        let mut cuts = vec![Rational::zero()];
        for n in positions {
            let shift = &self.alpha * Rational::from_integer(BigInt::from(n));
            cuts.push(frac(&(&self.a - &shift)));
            cuts.push(frac(&(&self.b - &shift)));
        }
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// The arcs `[c_i, c_{i+1})` of the partition with their lengths.
    fn arcs(cuts: &[Rational]) -> impl Iterator<Item = (&Rational, Rational)> {
        let one = Rational::one();
        cuts.iter().enumerate().map(move |(i, c)| {
            let next = cuts.get(i + 1).unwrap_or(&one);
            (c, next - c)
        })
    }

    /// Lebesgue measure of `∩ⱼ R_α^{−nⱼ}(A^{iⱼ})` by exact arc intersection.
    pub(crate) fn cylinder(&self, c: &Cylinder) -> Result<Rational> {
        self.check_budget(c.order())?;
        let cuts = self.cuts(c.constraints().iter().map(|&(n, _)| n));
        let mut total = Rational::zero();
        for (start, len) in Self::arcs(&cuts) {
            let hit = c.constraints().iter().all(|&(n, bit)| {
                let y = frac(&(start + &self.alpha * Rational::from_integer(BigInt::from(n))));
                self.in_arc(&y) == bit
            });
            if hit {
                total += len;
            }
        }
        Ok(total)
    }

    /// Masses of all `k`-blocks with positive measure, keyed by block code
    /// (symbol at position 0 is the most significant of `k` bits).
    pub(crate) fn block_masses(&self, k: usize) -> Result<BTreeMap<u64, Rational>> {
        self.check_budget(k)?;
        let cuts = self.cuts(0..k);
        let steps: Vec<Rational> = (0..k).map(|n| &self.alpha * Rational::from_integer(BigInt::from(n))).collect();
        let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
        for (start, len) in Self::arcs(&cuts) {
            if len.is_zero() {
                continue;
            }
            let mut code = 0u64;
            for s in &steps {
                code = (code << 1) | self.in_arc(&frac(&(start + s))) as u64;
            }
            *out.entry(code).or_insert_with(Rational::zero) += len;
        }
        Ok(out)
    }
}
