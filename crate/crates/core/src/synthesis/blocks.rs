//! Exact `k`-block probabilities as integer numerators over one common
//! denominator, in a machine integer when the magnitudes allow it.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measures::ShiftMeasure;
use crate::rational::{lcm_of_denominators, Rational};

/// Integer arithmetic used for exact block bookkeeping.
pub(crate) trait Exact: Signed + Clone + Ord + Send + Sync + Debug + 'static {
    fn from_u64(v: u64) -> Self;
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn to_f64(&self) -> f64;
}

impl Exact for i128 {
    fn from_u64(v: u64) -> Self {
        v as i128
    }
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("value was range-checked before narrowing")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Exact for BigInt {
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
}

/// `ν(w) = num[w] / den` for every `k`-block `w` (code with position 0 as
/// the most significant bit).
#[derive(Clone, Debug)]
pub(crate) struct Blocks<T> {
    pub k: usize,
    pub den: T,
    pub num: Vec<T>,
}

/// Word lengths up to `2^LEN_BITS` keep `len · den` inside `i128` when
/// `den` has at most `126 − LEN_BITS − 2` bits.
pub(crate) const LEN_BITS: u64 = 32;

pub(crate) enum BlockTable {
    Small(Blocks<i128>),
    Big(Blocks<BigInt>),
}

/// Dense tables beyond this order do not fit in memory.
pub(crate) const MAX_DENSE_ORDER: usize = 28;

pub(crate) fn block_table(nu: &ShiftMeasure, k: usize) -> Result<BlockTable> {
    if k == 0 || k > MAX_DENSE_ORDER {
        return Err(Error::ResourceLimit(format!("block order {k} outside 1..={MAX_DENSE_ORDER}")));
    }
    let den = common_denominator(nu, k)?;
    if den.bits() + LEN_BITS + 2 <= 126 {
        Ok(BlockTable::Small(blocks(nu, k, &den)?))
    } else {
        Ok(BlockTable::Big(blocks(nu, k, &den)?))
    }
}

fn den_of(q: &Rational) -> BigInt {
    q.denom().clone()
}

/// A denominator that every `k`-block probability of `ν` divides into.
pub(crate) fn common_denominator(nu: &ShiftMeasure, k: usize) -> Result<BigInt> {
    Ok(match nu {
        ShiftMeasure::Bernoulli(p) => num_traits::pow(den_of(p), k),
        ShiftMeasure::Markov(m) => {
            let dpi = lcm_of_denominators(m.stationary());
            let dp = lcm_of_denominators(m.transition().iter().flatten());
            dpi * num_traits::pow(dp, k.saturating_sub(1))
        }
        ShiftMeasure::Periodic(w) => BigInt::from(w.len()),
        ShiftMeasure::Rotation(r) => {
            let (a, b) = r.interval();
            lcm_of_denominators([r.alpha(), a, b])
        }
        ShiftMeasure::FiniteMps(f) => lcm_of_denominators(f.weights()),
        ShiftMeasure::Mixture(parts) => {
            let mut d = BigInt::one();
            for (w, m) in parts {
                d = d.lcm(&(den_of(w) * common_denominator(m, k)?));
            }
            d
        }
    })
}

fn blocks<T: Exact>(nu: &ShiftMeasure, k: usize, den: &BigInt) -> Result<Blocks<T>> {
    let size = 1usize << k;
    let num: Vec<T> = match nu {
        ShiftMeasure::Bernoulli(p) => {
            let b = den_of(p);
            let one = T::from_big(p.numer());
            let zero = T::from_big(&(&b - p.numer()));
            let mut pow1 = vec![T::one()];
            let mut pow0 = vec![T::one()];
            for i in 0..k {
                pow1.push(pow1[i].clone() * one.clone());
                pow0.push(pow0[i].clone() * zero.clone());
            }
            (0..size as u64)
                .map(|w| {
                    let ones = w.count_ones() as usize;
                    pow1[ones].clone() * pow0[k - ones].clone()
                })
                .collect()
        }
        ShiftMeasure::Markov(m) => markov_numerators(m, k),
        ShiftMeasure::Periodic(w) => {
            let mut num = vec![T::zero(); size];
            for i in 0..w.len() {
                let code = w.cyclic_block(i, k) as usize;
                num[code] = num[code].clone() + T::one();
            }
            num
        }
        ShiftMeasure::Rotation(r) => {
            let mut num = vec![T::zero(); size];
            for (code, mass) in r.block_masses(k)? {
                num[code as usize] = T::from_big(&scaled(&mass, den)?);
            }
            num
        }
        ShiftMeasure::FiniteMps(f) => {
            let mut num = vec![T::zero(); size];
            for x in 0..f.points() {
                let code = (0..k).fold(0usize, |c, n| (c << 1) | f.in_set(f.iterate(x, n)) as usize);
                num[code] = num[code].clone() + T::from_big(&scaled(&f.weights()[x], den)?);
            }
            num
        }
        ShiftMeasure::Mixture(parts) => {
            let mut num = vec![T::zero(); size];
            for (w, m) in parts {
                if w.is_zero() {
                    continue;
                }
                let d = common_denominator(m, k)?;
                let inner: Blocks<T> = blocks(m, k, &d)?;
                let factor = T::from_big(&scaled(&(w / Rational::from_integer(d)), den)?);
                for (acc, v) in num.iter_mut().zip(inner.num) {
                    *acc = acc.clone() + factor.clone() * v;
                }
            }
            num
        }
    };
    Ok(Blocks { k, den: T::from_big(den), num })
}

/// `q · den`, which must be an integer.
fn scaled(q: &Rational, den: &BigInt) -> Result<BigInt> {
    let v = q * Rational::from_integer(den.clone());
    if !v.is_integer() {
        return Err(Error::Overflow(format!("{q} is not a multiple of 1/{den}")));
    }
    Ok(v.to_integer())
}

/// Forward recursion `F(wb, t) = Σ_s F(w, s) · P[s][t]` restricted to states
/// labelled `b`, in integers scaled by `dπ · dP^{k−1}`.
fn markov_numerators<T: Exact>(m: &crate::measures::MarkovChain, k: usize) -> Vec<T> {
    let s = m.states();
    let dpi = lcm_of_denominators(m.stationary());
    let dp = lcm_of_denominators(m.transition().iter().flatten());
    let pi: Vec<T> = m.stationary().iter().map(|q| T::from_big(&scaled(q, &dpi).unwrap())).collect();
    let p: Vec<Vec<T>> = m
        .transition()
        .iter()
        .map(|row| row.iter().map(|q| T::from_big(&scaled(q, &dp).unwrap())).collect())
        .collect();
    let labels = m.labels();

    // f[w * s + state]
    let mut f: Vec<T> = vec![T::zero(); 2 * s];
    for st in 0..s {
        f[labels[st] as usize * s + st] = pi[st].clone();
    }
    for len in 1..k {
        let blocks = 1usize << len;
        let mut next = vec![T::zero(); 2 * blocks * s];
        for w in 0..blocks {
            let row = &f[w * s..(w + 1) * s];
            if row.iter().all(|v| v.is_zero()) {
                continue;
            }
            for t in 0..s {
                let mut acc = T::zero();
                for (st, v) in row.iter().enumerate() {
                    if !v.is_zero() && !p[st][t].is_zero() {
                        acc = acc + v.clone() * p[st][t].clone();
                    }
                }
                let code = (w << 1) | labels[t] as usize;
                next[code * s + t] = acc;
            }
        }
        f = next;
    }
    f.chunks(s).map(|row| row.iter().fold(T::zero(), |a, v| a + v.clone())).collect()
}
