//! Packed binary words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite binary word stored least-significant-bit first in `u64` limbs.
///
/// Bit `i` lives in limb `i / 64` at bit `i % 64`, so serialising the limbs
/// little-endian gives the byte layout of the prefix file format.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    limbs: Vec<u64>,
    len: usize,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self { limbs: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    pub fn zeros(len: usize) -> Self {
        Self { limbs: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut w = Word::new();
        for b in bits {
            w.push(b);
        }
        w
    }

    /// Rebuilds a word from raw limbs; bits past `len` are cleared.
    pub fn from_limbs(mut limbs: Vec<u64>, len: usize) -> Self {
        limbs.resize(len.div_ceil(64), 0);
        let mut w = Self { limbs, len };
        w.clear_tail();
        w
    }

    pub fn indicator(len: usize, pred: impl Fn(usize) -> bool) -> Self {
        let mut w = Word::zeros(len);
        for i in 0..len {
            if pred(i) {
                w.set(i, true);
            }
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if bit {
            self.limbs[i >> 6] |= mask;
        } else {
            self.limbs[i >> 6] &= !mask;
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len & 63 == 0 {
            self.limbs.push(0);
        }
        if bit {
            self.limbs[self.len >> 6] |= 1 << (self.len & 63);
        }
        self.len += 1;
    }

    /// Appends the low `n` bits of `chunk` (`n <= 64`).
    pub fn push_chunk(&mut self, chunk: u64, n: usize) {
        debug_assert!(n <= 64);
        if n == 0 {
            return;
        }
        let chunk = if n == 64 { chunk } else { chunk & ((1u64 << n) - 1) };
        let off = self.len & 63;
        if off == 0 {
            self.limbs.push(chunk);
        } else {
            let last = self.limbs.len() - 1;
            self.limbs[last] |= chunk << off;
            if off + n > 64 {
                self.limbs.push(chunk >> (64 - off));
            }
        }
        self.len += n;
    }

    /// Up to 64 bits starting at `start`; bits past the end read as zero.
    #[inline]
    pub fn chunk_at(&self, start: usize) -> u64 {
        let limb = start >> 6;
        let off = start & 63;
        let lo = self.limbs.get(limb).copied().unwrap_or(0) >> off;
        if off == 0 {
            lo
        } else {
            lo | (self.limbs.get(limb + 1).copied().unwrap_or(0) << (64 - off))
        }
    }

    /// Appends `src[start..start + n]`.
    pub fn extend_from_range(&mut self, src: &Word, start: usize, n: usize) {
        debug_assert!(start + n <= src.len);
        let mut done = 0;
        while done < n {
            let take = (n - done).min(64);
            self.push_chunk(src.chunk_at(start + done), take);
            done += take;
        }
    }

    /// Appends the first `n` symbols of the periodic extension of `period`,
    /// starting `phase` symbols into the period.
    pub fn extend_periodic(&mut self, period: &Word, phase: usize, mut n: usize) {
        assert!(!period.is_empty());
        let p = period.len();
        let mut at = phase % p;
        if p < 64 {
            // short periods: unroll into a buffer of at least 128 bits
            let reps = 128usize.div_ceil(p) + 1;
            let mut buf = Word::with_capacity(reps * p);
            for _ in 0..reps {
                buf.extend_from_range(period, 0, p);
            }
            while n > 0 {
                let take = n.min(64);
                self.push_chunk(buf.chunk_at(at), take);
                at = (at + take) % p;
                n -= take;
            }
            return;
        }
        while n > 0 {
            let take = n.min(p - at);
            self.extend_from_range(period, at, take);
            n -= take;
            at = 0;
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend_from_range(other, 0, other.len);
        w
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut w = Word::with_capacity(self.len * times);
        for _ in 0..times {
            w.extend_from_range(self, 0, self.len);
        }
        w
    }

    pub fn prefix(&self, n: usize) -> Word {
        let mut w = Word::with_capacity(n);
        w.extend_from_range(self, 0, n.min(self.len));
        w
    }

    /// Cyclic rotation: result `i` is `self[(i + by) mod len]`.
    pub fn rotate_left(&self, by: usize) -> Word {
        if self.is_empty() {
            return Word::new();
        }
        let mut w = Word::with_capacity(self.len);
        w.extend_periodic(self, by, self.len);
        w
    }

    pub fn count_ones(&self) -> u64 {
        self.limbs.iter().map(|l| l.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_ascii(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// The `k`-block starting at `i`, read cyclically, as an integer whose
    /// most significant of `k` bits is the symbol at `i`.
    pub fn cyclic_block(&self, i: usize, k: usize) -> u64 {
        let mut code = 0;
        for j in 0..k {
            code = (code << 1) | self.get((i + j) % self.len) as u64;
        }
        code
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => w.push(false),
                '1' => w.push(true),
                _ => return Err(Error::InvalidParameter(format!("word {s:?} is not over {{0,1}}"))),
            }
        }
        Ok(w)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 256 {
            write!(f, "Word({:?})", self.to_ascii())
        } else {
            write!(f, "Word(len={}, ones={})", self.len, self.count_ones())
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}
