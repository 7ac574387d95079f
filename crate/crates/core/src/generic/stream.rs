use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{build_schedule_with, stage_of, Schedule};
use crate::error::{Error, Result};
use crate::measures::ShiftMeasure;
use crate::rational::Rational;
use crate::synthesis::SynthesisLimits;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamLimits {
    /// The schedule is never extended beyond this many stages.
    pub max_stages: usize,
    /// Largest prefix materialized in memory, in symbols.
    pub max_prefix_bits: u64,
    pub synthesis: SynthesisLimits,
}

impl Default for StreamLimits {
    fn default() -> Self {
        Self { max_stages: 24, max_prefix_bits: 1 << 33, synthesis: SynthesisLimits::default() }
    }
}

/// For one stage and one shift tuple, which offsets `o` into the period
/// start a window of ones: `x[(o + s) mod p] = 1` for every shift `s`.
#[derive(Debug)]
struct ResidueCounts {
    period: u128,
    limbs: Vec<u64>,
    /// ones in `limbs[..i]`
    cumulative: Vec<u64>,
}

impl ResidueCounts {
    fn new(x: &Word, shifts: &[usize]) -> Self {
        let p = x.len();
        let h = shifts.iter().copied().max().unwrap_or(0);
        let mut ext = Word::with_capacity(p + h + 64);
        ext.extend_periodic(x, 0, p + h + 64);
        let nl = p.div_ceil(64);
        let mut limbs = vec![u64::MAX; nl];
        for (t, limb) in limbs.iter_mut().enumerate() {
            for &s in shifts {
                *limb &= ext.chunk_at(64 * t + s);
            }
        }
        if p % 64 != 0 {
            limbs[nl - 1] &= (1u64 << (p % 64)) - 1;
        }
        let mut cumulative = Vec::with_capacity(nl + 1);
        let mut acc = 0u64;
        cumulative.push(0);
        for l in &limbs {
            acc += l.count_ones() as u64;
            cumulative.push(acc);
        }
        Self { period: p as u128, limbs, cumulative }
    }

    fn in_period(&self, n: usize) -> u64 {
        let (q, r) = (n / 64, n % 64);
        let partial = if r == 0 { 0 } else { (self.limbs[q] & ((1u64 << r) - 1)).count_ones() as u64 };
        self.cumulative[q] + partial
    }

    /// Matching offsets in `[0, n)` of the periodic extension.
    fn below(&self, n: u128) -> u128 {
        let total = *self.cumulative.last().unwrap() as u128;
        (n / self.period) * total + self.in_period((n % self.period) as usize) as u128
    }
}

/// The generic point of a measure, produced on demand.
#[derive(Clone, Debug)]
pub struct BitStream {
    schedule: Schedule,
    limits: StreamLimits,
    residues: HashMap<(usize, Vec<usize>), Arc<ResidueCounts>>,
}

/// The stream `y` for `ν`, starting with a one-stage schedule.
pub fn generic_stream(nu: &ShiftMeasure) -> Result<BitStream> {
    BitStream::new(nu, StreamLimits::default())
}

impl BitStream {
    pub fn new(nu: &ShiftMeasure, limits: StreamLimits) -> Result<Self> {
        let schedule = build_schedule_with(nu, 1, &limits.synthesis)?;
        Ok(Self { schedule, limits, residues: HashMap::new() })
    }

    /// Wraps an already built schedule.
    pub fn from_schedule(schedule: Schedule, limits: StreamLimits) -> Self {
        Self { schedule, limits, residues: HashMap::new() }
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn limits(&self) -> &StreamLimits {
        &self.limits
    }

    /// Extends the schedule until it covers the first `n` symbols.
    pub fn ensure(&mut self, n: u128) -> Result<()> {
        while self.schedule.len() < n {
            if self.schedule.stages().len() >= self.limits.max_stages {
                return Err(Error::ResourceLimit(format!(
                    "{n} symbols need more than {} stages",
                    self.limits.max_stages
                )));
            }
            self.schedule.extend()?;
        }
        Ok(())
    }

    /// Extends the schedule to `stages` stages.
    pub fn ensure_stages(&mut self, stages: usize) -> Result<()> {
        if stages > self.limits.max_stages {
            return Err(Error::ResourceLimit(format!("{stages} stages exceed the limit {}", self.limits.max_stages)));
        }
        while self.schedule.stages().len() < stages {
            self.schedule.extend()?;
        }
        Ok(())
    }

    /// `y_n`.
    pub fn bit(&mut self, n: u128) -> Result<bool> {
        self.ensure(n + 1)?;
        Ok(self.bit_built(n))
    }

    fn bit_built(&self, n: u128) -> bool {
        let (k, offset) = stage_of(n, &self.schedule).expect("position inside the built schedule");
        let x = &self.schedule.stages()[k].approximant.x;
        x.get((offset % x.len() as u128) as usize)
    }

    /// Calls `f` on consecutive pieces of `y|_n`, each at most `chunk`
    /// symbols long (and a multiple of 64 except for the last).
    pub fn for_each_chunk(&mut self, n: u128, chunk: usize, mut f: impl FnMut(&Word) -> Result<()>) -> Result<()> {
        self.ensure(n)?;
        let chunk = chunk.max(64) / 64 * 64;
        let mut buf = Word::with_capacity(chunk);
        let mut start = 0u128;
        for st in self.schedule.stages() {
            if start >= n {
                break;
            }
            let x = &st.approximant.x;
            let p = x.len() as u128;
            let end = (start + st.l).min(n);
            let mut pos = start;
            while pos < end {
                let room = (chunk - buf.len()) as u128;
                let take = room.min(end - pos);
                buf.extend_periodic(x, ((pos - start) % p) as usize, take as usize);
                pos += take;
                if buf.len() == chunk {
                    f(&buf)?;
                    buf = Word::with_capacity(chunk);
                }
            }
            start += st.l;
        }
        if !buf.is_empty() {
            f(&buf)?;
        }
        Ok(())
    }

    /// `y|_n` in memory.
    pub fn prefix(&mut self, n: u64) -> Result<Word> {
        if n > self.limits.max_prefix_bits {
            return Err(Error::ResourceLimit(format!(
                "prefix of {n} symbols exceeds the in-memory limit of {}",
                self.limits.max_prefix_bits
            )));
        }
        let mut out = Word::with_capacity(n as usize);
        self.for_each_chunk(n as u128, 1 << 20, |c| {
            out.extend_from_range(c, 0, c.len());
            Ok(())
        })?;
        Ok(out)
    }

    fn residues(&mut self, stage: usize, shifts: &[usize]) -> Arc<ResidueCounts> {
        let key = (stage, shifts.to_vec());
        if let Some(r) = self.residues.get(&key) {
            return r.clone();
        }
        let r = Arc::new(ResidueCounts::new(&self.schedule.stages()[stage].approximant.x, shifts));
        self.residues.insert(key, r.clone());
        r
    }

    /// `#{i < n : y_{i+s} = 1 for all s ∈ shifts}`.
    ///
    /// Inside a block the stream is periodic, so windows that stay inside a
    /// block are counted from per-period tables; the at most `max(shifts)`
    /// windows per block that reach into the next block are read directly.
    pub fn count_windows(&mut self, shifts: &[usize], n: u128) -> Result<u128> {
        if shifts.is_empty() {
            return Err(Error::InvalidParameter("empty shift tuple".into()));
        }
        let h = *shifts.iter().max().unwrap() as u128;
        self.ensure(n + h)?;
        let mut count = 0u128;
        let mut start = 0u128;
        let stages = self.schedule.stages().len();
        for j in 0..stages {
            if start >= n {
                break;
            }
            let l = self.schedule.stages()[j].l;
            let end = start + l;
            // offsets o with the whole window inside this block
            let inner = l.saturating_sub(h).min(n - start);
            if inner > 0 {
                count += self.residues(j, shifts).below(inner);
            }
            for i in (start + inner)..end.min(n) {
                if shifts.iter().all(|&s| self.bit_built(i + s as u128)) {
                    count += 1;
                }
            }
            start = end;
        }
        Ok(count)
    }

    /// `|(∩ₛ (E − s)) ∩ [0, n)| / n`.
    pub fn intersection_density(&mut self, shifts: &[usize], n: u128) -> Result<Rational> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        let c = self.count_windows(shifts, n)?;
        Ok(Rational::new(BigInt::from(c), BigInt::from(n)))
    }
}
