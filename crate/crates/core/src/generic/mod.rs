//! The concatenation `y = x¹|_{L₁} • x²|_{L₂} • …` of periodic approximants
//! of growing accuracy, a generic point for the target measure.

mod io;
mod report;
mod stream;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::measures::ShiftMeasure;
use crate::rational::Rational;
use crate::synthesis::{periodic_approximant_with, Approximant, SynthesisLimits};

pub use io::{read_prefix, read_prefix_file, write_prefix, write_prefix_file, PREFIX_HEADER_BYTES};
pub use report::{convergence_report, ReportRow};
pub use stream::{generic_stream, BitStream, StreamLimits};

/// One block of the schedule: `L` symbols of the approximant of order `k = j`
/// and tolerance `1/j`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub j: usize,
    pub k: usize,
    pub eps: Rational,
    pub approximant: Arc<Approximant>,
    /// Re-entry threshold `R_j`.
    pub r: u128,
    /// Block length `L_j`.
    pub l: u128,
    /// `S_j = L_1 + ⋯ + L_j`.
    pub s: u128,
}

/// Stages `1..=n` together with the approximant of stage `n + 1`, which the
/// last block length depends on.
#[derive(Clone, Debug)]
pub struct Schedule {
    nu: ShiftMeasure,
    stages: Vec<Stage>,
    lookahead: Arc<Approximant>,
    limits: SynthesisLimits,
}

fn stage_accuracy(j: usize) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(j))
}

fn approximant_for(nu: &ShiftMeasure, j: usize, limits: &SynthesisLimits) -> Result<Arc<Approximant>> {
    Ok(Arc::new(periodic_approximant_with(nu, j, &stage_accuracy(j), limits)?))
}

/// The least `L_j` with `L_j ≥ R_j`, `R_{j+1}/L_j < 1/j` and
/// `L_j/S_j > 1 − 1/j`, namely `max(R_j, j·R_{j+1} + 1, (j−1)·S_{j−1} + 1)`.
pub fn block_length(j: usize, r: u128, r_next: u128, s_prev: u128) -> Result<u128> {
    let j128 = j as u128;
    let overflow = || Error::Overflow(format!("block length of stage {j} exceeds u128"));
    let ahead = j128.checked_mul(r_next).and_then(|v| v.checked_add(1)).ok_or_else(overflow)?;
    let grow = (j128 - 1).checked_mul(s_prev).and_then(|v| v.checked_add(1)).ok_or_else(overflow)?;
    Ok(r.max(ahead).max(grow))
}

/// Checks the three schedule conditions for stage `j` in integers.
pub fn check_conditions(j: usize, r: u128, r_next: u128, l: u128, s: u128) -> Result<()> {
    let j128 = j as u128;
    if l < r {
        return Err(Error::ScheduleViolation { condition: "i", stage: j });
    }
    if j128.checked_mul(r_next).is_none_or(|v| v >= l) {
        return Err(Error::ScheduleViolation { condition: "ii", stage: j });
    }
    let lhs = j128.checked_mul(l);
    let rhs = (j128 - 1).checked_mul(s);
    match (lhs, rhs) {
        (Some(a), Some(b)) if a > b => Ok(()),
        _ => Err(Error::ScheduleViolation { condition: "iii", stage: j }),
    }
}

/// Block lengths and cumulative lengths `(L_j, S_j)` for thresholds
/// `R_1, …, R_{n+1}`.
pub fn schedule_lengths(thresholds: &[u128]) -> Result<Vec<(u128, u128)>> {
    let mut out = Vec::new();
    let mut s = 0u128;
    for (i, pair) in thresholds.windows(2).enumerate() {
        let j = i + 1;
        let l = block_length(j, pair[0], pair[1], s)?;
        s = s.checked_add(l).ok_or_else(|| Error::Overflow(format!("S_{j} exceeds u128")))?;
        check_conditions(j, pair[0], pair[1], l, s)?;
        out.push((l, s));
    }
    Ok(out)
}

/// `(k, L)` with `S_k ≤ n < S_{k+1}` and `n = S_k + L`, where `S_0 = 0`.
pub fn stage_index(cumulative: &[u128], n: u128) -> Result<(usize, u128)> {
    let k = cumulative.partition_point(|&s| s <= n);
    if k == cumulative.len() {
        return Err(Error::BeyondSchedule { position: n, built: cumulative.last().copied().unwrap_or(0) });
    }
    let start = if k == 0 { 0 } else { cumulative[k - 1] };
    Ok((k, n - start))
}

/// Schedule with `stages` stages, `k_j = j` and `ε_j = 1/j`.
pub fn build_schedule(nu: &ShiftMeasure, stages: usize) -> Result<Schedule> {
    build_schedule_with(nu, stages, &SynthesisLimits::default())
}

pub fn build_schedule_with(nu: &ShiftMeasure, stages: usize, limits: &SynthesisLimits) -> Result<Schedule> {
    if stages == 0 {
        return Err(Error::InvalidParameter("a schedule needs at least one stage".into()));
    }
    nu.validate()?;
    let mut schedule = Schedule {
        nu: nu.clone(),
        stages: Vec::with_capacity(stages),
        lookahead: approximant_for(nu, 1, limits)?,
        limits: limits.clone(),
    };
    for _ in 0..stages {
        schedule.extend()?;
    }
    Ok(schedule)
}

/// `stage_index` on the schedule's cumulative lengths.
pub fn stage_of(n: u128, schedule: &Schedule) -> Result<(usize, u128)> {
    let cumulative: Vec<u128> = schedule.stages.iter().map(|s| s.s).collect();
    stage_index(&cumulative, n)
}

impl Schedule {
    pub fn measure(&self) -> &ShiftMeasure {
        &self.nu
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// The approximant of the first stage not yet in the schedule.
    pub fn lookahead(&self) -> &Approximant {
        &self.lookahead
    }

    /// Total length `S_n` of the built stages.
    pub fn len(&self) -> u128 {
        self.stages.last().map_or(0, |s| s.s)
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Appends the next stage.
    pub fn extend(&mut self) -> Result<()> {
        let j = self.stages.len() + 1;
        let next = approximant_for(&self.nu, j + 1, &self.limits)?;
        let current = std::mem::replace(&mut self.lookahead, next);
        let r = current.r0;
        let r_next = self.lookahead.r0;
        let s_prev = self.len();
        let l = block_length(j, r, r_next, s_prev)?;
        let s = s_prev.checked_add(l).ok_or_else(|| Error::Overflow(format!("S_{j} exceeds u128")))?;
        check_conditions(j, r, r_next, l, s)?;
        self.stages.push(Stage { j, k: j, eps: stage_accuracy(j), approximant: current, r, l, s });
        Ok(())
    }

    /// Re-checks conditions (i)–(iii) and the certificate bound at every stage.
    pub fn verify(&self) -> Result<()> {
        let mut s = 0u128;
        for (i, st) in self.stages.iter().enumerate() {
            let r_next = self.stages.get(i + 1).map_or(self.lookahead.r0, |n| n.r);
            s += st.l;
            if s != st.s {
                return Err(Error::ScheduleViolation { condition: "cumulative length", stage: st.j });
            }
            check_conditions(st.j, st.r, r_next, st.l, st.s)?;
            let bound = &st.eps * Rational::new(BigInt::from(4), BigInt::from(5));
            if st.approximant.certificate >= bound {
                return Err(Error::ScheduleViolation { condition: "certificate", stage: st.j });
            }
        }
        Ok(())
    }
}
