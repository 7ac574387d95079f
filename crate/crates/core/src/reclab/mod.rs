//! Recurrence and intersectivity witness searches on measures (exact) and
//! on sets `E` given by indicator prefixes (finite `N`).
//!
//! A `None` result only says that no witness exists up to `r_max`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::density::intersection_density;
use crate::error::{Error, Result};
use crate::folner::Polynomial;
use crate::generic::{generic_stream, stage_of};
use crate::measures::{correlation, ShiftMeasure};
use crate::rational::{serialize_rational, Rational};
use crate::word::Word;

/// A set `R ⊂ ℕ` of candidate return times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftSet {
    /// `{1, 4, 9, …}`.
    Squares,
    /// Positive multiples of `m`.
    Multiples(u64),
    /// Values `P(0), P(1), …` of an integer polynomial (ascending
    /// coefficients), e.g. `[1, 2]` for the odd numbers.
    Polynomial(Polynomial),
    Explicit(Vec<u64>),
}

impl ShiftSet {
    pub fn odds() -> Self {
        Self::Polynomial(Polynomial(vec![1, 2]))
    }

    /// Elements of `R ∩ [1, r_max]`, increasing.
    pub fn elements(&self, r_max: u64) -> Result<Vec<u64>> {
        Ok(match self {
            Self::Squares => (1..).map(|n: u64| n * n).take_while(|&s| s <= r_max).collect(),
            Self::Multiples(m) => {
                if *m == 0 {
                    return Err(Error::InvalidParameter("multiples of 0".into()));
                }
                (1..=r_max / m).map(|i| i * m).collect()
            }
            Self::Polynomial(p) => {
                // past r_max + Σ|aᵢ| a nonconstant integer polynomial exceeds r_max in absolute value
                let spread: u64 = p.0.iter().map(|c| c.unsigned_abs()).sum();
                let last = if p.0.iter().skip(1).all(|&c| c == 0) { 0 } else { r_max.saturating_add(spread) + 1 };
                let mut out = BTreeSet::new();
                for n in 0..=last {
                    let v = p.eval(n)?;
                    if v >= 1 && v <= r_max as i128 {
                        out.insert(v as u64);
                    }
                }
                out.into_iter().collect()
            }
            Self::Explicit(v) => {
                let set: BTreeSet<u64> = v.iter().copied().filter(|&r| r >= 1 && r <= r_max).collect();
                set.into_iter().collect()
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Squares => "squares".into(),
            Self::Multiples(m) => format!("multiples({m})"),
            Self::Polynomial(p) => format!("polynomial({:?})", p.0),
            Self::Explicit(v) => format!("explicit({v:?})"),
        }
    }
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    Ok(())
}

/// Least `r ∈ R ∩ [1, r_max]` with `ν(B ∩ σ^{−r}B) > 0`, `B = [ω₀ = 1]`.
pub fn recurrence_witness(nu: &ShiftMeasure, set: &ShiftSet, r_max: u64) -> Result<Option<u64>> {
    for r in set.elements(r_max)? {
        if correlation(nu, &[0, r as usize])?.is_positive() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Least `r` with `ν(B ∩ σ^{−r}B) > ν(B)² − ε`.
pub fn nice_recurrence_witness(nu: &ShiftMeasure, set: &ShiftSet, eps: &Rational, r_max: u64) -> Result<Option<u64>> {
    check_eps(eps)?;
    let b = correlation(nu, &[0])?;
    let threshold = &b * &b - eps;
    for r in set.elements(r_max)? {
        if correlation(nu, &[0, r as usize])? > threshold {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Least `r` with `d_N(E ∩ (E − r)) > d_N(E)² − ε` on the initial
/// interval `[0, N)`, where `w` is a prefix of `1_E`.
pub fn nice_intersectivity_witness(
    w: &Word,
    set: &ShiftSet,
    eps: &Rational,
    r_max: u64,
    n: usize,
) -> Result<Option<u64>> {
    check_eps(eps)?;
    if w.len() < n + r_max as usize {
        return Err(Error::PrefixTooShort { need: (n + r_max as usize) as u128, have: w.len() as u128 });
    }
    let d = intersection_density(w, &[0], n)?;
    let threshold = &d * &d - eps;
    for r in set.elements(r_max)? {
        if intersection_density(w, &[0, r as usize], n)? > threshold {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferRow {
    pub r: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub correlation: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub density: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub gap: Rational,
}

/// Measure-side against set-side nice-recurrence search at one `N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub set: String,
    #[serde(serialize_with = "serialize_rational")]
    pub eps: Rational,
    pub r_max: u64,
    #[serde(rename = "N")]
    pub n: u128,
    /// Stage `k(N)` of the constructed set.
    pub stage: usize,
    pub measure_witness: Option<u64>,
    pub set_witness: Option<u64>,
    /// `|ν(B) − d_N(E)|`.
    #[serde(serialize_with = "serialize_rational")]
    pub base_gap: Rational,
    /// Largest gap over the base and all probed `r`.
    #[serde(serialize_with = "serialize_rational")]
    pub max_gap: Rational,
    pub rows: Vec<TransferRow>,
    /// Both searches returned the same verdict.
    pub agree: bool,
    /// Every gap is below `ε/2`.
    pub within_envelope: bool,
}

/// Builds `E` from the generic stream of `ν` and runs both searches.
/// Every `r ∈ R ∩ [1, r_max]` is probed on both sides so that the gaps can
/// be reported, not only up to the first witness.
pub fn transfer_experiment(
    nu: &ShiftMeasure,
    set: &ShiftSet,
    eps: &Rational,
    r_max: u64,
    n: u128,
) -> Result<TransferReport> {
    check_eps(eps)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let mut stream = generic_stream(nu)?;
    let b = correlation(nu, &[0])?;
    let d = stream.intersection_density(&[0], n)?;
    let measure_threshold = &b * &b - eps;
    let set_threshold = &d * &d - eps;
    let base_gap = (&b - &d).abs();
    let mut max_gap = base_gap.clone();
    let mut measure_witness = None;
    let mut set_witness = None;
    let mut rows = Vec::new();
    for r in set.elements(r_max)? {
        let c = correlation(nu, &[0, r as usize])?;
        let e = stream.intersection_density(&[0, r as usize], n)?;
        if measure_witness.is_none() && c > measure_threshold {
            measure_witness = Some(r);
        }
        if set_witness.is_none() && e > set_threshold {
            set_witness = Some(r);
        }
        let gap = (&c - &e).abs();
        if gap > max_gap {
            max_gap = gap.clone();
        }
        rows.push(TransferRow { r, correlation: c, density: e, gap });
    }
    let (stage, _) = stage_of(n, stream.schedule())?;
    let half = eps / Rational::from_integer(BigInt::from(2));
    Ok(TransferReport {
        set: set.describe(),
        eps: eps.clone(),
        r_max,
        n,
        stage,
        agree: measure_witness == set_witness,
        within_envelope: max_gap < half,
        measure_witness,
        set_witness,
        base_gap,
        max_gap,
        rows,
    })
}

/// `{n ∈ [1, n_max] : ν(B ∩ σ^{−n}B ∩ σ^{−2n}B) > ν(B)³ − ε}`.
pub fn r3_set(nu: &ShiftMeasure, eps: &Rational, n_max: u64) -> Result<Vec<u64>> {
    check_eps(eps)?;
    let b = correlation(nu, &[0])?;
    let threshold = &b * &b * &b - eps;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let n = n as usize;
        if correlation(nu, &[0, n, 2 * n])? > threshold {
            out.push(n as u64);
        }
    }
    Ok(out)
}
