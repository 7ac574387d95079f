//! Periodic approximants: finite words whose cyclic cylinder statistics
//! match a target measure at a given order and tolerance, with a certified
//! re-entry threshold.

mod blocks;
mod certify;
mod rounding;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{ergodic_decomposition, ShiftMeasure};
use crate::rational::{format_rational, Rational};
use crate::word::Word;

use blocks::{block_table, BlockTable, Blocks, Exact};
use certify::{certify, Certificate};

/// Resource limits for word construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisLimits {
    /// Longest ergodic word or approximant period attempted, in symbols.
    pub max_word_len: u64,
    /// Summed table entries the certificate search may touch before it
    /// settles for an upper bound.
    pub certificate_budget: u64,
}

impl Default for SynthesisLimits {
    fn default() -> Self {
        Self { max_word_len: 1 << 28, certificate_budget: 3_000_000_000 }
    }
}

/// One block `w^q` of an approximant, built from an ergodic component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproximantBlock {
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub weight: Rational,
    pub component: String,
    /// Length of the component's ergodic word.
    pub word_len: u64,
    pub repeats: u64,
    /// `word_len · repeats`.
    pub len: u64,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub word_certificate: Rational,
}

/// A period `x` of length `p` with `max_{C∈𝒞_k} |δ_p(x)(C) − ν(C)| < 4ε/5`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    pub x: Word,
    pub k: usize,
    pub epsilon: Rational,
    /// Any sequence agreeing with `x^∞` on `[0, R)`, `R ≥ r0`, has order-`k`
    /// statistics within `ε/5` of those of `x`.
    pub r0: u128,
    /// Maximal cylinder deviation of `x` (an upper bound if not exact).
    pub certificate: Rational,
    pub certificate_exact: bool,
    pub blocks: Vec<ApproximantBlock>,
}

impl Approximant {
    pub fn period(&self) -> usize {
        self.x.len()
    }

    /// `|nᵢ/Σnⱼ − αᵢ| < ε/(5r)` for every block and `rk/Σnⱼ < ε/5`.
    pub fn proportions_hold(&self) -> bool {
        let r = self.blocks.len();
        let total: u64 = self.blocks.iter().map(|b| b.len).sum();
        let total = Rational::from_integer(BigInt::from(total));
        let five = Rational::from_integer(BigInt::from(5));
        let per = &self.epsilon / (&five * Rational::from_integer(BigInt::from(r)));
        self.blocks.iter().all(|b| (Rational::from_integer(BigInt::from(b.len)) / &total - &b.weight).abs() < per)
            && Rational::from_integer(BigInt::from(r * self.k)) / &total < &self.epsilon / &five
    }
}

/// `max(p, ⌈5(k + p)/ε⌉)`: past this length the `k` windows that may see a
/// foreign suffix and the incomplete final period together shift any
/// order-`k` frequency by less than `ε/5`.
pub fn reentry_threshold(p: u128, k: usize, eps: &Rational) -> u128 {
    let bound = Rational::from_integer(BigInt::from(5u32) * (BigInt::from(k) + BigInt::from(p))) / eps;
    let bound = bound.ceil().to_integer().to_u128().unwrap_or(u128::MAX);
    p.max(bound)
}

fn check_tolerance(k: usize, eps: &Rational) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("order k must be at least 1".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("tolerance {} must be positive", format_rational(eps))));
    }
    Ok(())
}

/// A cyclic word `w`, `|w| ≥ n_min`, whose cyclic statistics on every
/// cylinder of order `k` are within `eps` of the ergodic measure `ν`.
pub fn ergodic_word(nu: &ShiftMeasure, k: usize, eps: &Rational, n_min: usize) -> Result<Word> {
    Ok(ergodic_word_with(nu, k, eps, n_min, &SynthesisLimits::default())?.0)
}

/// As [`ergodic_word`], also returning the certificate.
pub fn ergodic_word_with(
    nu: &ShiftMeasure,
    k: usize,
    eps: &Rational,
    n_min: usize,
    limits: &SynthesisLimits,
) -> Result<(Word, Rational)> {
    check_tolerance(k, eps)?;
    nu.validate()?;
    if !nu.is_ergodic() {
        return Err(Error::NotErgodic(nu.describe()));
    }
    let found = match block_table(nu, k)? {
        BlockTable::Small(b) => build_ergodic(nu, &b, eps, n_min, limits)?,
        BlockTable::Big(b) => build_ergodic(nu, &b, eps, n_min, limits)?,
    };
    Ok((found.0, found.1.value))
}

fn build_ergodic<T: Exact>(
    nu: &ShiftMeasure,
    blocks: &Blocks<T>,
    eps: &Rational,
    n_min: usize,
    limits: &SynthesisLimits,
) -> Result<(Word, Certificate)> {
    let k = blocks.k;
    let exhausted =
        || Error::ConstructionExhausted { order: k, eps: format_rational(eps), max_len: limits.max_word_len };

    if let ShiftMeasure::Periodic(w) = nu {
        // the orbit word is its own generic point
        let reps = n_min.max(1).div_ceil(w.len());
        if (reps * w.len()) as u64 > limits.max_word_len {
            return Err(exhausted());
        }
        let word = w.repeat(reps);
        let cert = certify(&word, blocks, Some(eps), limits.certificate_budget);
        if cert.value < *eps {
            return Ok((word, cert));
        }
        return Err(exhausted());
    }

    let den = blocks.den.to_big();
    let den_f = blocks.den.to_f64();
    let support = blocks.num.iter().filter(|v| !v.is_zero()).count() as u64;
    let mut len = (n_min as u64).max(k as u64).max(support).max(1);
    while len <= limits.max_word_len {
        // a multiple of the denominator makes every target an integer
        let total = match den.to_u64() {
            Some(d) if d <= len => len.div_ceil(d) * d,
            _ => len,
        };
        if total > limits.max_word_len {
            break;
        }
        let scale = total as f64 / den_f;
        let targets: Vec<f64> = blocks.num.iter().map(|v| v.to_f64() * scale).collect();
        let counts = rounding::round_counts(&targets, k, total);
        let mut word = rounding::euler_word(&counts, k);
        if word.len() < n_min {
            word = word.repeat(n_min.div_ceil(word.len()));
        }
        let cert = certify(&word, blocks, Some(eps), limits.certificate_budget);
        if cert.value < *eps {
            return Ok((word, cert));
        }
        len = len.saturating_mul(2);
    }
    Err(exhausted())
}

/// The periodic approximant of `ν` at order `k` and tolerance `eps`.
pub fn periodic_approximant(nu: &ShiftMeasure, k: usize, eps: &Rational) -> Result<Approximant> {
    periodic_approximant_with(nu, k, eps, &SynthesisLimits::default())
}

pub fn periodic_approximant_with(
    nu: &ShiftMeasure,
    k: usize,
    eps: &Rational,
    limits: &SynthesisLimits,
) -> Result<Approximant> {
    check_tolerance(k, eps)?;
    let parts: Vec<(Rational, ShiftMeasure)> =
        ergodic_decomposition(nu)?.into_iter().filter(|(w, _)| w.is_positive()).collect();
    let five = Rational::from_integer(BigInt::from(5));
    let fifth = eps / &five;

    let mut words = Vec::with_capacity(parts.len());
    for (_, m) in &parts {
        words.push(ergodic_word_with(m, k, &fifth, k, limits)?);
    }

    let r = parts.len();
    let per = &fifth / Rational::from_integer(BigInt::from(r));
    let word_lens: Vec<u64> = words.iter().map(|(w, _)| w.len() as u64).collect();
    let floor_total = (Rational::from_integer(BigInt::from(5 * r * k)) / eps).floor().to_integer().to_u64();
    let mut target = word_lens.iter().sum::<u64>().max(floor_total.unwrap_or(u64::MAX).saturating_add(1));
    let repeats = loop {
        if target > limits.max_word_len {
            return Err(Error::ConstructionExhausted {
                order: k,
                eps: format_rational(eps),
                max_len: limits.max_word_len,
            });
        }
        let q: Vec<u64> = parts
            .iter()
            .zip(&word_lens)
            .map(|((a, _), &n)| {
                let ideal = a * Rational::from_integer(BigInt::from(target)) / Rational::from_integer(BigInt::from(n));
                ideal.round().to_integer().to_u64().unwrap_or(1).max(1)
            })
            .collect();
        let lens: Vec<u64> = q.iter().zip(&word_lens).map(|(q, n)| q * n).collect();
        let total: u64 = lens.iter().sum();
        let total_q = Rational::from_integer(BigInt::from(total));
        let eq3 = parts
            .iter()
            .zip(&lens)
            .all(|((a, _), &n)| (Rational::from_integer(BigInt::from(n)) / &total_q - a).abs() < per);
        let eq4 = Rational::from_integer(BigInt::from(r * k)) / &total_q < fifth;
        if eq3 && eq4 && total <= limits.max_word_len {
            break q;
        }
        target = target.saturating_mul(2);
    };

    let mut x = Word::new();
    let mut out_blocks = Vec::with_capacity(r);
    for (((weight, m), (w, wc)), &q) in parts.iter().zip(&words).zip(&repeats) {
        for _ in 0..q {
            x.extend_from_range(w, 0, w.len());
        }
        out_blocks.push(ApproximantBlock {
            weight: weight.clone(),
            component: m.describe(),
            word_len: w.len() as u64,
            repeats: q,
            len: q * w.len() as u64,
            word_certificate: wc.clone(),
        });
    }

    let cert = match block_table(nu, k)? {
        BlockTable::Small(b) => certify(&x, &b, None, limits.certificate_budget),
        BlockTable::Big(b) => certify(&x, &b, None, limits.certificate_budget),
    };
    let bound = &fifth * Rational::from_integer(BigInt::from(4));
    if cert.value >= bound {
        return Err(Error::VerificationFailed {
            certificate: format_rational(&cert.value),
            bound: format_rational(&bound),
        });
    }
    let p = x.len() as u128;
    Ok(Approximant {
        x,
        k,
        epsilon: eps.clone(),
        r0: reentry_threshold(p, k, eps),
        certificate: cert.value,
        certificate_exact: cert.exact,
        blocks: out_blocks,
    })
}
