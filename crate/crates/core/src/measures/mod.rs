//! Finitely described shift-invariant measures on `{0,1}^ℕ`.
//!
//! Every variant evaluates cylinders exactly. Rotation codings are exact with
//! respect to a rotation number truncated to the configured number of decimal
//! digits, which is how the "high precision real" is represented.

mod decompose;
mod finite;
mod markov;
mod rotation;

use num_traits::{One, Signed, Zero};

pub use decompose::ergodic_decomposition;
pub use finite::{mps_pushforward, FiniteMps, SystemData};
pub use markov::MarkovChain;
pub use rotation::{RotationCoding, DEFAULT_PRECISION};

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub enum ShiftMeasure {
    /// i.i.d. symbols with `P(ω_n = 1) = p`.
    Bernoulli(Rational),
    Markov(MarkovChain),
    /// Uniform measure on the shift orbit of `w^∞`.
    Periodic(Word),
    Rotation(RotationCoding),
    FiniteMps(FiniteMps),
    /// Convex combination of ergodic measures; nesting is not allowed.
    Mixture(Vec<(Rational, ShiftMeasure)>),
}

impl ShiftMeasure {
    pub fn bernoulli(p: Rational) -> Result<Self> {
        let m = ShiftMeasure::Bernoulli(p);
        m.validate()?;
        Ok(m)
    }

    pub fn periodic(word: Word) -> Result<Self> {
        let m = ShiftMeasure::Periodic(word);
        m.validate()?;
        Ok(m)
    }

    pub fn mixture(components: Vec<(Rational, ShiftMeasure)>) -> Result<Self> {
        let m = ShiftMeasure::Mixture(components);
        m.validate()?;
        Ok(m)
    }

    /// Checks the invariants the struct-wrapped variants enforce at
    /// construction, for the variants that are plain data.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Bernoulli(p) => {
                if p.is_negative() || *p > Rational::one() {
                    return Err(Error::InvalidMeasure(format!("Bernoulli parameter {p} outside [0,1]")));
                }
            }
            Self::Periodic(w) => {
                if w.is_empty() {
                    return Err(Error::InvalidMeasure("periodic orbit needs a nonempty word".into()));
                }
            }
            Self::Markov(_) | Self::Rotation(_) | Self::FiniteMps(_) => {}
            Self::Mixture(components) => {
                if components.is_empty() {
                    return Err(Error::InvalidMeasure("mixture has no components".into()));
                }
                let mut total = Rational::zero();
                for (w, c) in components {
                    if w.is_negative() {
                        return Err(Error::InvalidMeasure(format!("negative mixture weight {w}")));
                    }
                    match c {
                        Self::Mixture(_) => return Err(Error::InvalidMeasure("nested mixture".into())),
                        Self::FiniteMps(_) => {
                            return Err(Error::InvalidMeasure(
                                "mixture components must be ergodic variants; decompose the finite system first".into(),
                            ))
                        }
                        Self::Markov(m) if !m.is_irreducible() => {
                            return Err(Error::NotErgodic("reducible Markov chain inside a mixture".into()))
                        }
                        _ => c.validate()?,
                    }
                    total += w;
                }
                if !total.is_one() {
                    return Err(Error::InvalidMeasure(format!(
                        "mixture weights sum to {}, not 1",
                        format_rational(&total)
                    )));
                }
            }
        }
        Ok(())
    }

    /// True for variants that are ergodic as described: Bernoulli, periodic
    /// orbits, rotation codings, irreducible chains, and finite systems or
    /// mixtures that put all their mass on a single ergodic piece.
    pub fn is_ergodic(&self) -> bool {
        match self {
            Self::Bernoulli(_) | Self::Periodic(_) | Self::Rotation(_) => true,
            Self::Markov(m) => m.is_irreducible(),
            Self::FiniteMps(f) => f.cycles_with_mass().count() == 1,
            Self::Mixture(c) => c.iter().filter(|(w, _)| w.is_positive()).count() == 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Bernoulli(_) => "bernoulli",
            Self::Markov(_) => "markov",
            Self::Periodic(_) => "periodic",
            Self::Rotation(_) => "rotation",
            Self::FiniteMps(_) => "finite_mps",
            Self::Mixture(_) => "mixture",
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            Self::Bernoulli(p) => format!("Bernoulli({})", format_rational(p)),
            Self::Markov(m) => format!("Markov({} states)", m.states()),
            Self::Periodic(w) => format!("PeriodicOrbit({w})"),
            Self::Rotation(r) => format!(
                "RotationCoding(alpha≈{:.12}, [{}, {}))",
                crate::rational::to_f64(r.alpha()),
                format_rational(&r.interval().0),
                format_rational(&r.interval().1)
            ),
            Self::FiniteMps(f) => format!("FiniteMps({} points)", f.points()),
            Self::Mixture(c) => {
                let parts: Vec<String> =
                    c.iter().map(|(w, m)| format!("{}·{}", format_rational(w), m.describe())).collect();
                format!("Mixture({})", parts.join(" + "))
            }
        }
    }
}

/// `ν(C)`, exactly.
pub fn cylinder_measure(nu: &ShiftMeasure, c: &Cylinder) -> Result<Rational> {
    nu.validate()?;
    eval(nu, c)
}

fn eval(nu: &ShiftMeasure, c: &Cylinder) -> Result<Rational> {
    Ok(match nu {
        ShiftMeasure::Bernoulli(p) => {
            let q = Rational::one() - p;
            c.constraints().iter().fold(Rational::one(), |acc, &(_, b)| acc * if b { p } else { &q })
        }
        ShiftMeasure::Markov(m) => m.cylinder(c),
        ShiftMeasure::Periodic(w) => {
            // the orbit measure only sees positions modulo the period
            let p = w.len();
            let hits = (0..p).filter(|&i| c.matches(|n| w.get((i + n) % p))).count();
            Rational::new(hits.into(), p.into())
        }
        ShiftMeasure::Rotation(r) => r.cylinder(c)?,
        ShiftMeasure::FiniteMps(f) => f.cylinder(c),
        ShiftMeasure::Mixture(components) => {
            let mut total = Rational::zero();
            for (w, m) in components {
                if !w.is_zero() {
                    total += w * eval(m, c)?;
                }
            }
            total
        }
    })
}

/// `ν([ω_{n₁} = 1, …, ω_{n_k} = 1])`.
pub fn correlation(nu: &ShiftMeasure, shifts: &[usize]) -> Result<Rational> {
    cylinder_measure(nu, &Cylinder::ones(shifts))
}
