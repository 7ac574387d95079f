//! Exact cylinder probabilities for finitely described shift-invariant
//! measures on `{0,1}^ℕ`, and explicit sets `E ⊂ ℕ` whose intersection
//! densities `|∩ᵢ(E − nᵢ) ∩ [0,N)| / N` converge to them.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`], [`cylinder`], [`density`] and [`folner`] hold the shared
//!   vocabulary: packed binary words, cylinder events, empirical statistics
//!   and Følner densities. Everything there is exact rational arithmetic.
//! * [`measures`] evaluates cylinders under Bernoulli, labelled Markov,
//!   periodic, rotation-coding, finite permutation and mixture measures, and
//!   computes their ergodic decompositions.
//! * [`synthesis`] builds certified periodic approximants: one period of a
//!   word whose cyclic block statistics are within a tolerance of a measure.
//! * [`generic`] schedules growing blocks of approximants and streams the
//!   resulting generic point, i.e. the indicator of the set `E`.
//! * [`reclab`] runs recurrence, nice recurrence and intersectivity
//!   witness searches on measures and on constructed sets.

pub mod cylinder;
pub mod density;
mod error;
pub mod folner;
pub mod generic;
pub mod measures;
pub mod rational;
pub mod reclab;
pub mod synthesis;
pub mod word;

pub use cylinder::Cylinder;
pub use density::{empirical_measure, intersection_density, EmpiricalMode};
pub use error::{Error, Result};
pub use folner::{folner_defect, upper_density, FolnerSequence, Polynomial};
pub use generic::{
    build_schedule, build_schedule_with, convergence_report, generic_stream, read_prefix_file,
    schedule_lengths, stage_of, write_prefix_file, BitStream, ReportRow, Schedule, Stage,
    StreamLimits,
};
pub use measures::{
    correlation, cylinder_measure, ergodic_decomposition, mps_pushforward, FiniteMps, MarkovChain,
    RotationCoding, ShiftMeasure, SystemData,
};
pub use rational::Rational;
pub use reclab::{
    nice_intersectivity_witness, nice_recurrence_witness, r3_set, recurrence_witness,
    transfer_experiment, ShiftSet, TransferReport, TransferRow,
};
pub use synthesis::{
    ergodic_word, ergodic_word_with, periodic_approximant, periodic_approximant_with, reentry_threshold,
    Approximant, ApproximantBlock, SynthesisLimits,
};
pub use word::Word;
