//! Measures shared by the benchmarks.

use corrset_core::rational::ratio;
use corrset_core::{MarkovChain, ShiftMeasure};

pub fn bernoulli_third() -> ShiftMeasure {
    ShiftMeasure::Bernoulli(ratio(1, 3))
}

pub fn sticky_markov() -> ShiftMeasure {
    ShiftMeasure::Markov(
        MarkovChain::new(
            vec![vec![ratio(2, 3), ratio(1, 3)], vec![ratio(1, 4), ratio(3, 4)]],
            vec![ratio(3, 7), ratio(4, 7)],
            vec![false, true],
        )
        .expect("stationary chain"),
    )
}
