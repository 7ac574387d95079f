use num_traits::One;

use super::ShiftMeasure;
use crate::error::Result;
use crate::rational::Rational;

/// Exact ergodic decomposition `ν = Σ αᵢ νᵢ`.
///
/// Mixtures return their components as given, finite systems split along
/// the cycles of the permutation, and a reducible Markov chain splits into
/// its closed classes. Anything else is returned whole with weight 1.
pub fn ergodic_decomposition(nu: &ShiftMeasure) -> Result<Vec<(Rational, ShiftMeasure)>> {
    nu.validate()?;
    Ok(match nu {
        ShiftMeasure::Mixture(components) => components.clone(),
        ShiftMeasure::FiniteMps(f) => {
            f.cycles_with_mass().map(|(mass, word)| (mass, ShiftMeasure::Periodic(word))).collect()
        }
        ShiftMeasure::Markov(m) if !m.is_irreducible() => m
            .closed_classes()
            .iter()
            .filter_map(|class| m.restrict(class))
            .map(|(mass, chain)| (mass, ShiftMeasure::Markov(chain)))
            .collect(),
        other => vec![(Rational::one(), other.clone())],
    })
}
