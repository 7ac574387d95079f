use num_traits::Signed;
use serde::Serialize;

use super::{stage_of, BitStream};
use crate::error::{Error, Result};
use crate::measures::{correlation, ShiftMeasure};
use crate::rational::{serialize_rational, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    #[serde(rename = "N")]
    pub n: u128,
    pub shifts: Vec<usize>,
    #[serde(serialize_with = "serialize_rational")]
    pub empirical: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub exact: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub abs_error: Rational,
    /// `k(N)`, the stage with `S_k ≤ N < S_{k+1}`.
    pub stage: usize,
}

/// Empirical intersection densities of the stream against the exact
/// correlations of `ν`, for every `N` in the grid and every shift tuple.
pub fn convergence_report(
    nu: &ShiftMeasure,
    stream: &mut BitStream,
    shift_tuples: &[Vec<usize>],
    n_grid: &[u128],
) -> Result<Vec<ReportRow>> {
    if n_grid.is_empty() {
        return Err(Error::InvalidParameter("N grid is empty".into()));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) || n_grid[0] == 0 {
        return Err(Error::InvalidParameter("N grid must be positive and strictly increasing".into()));
    }
    if shift_tuples.is_empty() || shift_tuples.iter().any(|t| t.is_empty()) {
        return Err(Error::InvalidParameter("shift tuples must be nonempty".into()));
    }
    let exact: Vec<Rational> = shift_tuples.iter().map(|t| correlation(nu, t)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(n_grid.len() * shift_tuples.len());
    for &n in n_grid {
        stream.ensure(n + 1)?;
        for (t, ex) in shift_tuples.iter().zip(&exact) {
            let empirical = stream.intersection_density(t, n)?;
            let (stage, _) = stage_of(n, stream.schedule())?;
            rows.push(ReportRow {
                n,
                shifts: t.clone(),
                abs_error: (&empirical - ex).abs(),
                empirical,
                exact: ex.clone(),
                stage,
            });
        }
    }
    Ok(rows)
}
