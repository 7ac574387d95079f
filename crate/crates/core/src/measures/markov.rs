use num_traits::{One, Signed, Zero};

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A stationary Markov chain on `0..m` observed through a 0/1 labelling.
///
/// The stationary vector is part of the input and must satisfy `πP = π`
/// exactly; it is never solved for.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovChain {
    transition: Vec<Vec<Rational>>,
    stationary: Vec<Rational>,
    labels: Vec<bool>,
}

impl MarkovChain {
    pub fn new(transition: Vec<Vec<Rational>>, stationary: Vec<Rational>, labels: Vec<bool>) -> Result<Self> {
        let m = transition.len();
        if m == 0 {
            return Err(Error::InvalidMeasure("Markov chain has no states".into()));
        }
        if stationary.len() != m || labels.len() != m {
            return Err(Error::InvalidMeasure(format!(
                "{m} states but {} stationary entries and {} labels",
                stationary.len(),
                labels.len()
            )));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMeasure(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            if row.iter().any(|p| p.is_negative()) {
                return Err(Error::InvalidMeasure(format!("row {i} has a negative entry")));
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(Error::InvalidMeasure(format!("row {i} sums to {}", format_rational(&sum))));
            }
        }
        if stationary.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidMeasure("stationary vector has a negative entry".into()));
        }
        let total: Rational = stationary.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("stationary vector sums to {}", format_rational(&total))));
        }
        for j in 0..m {
            let got: Rational = (0..m).map(|i| &stationary[i] * &transition[i][j]).sum();
            if got != stationary[j] {
                return Err(Error::NotStationary {
                    state: j,
                    got: format_rational(&got),
                    want: format_rational(&stationary[j]),
                });
            }
        }
        Ok(Self { transition, stationary, labels })
    }

    pub fn states(&self) -> usize {
        self.transition.len()
    }

    pub fn transition(&self) -> &[Vec<Rational>] {
        &self.transition
    }

    pub fn stationary(&self) -> &[Rational] {
        &self.stationary
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    /// `π · Π (P^{gap} · D_i) · 1` over the constraints in position order.
    pub(crate) fn cylinder(&self, c: &Cylinder) -> Rational {
        let m = self.states();
        let mut v = self.stationary.clone();
        let mut at = None;
        for &(n, bit) in c.constraints() {
            if let Some(prev) = at {
                for _ in prev..n {
                    v = self.step(&v);
                }
            }
            for (s, x) in v.iter_mut().enumerate().take(m) {
                if self.labels[s] != bit {
                    *x = Rational::zero();
                }
            }
            at = Some(n);
        }
        v.into_iter().sum()
    }

    fn step(&self, v: &[Rational]) -> Vec<Rational> {
        let m = self.states();
        let mut out = vec![Rational::zero(); m];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, p) in self.transition[i].iter().enumerate() {
                if !p.is_zero() {
                    out[j] += vi * p;
                }
            }
        }
        out
    }

    fn reach(&self) -> Vec<Vec<bool>> {
        let m = self.states();
        let mut r: Vec<Vec<bool>> =
            (0..m).map(|i| (0..m).map(|j| i == j || self.transition[i][j].is_positive()).collect()).collect();
        for k in 0..m {
            for i in 0..m {
                if r[i][k] {
                    for j in 0..m {
                        if r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_irreducible(&self) -> bool {
        self.reach().iter().all(|row| row.iter().all(|&b| b))
    }

    /// Closed communicating classes, each as a sorted list of states.
    pub fn closed_classes(&self) -> Vec<Vec<usize>> {
        let m = self.states();
        let r = self.reach();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for i in 0..m {
            if seen[i] {
                continue;
            }
            let class: Vec<usize> = (0..m).filter(|&j| r[i][j] && r[j][i]).collect();
            for &j in &class {
                seen[j] = true;
            }
            let closed = class.iter().all(|&s| (0..m).all(|t| !r[s][t] || class.contains(&t)));
            if closed {
                out.push(class);
            }
        }
        out
    }

    /// The chain restricted to a closed class, with its stationary vector
    /// renormalised. `None` if the class carries no stationary mass.
    pub(crate) fn restrict(&self, class: &[usize]) -> Option<(Rational, MarkovChain)> {
        let mass: Rational = class.iter().map(|&s| &self.stationary[s]).sum();
        if mass.is_zero() {
            return None;
        }
        let transition =
            class.iter().map(|&i| class.iter().map(|&j| self.transition[i][j].clone()).collect()).collect();
        let stationary = class.iter().map(|&s| &self.stationary[s] / &mass).collect();
        let labels = class.iter().map(|&s| self.labels[s]).collect();
        let chain = MarkovChain::new(transition, stationary, labels).ok()?;
        Some((mass, chain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn flip() -> MarkovChain {
        let z = ratio(0, 1);
        let o = ratio(1, 1);
        MarkovChain::new(vec![vec![z.clone(), o.clone()], vec![o, z]], vec![ratio(1, 2), ratio(1, 2)], vec![false, true])
            .unwrap()
    }

    fn sticky() -> MarkovChain {
        MarkovChain::new(
            vec![vec![ratio(2, 3), ratio(1, 3)], vec![ratio(1, 4), ratio(3, 4)]],
            vec![ratio(3, 7), ratio(4, 7)],
            vec![false, true],
        )
        .unwrap()
    }

    #[test]
    fn transfer_matrix_values() {
        let f = flip();
        assert_eq!(f.cylinder(&Cylinder::block(0b01, 2)), ratio(1, 2));
        assert_eq!(f.cylinder(&Cylinder::block(0b11, 2)), ratio(0, 1));
        assert_eq!(f.cylinder(&Cylinder::ones(&[0, 2])), ratio(1, 2));
        let s = sticky();
        // π₁ · P₁₁ = 4/7 · 3/4
        assert_eq!(s.cylinder(&Cylinder::ones(&[0, 1])), ratio(3, 7));
        // π₁ · (P²)₁₁ = 4/7 · (1/12 + 9/16)
        assert_eq!(s.cylinder(&Cylinder::ones(&[0, 2])), ratio(4, 7) * (ratio(1, 12) + ratio(9, 16)));
    }

    #[test]
    fn rejects_non_stationary_vector() {
        let err = MarkovChain::new(
            vec![vec![ratio(2, 3), ratio(1, 3)], vec![ratio(1, 4), ratio(3, 4)]],
            vec![ratio(1, 2), ratio(1, 2)],
            vec![false, true],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotStationary { .. }));
        let not_stochastic =
            MarkovChain::new(vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(0, 1), ratio(1, 1)]], vec![ratio(0, 1), ratio(1, 1)], vec![false, true]);
        assert!(not_stochastic.is_err());
    }

    #[test]
    fn classes() {
        assert!(flip().is_irreducible());
        let id = MarkovChain::new(
            vec![vec![ratio(1, 1), ratio(0, 1)], vec![ratio(0, 1), ratio(1, 1)]],
            vec![ratio(1, 4), ratio(3, 4)],
            vec![false, true],
        )
        .unwrap();
        assert!(!id.is_irreducible());
        assert_eq!(id.closed_classes(), vec![vec![0], vec![1]]);
        let (w, _) = id.restrict(&[1]).unwrap();
        assert_eq!(w, ratio(3, 4));
    }
}
