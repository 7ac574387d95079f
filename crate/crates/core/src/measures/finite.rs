use num_traits::{One, Signed, Zero};

use super::rotation::RotationCoding;
use super::ShiftMeasure;
use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::Word;

/// A measure-preserving permutation `T` of `{0, …, m−1}` with a marked set
/// `A`, viewed through the coding `φ(x)_n = 1_A(T^n x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMps {
    weights: Vec<Rational>,
    permutation: Vec<usize>,
    set: Vec<bool>,
    /// cycles of `T`, each listed from its least point
    cycles: Vec<Vec<usize>>,
    /// `(cycle index, index in cycle)` for each point
    position: Vec<(usize, usize)>,
}

impl FiniteMps {
    /// `set` lists the points of `A`.
    pub fn new(weights: Vec<Rational>, permutation: Vec<usize>, set: &[usize]) -> Result<Self> {
        let m = weights.len();
        if m == 0 {
            return Err(Error::InvalidSystem("no points".into()));
        }
        if permutation.len() != m {
            return Err(Error::InvalidSystem(format!(
                "permutation has {} entries for {m} points",
                permutation.len()
            )));
        }
        let mut hit = vec![false; m];
        for &t in &permutation {
            if t >= m || hit[t] {
                return Err(Error::InvalidSystem(format!("map is not a bijection of 0..{m}")));
            }
            hit[t] = true;
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidSystem("negative weight".into()));
        }
        if weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidSystem("weights do not sum to 1".into()));
        }
        let mut marked = vec![false; m];
        for &a in set {
            if a >= m {
                return Err(Error::InvalidSystem(format!("set element {a} is not a point")));
            }
            marked[a] = true;
        }

        let mut cycles = Vec::new();
        let mut position = vec![(0, 0); m];
        let mut seen = vec![false; m];
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                position[x] = (cycles.len(), cycle.len());
                cycle.push(x);
                x = permutation[x];
            }
            if let Some(&bad) = cycle.iter().find(|&&x| weights[x] != weights[start]) {
                return Err(Error::NonInvariantWeights { point: bad });
            }
            cycles.push(cycle);
        }
        Ok(Self { weights, permutation, set: marked, cycles, position })
    }

    pub fn points(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn in_set(&self, x: usize) -> bool {
        self.set[x]
    }

    /// Cycles of the permutation, each starting at its least point.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// `T^n x`.
    pub fn iterate(&self, x: usize, n: usize) -> usize {
        let (c, i) = self.position[x];
        let cycle = &self.cycles[c];
        cycle[(i + n) % cycle.len()]
    }

    /// Cycles carrying positive mass, as `(mass, A-coding of the cycle)`.
    pub fn cycles_with_mass(&self) -> impl Iterator<Item = (Rational, Word)> + '_ {
        self.cycles.iter().filter_map(move |cycle| {
            let mass: Rational = cycle.iter().map(|&x| &self.weights[x]).sum();
            if mass.is_zero() {
                return None;
            }
            Some((mass, Word::from_bits(cycle.iter().map(|&x| self.set[x]))))
        })
    }

    pub(crate) fn cylinder(&self, c: &Cylinder) -> Rational {
        (0..self.points())
            .filter(|&x| c.matches(|n| self.set[self.iterate(x, n)]))
            .map(|x| &self.weights[x])
            .sum()
    }
}

/// Description of a measure-preserving system with a marked set.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemData {
    /// Points `0..weights.len()`, `x ↦ permutation[x]`, marked set `set`.
    Finite { weights: Vec<Rational>, permutation: Vec<usize>, set: Vec<usize> },
    /// Rotation by `alpha` (see [`crate::rational::parse_real`]) coded by `[a, b)`.
    Rotation { alpha: String, a: Rational, b: Rational, precision: u32 },
}

/// The law of `φ(x) = (1_A(T^n x))_{n ≥ 0}`.
pub fn mps_pushforward(system: &SystemData) -> Result<ShiftMeasure> {
    Ok(match system {
        SystemData::Finite { weights, permutation, set } => {
            ShiftMeasure::FiniteMps(FiniteMps::new(weights.clone(), permutation.clone(), set)?)
        }
        SystemData::Rotation { alpha, a, b, precision } => {
            ShiftMeasure::Rotation(RotationCoding::parse(alpha, a.clone(), b.clone(), *precision)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::cylinder_measure;
    use crate::rational::ratio;

    fn cyclic(m: usize, set: &[usize]) -> ShiftMeasure {
        mps_pushforward(&SystemData::Finite {
            weights: vec![ratio(1, m as i64); m],
            permutation: (0..m).map(|x| (x + 1) % m).collect(),
            set: set.to_vec(),
        })
        .unwrap()
    }

    #[test]
    fn cyclic_group_examples() {
        let z4 = cyclic(4, &[0, 1]);
        assert_eq!(cylinder_measure(&z4, &Cylinder::ones(&[0, 1])).unwrap(), ratio(1, 4));
        assert_eq!(cylinder_measure(&z4, &Cylinder::full()).unwrap(), ratio(1, 1));
        let z6 = cyclic(6, &[0, 1, 2]);
        assert_eq!(cylinder_measure(&z6, &Cylinder::ones(&[0, 1])).unwrap(), ratio(1, 3));
        assert_eq!(cylinder_measure(&z6, &Cylinder::ones(&[0, 2])).unwrap(), ratio(1, 6));
    }

    #[test]
    fn rejects_bad_systems() {
        let w = vec![ratio(1, 2), ratio(1, 2)];
        assert!(FiniteMps::new(w.clone(), vec![0, 0], &[0]).is_err());
        assert!(FiniteMps::new(w.clone(), vec![1], &[0]).is_err());
        assert!(FiniteMps::new(vec![ratio(1, 2), ratio(1, 3)], vec![0, 1], &[0]).is_err());
        assert!(FiniteMps::new(w, vec![1, 0], &[2]).is_err());
        assert_eq!(
            FiniteMps::new(vec![ratio(1, 4), ratio(3, 4)], vec![1, 0], &[0]).unwrap_err(),
            Error::NonInvariantWeights { point: 1 }
        );
    }

    #[test]
    fn cycles_start_at_least_point() {
        let f = FiniteMps::new(vec![ratio(1, 4); 4], vec![2, 3, 0, 1], &[0, 3]).unwrap();
        assert_eq!(f.cycles(), &[vec![0, 2], vec![1, 3]]);
        let codes: Vec<_> = f.cycles_with_mass().map(|(m, w)| (m, w.to_ascii())).collect();
        assert_eq!(codes, vec![(ratio(1, 2), "10".to_string()), (ratio(1, 2), "01".to_string())]);
        assert_eq!(f.iterate(1, 3), 3);
    }
}
