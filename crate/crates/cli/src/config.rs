//! The JSON run configuration.

use std::path::{Path, PathBuf};

use corrset_core::folner::Polynomial;
use corrset_core::measures::DEFAULT_PRECISION;
use corrset_core::rational::{parse_probability, parse_rational};
use corrset_core::{
    mps_pushforward, FolnerSequence, MarkovChain, Rational, RotationCoding, ShiftMeasure, ShiftSet, SystemData,
};
use serde::Deserialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema_version: Option<u32>,
    pub command: Option<String>,
    pub measure: MeasureSpec,
    pub stages: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<u128>,
    #[serde(rename = "N_grid")]
    pub n_grid: Option<Vec<u128>>,
    pub shifts: Option<Vec<Vec<usize>>>,
    pub eps: Option<String>,
    pub r_max: Option<u64>,
    pub n_max: Option<u64>,
    pub set: Option<SetSpec>,
    pub folner: Option<FolnerSpec>,
    pub translations: Option<Vec<u64>>,
    pub prefix_path: Option<PathBuf>,
    /// Also write the prefix as a text file of '0'/'1'.
    pub ascii: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Bernoulli { p: String },
    Markov { transition: Vec<Vec<String>>, stationary: Vec<String>, labels: Option<Vec<u8>> },
    Periodic { word: String },
    Rotation { alpha: String, interval: [String; 2], precision: Option<u32> },
    FiniteMps { weights: Vec<String>, permutation: Vec<usize>, set: Vec<usize> },
    Mixture { components: Vec<ComponentSpec> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub weight: String,
    pub measure: MeasureSpec,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Squares,
    Odds,
    Multiples { m: u64 },
    Polynomial { coefficients: Vec<i64> },
    Explicit { values: Vec<u64> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FolnerSpec {
    InitialIntervals,
    ShiftedIntervals { offset: Vec<i64>, length: Vec<i64> },
    Progression { start: u64, step: u64, count: Vec<i64> },
}

/// A parsed and validated configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub measure: ShiftMeasure,
    pub raw: RawConfig,
    /// Directory relative paths in the config are resolved against.
    pub base: PathBuf,
}

pub fn load(path: &Path, command: &str) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read config {}: {e}", path.display())))?;
    let raw: RawConfig = serde_json::from_str(&text).map_err(CliError::parse)?;
    if let Some(v) = raw.schema_version {
        if v != SCHEMA_VERSION {
            return Err(CliError::validation("schema_version", format!("unsupported schema_version {v}")));
        }
    }
    if let Some(c) = &raw.command {
        if c != command {
            return Err(CliError::validation(
                "command",
                format!("config is for command {c:?} but {command:?} was invoked"),
            ));
        }
    }
    let measure = measure(&raw.measure, "measure")?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(RunConfig { measure, raw, base })
}

fn rational(s: &str, at: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::validation(at, e.to_string()))
}

fn probability(s: &str, at: &str) -> Result<Rational, CliError> {
    parse_probability(s).map_err(|e| CliError::validation(at, e.to_string()))
}

pub fn measure(spec: &MeasureSpec, at: &str) -> Result<ShiftMeasure, CliError> {
    let core = |e: corrset_core::Error| CliError::validation(at, e.to_string());
    let m = match spec {
        MeasureSpec::Bernoulli { p } => ShiftMeasure::Bernoulli(probability(p, &format!("{at}.p"))?),
        MeasureSpec::Markov { transition, stationary, labels } => {
            let t = transition
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| probability(v, &format!("{at}.transition[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let pi = stationary
                .iter()
                .enumerate()
                .map(|(i, v)| probability(v, &format!("{at}.stationary[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let labels = match labels {
                Some(l) => {
                    if let Some(i) = l.iter().position(|&b| b > 1) {
                        return Err(CliError::validation(&format!("{at}.labels[{i}]"), "labels must be 0 or 1".into()));
                    }
                    l.iter().map(|&b| b == 1).collect()
                }
                None if t.len() == 2 => vec![false, true],
                None => return Err(CliError::validation(&format!("{at}.labels"), "labels are required".into())),
            };
            ShiftMeasure::Markov(MarkovChain::new(t, pi, labels).map_err(core)?)
        }
        MeasureSpec::Periodic { word } => {
            ShiftMeasure::Periodic(word.parse().map_err(|e: corrset_core::Error| {
                CliError::validation(&format!("{at}.word"), e.to_string())
            })?)
        }
        MeasureSpec::Rotation { alpha, interval, precision } => {
            let a = rational(&interval[0], &format!("{at}.interval[0]"))?;
            let b = rational(&interval[1], &format!("{at}.interval[1]"))?;
            ShiftMeasure::Rotation(
                RotationCoding::parse(alpha, a, b, precision.unwrap_or(DEFAULT_PRECISION)).map_err(core)?,
            )
        }
        MeasureSpec::FiniteMps { weights, permutation, set } => {
            let weights = weights
                .iter()
                .enumerate()
                .map(|(i, v)| probability(v, &format!("{at}.weights[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            mps_pushforward(&SystemData::Finite { weights, permutation: permutation.clone(), set: set.clone() })
                .map_err(core)?
        }
        MeasureSpec::Mixture { components } => {
            let parts = components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let w = probability(&c.weight, &format!("{at}.components[{i}].weight"))?;
                    Ok((w, measure(&c.measure, &format!("{at}.components[{i}].measure"))?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            ShiftMeasure::Mixture(parts)
        }
    };
    m.validate().map_err(core)?;
    Ok(m)
}

impl RunConfig {
    pub fn require<'a, T>(&self, value: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
        value.as_ref().ok_or_else(|| CliError::validation(name, format!("{name} is required for this command")))
    }

    pub fn eps(&self) -> Result<Rational, CliError> {
        let e = rational(self.require(&self.raw.eps, "eps")?, "eps")?;
        if e <= Rational::from_integer(0.into()) {
            return Err(CliError::validation("eps", "eps must be positive".into()));
        }
        Ok(e)
    }

    pub fn n_grid(&self) -> Result<Vec<u128>, CliError> {
        let grid = self.require(&self.raw.n_grid, "N_grid")?;
        if grid.is_empty() {
            return Err(CliError::validation("N_grid", "N_grid is empty".into()));
        }
        if grid[0] == 0 {
            return Err(CliError::validation("N_grid[0]", "N must be positive".into()));
        }
        if let Some(i) = grid.windows(2).position(|w| w[0] >= w[1]) {
            return Err(CliError::validation(&format!("N_grid[{}]", i + 1), "N_grid must be strictly increasing".into()));
        }
        Ok(grid.clone())
    }

    pub fn shifts(&self) -> Result<Vec<Vec<usize>>, CliError> {
        let tuples = self.require(&self.raw.shifts, "shifts")?;
        if tuples.is_empty() {
            return Err(CliError::validation("shifts", "no shift tuples given".into()));
        }
        if let Some(i) = tuples.iter().position(|t| t.is_empty()) {
            return Err(CliError::validation(&format!("shifts[{i}]"), "empty shift tuple".into()));
        }
        Ok(tuples.clone())
    }

    pub fn shift_set(&self) -> Result<ShiftSet, CliError> {
        Ok(match self.require(&self.raw.set, "set")? {
            SetSpec::Squares => ShiftSet::Squares,
            SetSpec::Odds => ShiftSet::odds(),
            SetSpec::Multiples { m } => {
                if *m == 0 {
                    return Err(CliError::validation("set.m", "m must be positive".into()));
                }
                ShiftSet::Multiples(*m)
            }
            SetSpec::Polynomial { coefficients } => ShiftSet::Polynomial(Polynomial(coefficients.clone())),
            SetSpec::Explicit { values } => ShiftSet::Explicit(values.clone()),
        })
    }

    pub fn folner(&self) -> Result<FolnerSequence, CliError> {
        Ok(match self.raw.folner.as_ref().unwrap_or(&FolnerSpec::InitialIntervals) {
            FolnerSpec::InitialIntervals => FolnerSequence::InitialIntervals,
            FolnerSpec::ShiftedIntervals { offset, length } => FolnerSequence::ShiftedIntervals {
                offset: Polynomial(offset.clone()),
                length: Polynomial(length.clone()),
            },
            FolnerSpec::Progression { start, step, count } => {
                FolnerSequence::progression(*start, *step, Polynomial(count.clone()))
            }
        })
    }

    pub fn prefix_path(&self) -> Option<PathBuf> {
        self.raw.prefix_path.as_ref().map(|p| if p.is_absolute() { p.clone() } else { self.base.join(p) })
    }
}
