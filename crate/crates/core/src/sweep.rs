//! Parameter sweeps over the closed-form capacity and fidelity.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::capacity::CapacityPoint;
use crate::error::{Error, Result};
use crate::lindblad::ChannelParams;

/// Evaluation times used by the figure presets (s).
pub const DEFAULT_T_GRID: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParam {
    NBar,
    BetaRate,
    Gamma,
    Time,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::NBar => "n_bar",
            SweptParam::BetaRate => "beta",
            SweptParam::Gamma => "gamma",
            SweptParam::Time => "t",
        }
    }
}

impl fmt::Display for SweptParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweptParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "n_bar" | "nbar" => Ok(SweptParam::NBar),
            "beta" | "beta_rate" => Ok(SweptParam::BetaRate),
            "gamma" => Ok(SweptParam::Gamma),
            "t" | "time" => Ok(SweptParam::Time),
            other => Err(format!(
                "unknown sweep parameter `{other}` (expected n_bar, beta, gamma or t)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(format!(
                "unknown preset `{other}` (expected fig1, fig2 or fig3)"
            )),
        }
    }
}

/// One swept parameter over `[lo, hi]` in `steps` evenly spaced values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub swept: SweptParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub fixed: ChannelParams,
    /// Ignored when the swept parameter is time itself.
    pub t_grid: Vec<f64>,
}

impl SweepSpec {
    pub fn preset(preset: Preset) -> Self {
        let p = |gamma, beta, n_bar| {
            ChannelParams::new(gamma, beta, n_bar).expect("preset parameters are valid")
        };
        let (swept, lo, hi, steps, fixed) = match preset {
            Preset::Fig1 => (SweptParam::NBar, 1.0, 10.0, 10, p(0.1, 0.01, 1.0)),
            Preset::Fig2 => (SweptParam::BetaRate, 0.01, 0.1, 10, p(0.1, 0.01, 5.0)),
            Preset::Fig3 => (SweptParam::Gamma, 0.1, 0.5, 9, p(0.1, 0.01, 5.0)),
        };
        Self {
            swept,
            lo,
            hi,
            steps,
            fixed,
            t_grid: DEFAULT_T_GRID.to_vec(),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.hi - self.lo;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + span * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    /// Channel parameters with the swept field set to `value`.
    pub fn params_at(&self, value: f64) -> ChannelParams {
        let mut p = self.fixed;
        match self.swept {
            SweptParam::NBar => p.n_bar = value,
            SweptParam::BetaRate => p.beta_rate = value,
            SweptParam::Gamma => p.gamma = value,
            SweptParam::Time => {}
        }
        p
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| {
            Err(Error::InvalidParameter {
                name,
                value,
                reason,
            })
        };
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return bad("lo", self.lo, "sweep range needs lo < hi");
        }
        if self.steps < 2 {
            return bad(
                "steps",
                self.steps as f64,
                "a sweep needs at least two steps",
            );
        }
        if self.swept != SweptParam::Time {
            if self.t_grid.is_empty() {
                return bad("t_grid", 0.0, "time grid is empty");
            }
            if let Some(&t) = self.t_grid.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
                return bad("t_grid", t, "times must be finite and nonnegative");
            }
        } else if self.lo < 0.0 {
            return bad("lo", self.lo, "times must be nonnegative");
        }
        for v in [self.lo, self.hi] {
            self.params_at(v).validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub swept_value: f64,
    pub point: CapacityPoint,
}

/// Evaluates every `(swept value, t)` pair, ordered by swept value then t.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let pairs: Vec<(f64, f64)> = spec
        .values()
        .into_iter()
        .flat_map(|v| match spec.swept {
            SweptParam::Time => vec![(v, v)],
            _ => spec.t_grid.iter().map(|&t| (v, t)).collect(),
        })
        .collect();
    pairs
        .par_iter()
        .map(|&(v, t)| {
            Ok(SweepRow {
                swept_value: v,
                point: CapacityPoint::evaluate(&spec.params_at(v), t)?,
            })
        })
        .collect()
}
