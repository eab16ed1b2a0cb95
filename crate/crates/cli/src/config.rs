//! `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment. Recognised keys:
//! `gamma`, `beta`, `n_bar`, `m_re`, `m_im`, `t` (comma list), `dim`,
//! `eta` (`;`-separated list of `re[,im]`), `preset`, `swept`, `lo`, `hi`,
//! `steps`, `search_max`. Unknown keys are errors.

use std::path::Path;

use bmc_core::{Complex64, Preset, SweptParam};

use crate::CliError;

/// Values read from a config file or the command line. Unset fields fall
/// through to the next layer.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub n_bar: Option<f64>,
    pub m_re: Option<f64>,
    pub m_im: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub dim: Option<usize>,
    pub eta: Option<Vec<Complex64>>,
    pub preset: Option<Preset>,
    pub swept: Option<SweptParam>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub steps: Option<usize>,
    pub search_max: Option<f64>,
}

impl Settings {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            gamma: over.gamma.or(self.gamma),
            beta: over.beta.or(self.beta),
            n_bar: over.n_bar.or(self.n_bar),
            m_re: over.m_re.or(self.m_re),
            m_im: over.m_im.or(self.m_im),
            t: over.t.or(self.t),
            dim: over.dim.or(self.dim),
            eta: over.eta.or(self.eta),
            preset: over.preset.or(self.preset),
            swept: over.swept.or(self.swept),
            lo: over.lo.or(self.lo),
            hi: over.hi.or(self.hi),
            steps: over.steps.or(self.steps),
            search_max: over.search_max.or(self.search_max),
        }
    }
}

pub fn parse_config(path: &Path) -> Result<Settings, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Parse {
                line: line_no,
                msg: format!("expected `key = value`, found `{line}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let err = |msg: String| CliError::Parse { line: line_no, msg };
        match key {
            "gamma" => {
                s.gamma = Some(checked(
                    key,
                    parse_f64(value).map_err(err)?,
                    Bound::Positive,
                )?)
            }
            "beta" => {
                s.beta = Some(checked(
                    key,
                    parse_f64(value).map_err(err)?,
                    Bound::NonNegative,
                )?)
            }
            "n_bar" => {
                s.n_bar = Some(checked(
                    key,
                    parse_f64(value).map_err(err)?,
                    Bound::NonNegative,
                )?)
            }
            "m_re" => s.m_re = Some(checked(key, parse_f64(value).map_err(err)?, Bound::Finite)?),
            "m_im" => s.m_im = Some(checked(key, parse_f64(value).map_err(err)?, Bound::Finite)?),
            "t" => {
                let ts = parse_f64_list(value).map_err(err)?;
                for &t in &ts {
                    checked(key, t, Bound::NonNegative)?;
                }
                s.t = Some(ts);
            }
            "dim" => s.dim = Some(checked_count(key, parse_usize(value).map_err(err)?, 2)?),
            "eta" => s.eta = Some(parse_eta_list(value).map_err(err)?),
            "preset" => s.preset = Some(value.parse().map_err(err)?),
            "swept" => s.swept = Some(value.parse().map_err(err)?),
            "lo" => s.lo = Some(checked(key, parse_f64(value).map_err(err)?, Bound::Finite)?),
            "hi" => s.hi = Some(checked(key, parse_f64(value).map_err(err)?, Bound::Finite)?),
            "steps" => s.steps = Some(checked_count(key, parse_usize(value).map_err(err)?, 2)?),
            "search_max" => {
                s.search_max = Some(checked(
                    key,
                    parse_f64(value).map_err(err)?,
                    Bound::Positive,
                )?)
            }
            other => {
                return Err(CliError::Parse {
                    line: line_no,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Copy)]
enum Bound {
    Finite,
    NonNegative,
    Positive,
}

fn checked(key: &str, v: f64, bound: Bound) -> Result<f64, CliError> {
    let ok = v.is_finite()
        && match bound {
            Bound::Finite => true,
            Bound::NonNegative => v >= 0.0,
            Bound::Positive => v > 0.0,
        };
    if ok {
        Ok(v)
    } else {
        let what = match bound {
            Bound::Finite => "finite",
            Bound::NonNegative => "nonnegative",
            Bound::Positive => "positive",
        };
        Err(CliError::Invalid {
            key: key.to_string(),
            msg: format!("{v} is not {what}"),
        })
    }
}

fn checked_count(key: &str, v: usize, min: usize) -> Result<usize, CliError> {
    if v >= min {
        Ok(v)
    } else {
        Err(CliError::Invalid {
            key: key.to_string(),
            msg: format!("{v} is below the minimum {min}"),
        })
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.parse::<usize>().map_err(|e| format!("`{s}`: {e}"))
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(parse_f64)
        .collect::<Result<_, _>>()?;
    if v.is_empty() {
        Err("empty list".into())
    } else {
        Ok(v)
    }
}

/// `re` or `re,im`.
pub fn parse_eta(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_f64(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        _ => Err(format!("`{s}`: expected `re` or `re,im`")),
    }
}

fn parse_eta_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(parse_eta)
        .collect()
}
