//! Flat `key = value` run configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::model::{dbm_to_linear, SystemParamsBuilder};
use crate::montecarlo::SimConfig;
use crate::{Error, Result, SystemParams};

pub const KEYS: [&str; 19] = [
    "p_s_dbm",
    "p_j_dbm",
    "n0_dbm",
    "d_m",
    "alpha",
    "lambda_j",
    "lambda_e",
    "sigma",
    "epsilon",
    "delta",
    "sim_radius_m",
    "sim_trials",
    "sim_seed",
    "sweep_var",
    "sweep_start",
    "sweep_stop",
    "sweep_count",
    "sweep_scale",
    "out_path",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    Delta,
    LambdaJ,
    LambdaE,
    PJDbm,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::Delta => "delta",
            SweepVar::LambdaJ => "lambda_j",
            SweepVar::LambdaE => "lambda_e",
            SweepVar::PJDbm => "p_j_dbm",
        }
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(SweepVar::Delta),
            "lambda_j" => Ok(SweepVar::LambdaJ),
            "lambda_e" => Ok(SweepVar::LambdaE),
            "p_j_dbm" => Ok(SweepVar::PJDbm),
            _ => Err(Error::Config(format!(
                "unknown sweep variable {s:?} (expected delta, lambda_j, lambda_e or p_j_dbm)"
            ))),
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

impl FromStr for SweepScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(SweepScale::Linear),
            "log" => Ok(SweepScale::Log),
            _ => Err(Error::Config(format!(
                "unknown sweep scale {s:?} (expected linear or log)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Err(Error::Config("sweep_count must be at least 1".into()));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::Config("sweep bounds must be finite".into()));
        }
        if self.scale == SweepScale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::Config("log sweep bounds must be positive".into()));
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        let last = (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    SweepScale::Linear => self.start + t * (self.stop - self.start),
                    SweepScale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect())
    }
}

/// Everything a subcommand needs. Powers are kept in dBm until
/// [`RunConfig::params`] converts them.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p_s_dbm: f64,
    pub p_j_dbm: f64,
    pub n0_dbm: f64,
    pub d_m: f64,
    pub alpha: f64,
    pub lambda_j: f64,
    pub lambda_e: f64,
    pub sigma: f64,
    pub epsilon: f64,
    pub delta: Option<f64>,
    pub sim_radius_m: f64,
    pub sim_trials: u64,
    pub sim_seed: u64,
    pub sweep_var: Option<SweepVar>,
    pub sweep_start: Option<f64>,
    pub sweep_stop: Option<f64>,
    pub sweep_count: Option<usize>,
    pub sweep_scale: SweepScale,
    pub out_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let sim = SimConfig::<f64>::default();
        Self {
            p_s_dbm: 20.0,
            p_j_dbm: 30.0,
            n0_dbm: -90.0,
            d_m: 1.0,
            alpha: 3.0,
            lambda_j: 0.1,
            lambda_e: 0.01,
            sigma: 0.1,
            epsilon: 0.01,
            delta: None,
            sim_radius_m: sim.radius,
            sim_trials: sim.trials,
            sim_seed: sim.seed,
            sweep_var: None,
            sweep_start: None,
            sweep_stop: None,
            sweep_count: None,
            sweep_scale: SweepScale::Linear,
            out_path: None,
        }
    }
}

fn parse_value<V: FromStr>(key: &str, raw: &str) -> Result<V> {
    raw.parse()
        .map_err(|_| Error::Config(format!("bad value for {key}: {raw:?}")))
}

impl RunConfig {
    /// Parses the text of a configuration file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = BTreeSet::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!(
                    "line {}: duplicate key {key}",
                    n + 1
                )));
            }
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "p_s_dbm" => self.p_s_dbm = parse_value(key, value)?,
            "p_j_dbm" => self.p_j_dbm = parse_value(key, value)?,
            "n0_dbm" => self.n0_dbm = parse_value(key, value)?,
            "d_m" => self.d_m = parse_value(key, value)?,
            "alpha" => self.alpha = parse_value(key, value)?,
            "lambda_j" => self.lambda_j = parse_value(key, value)?,
            "lambda_e" => self.lambda_e = parse_value(key, value)?,
            "sigma" => self.sigma = parse_value(key, value)?,
            "epsilon" => self.epsilon = parse_value(key, value)?,
            "delta" => self.delta = Some(parse_value(key, value)?),
            "sim_radius_m" => self.sim_radius_m = parse_value(key, value)?,
            "sim_trials" => self.sim_trials = parse_value(key, value)?,
            "sim_seed" => self.sim_seed = parse_value(key, value)?,
            "sweep_var" => self.sweep_var = Some(value.parse()?),
            "sweep_start" => self.sweep_start = Some(parse_value(key, value)?),
            "sweep_stop" => self.sweep_stop = Some(parse_value(key, value)?),
            "sweep_count" => self.sweep_count = Some(parse_value(key, value)?),
            "sweep_scale" => self.sweep_scale = value.parse()?,
            "out_path" => self.out_path = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Validated physical parameters. `n0_dbm = -inf` gives a noiseless
    /// receiver.
    pub fn params(&self) -> Result<SystemParams> {
        SystemParamsBuilder {
            p_s: dbm_to_linear(self.p_s_dbm),
            p_j: dbm_to_linear(self.p_j_dbm),
            n0: dbm_to_linear(self.n0_dbm),
            d: self.d_m,
            alpha: self.alpha,
            lambda_j: self.lambda_j,
            lambda_e: self.lambda_e,
            sigma: self.sigma,
            epsilon: self.epsilon,
        }
        .build()
    }

    pub fn sim(&self) -> SimConfig<f64> {
        SimConfig {
            radius: self.sim_radius_m,
            trials: self.sim_trials,
            seed: self.sim_seed,
        }
    }

    pub fn delta(&self) -> Result<f64> {
        let delta = self
            .delta
            .ok_or_else(|| Error::Config("this command needs delta".into()))?;
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Config(format!(
                "delta must be positive and finite, got {delta}"
            )));
        }
        Ok(delta)
    }

    pub fn sweep(&self) -> Result<SweepSpec> {
        let missing = |k: &str| Error::Config(format!("sweep needs {k}"));
        let spec = SweepSpec {
            var: self.sweep_var.ok_or_else(|| missing("sweep_var"))?,
            start: self.sweep_start.ok_or_else(|| missing("sweep_start"))?,
            stop: self
                .sweep_stop
                .or(self.sweep_start)
                .ok_or_else(|| missing("sweep_stop"))?,
            count: self.sweep_count.ok_or_else(|| missing("sweep_count"))?,
            scale: self.sweep_scale,
        };
        if spec.count > 1 && self.sweep_stop.is_none() {
            return Err(missing("sweep_stop"));
        }
        Ok(spec)
    }

    /// Copy with the sweep variable set to `value`.
    pub fn with_sweep_value(&self, var: SweepVar, value: f64) -> Self {
        let mut cfg = self.clone();
        match var {
            SweepVar::Delta => cfg.delta = Some(value),
            SweepVar::LambdaJ => cfg.lambda_j = value,
            SweepVar::LambdaE => cfg.lambda_e = value,
            SweepVar::PJDbm => cfg.p_j_dbm = value,
        }
        cfg
    }
}
