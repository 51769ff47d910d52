//! The five subcommands. Each returns a [`Report`]: a CSV table plus a short
//! human summary, and the outcome of `--check` when one was requested.

use std::io::Write;

use crate::analytic::{
    beta_b_star, beta_e_star, connection_outage, random_baseline_throughput, secrecy_outage,
    selected_intensity, selection_probability, throughput,
};
use crate::montecarlo::estimate_outages;
use crate::optimize::{optimize_delta, DEFAULT_SEARCH};
use crate::{DesignPoint, Error, Result, SystemParams};

use super::config::{RunConfig, SweepVar};

/// Largest |p − budget| tolerated when re-checking an emitted row.
pub const FIXED_POINT_TOL: f64 = 1e-9;

/// Differences below this are treated as zero by the trend checks.
pub const TREND_TOL: f64 = 1e-12;

/// Options that are not configuration-file keys.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extras {
    pub beta_b: Option<f64>,
    pub beta_e: Option<f64>,
    pub retention: Option<f64>,
    pub search: (f64, f64),
    pub check: bool,
}

impl Default for Extras {
    fn default() -> Self {
        Self {
            beta_b: None,
            beta_e: None,
            retention: None,
            search: DEFAULT_SEARCH,
            check: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(buf)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: Table,
    pub summary: String,
    /// `Some(Err(reason))` when a requested check failed.
    pub check: Option<std::result::Result<(), String>>,
}

/// Twelve significant digits in scientific notation. Non-finite values are
/// refused.
pub fn num(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::Consistency(format!(
            "refusing to emit non-finite value {x}"
        )));
    }
    // Avoid "-0" in the output.
    let x = if x == 0.0 { 0.0 } else { x };
    Ok(format!("{x:.11e}"))
}

/// Like [`num`] but with explicit `inf` / `-inf` tokens; simulation
/// diagnostics only.
fn z_num(z: f64) -> Result<String> {
    if z == f64::INFINITY {
        Ok("inf".into())
    } else if z == f64::NEG_INFINITY {
        Ok("-inf".into())
    } else {
        num(z)
    }
}

pub const ANALYZE_COLUMNS: [&str; 8] = [
    "delta",
    "prob_j",
    "lambda_j_selected",
    "beta_b",
    "beta_e",
    "r_t",
    "r_e",
    "mu",
];

fn check_fixed_points(params: &SystemParams, point: &DesignPoint) -> Result<()> {
    let p_co = connection_outage(params, point.delta, point.beta_b)?;
    let p_so = secrecy_outage(params, point.delta, point.beta_e)?;
    if (p_co - params.sigma()).abs() > FIXED_POINT_TOL {
        return Err(Error::Consistency(format!(
            "connection outage {p_co} at beta_b = {} misses sigma = {}",
            point.beta_b,
            params.sigma()
        )));
    }
    if (p_so - params.epsilon()).abs() > FIXED_POINT_TOL {
        return Err(Error::Consistency(format!(
            "secrecy outage {p_so} at beta_e = {} misses epsilon = {}",
            point.beta_e,
            params.epsilon()
        )));
    }
    Ok(())
}

fn analyze_row(params: &SystemParams, delta: f64) -> Result<(Vec<String>, DesignPoint)> {
    let point = throughput(params, delta)?;
    check_fixed_points(params, &point)?;
    let row = [
        delta,
        selection_probability(delta)?,
        selected_intensity(delta, params.lambda_j())?,
        point.beta_b,
        point.beta_e,
        point.r_t,
        point.r_e,
        point.mu,
    ]
    .into_iter()
    .map(num)
    .collect::<Result<_>>()?;
    Ok((row, point))
}

pub fn analyze(cfg: &RunConfig) -> Result<Report> {
    let params = cfg.params()?;
    let delta = cfg.delta()?;
    let (row, point) = analyze_row(&params, delta)?;
    let mut table = Table::new(&ANALYZE_COLUMNS);
    table.rows.push(row);
    Ok(Report {
        table,
        summary: format!(
            "analyze: delta = {delta}, beta_b = {:.6e}, beta_e = {:.6e}, mu = {:.6} bit/s/Hz",
            point.beta_b, point.beta_e, point.mu
        ),
        check: None,
    })
}

pub fn optimize(cfg: &RunConfig, extras: &Extras) -> Result<Report> {
    let params = cfg.params()?;
    let (lo, hi) = extras.search;
    let r = optimize_delta(&params, lo, hi)?;
    check_fixed_points(&params, &r.design)?;
    let mut table = Table::new(&["delta_star", "mu", "method", "iterations"]);
    table.rows.push(vec![
        num(r.delta_star)?,
        num(r.design.mu)?,
        r.method.to_string(),
        r.iterations.to_string(),
    ]);
    Ok(Report {
        table,
        summary: format!(
            "optimize: delta* = {:.6e}, mu = {:.6} bit/s/Hz ({}, {} iterations)",
            r.delta_star, r.design.mu, r.method, r.iterations
        ),
        check: None,
    })
}

pub fn simulate(cfg: &RunConfig, extras: &Extras) -> Result<Report> {
    let params = cfg.params()?;
    let delta = cfg.delta()?;
    let sim = cfg.sim();
    let beta_b = match extras.beta_b {
        Some(b) => b,
        None => beta_b_star(&params, delta)?,
    };
    let beta_e = match extras.beta_e {
        Some(b) => b,
        None => beta_e_star(&params, delta)?,
    };
    let p_co = connection_outage(&params, delta, beta_b)?;
    let p_so = secrecy_outage(&params, delta, beta_e)?;
    let (co, so) = estimate_outages(&params, delta, beta_b, beta_e, &sim)?;
    let mut table = Table::new(&[
        "delta",
        "beta_b",
        "beta_e",
        "trials",
        "p_co_hat",
        "p_co_se",
        "p_co_analytic",
        "p_co_z",
        "p_so_hat",
        "p_so_se",
        "p_so_analytic",
        "p_so_z",
    ]);
    table.rows.push(vec![
        num(delta)?,
        num(beta_b)?,
        num(beta_e)?,
        sim.trials.to_string(),
        num(co.p_hat)?,
        num(co.std_err)?,
        num(p_co)?,
        z_num(co.z_score(p_co))?,
        num(so.p_hat)?,
        num(so.std_err)?,
        num(p_so)?,
        z_num(so.z_score(p_so))?,
    ]);
    Ok(Report {
        table,
        summary: format!(
            "simulate: {} trials, p_co = {:.5} ± {:.5} (analytic {:.5}), p_so = {:.5} ± {:.5} (analytic {:.5})",
            sim.trials, co.p_hat, co.std_err, p_co, so.p_hat, so.std_err, p_so
        ),
        check: None,
    })
}

fn point_delta(cfg: &RunConfig, params: &SystemParams, extras: &Extras) -> Result<f64> {
    match cfg.delta {
        Some(_) => cfg.delta(),
        None => Ok(optimize_delta(params, extras.search.0, extras.search.1)?.delta_star),
    }
}

pub fn sweep(cfg: &RunConfig, extras: &Extras) -> Result<Report> {
    let spec = cfg.sweep()?;
    let mut header = vec![spec.var.name()];
    header.extend(ANALYZE_COLUMNS);
    let mut table = Table::new(&header);
    let mut mus = Vec::new();
    for x in spec.points()? {
        let point_cfg = cfg.with_sweep_value(spec.var, x);
        let params = point_cfg.params()?;
        let delta = point_delta(&point_cfg, &params, extras)?;
        let (row, point) = analyze_row(&params, delta)?;
        table
            .rows
            .push(std::iter::once(num(x)?).chain(row).collect());
        mus.push(point.mu);
    }
    let check = if extras.check {
        Some(match spec.var {
            SweepVar::LambdaJ => diminishing_returns(&mus),
            SweepVar::Delta => unimodal(&mus),
            other => {
                return Err(Error::Config(format!(
                    "no trend check is defined for a {other} sweep"
                )));
            }
        })
    } else {
        None
    };
    Ok(Report {
        summary: format!(
            "sweep: {} points over {}, mu from {:.6} to {:.6}",
            mus.len(),
            spec.var,
            mus.first().copied().unwrap_or(0.0),
            mus.last().copied().unwrap_or(0.0)
        ),
        table,
        check,
    })
}

pub fn compare(cfg: &RunConfig, extras: &Extras) -> Result<Report> {
    let spec = cfg.sweep()?;
    let mut table = Table::new(&[
        spec.var.name(),
        "delta",
        "mu_proposed",
        "retention",
        "mu_baseline",
    ]);
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for x in spec.points()? {
        let point_cfg = cfg.with_sweep_value(spec.var, x);
        let params = point_cfg.params()?;
        let delta = point_delta(&point_cfg, &params, extras)?;
        let proposed = throughput(&params, delta)?;
        check_fixed_points(&params, &proposed)?;
        let retention = match extras.retention {
            Some(r) => r,
            None => selection_probability(delta)?,
        };
        let baseline = random_baseline_throughput(&params, retention)?;
        let margin = proposed.mu - baseline.mu;
        worst = worst.min(margin);
        if margin < -TREND_TOL {
            failures.push(format!(
                "{}={x}: {} < {}",
                spec.var, proposed.mu, baseline.mu
            ));
        }
        table.rows.push(vec![
            num(x)?,
            num(delta)?,
            num(proposed.mu)?,
            num(retention)?,
            num(baseline.mu)?,
        ]);
    }
    let check = extras.check.then(|| {
        if failures.is_empty() {
            Ok(())
        } else {
            Err(format!(
                "baseline beats proposed scheme at {}",
                failures.join(", ")
            ))
        }
    });
    Ok(Report {
        summary: format!(
            "compare: {} points over {}, smallest mu_proposed - mu_baseline = {:.6}",
            table.rows.len(),
            spec.var,
            worst
        ),
        table,
        check,
    })
}

/// Nondecreasing with increments that stop growing once they have peaked,
/// the peak falling in the first half of the sweep.
pub fn diminishing_returns(values: &[f64]) -> std::result::Result<(), String> {
    let inc: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if let Some(i) = inc.iter().position(|&d| d < -TREND_TOL) {
        return Err(format!("mu decreases between points {i} and {}", i + 1));
    }
    if inc.len() < 2 {
        return Ok(());
    }
    let peak = inc.iter().enumerate().fold(
        0,
        |best, (i, &d)| if d > inc[best] + TREND_TOL { i } else { best },
    );
    if peak > (inc.len() - 1) / 2 {
        return Err(format!(
            "largest increment at step {peak} of {}; no diminishing returns",
            inc.len()
        ));
    }
    for i in peak + 1..inc.len() {
        if inc[i] > inc[i - 1] + TREND_TOL {
            return Err(format!("increment grows again at step {i}"));
        }
    }
    Ok(())
}

/// At most one change from rising to falling in successive differences.
pub fn unimodal(values: &[f64]) -> std::result::Result<(), String> {
    let mut falling = false;
    for (i, w) in values.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d < -TREND_TOL {
            falling = true;
        } else if d > TREND_TOL && falling {
            return Err(format!("mu rises again at point {}", i + 1));
        }
    }
    Ok(())
}
