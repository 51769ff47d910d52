//! Monte Carlo simulation of the network: Poisson jammer and eavesdropper
//! fields, Rayleigh fading, threshold selection, and empirical outage
//! frequencies. Nothing here uses the closed forms of [`crate::analytic`].
//!
//! Geometry: Alice at the origin, Bob at `(d, 0)`. Jammers live on a disk of
//! radius `SimConfig::radius` around Bob and are generated in order of
//! increasing distance to Bob; eavesdroppers live on a disk of the same
//! radius around Alice.
//!
//! Every random quantity of trial `t` is drawn from its own ChaCha8 stream
//! keyed by `(seed, t, stream kind, index)`, so trials can run in any order
//! or on any number of threads and still produce identical results. Cross
//! gains toward eavesdropper `j` come from the stream `(seed, t, cross, j)`,
//! one draw per transmitting jammer in Bob-distance order, which lets the
//! estimators stop early without changing any other draw.

use std::cmp::Ordering;

use rand::distr::StandardUniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rayon::prelude::*;

use crate::error::domain;
use crate::model::SystemParams;
use crate::{Error, Result, Scalar};

/// Fewest trials accepted by the estimators.
pub const MIN_TRIALS: u64 = 100;

/// Scalars the simulator can sample.
pub trait SimScalar: Scalar {
    fn exp1<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl SimScalar for f64 {
    fn exp1<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Exp1.sample(rng)
    }
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardUniform.sample(rng)
    }
}

impl SimScalar for f32 {
    fn exp1<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Exp1.sample(rng)
    }
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardUniform.sample(rng)
    }
}

#[derive(Clone, Copy, Debug)]
#[repr(u64)]
enum StreamKind {
    JammerRadii = 1,
    JammerAngles = 2,
    DirectGain = 3,
    Eavesdroppers = 4,
    CrossGains = 5,
}

fn stream(seed: u64, trial: u64, kind: StreamKind, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (chunk, word) in key
        .chunks_exact_mut(8)
        .zip([seed, trial, kind as u64, index])
    {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance_sq(&self, other: &Self) -> T {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Self) -> T {
        self.distance_sq(other).sqrt()
    }
}

/// Simulation window and trial budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig<T> {
    /// Disk radius in meters; must exceed ten times the link distance.
    pub radius: T,
    pub trials: u64,
    pub seed: u64,
}

impl<T: Scalar> Default for SimConfig<T> {
    fn default() -> Self {
        Self {
            radius: T::lit(50.0),
            trials: 10_000,
            seed: 1,
        }
    }
}

impl<T: Scalar> SimConfig<T> {
    pub fn validate(&self, params: &SystemParams<T>) -> Result<()> {
        if !(self.radius > T::lit(10.0) * params.d()) || !self.radius.is_finite() {
            return Err(Error::InvalidParam {
                name: "sim_radius_m",
                value: self.radius.as_f64(),
                reason: "must exceed ten times the link distance",
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidParam {
                name: "sim_trials",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jammer<T> {
    pub position: Point<T>,
    pub distance_to_bob: T,
    /// Jammer-to-Bob channel gain, exp(1).
    pub g_to_bob: T,
    /// `g_to_bob <= delta`.
    pub selected: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eavesdropper<T> {
    pub position: Point<T>,
    /// Alice-to-eavesdropper channel gain, exp(1).
    pub g_from_alice: T,
}

/// One sampled world.
#[derive(Clone, Debug)]
pub struct NetworkRealization<T> {
    /// Alice-to-Bob channel gain, exp(1).
    pub h_b: T,
    /// Sorted by increasing distance to Bob.
    pub jammers: Vec<Jammer<T>>,
    pub eves: Vec<Eavesdropper<T>>,
    seed: u64,
    trial: u64,
}

impl<T: SimScalar> NetworkRealization<T> {
    pub fn selected(&self) -> impl Iterator<Item = &Jammer<T>> {
        self.jammers.iter().filter(|j| j.selected)
    }

    /// Gains from the transmitting jammers (in [`Self::selected`] order) to
    /// eavesdropper `eve`. Drawn on demand; the same sequence every call.
    pub fn cross_gains(&self, eve: usize) -> impl Iterator<Item = T> {
        let mut rng = stream(self.seed, self.trial, StreamKind::CrossGains, eve as u64);
        std::iter::repeat_with(move || T::exp1(&mut rng))
    }
}

/// Signal-to-(interference plus noise) ratio, possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ratio<T> {
    Finite(T),
    /// Nothing in the denominator; exceeds every finite threshold.
    Infinite,
}

impl<T: Scalar> Ratio<T> {
    fn from_parts(signal: T, denominator: T) -> Self {
        if denominator > T::zero() {
            Ratio::Finite(signal / denominator)
        } else {
            Ratio::Infinite
        }
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Ratio::Finite(v) => Some(v),
            Ratio::Infinite => None,
        }
    }

    pub fn at_most(self, threshold: T) -> bool {
        matches!(self, Ratio::Finite(v) if v <= threshold)
    }

    pub fn at_least(self, threshold: T) -> bool {
        match self {
            Ratio::Finite(v) => v >= threshold,
            Ratio::Infinite => true,
        }
    }
}

impl<T: Scalar> PartialOrd for Ratio<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Ratio::Finite(a), Ratio::Finite(b)) => a.partial_cmp(b),
            (Ratio::Finite(_), Ratio::Infinite) => Some(Ordering::Less),
            (Ratio::Infinite, Ratio::Finite(_)) => Some(Ordering::Greater),
            (Ratio::Infinite, Ratio::Infinite) => Some(Ordering::Equal),
        }
    }
}

/// `r^(−α)` from `r²`, with fast paths for the common integer exponents.
#[derive(Clone, Copy, Debug)]
struct PathLoss<T> {
    alpha: T,
}

impl<T: Scalar> PathLoss<T> {
    fn of_sq(&self, r2: T) -> T {
        let a = self.alpha;
        if a == T::lit(3.0) {
            (r2 * r2.sqrt()).recip()
        } else if a == T::lit(4.0) {
            (r2 * r2).recip()
        } else {
            r2.powf(-a / T::lit(2.0))
        }
    }
}

fn uniform_disk_point<T: SimScalar, R: Rng + ?Sized>(
    center: Point<T>,
    radius: T,
    rng: &mut R,
) -> Point<T> {
    let r = radius * T::unit(rng).sqrt();
    let (s, c) = (T::TAU() * T::unit(rng)).sin_cos();
    Point::new(center.x + r * c, center.y + r * s)
}

fn poisson_count<T: Scalar, R: Rng + ?Sized>(intensity: T, radius: T, rng: &mut R) -> usize {
    let mean = (intensity * T::PI() * radius * radius).as_f64();
    match Poisson::new(mean) {
        Ok(dist) if mean > 0.0 => {
            let n: f64 = dist.sample(rng);
            n as usize
        }
        _ => 0,
    }
}

/// Homogeneous PPP of `intensity` on the disk of `radius` centered at the origin.
pub fn sample_ppp<T: SimScalar, R: Rng + ?Sized>(
    intensity: T,
    radius: T,
    rng: &mut R,
) -> Vec<Point<T>> {
    let origin = Point::new(T::zero(), T::zero());
    let n = poisson_count(intensity, radius, rng);
    (0..n)
        .map(|_| uniform_disk_point(origin, radius, rng))
        .collect()
}

/// Jammer field around Bob in increasing distance: the squared radii are
/// the arrival times of a unit-rate Poisson process scaled by 1/(λπ).
/// Yields `(r², g_to_bob)`.
struct JammerRadii<T> {
    rng: ChaCha8Rng,
    area_per_point: T,
    radius_sq: T,
    arrival: T,
}

impl<T: SimScalar> JammerRadii<T> {
    fn new(params: &SystemParams<T>, config: &SimConfig<T>, trial: u64) -> Self {
        Self {
            rng: stream(config.seed, trial, StreamKind::JammerRadii, 0),
            area_per_point: (params.lambda_j() * T::PI()).recip(),
            radius_sq: config.radius * config.radius,
            arrival: T::zero(),
        }
    }
}

impl<T: SimScalar> Iterator for JammerRadii<T> {
    type Item = (T, T);

    fn next(&mut self) -> Option<(T, T)> {
        self.arrival += T::exp1(&mut self.rng);
        let r2 = self.arrival * self.area_per_point;
        if r2 > self.radius_sq {
            return None;
        }
        Some((r2, T::exp1(&mut self.rng)))
    }
}

fn direct_gain<T: SimScalar>(seed: u64, trial: u64) -> T {
    T::exp1(&mut stream(seed, trial, StreamKind::DirectGain, 0))
}

/// Eavesdroppers around Alice: count, then position and gain per node.
fn sample_eavesdroppers<T: SimScalar>(
    params: &SystemParams<T>,
    config: &SimConfig<T>,
    trial: u64,
    out: &mut Vec<Eavesdropper<T>>,
) {
    out.clear();
    let mut rng = stream(config.seed, trial, StreamKind::Eavesdroppers, 0);
    let n = poisson_count(params.lambda_e(), config.radius, &mut rng);
    let alice = Point::new(T::zero(), T::zero());
    out.extend((0..n).map(|_| {
        let position = uniform_disk_point(alice, config.radius, &mut rng);
        Eavesdropper {
            position,
            g_from_alice: T::exp1(&mut rng),
        }
    }));
}

/// Sample the world of trial `trial_index`.
pub fn realize<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    config: &SimConfig<T>,
    trial_index: u64,
) -> Result<NetworkRealization<T>> {
    check_inputs(params, delta, config)?;
    let mut angles = stream(config.seed, trial_index, StreamKind::JammerAngles, 0);
    let jammers = JammerRadii::new(params, config, trial_index)
        .map(|(r2, g)| {
            let r = r2.sqrt();
            let (s, c) = (T::TAU() * T::unit(&mut angles)).sin_cos();
            Jammer {
                position: Point::new(params.d() + r * c, r * s),
                distance_to_bob: r,
                g_to_bob: g,
                selected: g <= delta,
            }
        })
        .collect();
    let mut eves = Vec::new();
    sample_eavesdroppers(params, config, trial_index, &mut eves);
    Ok(NetworkRealization {
        h_b: direct_gain(config.seed, trial_index),
        jammers,
        eves,
        seed: config.seed,
        trial: trial_index,
    })
}

/// SINR at Bob; interference from transmitting jammers only.
pub fn sinr_bob<T: SimScalar>(
    realization: &NetworkRealization<T>,
    params: &SystemParams<T>,
) -> Ratio<T> {
    let loss = PathLoss {
        alpha: params.alpha(),
    };
    let interference = realization.selected().fold(T::zero(), |acc, j| {
        acc + j.g_to_bob * loss.of_sq(j.distance_to_bob * j.distance_to_bob)
    });
    let signal = params.p_s() * realization.h_b * params.path_loss(params.d());
    Ratio::from_parts(signal, params.p_j() * interference + params.n0())
}

/// Largest SIR over the eavesdroppers (noise-free). `Finite(0)` when there are none.
pub fn max_sir_eves<T: SimScalar>(
    realization: &NetworkRealization<T>,
    params: &SystemParams<T>,
) -> Ratio<T> {
    let loss = PathLoss {
        alpha: params.alpha(),
    };
    let alice = Point::new(T::zero(), T::zero());
    let mut best = Ratio::Finite(T::zero());
    for (j, eve) in realization.eves.iter().enumerate() {
        let interference = realization
            .selected()
            .zip(realization.cross_gains(j))
            .fold(T::zero(), |acc, (jam, g)| {
                acc + g * loss.of_sq(jam.position.distance_sq(&eve.position))
            });
        let signal = params.p_s() * eve.g_from_alice * loss.of_sq(eve.position.distance_sq(&alice));
        let sir = Ratio::from_parts(signal, params.p_j() * interference);
        if sir > best {
            best = sir;
        }
    }
    best
}

/// Empirical probability with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutageEstimate<T> {
    pub p_hat: T,
    pub trials: u64,
    pub std_err: T,
    pub hits: u64,
}

impl<T: Scalar> OutageEstimate<T> {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        let n = T::lit(trials as f64);
        let p_hat = T::lit(hits as f64) / n;
        Self {
            p_hat,
            trials,
            std_err: (p_hat * (T::one() - p_hat) / n).sqrt(),
            hits,
        }
    }

    /// (p̂ − reference) / std_err; ±∞ when the estimate is degenerate but off.
    pub fn z_score(&self, reference: T) -> T {
        let diff = self.p_hat - reference;
        if diff == T::zero() {
            T::zero()
        } else if self.std_err > T::zero() {
            diff / self.std_err
        } else {
            diff.signum() * T::infinity()
        }
    }

    /// `|p̂ − reference| <= k · std_err`.
    pub fn agrees_with(&self, reference: T, k: T) -> bool {
        (self.p_hat - reference).abs() <= k * self.std_err
    }
}

fn check_inputs<T: Scalar>(
    params: &SystemParams<T>,
    delta: T,
    config: &SimConfig<T>,
) -> Result<()> {
    config.validate(params)?;
    if !(delta > T::zero()) {
        return Err(domain("selection threshold", delta));
    }
    Ok(())
}

fn check_estimate<T: Scalar>(
    params: &SystemParams<T>,
    delta: T,
    config: &SimConfig<T>,
) -> Result<()> {
    check_inputs(params, delta, config)?;
    if config.trials < MIN_TRIALS {
        return Err(Error::InvalidParam {
            name: "sim_trials",
            value: config.trials as f64,
            reason: "estimators need at least 100 trials",
        });
    }
    Ok(())
}

/// Whether trial `trial` ends in connection outage (`SINR_B <= beta_b`).
/// Stops walking outward from Bob once outage is certain.
fn connection_outage_event<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    beta_b: T,
    config: &SimConfig<T>,
    trial: u64,
) -> bool {
    if beta_b <= T::zero() {
        return false;
    }
    let loss = PathLoss {
        alpha: params.alpha(),
    };
    let signal = params.p_s() * direct_gain::<T>(config.seed, trial) * params.path_loss(params.d());
    let in_outage =
        |interference: T| signal <= beta_b * (params.p_j() * interference + params.n0());
    let mut interference = T::zero();
    if in_outage(interference) {
        return true;
    }
    for (r2, g) in JammerRadii::new(params, config, trial) {
        if g <= delta {
            interference += g * loss.of_sq(r2);
            if in_outage(interference) {
                return true;
            }
        }
    }
    false
}

struct Scratch<T> {
    transmitting: Vec<Point<T>>,
    eves: Vec<Eavesdropper<T>>,
}

impl<T> Default for Scratch<T> {
    fn default() -> Self {
        Self {
            transmitting: Vec::new(),
            eves: Vec::new(),
        }
    }
}

/// Whether some eavesdropper reaches `SIR >= beta_e` in trial `trial`.
fn secrecy_outage_event<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    beta_e: T,
    config: &SimConfig<T>,
    trial: u64,
    scratch: &mut Scratch<T>,
) -> bool {
    sample_eavesdroppers(params, config, trial, &mut scratch.eves);
    if scratch.eves.is_empty() {
        return false;
    }
    let mut angles = stream(config.seed, trial, StreamKind::JammerAngles, 0);
    let d = params.d();
    scratch.transmitting.clear();
    for (r2, g) in JammerRadii::new(params, config, trial) {
        let u = T::unit(&mut angles);
        if g <= delta {
            let r = r2.sqrt();
            let (s, c) = (T::TAU() * u).sin_cos();
            scratch.transmitting.push(Point::new(d + r * c, r * s));
        }
    }
    if scratch.transmitting.is_empty() {
        return true;
    }
    let loss = PathLoss {
        alpha: params.alpha(),
    };
    let alice = Point::new(T::zero(), T::zero());
    scratch.eves.iter().enumerate().any(|(j, eve)| {
        let signal = params.p_s() * eve.g_from_alice * loss.of_sq(eve.position.distance_sq(&alice));
        // SIR >= β  ⇔  P_J · I <= signal / β; give up as soon as I passes it.
        let limit = signal / (beta_e * params.p_j());
        let mut gains = stream(config.seed, trial, StreamKind::CrossGains, j as u64);
        let mut interference = T::zero();
        for jam in &scratch.transmitting {
            interference += T::exp1(&mut gains) * loss.of_sq(jam.distance_sq(&eve.position));
            if interference > limit {
                return false;
            }
        }
        true
    })
}

/// Empirical connection outage probability.
pub fn estimate_connection_outage<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    beta_b: T,
    config: &SimConfig<T>,
) -> Result<OutageEstimate<T>> {
    check_estimate(params, delta, config)?;
    if !(beta_b >= T::zero()) {
        return Err(domain("SINR threshold", beta_b));
    }
    let hits: u64 = (0..config.trials)
        .into_par_iter()
        .map(|t| connection_outage_event(params, delta, beta_b, config, t) as u64)
        .sum();
    Ok(OutageEstimate::from_counts(hits, config.trials))
}

/// Empirical secrecy outage probability.
pub fn estimate_secrecy_outage<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    beta_e: T,
    config: &SimConfig<T>,
) -> Result<OutageEstimate<T>> {
    check_estimate(params, delta, config)?;
    if !(beta_e > T::zero()) {
        return Err(domain("SIR threshold", beta_e));
    }
    let hits: u64 = (0..config.trials)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, t| {
            secrecy_outage_event(params, delta, beta_e, config, t, scratch) as u64
        })
        .sum();
    Ok(OutageEstimate::from_counts(hits, config.trials))
}

/// Both outage estimates over the same trial indices.
pub fn estimate_outages<T: SimScalar>(
    params: &SystemParams<T>,
    delta: T,
    beta_b: T,
    beta_e: T,
    config: &SimConfig<T>,
) -> Result<(OutageEstimate<T>, OutageEstimate<T>)> {
    Ok((
        estimate_connection_outage(params, delta, beta_b, config)?,
        estimate_secrecy_outage(params, delta, beta_e, config)?,
    ))
}
