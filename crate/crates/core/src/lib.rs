//! Secrecy throughput of a single-antenna wiretap channel protected by
//! opportunistic, threshold-based jammer selection.
//!
//! Jammers and eavesdroppers are scattered as independent homogeneous Poisson
//! point processes. A jammer transmits when its channel gain to the
//! legitimate receiver is at most a threshold `delta`. The crate provides
//! closed-form outage probabilities and secrecy throughput ([`analytic`]),
//! the threshold optimization ([`optimize`]), a Monte Carlo simulator of the
//! underlying network ([`montecarlo`]) and the command-line driver ([`cli`]).
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases below fix the scalar type to `f64`, which is what the CLI uses.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
mod error;
pub mod model;
pub mod montecarlo;
pub mod optimize;
mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type SystemParams = model::SystemParams<f64>;
pub type SystemParamsBuilder = model::SystemParamsBuilder<f64>;
pub type DerivedConstants = model::DerivedConstants<f64>;
pub type DesignPoint = analytic::DesignPoint<f64>;
pub type OptimizationResult = optimize::OptimizationResult<f64>;
pub type NetworkRealization = montecarlo::NetworkRealization<f64>;
pub type OutageEstimate = montecarlo::OutageEstimate<f64>;
pub type SimConfig = montecarlo::SimConfig<f64>;

pub type SystemParams32 = model::SystemParams<f32>;
pub type DesignPoint32 = analytic::DesignPoint<f32>;
