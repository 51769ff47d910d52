//! Closed-form outage probabilities, thresholds, throughput and its
//! derivative with respect to the selection threshold.
//!
//! With ρ = 2/α and `a`, `b` from [`DerivedConstants`](crate::model::DerivedConstants):
//!
//! ```text
//! p_co(δ, β_B) = 1 − exp(−b β_B − a γ(ρ+1, δ) β_B^ρ)
//! p_so(δ, β_E) = 1 − exp(−λ_E / ((P_J β_E / P_S)^ρ λ_J (1 − e^−δ) Γ(1+ρ) Γ(1−ρ)))
//! ```
//!
//! β_B° solves `p_co = σ` by bisection, β_E° solves `p_so = ε` in closed form,
//! and the secrecy throughput is `μ = max(0, log2(1+β_B°) − log2(1+β_E°)) (1 − σ)`.

use crate::error::domain;
use crate::model::{derive_constants, SystemParams};
use crate::optimize::bisect_root;
use crate::specfun::{gamma, lower_incomplete_gamma};
use crate::{Error, Result, Scalar};

/// Doublings allowed while bracketing β_B°.
pub const MAX_BRACKET_DOUBLINGS: usize = 200;

/// A selection threshold with the rates it induces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignPoint<T> {
    pub delta: T,
    /// SINR threshold with connection outage exactly σ.
    pub beta_b: T,
    /// SIR threshold with secrecy outage exactly ε.
    pub beta_e: T,
    /// Codeword rate log2(1 + β_B), bits per channel use.
    pub r_t: T,
    /// Redundancy rate log2(1 + β_E), bits per channel use.
    pub r_e: T,
    /// Secrecy throughput, clamped at zero.
    pub mu: T,
}

impl<T: Scalar> DesignPoint<T> {
    fn from_thresholds(delta: T, beta_b: T, beta_e: T, sigma: T) -> Self {
        let r_t = log2_1p(beta_b);
        let r_e = log2_1p(beta_e);
        let mu = (r_t - r_e).max(T::zero()) * (T::one() - sigma);
        Self {
            delta,
            beta_b,
            beta_e,
            r_t,
            r_e,
            mu,
        }
    }

    /// R_t − R_e without the clamp; negative when secrecy is infeasible.
    pub fn rate_gap(&self) -> T {
        self.r_t - self.r_e
    }
}

fn log2_1p<T: Scalar>(x: T) -> T {
    x.ln_1p() / T::LN_2()
}

fn check_delta<T: Scalar>(delta: T) -> Result<()> {
    if delta > T::zero() {
        Ok(())
    } else {
        Err(domain("selection threshold", delta))
    }
}

/// Statistics of the active jammer population that enter both outages.
#[derive(Clone, Copy, Debug)]
struct Activation<T> {
    /// E[g^ρ · 1{active}] for the jammer-to-receiver gain g ~ exp(1).
    receiver_moment: T,
    /// Fraction of jammers that transmit.
    fraction: T,
}

impl<T: Scalar> Activation<T> {
    fn threshold(params: &SystemParams<T>, delta: T) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            receiver_moment: lower_incomplete_gamma(params.rho() + T::one(), delta)?,
            fraction: selection_probability(delta)?,
        })
    }

    fn random(params: &SystemParams<T>, retention: T) -> Result<Self> {
        if !(retention > T::zero() && retention <= T::one()) {
            return Err(domain("retention probability", retention));
        }
        Ok(Self {
            receiver_moment: retention * gamma(T::one() + params.rho())?,
            fraction: retention,
        })
    }

    /// `−ln(1 − p_co)` at SINR threshold `beta_b`.
    fn connection_exponent(&self, params: &SystemParams<T>, beta_b: T) -> Result<T> {
        let k = derive_constants(params)?;
        let interference = if beta_b == T::zero() {
            T::zero()
        } else {
            k.a * self.receiver_moment * beta_b.powf(k.rho)
        };
        Ok(k.b * beta_b + interference)
    }

    /// `−ln(1 − p_so)` at SIR threshold `beta_e`.
    fn secrecy_exponent(&self, params: &SystemParams<T>, beta_e: T) -> Result<T> {
        let rho = params.rho();
        let denom = (params.p_j() * beta_e / params.p_s()).powf(rho)
            * params.lambda_j()
            * self.fraction
            * gamma(T::one() + rho)?
            * gamma(T::one() - rho)?;
        Ok(params.lambda_e() / denom)
    }

    fn beta_e(&self, params: &SystemParams<T>) -> Result<T> {
        let rho = params.rho();
        let budget = -(-params.epsilon()).ln_1p();
        let inner = params.lambda_e()
            / ((params.p_j() / params.p_s()).powf(rho)
                * params.lambda_j()
                * self.fraction
                * gamma(T::one() + rho)?
                * gamma(T::one() - rho)?
                * budget);
        Ok(inner.powf(params.alpha() / T::lit(2.0)))
    }

    fn beta_b(&self, params: &SystemParams<T>) -> Result<T> {
        let target = -(-params.sigma()).ln_1p();
        let excess = |beta: T| -> T {
            self.connection_exponent(params, beta)
                .map(|e| e - target)
                .unwrap_or(T::nan())
        };
        let mut hi = T::one();
        let mut doublings = 0;
        while !(excess(hi) >= T::zero()) {
            if doublings == MAX_BRACKET_DOUBLINGS || excess(hi).is_nan() {
                return Err(Error::BracketExpansion { doublings });
            }
            hi *= T::lit(2.0);
            doublings += 1;
        }
        // Bisect down to adjacent floats; the derivative checks need it.
        bisect_root(excess, T::zero(), hi, T::min_positive_value())
    }
}

/// Prob_J = 1 − e^(−δ), the chance a jammer passes the threshold.
pub fn selection_probability<T: Scalar>(delta: T) -> Result<T> {
    check_delta(delta)?;
    Ok(-(-delta).exp_m1())
}

/// Density of the thinned (transmitting) jammer process.
pub fn selected_intensity<T: Scalar>(delta: T, lambda_j: T) -> Result<T> {
    if !(lambda_j > T::zero()) {
        return Err(domain("jammer density", lambda_j));
    }
    Ok(selection_probability(delta)? * lambda_j)
}

/// E[g^ρ | g ≤ δ] for g ~ exp(1): γ(ρ+1, δ) / (1 − e^(−δ)).
pub fn conditional_gain_moment<T: Scalar>(delta: T, rho: T) -> Result<T> {
    check_delta(delta)?;
    if !(rho > T::zero() && rho < T::one()) {
        return Err(domain("rho", rho));
    }
    Ok(lower_incomplete_gamma(rho + T::one(), delta)? / selection_probability(delta)?)
}

/// Connection outage probability at the receiver for SINR threshold `beta_b`.
pub fn connection_outage<T: Scalar>(params: &SystemParams<T>, delta: T, beta_b: T) -> Result<T> {
    if !(beta_b >= T::zero()) {
        return Err(domain("SINR threshold", beta_b));
    }
    let e = Activation::threshold(params, delta)?.connection_exponent(params, beta_b)?;
    Ok(-(-e).exp_m1())
}

/// Secrecy outage probability (best non-colluding eavesdropper) for SIR threshold `beta_e`.
pub fn secrecy_outage<T: Scalar>(params: &SystemParams<T>, delta: T, beta_e: T) -> Result<T> {
    if !(beta_e > T::zero()) {
        return Err(domain("SIR threshold", beta_e));
    }
    let e = Activation::threshold(params, delta)?.secrecy_exponent(params, beta_e)?;
    Ok(-(-e).exp_m1())
}

/// Smallest SIR threshold meeting the secrecy budget: `secrecy_outage = ε`.
pub fn beta_e_star<T: Scalar>(params: &SystemParams<T>, delta: T) -> Result<T> {
    Activation::threshold(params, delta)?.beta_e(params)
}

/// Largest SINR threshold meeting the connection budget: `connection_outage = σ`.
pub fn beta_b_star<T: Scalar>(params: &SystemParams<T>, delta: T) -> Result<T> {
    Activation::threshold(params, delta)?.beta_b(params)
}

/// Full design point at threshold `delta`.
pub fn throughput<T: Scalar>(params: &SystemParams<T>, delta: T) -> Result<DesignPoint<T>> {
    let act = Activation::threshold(params, delta)?;
    let beta_b = act.beta_b(params)?;
    let beta_e = act.beta_e(params)?;
    Ok(DesignPoint::from_thresholds(
        delta,
        beta_b,
        beta_e,
        params.sigma(),
    ))
}

/// Unclamped R_t − R_e at `delta`. Same maximizer as μ wherever μ > 0.
pub fn rate_gap<T: Scalar>(params: &SystemParams<T>, delta: T) -> Result<T> {
    Ok(throughput(params, delta)?.rate_gap())
}

/// d(R_t − R_e)/dδ in bits, evaluated at β_B°(δ) and β_E°(δ) through the
/// implicit derivatives of the two active outage constraints.
pub fn throughput_derivative<T: Scalar>(params: &SystemParams<T>, delta: T) -> Result<T> {
    let point = throughput(params, delta)?;
    if delta.is_infinite() {
        return Ok(T::zero());
    }
    let k = derive_constants(params)?;
    let rho = k.rho;
    let decay = (-delta).exp();
    let moment = lower_incomplete_gamma(rho + T::one(), delta)?;
    let (bb, be) = (point.beta_b, point.beta_e);

    let receiver = k.a * delta.powf(rho) * decay * bb.powf(rho)
        / ((T::one() + bb) * (k.b + k.a * rho * moment * bb.powf(rho - T::one())));
    let eavesdropper = be * decay / ((T::one() + be) * rho * selection_probability(delta)?);
    Ok((eavesdropper - receiver) / T::LN_2())
}

/// Connection outage when each jammer transmits independently with
/// probability `retention`, regardless of its channel.
pub fn baseline_connection_outage<T: Scalar>(
    params: &SystemParams<T>,
    retention: T,
    beta_b: T,
) -> Result<T> {
    if !(beta_b >= T::zero()) {
        return Err(domain("SINR threshold", beta_b));
    }
    let e = Activation::random(params, retention)?.connection_exponent(params, beta_b)?;
    Ok(-(-e).exp_m1())
}

/// Secrecy outage under random selection with probability `retention`.
pub fn baseline_secrecy_outage<T: Scalar>(
    params: &SystemParams<T>,
    retention: T,
    beta_e: T,
) -> Result<T> {
    if !(beta_e > T::zero()) {
        return Err(domain("SIR threshold", beta_e));
    }
    let e = Activation::random(params, retention)?.secrecy_exponent(params, beta_e)?;
    Ok(-(-e).exp_m1())
}

/// Throughput of the channel-blind random selection baseline.
///
/// The returned `delta` is the threshold whose selection probability equals
/// `retention` (infinite for `retention = 1`), so that both schemes can be
/// put side by side at matched active-jammer density.
pub fn random_baseline_throughput<T: Scalar>(
    params: &SystemParams<T>,
    retention: T,
) -> Result<DesignPoint<T>> {
    let act = Activation::random(params, retention)?;
    let beta_b = act.beta_b(params)?;
    let beta_e = act.beta_e(params)?;
    let delta = -(-retention).ln_1p();
    Ok(DesignPoint::from_thresholds(
        delta,
        beta_b,
        beta_e,
        params.sigma(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemParamsBuilder;
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn example_params() -> SystemParams<f64> {
        // d = 1, α = 3, N0 = 0, P_S = 100 mW, P_J = 1000 mW, λ_J = 0.1, λ_E = 0.01.
        SystemParamsBuilder {
            n0: 0.0,
            ..SystemParams::<f64>::builder()
        }
        .build()
        .unwrap()
    }

    fn section_defaults() -> SystemParams<f64> {
        SystemParams::<f64>::builder().build().unwrap()
    }

    fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        let h = (hi - lo) / n as f64;
        let mut s = f(lo) + f(hi);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + i as f64 * h);
        }
        s * h / 3.0
    }

    // γ(5/3, 1) by quadrature after t = u³.
    fn lower_gamma_five_thirds_at_one() -> f64 {
        3.0 * simpson(|u| u.powi(4) * (-u * u * u).exp(), 0.0, 1.0, 20_000)
    }

    const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;

    #[test]
    fn selection_probability_examples() {
        assert!((selection_probability(LN2).unwrap() - 0.5).abs() < 1e-15);
        assert!(selection_probability(1e-12).unwrap() < 1e-11);
        assert!((selection_probability(1.0f64).unwrap() - 0.632_120_6).abs() < 1e-7);
        assert_eq!(selection_probability(f64::INFINITY).unwrap(), 1.0);
        assert!(selection_probability(0.0).is_err());
    }

    #[test]
    fn selected_intensity_examples() {
        assert!((selected_intensity(LN2, 0.1).unwrap() - 0.05).abs() < 1e-15);
        assert!((selected_intensity(f64::INFINITY, 0.1).unwrap() - 0.1).abs() < 1e-15);
        assert!((selected_intensity(1.0f64, 0.1).unwrap() - 0.063_21).abs() < 1e-5);
        assert!(selected_intensity(1.0, 0.0).is_err());
    }

    #[test]
    fn conditional_gain_moment_examples() {
        let rho = 2.0 / 3.0;
        let unconditioned = conditional_gain_moment(f64::INFINITY, rho).unwrap();
        assert!((unconditioned - 0.902_745).abs() < 1e-6);
        let oracle = lower_gamma_five_thirds_at_one() / (1.0 - (-1.0f64).exp());
        let v = conditional_gain_moment(1.0, rho).unwrap();
        assert!((v - oracle).abs() < 1e-10 * oracle);
        assert!((v - 0.525_106).abs() < 5e-5);
        assert!(conditional_gain_moment(1e-9, rho).unwrap() < 1e-5);
        assert!(conditional_gain_moment(1.0, 1.0).is_err());
    }

    #[test]
    fn connection_outage_examples() {
        let p = example_params();
        assert_eq!(connection_outage(&p, 1.0, 0.0).unwrap(), 0.0);
        // Independent re-evaluation of the exponent from quadrature values.
        let exponent = 0.1
            * std::f64::consts::PI
            * lower_gamma_five_thirds_at_one()
            * GAMMA_ONE_THIRD
            * 10f64.powf(2.0 / 3.0);
        let oracle = 1.0 - (-exponent).exp();
        let v = connection_outage(&p, 1.0, 1.0).unwrap();
        assert!((v - oracle).abs() < 1e-10);
        assert!((v - 0.72659).abs() < 1e-4);
        assert!(connection_outage(&p, 1e-12, 1.0).unwrap() < 1e-15);
        assert!(connection_outage(&p, 1.0, -1.0).is_err());
    }

    #[test]
    fn secrecy_outage_examples() {
        let p = example_params();
        let rho = 2.0f64 / 3.0;
        let gamma_product = std::f64::consts::PI * rho / (std::f64::consts::PI * rho).sin();
        let exponent = 0.01 / (10f64.powf(rho) * 0.1 * (1.0 - (-1.0f64).exp()) * gamma_product);
        let oracle = 1.0 - (-exponent).exp();
        let v = secrecy_outage(&p, 1.0, 1.0).unwrap();
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 0.013_994).abs() < 1e-6);
        assert!(secrecy_outage(&p, 1e-12, 1.0).unwrap() > 1.0 - 1e-12);
        let sparse = SystemParamsBuilder {
            lambda_e: 1e-12,
            ..p.to_builder()
        }
        .build()
        .unwrap();
        assert!(secrecy_outage(&sparse, 1.0, 1.0).unwrap() < 1e-10);
        assert!(secrecy_outage(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn beta_e_star_examples() {
        let p = example_params();
        let be = beta_e_star(&p, 1.0).unwrap();
        // Oracle: bisection on p_so(β) − ε, which is decreasing in β.
        let (mut lo, mut hi) = (1e-6f64, 1e6f64);
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if secrecy_outage(&p, 1.0, mid).unwrap() > 0.01 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((be - lo).abs() < 1e-9 * be);
        assert!((be - 1.6605).abs() < 1e-4);
        assert!((secrecy_outage(&p, 1.0, be).unwrap() - 0.01).abs() < 1e-12);

        let rho = 2.0f64 / 3.0;
        let gamma_product = std::f64::consts::PI * rho / (std::f64::consts::PI * rho).sin();
        let limit =
            (0.01 / (10f64.powf(rho) * 0.1 * gamma_product * (1.0f64 / 0.99).ln())).powf(1.5);
        let unbounded = beta_e_star(&p, f64::INFINITY).unwrap();
        assert!((unbounded - limit).abs() < 1e-12 * limit);
    }

    #[test]
    fn beta_b_star_examples() {
        let p = example_params();
        let bb = beta_b_star(&p, 1.0).unwrap();
        // Zero noise admits the closed-form inversion β = (−ln(1−σ) / K)^(α/2).
        let k = 0.1
            * std::f64::consts::PI
            * lower_gamma_five_thirds_at_one()
            * GAMMA_ONE_THIRD
            * 10f64.powf(2.0 / 3.0);
        let oracle = (-(0.9f64.ln()) / k).powf(1.5);
        assert!((bb - oracle).abs() < 1e-10 * oracle);
        assert!((bb - 0.023_159).abs() < 5e-6);
        assert!((connection_outage(&p, 1.0, bb).unwrap() - 0.1).abs() < 1e-12);

        let mut prev = 0.0;
        for s in [0.05, 0.2, 0.4, 0.6, 0.8, 0.9, 0.99, 0.999_9] {
            let q = SystemParamsBuilder {
                sigma: s,
                ..p.to_builder()
            }
            .build()
            .unwrap();
            let b = beta_b_star(&q, 1.0).unwrap();
            let closed = (-(1.0 - s).ln() / k).powf(1.5);
            assert!((b - closed).abs() < 1e-10 * closed, "σ={s}");
            assert!(b > prev);
            prev = b;
        }
    }

    #[test]
    fn throughput_examples() {
        let p = section_defaults();
        let point = throughput(&p, 1.0).unwrap();
        assert!((point.r_t - (1.0 + point.beta_b).log2()).abs() < 1e-15);
        assert!((point.r_e - (1.0 + point.beta_e).log2()).abs() < 1e-15);
        assert_eq!(point.mu, (point.r_t - point.r_e).max(0.0) * 0.9);

        let sparse = SystemParamsBuilder {
            lambda_e: 1e-14,
            ..p.to_builder()
        }
        .build()
        .unwrap();
        let point = throughput(&sparse, 1.0).unwrap();
        assert!(point.r_e < 1e-12);
        assert!((point.mu - 0.9 * point.r_t).abs() < 1e-12);

        // Pick λ_E so that β_E° coincides with β_B°; μ must vanish.
        let bb = beta_b_star(&p, 1.0).unwrap();
        let be = beta_e_star(&p, 1.0).unwrap();
        let matched = SystemParamsBuilder {
            lambda_e: p.lambda_e() * (bb / be).powf(2.0 / 3.0),
            ..p.to_builder()
        }
        .build()
        .unwrap();
        let point = throughput(&matched, 1.0).unwrap();
        assert!((point.beta_e - point.beta_b).abs() < 1e-12 * point.beta_b);
        assert!(point.mu < 1e-12);
    }

    #[test]
    fn derivative_sign_at_small_delta() {
        let p = section_defaults();
        assert!(throughput_derivative(&p, 1e-9).unwrap() > 0.0);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let noisy = SystemParams::<f64>::builder()
            .n0_dbm(-40.0)
            .build()
            .unwrap();
        for p in [section_defaults(), example_params(), noisy] {
            for i in 0..50 {
                let delta = 0.05 * (10.0f64 / 0.05).powf(i as f64 / 49.0);
                let h = 1e-5;
                let fd = (rate_gap(&p, delta + h).unwrap() - rate_gap(&p, delta - h).unwrap())
                    / (2.0 * h);
                let an = throughput_derivative(&p, delta).unwrap();
                assert!(
                    (fd - an).abs() <= 1e-4 * an.abs() + 1e-9,
                    "δ={delta}: fd={fd} an={an}"
                );
            }
        }
    }

    // Strict unless a probability has saturated at 0 or 1.
    fn increasing(lo: f64, hi: f64) {
        assert!(lo <= hi, "{lo} > {hi}");
        if lo > 0.0 && hi < 1.0 {
            assert!(lo < hi, "{lo} == {hi}");
        }
    }

    #[test]
    fn monotonicity_and_coupling() {
        let p = SystemParams::<f64>::builder()
            .n0_dbm(-50.0)
            .build()
            .unwrap();
        let betas: Vec<f64> = (0..40).map(|i| 1e-3 * 1.4f64.powi(i)).collect();
        let deltas: Vec<f64> = (0..40).map(|i| 1e-3 * 1.3f64.powi(i)).collect();
        for &delta in &deltas {
            for w in betas.windows(2) {
                increasing(
                    connection_outage(&p, delta, w[0]).unwrap(),
                    connection_outage(&p, delta, w[1]).unwrap(),
                );
                increasing(
                    secrecy_outage(&p, delta, w[1]).unwrap(),
                    secrecy_outage(&p, delta, w[0]).unwrap(),
                );
            }
        }
        for &beta in &betas[..20] {
            for w in deltas.windows(2) {
                increasing(
                    connection_outage(&p, w[0], beta).unwrap(),
                    connection_outage(&p, w[1], beta).unwrap(),
                );
                increasing(
                    secrecy_outage(&p, w[1], beta).unwrap(),
                    secrecy_outage(&p, w[0], beta).unwrap(),
                );
            }
        }
    }

    #[test]
    fn baseline_examples() {
        let p = section_defaults();
        assert_eq!(random_baseline_throughput(&p, 1e-9).unwrap().mu, 0.0);
        assert!(random_baseline_throughput(&p, 0.0).is_err());
        assert!(random_baseline_throughput(&p, 1.1).is_err());

        // Same active density: the channel-aware rule is never worse.
        for i in 0..60 {
            let delta = 1e-6 * 1.4f64.powi(i);
            let proposed = throughput(&p, delta).unwrap();
            let baseline =
                random_baseline_throughput(&p, selection_probability(delta).unwrap()).unwrap();
            assert!(baseline.mu <= proposed.mu + 1e-12);
            assert!((baseline.beta_e - proposed.beta_e).abs() <= 1e-12 * proposed.beta_e);
        }

        // Secrecy outage depends on λ_J and the active fraction only through their product.
        let delta = 0.7;
        let q = selection_probability(delta).unwrap();
        let thinned = SystemParamsBuilder {
            lambda_j: p.lambda_j() * q,
            ..p.to_builder()
        }
        .build()
        .unwrap();
        let a = baseline_secrecy_outage(&thinned, 1.0, 0.8).unwrap();
        let b = secrecy_outage(&p, delta, 0.8).unwrap();
        assert!((a - b).abs() < 1e-15);

        // Everyone active: the two schemes coincide.
        let all = random_baseline_throughput(&p, 1.0).unwrap();
        let unbounded = throughput(&p, f64::INFINITY).unwrap();
        assert!((all.mu - unbounded.mu).abs() < 1e-12);
        assert!((all.beta_b - unbounded.beta_b).abs() < 1e-12 * all.beta_b);
        assert!(all.delta.is_infinite());
        let c = baseline_connection_outage(&p, 1.0, 0.3).unwrap();
        assert!((c - connection_outage(&p, f64::INFINITY, 0.3).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn f32_pipeline() {
        let p = SystemParams::<f32>::builder().build().unwrap();
        let point = throughput(&p, 1e-3f32).unwrap();
        assert!(point.mu > 0.0);
        assert!((connection_outage(&p, 1e-3, point.beta_b).unwrap() - 0.1).abs() < 1e-4);
        assert!((secrecy_outage(&p, 1e-3, point.beta_e).unwrap() - 0.01).abs() < 1e-4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fixed_points_hold(
            p_s in 10.0f64..30.0, p_j in 15.0f64..40.0, n0 in -100.0f64..-20.0,
            alpha in 2.2f64..5.0, lj in -2.5f64..0.5, le in -4.0f64..-1.0,
            sigma in 0.01f64..0.5, eps in 0.001f64..0.3, delta in -6.0f64..1.3,
        ) {
            let p = SystemParamsBuilder {
                alpha, lambda_j: 10f64.powf(lj), lambda_e: 10f64.powf(le), sigma, epsilon: eps,
                ..SystemParams::<f64>::builder().p_s_dbm(p_s).p_j_dbm(p_j).n0_dbm(n0)
            }.build().unwrap();
            let delta = 10f64.powf(delta);
            let be = beta_e_star(&p, delta).unwrap();
            let bb = beta_b_star(&p, delta).unwrap();
            prop_assert!((secrecy_outage(&p, delta, be).unwrap() - eps).abs() < 1e-9);
            prop_assert!((connection_outage(&p, delta, bb).unwrap() - sigma).abs() < 1e-9);
        }

        #[test]
        fn secrecy_outage_depends_on_power_ratio_only(scale in -20.0f64..20.0, beta in 0.01f64..10.0) {
            let p = section_defaults();
            let f = 10f64.powf(scale / 10.0);
            let q = SystemParamsBuilder { p_s: p.p_s() * f, p_j: p.p_j() * f, ..p.to_builder() }.build().unwrap();
            let a = secrecy_outage(&p, 0.8, beta).unwrap();
            let b = secrecy_outage(&q, 0.8, beta).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
        }
    }
}
