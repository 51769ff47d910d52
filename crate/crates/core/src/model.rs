//! Physical parameters, unit conversion and derived constants.
//!
//! Everything inside the crate is in linear milliwatts and meters; dBm only
//! appears at the configuration boundary.

use crate::specfun::gamma;
use crate::{Error, Result, Scalar};

/// `10^(p/10)`: dBm to milliwatts.
pub fn dbm_to_linear<T: Scalar>(p_dbm: T) -> T {
    T::lit(10.0).powf(p_dbm / T::lit(10.0))
}

/// `10·log10(p)`: milliwatts to dBm.
pub fn linear_to_dbm<T: Scalar>(p_mw: T) -> T {
    T::lit(10.0) * p_mw.log10()
}

/// Validated system parameters. Construct through [`SystemParamsBuilder`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams<T> {
    p_s: T,
    p_j: T,
    n0: T,
    d: T,
    alpha: T,
    lambda_j: T,
    lambda_e: T,
    sigma: T,
    epsilon: T,
}

/// Unvalidated parameter set. Defaults are d = 1 m, α = 3, σ = 0.1,
/// ε = 0.01, P_S = 20 dBm, P_J = 30 dBm, N_0 = −90 dBm, λ_J = 0.1 and
/// λ_E = 0.01.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParamsBuilder<T> {
    /// Source transmit power, mW.
    pub p_s: T,
    /// Per-jammer transmit power, mW.
    pub p_j: T,
    /// Receiver noise power, mW.
    pub n0: T,
    /// Source–receiver distance, m.
    pub d: T,
    /// Path-loss exponent.
    pub alpha: T,
    /// Jammer density, points per m².
    pub lambda_j: T,
    /// Eavesdropper density, points per m².
    pub lambda_e: T,
    /// Connection outage budget.
    pub sigma: T,
    /// Secrecy outage budget.
    pub epsilon: T,
}

impl<T: Scalar> Default for SystemParamsBuilder<T> {
    fn default() -> Self {
        Self {
            p_s: dbm_to_linear(T::lit(20.0)),
            p_j: dbm_to_linear(T::lit(30.0)),
            n0: dbm_to_linear(T::lit(-90.0)),
            d: T::one(),
            alpha: T::lit(3.0),
            lambda_j: T::lit(0.1),
            lambda_e: T::lit(0.01),
            sigma: T::lit(0.1),
            epsilon: T::lit(0.01),
        }
    }
}

fn check<T: Scalar>(name: &'static str, value: T, ok: bool, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            name,
            value: value.as_f64(),
            reason,
        })
    }
}

impl<T: Scalar> SystemParamsBuilder<T> {
    pub fn p_s_dbm(mut self, dbm: T) -> Self {
        self.p_s = dbm_to_linear(dbm);
        self
    }

    pub fn p_j_dbm(mut self, dbm: T) -> Self {
        self.p_j = dbm_to_linear(dbm);
        self
    }

    pub fn n0_dbm(mut self, dbm: T) -> Self {
        self.n0 = dbm_to_linear(dbm);
        self
    }

    pub fn build(self) -> Result<SystemParams<T>> {
        let zero = T::zero();
        let one = T::one();
        check("p_s", self.p_s, self.p_s > zero, "must be positive")?;
        check("p_j", self.p_j, self.p_j > zero, "must be positive")?;
        check("n0", self.n0, self.n0 >= zero, "must be nonnegative")?;
        check("d", self.d, self.d > zero, "must be positive")?;
        check(
            "alpha",
            self.alpha,
            self.alpha > T::lit(2.0),
            "must exceed 2",
        )?;
        check(
            "lambda_j",
            self.lambda_j,
            self.lambda_j > zero,
            "must be positive",
        )?;
        check(
            "lambda_e",
            self.lambda_e,
            self.lambda_e > zero,
            "must be positive",
        )?;
        check(
            "sigma",
            self.sigma,
            self.sigma > zero && self.sigma < one,
            "must lie in (0, 1)",
        )?;
        check(
            "epsilon",
            self.epsilon,
            self.epsilon > zero && self.epsilon < one,
            "must lie in (0, 1)",
        )?;
        Ok(SystemParams {
            p_s: self.p_s,
            p_j: self.p_j,
            n0: self.n0,
            d: self.d,
            alpha: self.alpha,
            lambda_j: self.lambda_j,
            lambda_e: self.lambda_e,
            sigma: self.sigma,
            epsilon: self.epsilon,
        })
    }
}

impl<T: Scalar> SystemParams<T> {
    pub fn builder() -> SystemParamsBuilder<T> {
        SystemParamsBuilder::default()
    }

    /// Back to an editable builder, e.g. to vary one parameter in a sweep.
    pub fn to_builder(&self) -> SystemParamsBuilder<T> {
        SystemParamsBuilder {
            p_s: self.p_s,
            p_j: self.p_j,
            n0: self.n0,
            d: self.d,
            alpha: self.alpha,
            lambda_j: self.lambda_j,
            lambda_e: self.lambda_e,
            sigma: self.sigma,
            epsilon: self.epsilon,
        }
    }

    pub fn p_s(&self) -> T {
        self.p_s
    }
    pub fn p_j(&self) -> T {
        self.p_j
    }
    pub fn n0(&self) -> T {
        self.n0
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }
    pub fn lambda_j(&self) -> T {
        self.lambda_j
    }
    pub fn lambda_e(&self) -> T {
        self.lambda_e
    }
    pub fn sigma(&self) -> T {
        self.sigma
    }
    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    /// ρ = 2/α.
    pub fn rho(&self) -> T {
        T::lit(2.0) / self.alpha
    }

    /// Path loss `r^(−α)`.
    pub fn path_loss(&self, r: T) -> T {
        r.powf(-self.alpha)
    }
}

/// Shorthand constants shared by the outage formulas and their derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedConstants<T> {
    /// 2/α.
    pub rho: T,
    /// λ_J π Γ(1−ρ) (d^α P_J / P_S)^ρ.
    pub a: T,
    /// N_0 d^α / P_S.
    pub b: T,
    /// λ_E P_S^ρ / (P_J^ρ λ_J Γ(1+ρ) Γ(1−ρ)).
    pub c: T,
}

pub fn derive_constants<T: Scalar>(params: &SystemParams<T>) -> Result<DerivedConstants<T>> {
    let rho = params.rho();
    let d_alpha = params.d.powf(params.alpha);
    let g_minus = gamma(T::one() - rho)?;
    let g_plus = gamma(T::one() + rho)?;
    let a = params.lambda_j * T::PI() * g_minus * (d_alpha * params.p_j / params.p_s).powf(rho);
    let b = params.n0 * d_alpha / params.p_s;
    let c = params.lambda_e * params.p_s.powf(rho)
        / (params.p_j.powf(rho) * params.lambda_j * g_plus * g_minus);
    Ok(DerivedConstants { rho, a, b, c })
}
