//! Root finding and maximization of the secrecy throughput over the
//! selection threshold.
//!
//! [`optimize_delta`] bisects on the sign of d(R_t − R_e)/dδ and falls back
//! to golden-section search on the rate gap itself when the derivative cannot
//! be resolved to [`STATIONARITY_TOL`].

use std::fmt;

use crate::analytic::{rate_gap, throughput, throughput_derivative, DesignPoint};
use crate::error::domain;
use crate::model::SystemParams;
use crate::{Error, Result, Scalar};

/// Default search interval for δ. Above 20 the selection probability is
/// within 2e-9 of one; the lower end sits below the noise-limited optimum of
/// low-noise configurations (about 2e-5 at −90 dBm noise).
pub const DEFAULT_SEARCH: (f64, f64) = (1e-10, 20.0);

/// Largest |d(R_t − R_e)/dδ| accepted at a derivative-bisection optimum.
pub const STATIONARITY_TOL: f64 = 1e-6;

const MAX_BISECTIONS: usize = 2_000;
const GOLDEN_MAX_ITER: usize = 500;
const GRID_PER_DECADE: f64 = 8.0;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops once the bracket is no wider than `tol` or can no longer be split
/// in floating point, and returns the bracket midpoint.
pub fn bisect_root<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    bisect_counted(f, lo, hi, tol).map(|(x, _)| x)
}

fn bisect_counted<T, F>(f: F, mut lo: T, mut hi: T, tol: T) -> Result<(T, usize)>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !(lo < hi) || !(tol > T::zero()) {
        return Err(Error::Domain {
            what: "bisection bracket",
            value: (hi - lo).as_f64(),
        });
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(domain("bisection function value", T::nan()));
    }
    if f_lo == T::zero() {
        return Ok((lo, 0));
    }
    if f_hi == T::zero() {
        return Ok((hi, 0));
    }
    if f_lo.is_sign_positive() == f_hi.is_sign_positive() {
        return Err(Error::NoSignChange {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let two = T::lit(2.0);
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(domain("bisection function value", f_mid));
        }
        if f_mid == T::zero() {
            return Ok((mid, iterations));
        }
        if f_mid.is_sign_positive() == f_lo.is_sign_positive() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + (hi - lo) / two, iterations))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns the abscissa and the iteration count.
pub fn golden_section_max<T, F>(f: F, mut lo: T, mut hi: T, tol: T) -> Result<(T, usize)>
where
    T: Scalar,
    F: Fn(T) -> Result<T>,
{
    if !(lo < hi) || !(tol > T::zero()) {
        return Err(Error::Domain {
            what: "golden-section bracket",
            value: (hi - lo).as_f64(),
        });
    }
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0;
    while hi - lo > tol {
        if iterations == GOLDEN_MAX_ITER {
            return Err(Error::NotConverged {
                what: "golden-section search",
                iterations,
            });
        }
        iterations += 1;
        // Ties move left so flat maxima resolve to the smaller abscissa.
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(((lo + hi) / T::lit(2.0), iterations))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Sign bisection on the throughput derivative reached a stationary point.
    DerivativeBisection,
    /// Golden-section search on the rate gap.
    GoldenSectionFallback,
    /// The maximum sits on the search boundary (derivative of constant sign,
    /// or μ identically zero).
    Boundary,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DerivativeBisection => "derivative-bisection",
            Method::GoldenSectionFallback => "golden-section-fallback",
            Method::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult<T> {
    pub delta_star: T,
    pub design: DesignPoint<T>,
    pub iterations: usize,
    pub method: Method,
}

fn check_interval<T: Scalar>(lo: T, hi: T) -> Result<()> {
    if lo > T::zero() && lo < hi && hi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "search interval",
            value: (hi - lo).as_f64(),
        })
    }
}

/// Better of the two endpoints, preferring `lo` on ties.
fn best_boundary<T: Scalar>(
    params: &SystemParams<T>,
    lo: T,
    hi: T,
) -> Result<OptimizationResult<T>> {
    let at_lo = throughput(params, lo)?;
    let at_hi = throughput(params, hi)?;
    let design = if at_hi.mu > at_lo.mu { at_hi } else { at_lo };
    Ok(OptimizationResult {
        delta_star: design.delta,
        design,
        iterations: 0,
        method: Method::Boundary,
    })
}

/// Zero throughput everywhere means every δ ties; take the smallest.
fn resolve_flat<T: Scalar>(
    params: &SystemParams<T>,
    lo: T,
    result: OptimizationResult<T>,
) -> Result<OptimizationResult<T>> {
    if result.design.mu > T::zero() || result.delta_star == lo {
        return Ok(result);
    }
    let design = throughput(params, lo)?;
    Ok(OptimizationResult {
        delta_star: lo,
        design,
        iterations: result.iterations,
        method: Method::Boundary,
    })
}

fn log_grid<T: Scalar>(lo: T, hi: T) -> Vec<T> {
    let decades = (hi / lo).log10().as_f64();
    let cells = ((decades * GRID_PER_DECADE).ceil() as usize).max(1);
    (0..=cells)
        .map(|i| {
            if i == cells {
                hi
            } else {
                lo * (hi / lo).powf(T::lit(i as f64 / cells as f64))
            }
        })
        .collect()
}

/// Threshold maximizing the secrecy throughput on `[search_lo, search_hi]`.
///
/// The rate gap rises to its peak and then falls, but once it is negative it
/// can turn upward again towards its large-δ limit. The derivative is
/// therefore scanned on a log grid first and every + to − sign change is
/// bisected; the best of those stationary points and the two endpoints wins.
pub fn optimize_delta<T: Scalar>(
    params: &SystemParams<T>,
    search_lo: T,
    search_hi: T,
) -> Result<OptimizationResult<T>> {
    check_interval(search_lo, search_hi)?;
    let slope = |delta: T| throughput_derivative(params, delta);

    let grid = log_grid(search_lo, search_hi)
        .into_iter()
        .map(|x| slope(x).map(|s| (x, s)))
        .collect::<Result<Vec<_>>>()?;

    let mut best = best_boundary(params, search_lo, search_hi)?;
    for w in grid.windows(2) {
        let ((a, s_a), (b, s_b)) = (w[0], w[1]);
        if !(s_a > T::zero() && s_b <= T::zero()) {
            continue;
        }
        let candidate = refine_peak(params, a, b)?;
        if candidate.design.mu > best.design.mu {
            best = candidate;
        }
    }
    resolve_flat(params, search_lo, best)
}

/// Sign bisection of the derivative on a bracket with a + to − change,
/// falling back to golden-section search if it does not end stationary.
fn refine_peak<T: Scalar>(params: &SystemParams<T>, lo: T, hi: T) -> Result<OptimizationResult<T>> {
    let slope = |delta: T| throughput_derivative(params, delta);
    let two = T::lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    let mut stalled = false;
    while iterations < MAX_BISECTIONS {
        let mid = if b > two * a {
            (a * b).sqrt()
        } else {
            a + (b - a) / two
        };
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        match slope(mid) {
            Ok(s) if s > T::zero() => a = mid,
            Ok(s) if s <= T::zero() => b = mid,
            _ => {
                stalled = true;
                break;
            }
        }
    }
    let delta_star = a + (b - a) / two;
    let stationary = matches!(slope(delta_star), Ok(s) if s.abs() < T::lit(STATIONARITY_TOL));
    if stalled || !stationary {
        return golden_on_bracket(params, lo, hi);
    }
    Ok(OptimizationResult {
        delta_star,
        design: throughput(params, delta_star)?,
        iterations,
        method: Method::DerivativeBisection,
    })
}

/// Golden-section search on R_t − R_e over ln δ. The gap is scanned on the
/// same log grid as [`optimize_delta`] and the search runs on the two cells
/// around the best grid point, so only gap values are used.
pub fn golden_section_delta<T: Scalar>(
    params: &SystemParams<T>,
    search_lo: T,
    search_hi: T,
) -> Result<OptimizationResult<T>> {
    check_interval(search_lo, search_hi)?;
    let grid = log_grid(search_lo, search_hi);
    let mut best = 0;
    let mut best_gap = T::neg_infinity();
    for (i, &x) in grid.iter().enumerate() {
        let g = rate_gap(params, x)?;
        if g > best_gap {
            best = i;
            best_gap = g;
        }
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let result = golden_on_bracket(params, lo, hi)?;
    let boundary = best_boundary(params, search_lo, search_hi)?;
    let result = if boundary.design.mu > result.design.mu {
        boundary
    } else {
        result
    };
    resolve_flat(params, search_lo, result)
}

fn golden_on_bracket<T: Scalar>(
    params: &SystemParams<T>,
    lo: T,
    hi: T,
) -> Result<OptimizationResult<T>> {
    let gap = |u: T| rate_gap(params, u.exp());
    let (u, iterations) =
        golden_section_max(gap, lo.ln(), hi.ln(), T::lit(1e-12).max(T::epsilon()))?;
    let delta_star = u.exp().max(lo).min(hi);
    Ok(OptimizationResult {
        delta_star,
        design: throughput(params, delta_star)?,
        iterations,
        method: Method::GoldenSectionFallback,
    })
}
