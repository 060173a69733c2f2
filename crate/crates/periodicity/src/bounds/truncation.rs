use super::{erfc, sn_coefficients, stencil::dot, BoundsError};
use crate::series::RecurrenceSeries;

/// How many cycles to measure for S_n and what the zero-filled tail can cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub n: usize,
    pub xi: f64,
    /// ⌈ξ√n⌉; may exceed n, in which case nothing is truncated.
    pub l: usize,
    pub error_bound: f64,
}

/// erfc(ξ) + e^{−ξ²}/√(πn)
pub fn truncation_error_bound(n: usize, xi: f64) -> f64 {
    erfc(xi) + (-xi * xi).exp() / (std::f64::consts::PI * n as f64).sqrt()
}

pub fn truncation_plan(n: usize, xi: f64) -> Result<TruncationPlan, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Order { n, max: super::MAX_SN_ORDER });
    }
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(BoundsError::InvalidInput(format!("xi = {xi}")));
    }
    let l = (xi * (n as f64).sqrt()).ceil() as usize;
    Ok(TruncationPlan { n, xi, l, error_bound: truncation_error_bound(n, xi) })
}

/// Smallest ξ (to 1e-12) whose bound is ≤ eps.
pub fn xi_for_tolerance(n: usize, eps: f64) -> Result<f64, BoundsError> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(BoundsError::InvalidInput(format!("epsilon = {eps}")));
    }
    if truncation_error_bound(n, 0.0) <= eps {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while truncation_error_bound(n, hi) > eps {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(BoundsError::InvalidInput(format!("epsilon = {eps} unreachable")));
        }
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if truncation_error_bound(n, mid) > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// S_n with R_k = 0 beyond the measured range.
pub fn truncated_sn(r: &RecurrenceSeries, n: usize) -> Result<f64, BoundsError> {
    let w = sn_coefficients(n)?;
    let len = r.len().min(n + 1);
    Ok(dot(&w.w[..len], &r.values()[..len]))
}
