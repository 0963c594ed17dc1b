//! Stability parameters of cumulative daily precipitation.
//!
//! If T_k = X_1 + … + X_k grows like a·k^β, then log T_k is linear in
//! log k and (ã, β̃) drop out of ordinary least squares on the pairs
//! (log k, log T_k) for k = m..n. The burn-in index m skips the early part
//! of the series where the power approximation has not settled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares estimate of the growth law T_k ≈ a k^β.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrendFit {
    #[serde(rename = "a")]
    pub a_hat: f64,
    #[serde(rename = "beta")]
    pub beta_hat: f64,
    /// Burn-in index: the regression runs over k = m..n.
    pub m: usize,
    /// Series length.
    pub n: usize,
    #[serde(rename = "sse")]
    pub residual_sse: f64,
}

/// Running sums T_k of a nonnegative series.
pub fn cumulative_sums(x: &[f64]) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::InsufficientData("empty series".into()));
    }
    let mut out = Vec::with_capacity(x.len());
    let mut total = 0.0;
    for (i, &v) in x.iter().enumerate() {
        if v.is_nan() || v < 0.0 {
            return Err(Error::Validation(format!(
                "cumulative sums need nonnegative values; found {v} at index {i}"
            )));
        }
        total += v;
        out.push(total);
    }
    Ok(out)
}

/// Exact ordinary-least-squares solution of the regression of log T_k on
/// log k over k = m..n; β̃ is the slope and ã = exp(intercept).
///
/// Requires m ≥ 2 (k = 1 contributes log k = 0) and T_k > 0 on the fitted
/// range, which holds whenever the inputs are positive.
pub fn estimate_trend(x: &[f64], m: usize) -> Result<TrendFit> {
    let sums = cumulative_sums(x)?;
    let n = sums.len();
    if m < 2 {
        return Err(Error::domain(format!("burn-in m must be >= 2, got {m}")));
    }
    if m > n {
        return Err(Error::InsufficientData(format!(
            "burn-in m = {m} exceeds series length n = {n}"
        )));
    }
    let count = (n - m + 1) as f64;

    // Centered normal equations keep the solution accurate to machine
    // precision on exact power-law data.
    let mut mean_u = 0.0;
    let mut mean_v = 0.0;
    for k in m..=n {
        let t = sums[k - 1];
        if !(t > 0.0) {
            return Err(Error::domain(format!(
                "cumulative sum T_{k} = {t} is not positive; trend undefined"
            )));
        }
        mean_u += (k as f64).ln();
        mean_v += t.ln();
    }
    mean_u /= count;
    mean_v /= count;

    let mut suu = 0.0;
    let mut suv = 0.0;
    for k in m..=n {
        let du = (k as f64).ln() - mean_u;
        let dv = sums[k - 1].ln() - mean_v;
        suu += du * du;
        suv += du * dv;
    }
    if suu == 0.0 {
        return Err(Error::InsufficientData(
            "log k is constant on the fitted range; slope undefined".into(),
        ));
    }
    let beta_hat = suv / suu;
    let intercept = mean_v - beta_hat * mean_u;

    let mut sse = 0.0;
    for k in m..=n {
        let resid = sums[k - 1].ln() - beta_hat * (k as f64).ln() - intercept;
        sse += resid * resid;
    }

    Ok(TrendFit {
        a_hat: intercept.exp(),
        beta_hat,
        m,
        n,
        residual_sse: sse,
    })
}

/// The series T_k / k^β for k = 1..n, used to inspect stabilization of the
/// cumulative averages.
pub fn cumulative_average_series(x: &[f64], beta: f64) -> Result<Vec<f64>> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let sums = cumulative_sums(x)?;
    Ok(sums
        .iter()
        .enumerate()
        .map(|(i, &t)| t / ((i + 1) as f64).powf(beta))
        .collect())
}
