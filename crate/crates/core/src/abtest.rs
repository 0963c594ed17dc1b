//! Abnormality test for total wet-period precipitation and the
//! moving-window extremity scan.
//!
//! If the m volumes in a window are an i.i.d. sample from the GG law with
//! shape r and power γ, the γ-th powers are gamma distributed and the
//! relative contribution of one designated observation,
//!
//! ```text
//! SR = (m − 1) V_1^γ / (V_2^γ + … + V_m^γ),
//! ```
//!
//! follows the Snedecor–Fisher law with parameters (r, (m−1)r) in the
//! gamma-ratio convention. γ = 1 is the classical SR test. The practical
//! test puts the window maximum in the V_1 role; the scan slides a window
//! across consecutive wet periods and grades each period by how many of the
//! windows containing it flag it as abnormal.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{gg_sample, sf_quantile, GGParams};
use crate::error::{Error, Result};
use crate::optim::{multi_start_nelder_mead, SimplexOptions};
use crate::rng::Rng;
use crate::special::ln_gamma_unchecked;

/// Outcome of one abnormality test.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TestDecision {
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha_level: f64,
    pub reject: bool,
    /// Numerator Snedecor–Fisher parameter (= r).
    pub d1: f64,
    /// Denominator Snedecor–Fisher parameter (= (m−1) r).
    pub d2: f64,
}

/// Extremity grade of one wet period under the moving-window vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremityClass {
    Absolute,
    Intermediate,
    Relative,
    #[serde(rename = "none")]
    NotExtreme,
}

impl ExtremityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremityClass::Absolute => "absolute",
            ExtremityClass::Intermediate => "intermediate",
            ExtremityClass::Relative => "relative",
            ExtremityClass::NotExtreme => "none",
        }
    }
}

fn validate_window(volumes: &[f64], gamma: f64) -> Result<()> {
    if volumes.len() < 2 {
        return Err(Error::domain(format!(
            "the test needs at least 2 volumes, got {}",
            volumes.len()
        )));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
    }
    for (i, &v) in volumes.iter().enumerate() {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain(format!(
                "volumes must be strictly positive; found {v} at index {i}"
            )));
        }
    }
    Ok(())
}

/// Index of the window maximum; ties break toward the earliest index.
fn argmax(volumes: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in volumes.iter().enumerate().skip(1) {
        if v > volumes[best] {
            best = i;
        }
    }
    best
}

/// Relative contribution of the designated observation `volumes[0]`:
/// (m − 1) v_0^γ / Σ_{j≥1} v_j^γ.
///
/// This is the pivotal quantity whose null law is Snedecor–Fisher with
/// parameters (r, (m−1)r); its rejection probability under homogeneity is
/// exactly the significance level.
pub fn relative_contribution(volumes: &[f64], gamma: f64) -> Result<f64> {
    validate_window(volumes, gamma)?;
    contribution_of(volumes, 0, gamma)
}

/// SR statistic of a window: the relative contribution of the window
/// maximum (the observation under suspicion). Ties break to the earliest
/// index. γ = 1 is the classical SR statistic.
pub fn sr_statistic(volumes: &[f64], gamma: f64) -> Result<f64> {
    validate_window(volumes, gamma)?;
    contribution_of(volumes, argmax(volumes), gamma)
}

/// Shared core: (m−1) v_i^γ / Σ_{j≠i} v_j^γ, computed on volumes normalized
/// by the window maximum so that rescaling the window leaves the value
/// bit-stable.
fn contribution_of(volumes: &[f64], index: usize, gamma: f64) -> Result<f64> {
    let vmax = volumes[argmax(volumes)];
    let powered: Vec<f64> = volumes.iter().map(|v| (v / vmax).powf(gamma)).collect();
    let rest: f64 = powered
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, p)| p)
        .sum();
    Ok((volumes.len() - 1) as f64 * powered[index] / rest)
}

/// Critical value of the test: the (1 − α) quantile of the Snedecor–Fisher
/// law with parameters (r, (m−1) r).
pub fn critical_value(window_len: usize, r: f64, alpha_level: f64) -> Result<f64> {
    if window_len < 2 {
        return Err(Error::domain(format!(
            "window length must be at least 2, got {window_len}"
        )));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("r must be positive, got {r}")));
    }
    if !(alpha_level > 0.0 && alpha_level < 1.0) {
        return Err(Error::domain(format!(
            "significance level must lie in (0, 1), got {alpha_level}"
        )));
    }
    let d2 = (window_len - 1) as f64 * r;
    sf_quantile(1.0 - alpha_level, r, d2)
}

/// Test whether the largest volume of the window is abnormally heavy.
pub fn test_abnormal(
    volumes: &[f64],
    r: f64,
    gamma: f64,
    alpha_level: f64,
) -> Result<TestDecision> {
    let statistic = sr_statistic(volumes, gamma)?;
    let crit = critical_value(volumes.len(), r, alpha_level)?;
    Ok(TestDecision {
        statistic,
        critical_value: crit,
        alpha_level,
        reject: statistic > crit,
        d1: r,
        d2: (volumes.len() - 1) as f64 * r,
    })
}

/// Per-period outcome of the moving-window scan.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PeriodExtremity {
    pub class: ExtremityClass,
    /// Windows that flagged this period (contain it, it is their maximum,
    /// and the test rejects).
    pub votes: usize,
    /// Windows containing this period (window_m in the interior, fewer at
    /// the edges).
    pub windows_containing: usize,
}

/// Slide a window of `window_m` consecutive periods over the volume series
/// and grade each period.
///
/// A window votes for period i when i lies in the window, is the window
/// maximum, and the window's test rejects homogeneity. With c votes out of
/// w containing windows: Absolute when c = w, Intermediate when c > w/2,
/// Relative when c ≥ 1, otherwise NotExtreme. Only full windows are
/// evaluated; edge periods simply have w < window_m.
///
/// Windows are evaluated in parallel; the result does not depend on the
/// worker count.
pub fn moving_window_scan(
    volumes: &[f64],
    window_m: usize,
    r: f64,
    gamma: f64,
    alpha_level: f64,
) -> Result<Vec<PeriodExtremity>> {
    if window_m < 2 {
        return Err(Error::domain(format!(
            "window size must be at least 2, got {window_m}"
        )));
    }
    if volumes.len() < window_m {
        return Err(Error::domain(format!(
            "series of {} periods is shorter than the window ({window_m})",
            volumes.len()
        )));
    }
    validate_window(&volumes[..window_m.min(volumes.len())], gamma)?;
    validate_window(volumes, gamma)?;
    let crit = critical_value(window_m, r, alpha_level)?;

    let n_windows = volumes.len() - window_m + 1;
    // Each window contributes at most one vote: for its maximum.
    let votes_per_window: Vec<Option<usize>> = (0..n_windows)
        .into_par_iter()
        .map(|w| {
            let window = &volumes[w..w + window_m];
            let local_max = argmax(window);
            let stat = contribution_of(window, local_max, gamma).expect("validated window");
            (stat > crit).then_some(w + local_max)
        })
        .collect();

    let mut votes = vec![0usize; volumes.len()];
    for flagged in votes_per_window.into_iter().flatten() {
        votes[flagged] += 1;
    }

    let last_start = volumes.len() - window_m;
    let result = votes
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let first = i.saturating_sub(window_m - 1).min(last_start);
            let last = i.min(last_start);
            let w = last - first + 1;
            let class = if c == w && c > 0 {
                ExtremityClass::Absolute
            } else if 2 * c > w {
                ExtremityClass::Intermediate
            } else if c >= 1 {
                ExtremityClass::Relative
            } else {
                ExtremityClass::NotExtreme
            };
            PeriodExtremity {
                class,
                votes: c,
                windows_containing: w,
            }
        })
        .collect();
    Ok(result)
}

/// Classes only, in period order.
pub fn moving_window_classify(
    volumes: &[f64],
    window_m: usize,
    r: f64,
    gamma: f64,
    alpha_level: f64,
) -> Result<Vec<ExtremityClass>> {
    Ok(moving_window_scan(volumes, window_m, r, gamma, alpha_level)?
        .into_iter()
        .map(|p| p.class)
        .collect())
}

/// Maximum-likelihood GG fit for wet-period total volumes; supplies the
/// (r, γ) pair the scan needs when none is given explicitly.
pub fn fit_volume_params(volumes: &[f64]) -> Result<GGParams> {
    if volumes.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "GG fit needs at least 10 volumes, got {}",
            volumes.len()
        )));
    }
    for &v in volumes {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Validation(format!(
                "volumes must be strictly positive, found {v}"
            )));
        }
    }
    let n = volumes.len() as f64;
    let sum_ln: f64 = volumes.iter().map(|v| v.ln()).sum();
    let mut nll = |theta: &[f64]| -> f64 {
        if theta.iter().any(|t| t.abs() > 12.0) {
            return f64::INFINITY;
        }
        let (r, gamma, mu) = (theta[0].exp(), theta[1].exp(), theta[2].exp());
        // -log-likelihood of the GG density.
        let mut sum_pow = 0.0;
        for &v in volumes {
            sum_pow += v.powf(gamma);
            if !sum_pow.is_finite() {
                return f64::INFINITY;
            }
        }
        let ln_c = gamma.ln() + r * mu.ln() - ln_gamma_unchecked(r);
        -(n * ln_c + (gamma * r - 1.0) * sum_ln - mu * sum_pow)
    };
    let mut starts = Vec::new();
    for r in [0.5f64, 2.0] {
        for g in [0.7f64, 1.4] {
            for mu in [0.5f64, 2.0] {
                starts.push(vec![r.ln(), g.ln(), mu.ln()]);
            }
        }
    }
    let best = multi_start_nelder_mead(
        &mut nll,
        &starts,
        SimplexOptions {
            max_iterations: 6000,
            f_tol: 1e-10,
            x_tol: 1e-8,
            step: 0.4,
        },
    );
    if !best.f.is_finite() {
        return Err(Error::Optimizer(
            "GG likelihood not finite at the optimum".into(),
        ));
    }
    GGParams::new(best.x[0].exp(), best.x[1].exp(), best.x[2].exp())
}

/// Convenience for tests and the calibration suite: draw one homogeneous
/// window of GG volumes.
pub fn simulate_gg_window(p: &GGParams, m: usize, rng: &mut Rng) -> Result<Vec<f64>> {
    (0..m).map(|_| gg_sample(p, rng)).collect()
}
