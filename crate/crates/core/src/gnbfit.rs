//! Fitting NB and GNB models to wet-period duration histograms.
//!
//! Durations are whole days, at least 1, while the GNB support starts at 0;
//! the model throughout is D = N + 1 with N GNB-distributed, so the model
//! mass at duration k is `gnb_pmf(k − 1)`. Fits minimize the ℓ1, ℓ2 or ℓ∞
//! distance between the histogram relative frequencies and the model pmf
//! with a deterministic multi-start simplex search; goodness of fit is the
//! Pearson chi-square test with cells pooled to expected counts of at
//! least 5.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dist::{gnb_pmf, gnb_truncation_index, nb_pmf, GGParams};
use crate::error::{Error, Result};
use crate::optim::{multi_start_nelder_mead, SimplexOptions};
use crate::special::gamma_q;

/// Distance used when matching a histogram against a model pmf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    L1,
    L2,
    Linf,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(Metric::L1),
            "l2" => Ok(Metric::L2),
            "linf" => Ok(Metric::Linf),
            other => Err(Error::Validation(format!(
                "unknown metric {other:?}, expected l1, l2 or linf"
            ))),
        }
    }
}

/// Histogram of wet-period durations (days, keys >= 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DurationHistogram {
    counts: BTreeMap<u32, u64>,
    total: u64,
}

impl DurationHistogram {
    pub fn from_counts(counts: BTreeMap<u32, u64>) -> Result<Self> {
        if counts.keys().any(|&k| k == 0) {
            return Err(Error::Validation("durations must be >= 1 day".into()));
        }
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::InsufficientData("empty histogram".into()));
        }
        Ok(Self { counts, total })
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn max_duration(&self) -> u32 {
        *self.counts.keys().next_back().expect("non-empty histogram")
    }

    /// Relative frequency of duration `k`.
    pub fn frequency(&self, k: u32) -> f64 {
        *self.counts.get(&k).unwrap_or(&0) as f64 / self.total as f64
    }
}

/// Count durations into a [`DurationHistogram`].
pub fn build_histogram(durations: &[u32]) -> Result<DurationHistogram> {
    if durations.is_empty() {
        return Err(Error::InsufficientData("no durations to histogram".into()));
    }
    let mut counts = BTreeMap::new();
    for &d in durations {
        if d == 0 {
            return Err(Error::Validation("durations must be >= 1 day".into()));
        }
        *counts.entry(d).or_insert(0u64) += 1;
    }
    DurationHistogram::from_counts(counts)
}

/// Model probability of a duration of `k` days (k >= 1): GNB mass at k − 1.
pub fn duration_pmf(k: u32, p: &GGParams) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("durations start at 1 day"));
    }
    gnb_pmf(u64::from(k) - 1, p)
}

/// Tail mass kept below this level when choosing the pmf evaluation range.
const PMF_TAIL_TOL: f64 = 1e-10;

/// Upper duration for pmf evaluation: the full truncation range when the
/// model tail is light, otherwise a bounded multiple of the observed support
/// (the ℓ1 distance still accounts for the remaining model mass exactly).
fn eval_range(h: &DurationHistogram, p: &GGParams) -> u32 {
    let cap = u64::from((4 * h.max_duration()).max(256));
    let trunc = gnb_truncation_index(p, PMF_TAIL_TOL)
        .map(|k| k + 1)
        .unwrap_or(cap);
    h.max_duration().max(trunc.min(cap) as u32)
}

/// Distance between histogram frequencies and the duration model under `p`.
///
/// Evaluated over the union of the histogram support and the model
/// truncation range. Beyond the evaluated range the histogram frequency is
/// zero, so the remaining model mass enters the ℓ1 sum exactly as is.
pub fn lp_distance(h: &DurationHistogram, p: &GGParams, metric: Metric) -> Result<f64> {
    p.validate()?;
    let k_max = eval_range(h, p);
    let mut model_mass = 0.0;
    let mut l1 = 0.0;
    let mut l2sq = 0.0;
    let mut linf = 0.0f64;
    for k in 1..=k_max {
        let pk = duration_pmf(k, p)?;
        model_mass += pk;
        let diff = (h.frequency(k) - pk).abs();
        l1 += diff;
        l2sq += diff * diff;
        linf = linf.max(diff);
    }
    match metric {
        Metric::L1 => Ok(l1 + (1.0 - model_mass).max(0.0)),
        Metric::L2 => Ok(l2sq.sqrt()),
        Metric::Linf => Ok(linf),
    }
}

/// Result of an NB or GNB fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    #[serde(flatten)]
    pub params: GGParams,
    pub metric: Metric,
    pub distance: f64,
    #[serde(skip)]
    pub fixed_r: Option<f64>,
    #[serde(rename = "pvalue")]
    pub chi_square_pvalue: f64,
}

/// How the NB parameters are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NbFitMethod {
    MaximumLikelihood,
    /// Matches the first two sample moments; fails when the sample variance
    /// does not exceed the mean.
    MomentMatching,
}

/// Fit the negative binomial model (γ = 1) to durations by maximum
/// likelihood on the shifted counts. The reported distance is ℓ1.
pub fn fit_nb(durations: &[u32]) -> Result<FitResult> {
    fit_nb_with_method(durations, NbFitMethod::MaximumLikelihood)
}

pub fn fit_nb_with_method(durations: &[u32], method: NbFitMethod) -> Result<FitResult> {
    let h = build_histogram(durations)?;
    let params = match method {
        NbFitMethod::MomentMatching => nb_moment_params(&h)?,
        NbFitMethod::MaximumLikelihood => {
            let mut nll = |theta: &[f64]| nb_nll(&h, theta);
            let mut starts: Vec<Vec<f64>> = vec![
                vec![0.5f64.ln(), 0.5f64.ln()],
                vec![0.5f64.ln(), 2.0f64.ln()],
                vec![2.0f64.ln(), 0.5f64.ln()],
                vec![2.0f64.ln(), 2.0f64.ln()],
            ];
            if let Ok(mm) = nb_moment_params(&h) {
                starts.push(vec![mm.r.ln(), mm.mu.ln()]);
            }
            let best = multi_start_nelder_mead(&mut nll, &starts, fit_options());
            if !best.f.is_finite() {
                return Err(Error::Optimizer(
                    "negative binomial likelihood is not finite at the optimum".into(),
                ));
            }
            GGParams::new(best.x[0].exp(), 1.0, best.x[1].exp())?
        }
    };
    let distance = lp_distance(&h, &params, Metric::L1)?;
    let pvalue = chi_square_gof(&h, &params, 2)?;
    Ok(FitResult {
        params,
        metric: Metric::L1,
        distance,
        fixed_r: None,
        chi_square_pvalue: pvalue,
    })
}

fn nb_moment_params(h: &DurationHistogram) -> Result<GGParams> {
    let n = h.total as f64;
    let mean: f64 = h
        .counts
        .iter()
        .map(|(&k, &c)| (k - 1) as f64 * c as f64)
        .sum::<f64>()
        / n;
    let m2: f64 = h
        .counts
        .iter()
        .map(|(&k, &c)| ((k - 1) as f64).powi(2) * c as f64)
        .sum::<f64>()
        / n;
    let var = m2 - mean * mean;
    if var <= mean || mean <= 0.0 {
        return Err(Error::Optimizer(format!(
            "moment matching needs overdispersed counts (mean {mean:.4}, var {var:.4})"
        )));
    }
    // mean = r/mu, var = r/mu + r/mu^2
    let mu = mean / (var - mean);
    let r = mean * mu;
    GGParams::new(r, 1.0, mu)
}

fn nb_nll(h: &DurationHistogram, theta: &[f64]) -> f64 {
    if theta.iter().any(|t| t.abs() > 14.0) {
        return f64::INFINITY;
    }
    let (r, mu) = (theta[0].exp(), theta[1].exp());
    let mut nll = 0.0;
    for (&k, &c) in h.counts() {
        match nb_pmf(u64::from(k) - 1, r, mu) {
            Ok(p) if p > 0.0 => nll -= c as f64 * p.ln(),
            _ => return f64::INFINITY,
        }
    }
    nll
}

fn fit_options() -> SimplexOptions {
    SimplexOptions {
        max_iterations: 4000,
        f_tol: 1e-9,
        x_tol: 1e-7,
        step: 0.4,
    }
}

/// Fit the GNB duration model by distance minimization.
///
/// With `fixed_r` the search runs over (γ, μ) and the shape stays exactly at
/// the given value (the fine-tuning protocol); otherwise all of (r, γ, μ)
/// are free. Deterministic: eight fixed multi-starts on a log-parameter
/// grid.
pub fn fit_gnb(h: &DurationHistogram, fixed_r: Option<f64>, metric: Metric) -> Result<FitResult> {
    fit_gnb_constrained(h, fixed_r, None, metric)
}

/// As [`fit_gnb`], optionally pinning γ as well (γ = 1 restricts the search
/// to the NB subfamily; used by the nesting checks).
pub fn fit_gnb_constrained(
    h: &DurationHistogram,
    fixed_r: Option<f64>,
    fixed_gamma: Option<f64>,
    metric: Metric,
) -> Result<FitResult> {
    if let Some(r) = fixed_r {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("fixed r must be positive, got {r}")));
        }
    }
    if let Some(g) = fixed_gamma {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::domain(format!(
                "fixed gamma must be positive, got {g}"
            )));
        }
    }

    let assemble = |theta: &[f64]| -> Option<GGParams> {
        if theta.iter().any(|t| t.abs() > 14.0) {
            return None;
        }
        let mut it = theta.iter();
        let r = fixed_r.unwrap_or_else(|| it.next().unwrap().exp());
        let gamma = fixed_gamma.unwrap_or_else(|| it.next().unwrap().exp());
        let mu = it.next().unwrap().exp();
        GGParams::new(r, gamma, mu).ok()
    };

    let mut objective = |theta: &[f64]| -> f64 {
        match assemble(theta) {
            Some(p) => lp_distance(h, &p, metric).unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    };

    // Eight deterministic multi-starts on a log grid over the free
    // parameters.
    let mut starts: Vec<Vec<f64>> = Vec::new();
    match (fixed_r.is_some(), fixed_gamma.is_some()) {
        (false, false) => {
            for r in [0.5f64, 2.0] {
                for g in [0.5f64, 2.0] {
                    for m in [0.25f64, 1.0] {
                        starts.push(vec![r.ln(), g.ln(), m.ln()]);
                    }
                }
            }
        }
        (true, false) => {
            for g in [0.5f64, 1.0, 2.0, 4.0] {
                for m in [0.25f64, 1.0] {
                    starts.push(vec![g.ln(), m.ln()]);
                }
            }
        }
        (false, true) => {
            for r in [0.25f64, 0.5, 1.0, 4.0] {
                for m in [0.25f64, 1.0] {
                    starts.push(vec![r.ln(), m.ln()]);
                }
            }
        }
        (true, true) => {
            for m in [0.1f64, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
                starts.push(vec![m.ln()]);
            }
        }
    }

    let best = multi_start_nelder_mead(&mut objective, &starts, fit_options());
    let params = assemble(&best.x).ok_or_else(|| {
        Error::Optimizer("simplex search ended outside the parameter domain".into())
    })?;
    if !best.f.is_finite() {
        return Err(Error::Optimizer(
            "distance objective not finite at the optimum".into(),
        ));
    }
    let n_fitted = 3 - usize::from(fixed_r.is_some()) - usize::from(fixed_gamma.is_some());
    let pvalue = chi_square_gof(h, &params, n_fitted)?;
    Ok(FitResult {
        params,
        metric,
        distance: best.f,
        fixed_r,
        chi_square_pvalue: pvalue,
    })
}

/// Pearson chi-square goodness-of-fit p-value of the duration model.
///
/// Cells are consecutive duration ranges pooled so every expected count is
/// at least 5, with the open tail folded into the last cell. Degrees of
/// freedom: pooled cells − 1 − `n_fitted_params`.
pub fn chi_square_gof(h: &DurationHistogram, p: &GGParams, n_fitted_params: usize) -> Result<f64> {
    p.validate()?;
    let n = h.total as f64;
    let k_max = eval_range(h, p);

    // (observed, expected) per pooled cell.
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    let mut mass = 0.0;
    for k in 1..=k_max {
        let pk = duration_pmf(k, p)?;
        mass += pk;
        acc_obs += h.frequency(k) * n;
        acc_exp += pk * n;
        if acc_exp >= 5.0 {
            cells.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    // Tail cell: everything past the evaluation range (observed mass there
    // is zero by construction of the range).
    acc_exp += (1.0 - mass).max(0.0) * n;
    if acc_exp > 0.0 || acc_obs > 0.0 {
        if acc_exp >= 5.0 || cells.is_empty() {
            cells.push((acc_obs, acc_exp));
        } else {
            let last = cells.last_mut().expect("non-empty");
            last.0 += acc_obs;
            last.1 += acc_exp;
        }
    }

    if cells.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "only {} pooled cell(s); need at least 2",
            cells.len()
        )));
    }
    let df = cells.len() as f64 - 1.0 - n_fitted_params as f64;
    if df < 1.0 {
        return Err(Error::InsufficientData(format!(
            "{} pooled cells leave no degrees of freedom after fitting {} parameters",
            cells.len(),
            n_fitted_params
        )));
    }
    let stat: f64 = cells
        .iter()
        .map(|&(o, e)| if e > 0.0 { (o - e).powi(2) / e } else { 0.0 })
        .sum();
    gamma_q(df / 2.0, stat / 2.0)
}
