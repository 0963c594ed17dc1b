//! The limit law M of the maximum daily precipitation within a wet period,
//! when the number of wet days follows a GNB law and daily volumes have a
//! regularly varying upper tail with index −α.
//!
//! The distribution function is the tempered mixture
//!
//! ```text
//! F(x; r, α, γ, λ) = ∫_0^∞ exp(−z x^{−α}) g*(z; r, γ, λ) dz,
//! ```
//!
//! equivalently the law of Ḡ_{r,αγ,λ} / W_α with independent factors. The
//! module evaluates F and its density by adaptive log-domain quadrature,
//! inverts F, draws from M through five product representations, computes
//! fractional moments in closed form, checks the mixed-exponential tail
//! representation by Monte Carlo, and simulates GNB random sums for the
//! law-of-large-numbers limit of total volumes.

use serde::{Deserialize, Serialize};

use crate::dist::samplers::normal_sample;
use crate::dist::{
    gg_sample, gnb_sample, sf_sample, stable_sample, weibull_sample, z_ratio_sample, GGParams,
};
use crate::error::{Error, Result};
use crate::ks::ks_statistic_cdf;
use crate::optim::{multi_start_nelder_mead, nelder_mead, SimplexOptions};
use crate::quad::concave_log_integral;
use crate::rng::Rng;
use crate::roots::{bisect_root, expand_upper};
use crate::special::{ln_gamma, ln_gamma_unchecked};

/// Parameters (r, α, γ, λ) of the extreme-value law M.
///
/// All strictly positive. `alpha` is the regular-variation index of the
/// daily-volume tail; (r, γ, λ) parameterize the GNB wet-day count model.
/// Representation-specific constraints (r ≤ 1, γ bounds, αγ ≤ 1) are
/// checked per operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeParams {
    pub r: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl ExtremeParams {
    pub fn new(r: f64, alpha: f64, gamma: f64, lambda: f64) -> Result<Self> {
        let p = Self {
            r,
            alpha,
            gamma,
            lambda,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("r", self.r),
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("lambda", self.lambda),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "extreme-law parameter {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// The GNB count-model parameters (r, γ, λ) as a GG triple.
    pub fn mixing(&self) -> GGParams {
        GGParams {
            r: self.r,
            gamma: self.gamma,
            mu: self.lambda,
        }
    }
}

const CDF_REL_TOL: f64 = 1e-11;

/// CDF of M at x ≥ 0 by adaptive quadrature; absolute error below 1e-9.
pub fn extreme_cdf(x: f64, p: &ExtremeParams) -> Result<f64> {
    p.validate()?;
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!(
            "extreme_cdf requires x >= 0, got {x}"
        )));
    }
    let s = x.powf(-p.alpha);
    if x == 0.0 || s.is_infinite() {
        return Ok(0.0);
    }
    // z = e^t: phi(t) = -s e^t + ln gamma + r ln lambda - ln G(r)
    //                   + gamma r t - lambda e^{gamma t}
    let c = p.gamma.ln() + p.r * p.lambda.ln() - ln_gamma_unchecked(p.r);
    let (gr, gamma, lambda) = (p.gamma * p.r, p.gamma, p.lambda);
    let phi = move |t: f64| c + gr * t - s * t.exp() - lambda * (gamma * t).exp();
    let dphi = move |t: f64| gr - s * t.exp() - lambda * gamma * (gamma * t).exp();
    Ok(concave_log_integral(phi, dphi, CDF_REL_TOL)?.clamp(0.0, 1.0))
}

/// Density of M at x > 0: α x^{−α−1} ∫ z e^{−z x^{−α}} g*(z; r, γ, λ) dz.
pub fn extreme_pdf(x: f64, p: &ExtremeParams) -> Result<f64> {
    p.validate()?;
    if !(x > 0.0) {
        return Err(Error::domain(format!("extreme_pdf requires x > 0, got {x}")));
    }
    let s = x.powf(-p.alpha);
    if s.is_infinite() {
        return Ok(0.0);
    }
    let c = p.gamma.ln() + p.r * p.lambda.ln() - ln_gamma_unchecked(p.r);
    let (gr, gamma, lambda) = (p.gamma * p.r, p.gamma, p.lambda);
    let phi = move |t: f64| c + (gr + 1.0) * t - s * t.exp() - lambda * (gamma * t).exp();
    let dphi = move |t: f64| gr + 1.0 - s * t.exp() - lambda * gamma * (gamma * t).exp();
    let integral = concave_log_integral(phi, dphi, CDF_REL_TOL)?;
    Ok(p.alpha * x.powf(-p.alpha - 1.0) * integral)
}

/// Quantile of M: the root of `extreme_cdf` = q, round-trip error ≤ 1e-8.
pub fn extreme_quantile(q: f64, p: &ExtremeParams) -> Result<f64> {
    p.validate()?;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!(
            "extreme_quantile requires q in (0, 1), got {q}"
        )));
    }
    let mut cdf = |x: f64| extreme_cdf(x, p).unwrap_or(f64::NAN);
    let hi = expand_upper(&mut cdf, 1.0, q, 2000)?;
    let mut f = |x: f64| cdf(x) - q;
    bisect_root(&mut f, 0.0, hi, 1e-11, 1e-12)
}

/// Product representations of M available for sampling.
///
/// `Direct` is the defining ratio Ḡ_{r,αγ,λ} / W_α and works for any valid
/// parameters; the others are scale mixtures valid under the listed
/// constraints (degenerate factors at the boundaries are the constant 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Ḡ_{r,αγ,λ} / W_α; any valid parameters.
    Direct,
    /// (λ Z_{r,1})^{−1/(αγ)} · W_{αγ} / W_α; requires r ∈ (0, 1].
    RatioWeibull,
    /// ((r/λ) S_{1/γ,1} Q_{r,1})^{1/(αγ)}; requires γ ≥ 1 so the stable
    /// exponent 1/γ lies in (0, 1].
    TemperedSf,
    /// λ^{−1/(αγ)} Π_α (S_{γ,1} Z_{r,1}^{1/γ})^{−1/α}; requires r ∈ (0, 1]
    /// and γ ∈ (0, 1].
    ParetoMix,
    /// |N| √(2W_1) / (λ^{1/(αγ)} W_α S_{αγ,1} Z_{r,1}^{1/(αγ)}); requires
    /// r ∈ (0, 1] and αγ ∈ (0, 1].
    FoldedNormal,
}

impl Representation {
    pub const ALL: [Representation; 5] = [
        Representation::Direct,
        Representation::RatioWeibull,
        Representation::TemperedSf,
        Representation::ParetoMix,
        Representation::FoldedNormal,
    ];

    /// Check this representation's parameter constraints, naming the failed
    /// one in the error.
    pub fn admissible(&self, p: &ExtremeParams) -> Result<()> {
        p.validate()?;
        let require = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{self:?} representation requires {what} (r={}, alpha={}, gamma={})",
                    p.r, p.alpha, p.gamma
                )))
            }
        };
        match self {
            Representation::Direct => Ok(()),
            Representation::RatioWeibull => require(p.r <= 1.0, "r in (0, 1]"),
            Representation::TemperedSf => require(p.gamma >= 1.0, "gamma >= 1"),
            Representation::ParetoMix => {
                require(p.r <= 1.0, "r in (0, 1]")?;
                require(p.gamma <= 1.0, "gamma in (0, 1]")
            }
            Representation::FoldedNormal => {
                require(p.r <= 1.0, "r in (0, 1]")?;
                require(p.alpha * p.gamma <= 1.0, "alpha*gamma in (0, 1]")
            }
        }
    }
}

impl std::str::FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Representation::Direct),
            "ratio-weibull" => Ok(Representation::RatioWeibull),
            "tempered-sf" => Ok(Representation::TemperedSf),
            "pareto-mix" => Ok(Representation::ParetoMix),
            "folded-normal" => Ok(Representation::FoldedNormal),
            other => Err(Error::Validation(format!(
                "unknown representation {other:?}"
            ))),
        }
    }
}

/// Z_{r,1} draw with the analytic limit 1 at r = 1.
fn z_or_one(r: f64, rng: &mut Rng) -> Result<f64> {
    if r == 1.0 {
        Ok(1.0)
    } else {
        z_ratio_sample(r, 1.0, rng)
    }
}

/// One draw of the Pareto-type variable with P(Π_α > x) = (x^α + 1)^{−1}.
fn pareto_pi_sample(alpha: f64, rng: &mut Rng) -> f64 {
    let u = rng.open01();
    (u / (1.0 - u)).powf(1.0 / alpha)
}

/// One draw of M through the chosen representation.
pub fn extreme_sample(p: &ExtremeParams, rng: &mut Rng, repr: Representation) -> Result<f64> {
    repr.admissible(p)?;
    let ag = p.alpha * p.gamma;
    match repr {
        Representation::Direct => {
            let num = gg_sample(
                &GGParams {
                    r: p.r,
                    gamma: ag,
                    mu: p.lambda,
                },
                rng,
            )?;
            Ok(num / weibull_sample(p.alpha, rng)?)
        }
        Representation::RatioWeibull => {
            let z = z_or_one(p.r, rng)?;
            let w_num = weibull_sample(ag, rng)?;
            let w_den = weibull_sample(p.alpha, rng)?;
            Ok((p.lambda * z).powf(-1.0 / ag) * w_num / w_den)
        }
        Representation::TemperedSf => {
            let s = stable_sample(1.0 / p.gamma, rng)?;
            let q = sf_sample(p.r, 1.0, rng)?;
            Ok((p.r / p.lambda * s * q).powf(1.0 / ag))
        }
        Representation::ParetoMix => {
            let pi = pareto_pi_sample(p.alpha, rng);
            let s = stable_sample(p.gamma, rng)?;
            let z = z_or_one(p.r, rng)?;
            Ok(p.lambda.powf(-1.0 / ag) * pi * (s * z.powf(1.0 / p.gamma)).powf(-1.0 / p.alpha))
        }
        Representation::FoldedNormal => {
            let x = normal_sample(rng).abs();
            let w1 = rng.exp1();
            let w_alpha = weibull_sample(p.alpha, rng)?;
            let s = stable_sample(ag, rng)?;
            let z = z_or_one(p.r, rng)?;
            Ok(x * (2.0 * w1).sqrt()
                / (p.lambda.powf(1.0 / ag) * w_alpha * s * z.powf(1.0 / ag)))
        }
    }
}

/// Fractional moment E M^δ for 0 < δ < α:
/// Γ(r + δ/(αγ)) Γ(1 − δ/α) / (λ^{δ/(αγ)} Γ(r)).
pub fn extreme_moment(delta: f64, p: &ExtremeParams) -> Result<f64> {
    p.validate()?;
    if !(delta > 0.0) {
        return Err(Error::domain(format!(
            "moment order must be positive, got {delta}"
        )));
    }
    if delta >= p.alpha {
        return Err(Error::domain(format!(
            "moment of order {delta} does not exist: delta must be below alpha = {}",
            p.alpha
        )));
    }
    let ag = p.alpha * p.gamma;
    let ln_m = ln_gamma(p.r + delta / ag)? + ln_gamma(1.0 - delta / p.alpha)?
        - (delta / ag) * p.lambda.ln()
        - ln_gamma(p.r)?;
    Ok(ln_m.exp())
}

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_draws: usize,
}

/// Monte-Carlo check of the mixed-exponential tail representation:
/// 1 − F(x) = E exp(−x U) with U = λ^{1/(αγ)} W_α S_{αγ,1} Z_{r,1}^{1/(αγ)}.
///
/// Requires r ∈ (0, 1] and αγ ∈ (0, 1].
pub fn mixed_exp_tail(
    x: f64,
    p: &ExtremeParams,
    n_draws: usize,
    rng: &mut Rng,
) -> Result<MonteCarloEstimate> {
    p.validate()?;
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "mixed_exp_tail requires x > 0, got {x}"
        )));
    }
    let ag = p.alpha * p.gamma;
    if p.r > 1.0 {
        return Err(Error::domain(format!(
            "mixed-exponential form requires r in (0, 1], got r = {}",
            p.r
        )));
    }
    if ag > 1.0 {
        return Err(Error::domain(format!(
            "mixed-exponential form requires alpha*gamma in (0, 1], got {ag}"
        )));
    }
    if n_draws == 0 {
        return Err(Error::domain("n_draws must be positive".to_string()));
    }
    let scale = p.lambda.powf(1.0 / ag);
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n_draws {
        let u = scale
            * weibull_sample(p.alpha, rng)?
            * stable_sample(ag, rng)?
            * z_or_one(p.r, rng)?.powf(1.0 / ag);
        let v = (-x * u).exp();
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / n_draws as f64;
    let var = (sumsq / n_draws as f64 - mean * mean).max(0.0);
    Ok(MonteCarloEstimate {
        value: mean,
        std_error: (var / n_draws as f64).sqrt(),
        n_draws,
    })
}

/// One GNB random sum: draw N from the count model, then add N summand
/// draws. `count_params` maps (r, α, μ_n) onto the GG triple (r, γ=α, μ=μ_n).
pub fn random_sum_sample(
    count_params: &GGParams,
    mut summand: impl FnMut(&mut Rng) -> f64,
    rng: &mut Rng,
) -> Result<f64> {
    let n = gnb_sample(count_params, rng)?;
    let mut total = 0.0;
    for _ in 0..n {
        let x = summand(rng);
        if x < 0.0 {
            return Err(Error::domain(format!(
                "random-sum summands must be nonnegative, got {x}"
            )));
        }
        total += x;
    }
    Ok(total)
}

/// Heuristic tail-index estimate (Hill estimator over the top order
/// statistics). Used only to initialize [`fit_extreme`].
pub fn hill_tail_index(data: &[f64]) -> Result<f64> {
    if data.len() < 20 {
        return Err(Error::InsufficientData(format!(
            "tail estimation needs at least 20 points, got {}",
            data.len()
        )));
    }
    if data.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::domain(
            "tail estimation requires strictly positive data".to_string(),
        ));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let k = (data.len() / 10).clamp(10, 500);
    let x_k = sorted[k];
    let mean_log_excess: f64 =
        sorted[..k].iter().map(|x| (x / x_k).ln()).sum::<f64>() / k as f64;
    if mean_log_excess <= 0.0 {
        return Err(Error::Optimizer(
            "degenerate upper tail: Hill estimate undefined".to_string(),
        ));
    }
    Ok(1.0 / mean_log_excess)
}

/// Estimate (r, α, γ, λ) from maxima data.
///
/// Three stages: a Hill tail estimate for α, moment matching on the
/// fractional orders (0.25, 0.5, 0.75)·α̂ for (r, γ, λ), then a simplex
/// refinement of the quadrature CDF against the empirical CDF in ℓ2 over all
/// four parameters. A pragmatic estimator, not a claimed-optimal one.
pub fn fit_extreme(data: &[f64]) -> Result<ExtremeParams> {
    let alpha0 = hill_tail_index(data)?;
    let n = data.len() as f64;

    // Stage 2: match fractional sample moments at fixed alpha.
    let deltas = [0.25 * alpha0, 0.5 * alpha0, 0.75 * alpha0];
    let sample_moments: Vec<f64> = deltas
        .iter()
        .map(|&d| data.iter().map(|x| x.powf(d)).sum::<f64>() / n)
        .collect();
    let mut moment_obj = |theta: &[f64]| -> f64 {
        if theta.iter().any(|t| t.abs() > 12.0) {
            return f64::INFINITY;
        }
        let p = ExtremeParams {
            r: theta[0].exp(),
            alpha: alpha0,
            gamma: theta[1].exp(),
            lambda: theta[2].exp(),
        };
        let mut sse = 0.0;
        for (&d, &m) in deltas.iter().zip(&sample_moments) {
            match extreme_moment(d, &p) {
                Ok(v) if v > 0.0 && m > 0.0 => sse += (v.ln() - m.ln()).powi(2),
                _ => return f64::INFINITY,
            }
        }
        sse
    };
    let starts: Vec<Vec<f64>> = [0.5f64, 2.0]
        .iter()
        .flat_map(|&r| {
            [0.5f64, 2.0].iter().flat_map(move |&g| {
                [0.5f64, 2.0]
                    .iter()
                    .map(move |&l| vec![r.ln(), g.ln(), l.ln()])
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let mm = multi_start_nelder_mead(&mut moment_obj, &starts, SimplexOptions::default());

    // Stage 3: refine all four parameters against the empirical CDF.
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m_grid = 80.min(sorted.len());
    let grid: Vec<(f64, f64)> = (0..m_grid)
        .map(|j| {
            let idx = ((j as f64 + 0.5) / m_grid as f64 * n) as usize;
            let idx = idx.min(sorted.len() - 1);
            (sorted[idx], (idx as f64 + 0.5) / n)
        })
        .collect();
    let mut cdf_obj = |theta: &[f64]| -> f64 {
        if theta.iter().any(|t| t.abs() > 12.0) {
            return f64::INFINITY;
        }
        let p = ExtremeParams {
            r: theta[0].exp(),
            alpha: theta[1].exp(),
            gamma: theta[2].exp(),
            lambda: theta[3].exp(),
        };
        let mut sse = 0.0;
        for &(x, target) in &grid {
            match extreme_cdf(x, &p) {
                Ok(f) => sse += (f - target).powi(2),
                Err(_) => return f64::INFINITY,
            }
        }
        sse
    };
    let start = vec![mm.x[0], alpha0.ln(), mm.x[1], mm.x[2]];
    let refined = nelder_mead(
        &mut cdf_obj,
        &start,
        SimplexOptions {
            max_iterations: 600,
            f_tol: 1e-9,
            x_tol: 1e-6,
            step: 0.25,
        },
    );
    if !refined.f.is_finite() {
        return Err(Error::Optimizer(
            "extreme-law fit did not reach a finite objective".to_string(),
        ));
    }
    ExtremeParams::new(
        refined.x[0].exp(),
        refined.x[1].exp(),
        refined.x[2].exp(),
        refined.x[3].exp(),
    )
}

/// KS distance between `draws` and the quadrature CDF (used by the
/// verification suites).
pub fn ks_against_cdf(draws: Vec<f64>, p: &ExtremeParams) -> Result<f64> {
    p.validate()?;
    Ok(ks_statistic_cdf(draws, |x| {
        extreme_cdf(x.max(0.0), p).unwrap_or(f64::NAN)
    }))
}
