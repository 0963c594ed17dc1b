//! Command-line interface: every subcommand reads plain CSV/JSON and writes
//! plot-ready CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage error (from the argument parser), 3 data
//! validation/parse failure, 4 numerical failure. Any failure prints a
//! one-line machine-readable JSON object to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::abtest::{fit_volume_params, moving_window_scan};
use crate::dist::{
    gg_cdf, gg_pdf, gg_quantile, gg_sample, gnb_pmf, gnb_sample, gnb_truncation_index, GGParams,
};
use crate::error::{Error, Result};
use crate::extremes::{
    extreme_cdf, extreme_moment, extreme_pdf, extreme_quantile, extreme_sample, ExtremeParams,
    Representation,
};
use crate::gnbfit::{
    build_histogram, duration_pmf, fit_gnb, fit_nb_with_method, Metric, NbFitMethod,
};
use crate::pipeline::{parse_daily_csv, segment_wet_periods, CsvConfig, DailySeries, WetPeriod};
use crate::rng::Rng;
use crate::special::{ln_gamma, ln_gamma_unchecked};
use crate::trend::{cumulative_average_series, estimate_trend};
use crate::CSV_VERSION_HEADER;

#[derive(Debug, Parser)]
#[command(
    name = "precip-glaw",
    version,
    about = "Generalized-gamma models for precipitation: duration and volume fits, \
             extreme-value law, trend estimation and abnormality scans"
)]
pub struct Cli {
    /// Optional JSON config file with input-parsing defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Input-file options shared by the data-driven subcommands.
#[derive(Debug, Clone, Args)]
pub struct InputOpts {
    /// Daily precipitation CSV (date, mm).
    #[arg(long)]
    pub input: PathBuf,

    /// Wet-day threshold in mm: a day is wet when its volume exceeds this.
    #[arg(long)]
    pub wet_threshold: Option<f64>,

    /// Field delimiter.
    #[arg(long)]
    pub delimiter: Option<char>,

    /// Token marking missing values.
    #[arg(long)]
    pub missing_token: Option<String>,

    /// What to do with missing values: reject or gap.
    #[arg(long)]
    pub missing_policy: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit NB and GNB models to wet-period durations.
    FitDuration {
        #[command(flatten)]
        input: InputOpts,
        /// Pin the GNB shape parameter; defaults to the NB-fitted shape.
        #[arg(long)]
        fixed_r: Option<f64>,
        /// Distance to minimize: l1, l2 or linf.
        #[arg(long, default_value = "l1")]
        metric: String,
        /// NB estimation method: mle or moments.
        #[arg(long, default_value = "mle")]
        nb_method: String,
        /// Write the histogram-vs-model table here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Write the fit JSON here instead of stdout.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Maximum-likelihood GG fit of wet-period total volumes.
    FitVolume {
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Estimate the growth law of cumulative daily precipitation.
    Trend {
        #[command(flatten)]
        input: InputOpts,
        /// Burn-in index of the least-squares fit.
        #[arg(long, default_value_t = 3000)]
        m: usize,
        /// Exponent for the emitted cumulative-average series
        /// (default: the fitted one).
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Moving-window abnormality scan of wet-period total volumes.
    Scan {
        #[command(flatten)]
        input: InputOpts,
        /// Window size in wet periods.
        #[arg(long, default_value_t = 360)]
        window: usize,
        /// Significance level of each window test.
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        /// GG power parameter; defaults to the volume-fit estimate.
        #[arg(long)]
        gamma: Option<f64>,
        /// GG shape parameter; defaults to the volume-fit estimate.
        #[arg(long)]
        r: Option<f64>,
        /// Run the classical test (forces gamma = 1).
        #[arg(long)]
        classic: bool,
        /// Worker threads for window evaluation (default: rayon's choice).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Evaluate a distribution: pdf/pmf, cdf, quantile or moment.
    Dist {
        /// gg, gnb or extreme.
        #[arg(long)]
        family: String,
        /// pdf, cdf, quantile or moment.
        #[arg(long)]
        op: String,
        /// Parameter JSON: {"r":..,"gamma":..,"mu":..} for gg/gnb,
        /// {"r":..,"alpha":..,"gamma":..,"lambda":..} for extreme.
        #[arg(long)]
        params: String,
        /// Evaluation points for pdf/cdf (comma-separated).
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
        /// Probability levels for quantile (comma-separated).
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        /// Moment order.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Draw reproducible samples from gg, gnb or the extreme-value law.
    Simulate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Sampler representation for the extreme family
        /// (direct, ratio-weibull, tempered-sf, pareto-mix, folded-normal).
        #[arg(long, default_value = "direct")]
        repr: String,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

/// Defaults loadable from a JSON config file; flags win over file values.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default)]
pub struct FileConfig {
    pub delimiter: Option<char>,
    pub missing_token: Option<String>,
    pub missing_policy: Option<String>,
    pub wet_threshold_mm: Option<f64>,
}

/// Run the parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            let code = e.exit_code();
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "code": code })
            );
            code
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let file_cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<FileConfig>(&text)?
        }
        None => FileConfig::default(),
    };
    match cli.command {
        Command::FitDuration {
            input,
            fixed_r,
            metric,
            nb_method,
            csv_out,
            json_out,
        } => fit_duration_cmd(
            &input, &file_cfg, fixed_r, &metric, &nb_method, csv_out, json_out,
        ),
        Command::FitVolume { input, json_out } => fit_volume_cmd(&input, &file_cfg, json_out),
        Command::Trend {
            input,
            m,
            beta,
            csv_out,
            json_out,
        } => trend_cmd(&input, &file_cfg, m, beta, csv_out, json_out),
        Command::Scan {
            input,
            window,
            alpha,
            gamma,
            r,
            classic,
            workers,
            csv_out,
        } => scan_cmd(
            &input, &file_cfg, window, alpha, gamma, r, classic, workers, csv_out,
        ),
        Command::Dist {
            family,
            op,
            params,
            x,
            q,
            delta,
            csv_out,
        } => dist_cmd(&family, &op, &params, &x, &q, delta, csv_out),
        Command::Simulate {
            family,
            params,
            n,
            seed,
            repr,
            csv_out,
        } => simulate_cmd(&family, &params, n, seed, &repr, csv_out),
    }
}

fn missing_policy_from(s: &str) -> Result<crate::pipeline::MissingPolicy> {
    match s {
        "reject" => Ok(crate::pipeline::MissingPolicy::Reject),
        "gap" => Ok(crate::pipeline::MissingPolicy::Gap),
        other => Err(Error::Validation(format!(
            "unknown missing-value policy {other:?}, expected reject or gap"
        ))),
    }
}

struct LoadedSeries {
    series: DailySeries,
    wet_threshold: f64,
}

fn load_series(input: &InputOpts, file_cfg: &FileConfig) -> Result<LoadedSeries> {
    let mut csv_cfg = CsvConfig::default();
    if let Some(d) = file_cfg.delimiter {
        csv_cfg.delimiter = d;
    }
    if let Some(d) = input.delimiter {
        csv_cfg.delimiter = d;
    }
    if let Some(t) = &file_cfg.missing_token {
        csv_cfg.missing_token = Some(t.clone());
    }
    if let Some(t) = &input.missing_token {
        csv_cfg.missing_token = Some(t.clone());
    }
    if let Some(p) = &file_cfg.missing_policy {
        csv_cfg.missing_policy = missing_policy_from(p)?;
    }
    if let Some(p) = &input.missing_policy {
        csv_cfg.missing_policy = missing_policy_from(p)?;
    }
    let wet_threshold = input
        .wet_threshold
        .or(file_cfg.wet_threshold_mm)
        .unwrap_or(0.0);
    let series = parse_daily_csv(&input.input, &csv_cfg)?;
    Ok(LoadedSeries {
        series,
        wet_threshold,
    })
}

fn wet_periods(loaded: &LoadedSeries) -> Result<Vec<WetPeriod>> {
    let periods = segment_wet_periods(&loaded.series, loaded.wet_threshold)?;
    if periods.is_empty() {
        return Err(Error::InsufficientData(
            "no wet periods above the threshold".into(),
        ));
    }
    Ok(periods)
}

fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(path, &text)
}

fn fit_duration_cmd(
    input: &InputOpts,
    file_cfg: &FileConfig,
    fixed_r: Option<f64>,
    metric: &str,
    nb_method: &str,
    csv_out: Option<PathBuf>,
    json_out: Option<PathBuf>,
) -> Result<()> {
    let metric: Metric = metric.parse()?;
    let nb_method = match nb_method {
        "mle" => NbFitMethod::MaximumLikelihood,
        "moments" => NbFitMethod::MomentMatching,
        other => {
            return Err(Error::Validation(format!(
                "unknown NB method {other:?}, expected mle or moments"
            )))
        }
    };
    let loaded = load_series(input, file_cfg)?;
    let durations: Vec<u32> = wet_periods(&loaded)?
        .iter()
        .map(|p| p.duration_days)
        .collect();

    let nb = fit_nb_with_method(&durations, nb_method)?;
    let r = fixed_r.unwrap_or(nb.params.r);
    let h = build_histogram(&durations)?;
    let gnb = fit_gnb(&h, Some(r), metric)?;

    if let Some(csv_path) = &csv_out {
        // Follow the model tail a little past the data, but stay bounded
        // even for heavy-tailed fits.
        let cap = u64::from((4 * h.max_duration()).max(256));
        let k_hi = h
            .max_duration()
            .max(gnb_truncation_index(&gnb.params, 1e-8).map_or(0, |k| k.min(cap) as u32 + 1));
        let mut out = String::new();
        let _ = writeln!(out, "{CSV_VERSION_HEADER}");
        let _ = writeln!(out, "duration_days,frequency,nb_pmf,gnb_pmf");
        for k in 1..=k_hi {
            let _ = writeln!(
                out,
                "{k},{:?},{:?},{:?}",
                h.frequency(k),
                duration_pmf(k, &nb.params)?,
                duration_pmf(k, &gnb.params)?
            );
        }
        emit(Some(csv_path), &out)?;
    }
    emit_json(json_out.as_deref(), &gnb)
}

fn fit_volume_cmd(
    input: &InputOpts,
    file_cfg: &FileConfig,
    json_out: Option<PathBuf>,
) -> Result<()> {
    let loaded = load_series(input, file_cfg)?;
    let volumes: Vec<f64> = wet_periods(&loaded)?
        .iter()
        .map(|p| p.total_volume_mm)
        .collect();
    let params = fit_volume_params(&volumes)?;
    emit_json(json_out.as_deref(), &params)
}

fn trend_cmd(
    input: &InputOpts,
    file_cfg: &FileConfig,
    m: usize,
    beta: Option<f64>,
    csv_out: Option<PathBuf>,
    json_out: Option<PathBuf>,
) -> Result<()> {
    let loaded = load_series(input, file_cfg)?;
    // The growth law concerns nonzero daily volumes only.
    let nonzero: Vec<f64> = loaded
        .series
        .precip_mm
        .iter()
        .copied()
        .filter(|&v| v > 0.0)
        .collect();
    if nonzero.is_empty() {
        return Err(Error::InsufficientData("no nonzero daily volumes".into()));
    }
    let fit = estimate_trend(&nonzero, m)?;
    if let Some(csv_path) = &csv_out {
        let series = cumulative_average_series(&nonzero, beta.unwrap_or(fit.beta_hat))?;
        let mut out = String::new();
        let _ = writeln!(out, "{CSV_VERSION_HEADER}");
        let _ = writeln!(out, "k,cumulative_average");
        for (i, v) in series.iter().enumerate() {
            let _ = writeln!(out, "{},{v:?}", i + 1);
        }
        emit(Some(csv_path), &out)?;
    }
    emit_json(json_out.as_deref(), &fit)
}

#[allow(clippy::too_many_arguments)]
fn scan_cmd(
    input: &InputOpts,
    file_cfg: &FileConfig,
    window: usize,
    alpha: f64,
    gamma: Option<f64>,
    r: Option<f64>,
    classic: bool,
    workers: Option<usize>,
    csv_out: Option<PathBuf>,
) -> Result<()> {
    let loaded = load_series(input, file_cfg)?;
    let periods = wet_periods(&loaded)?;
    let volumes: Vec<f64> = periods.iter().map(|p| p.total_volume_mm).collect();

    // Model parameters: explicit flags win, anything missing comes from the
    // GG volume fit.
    let (fit_r, fit_gamma) = if r.is_none() || (gamma.is_none() && !classic) {
        let fitted = fit_volume_params(&volumes)?;
        (fitted.r, fitted.gamma)
    } else {
        (0.0, 0.0)
    };
    let r = r.unwrap_or(fit_r);
    let gamma = if classic { 1.0 } else { gamma.unwrap_or(fit_gamma) };

    let scan = match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Validation(format!("worker pool: {e}")))?;
            pool.install(|| moving_window_scan(&volumes, window, r, gamma, alpha))?
        }
        None => moving_window_scan(&volumes, window, r, gamma, alpha)?,
    };

    let mut out = String::new();
    let _ = writeln!(out, "{CSV_VERSION_HEADER}");
    let _ = writeln!(
        out,
        "period_index,start_date,total_volume_mm,class,votes,windows_containing"
    );
    for (i, (p, sc)) in periods.iter().zip(&scan).enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{:?},{},{},{}",
            loaded.series.dates[p.start_index],
            p.total_volume_mm,
            sc.class.as_str(),
            sc.votes,
            sc.windows_containing
        );
    }
    emit(csv_out.as_deref(), &out)
}

fn gg_params_from_json(text: &str) -> Result<GGParams> {
    let p: GGParams = serde_json::from_str(text)?;
    p.validate()?;
    Ok(p)
}

/// Per-value pmf scans stop here; heavy-tailed parameter sets whose support
/// extends further are refused rather than ground through.
const PMF_SCAN_LIMIT: u64 = 200_000;

fn bounded_pmf_scan_cap(p: &GGParams) -> Result<u64> {
    let cap = gnb_truncation_index(p, 1e-12)?;
    if cap > PMF_SCAN_LIMIT {
        return Err(Error::Quadrature(format!(
            "pmf support to tolerance extends past k = {cap}; \
             this exceeds the per-call scan limit of {PMF_SCAN_LIMIT}"
        )));
    }
    Ok(cap)
}

fn extreme_params_from_json(text: &str) -> Result<ExtremeParams> {
    let p: ExtremeParams = serde_json::from_str(text)?;
    p.validate()?;
    Ok(p)
}

/// Closed-form fractional moment of the GG law:
/// E X^δ = Γ(r + δ/γ) / (μ^{δ/γ} Γ(r)), defined when r + δ/γ > 0.
fn gg_moment(delta: f64, p: &GGParams) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!(
            "moment order must be positive, got {delta}"
        )));
    }
    let shifted = p.r + delta / p.gamma;
    if !(shifted > 0.0) {
        return Err(Error::domain(format!(
            "moment of order {delta} does not exist for gamma = {}, r = {}",
            p.gamma, p.r
        )));
    }
    Ok((ln_gamma(shifted)? - ln_gamma_unchecked(p.r) - delta / p.gamma * p.mu.ln()).exp())
}

fn format_table(header: &str, rows: &[(f64, f64)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_VERSION_HEADER}");
    let _ = writeln!(out, "{header}");
    for (a, b) in rows {
        let _ = writeln!(out, "{a:?},{b:?}");
    }
    out
}

fn dist_cmd(
    family: &str,
    op: &str,
    params: &str,
    x: &[f64],
    q: &[f64],
    delta: Option<f64>,
    csv_out: Option<PathBuf>,
) -> Result<()> {
    let need_x = || -> Result<&[f64]> {
        if x.is_empty() {
            Err(Error::Validation(
                "this operation needs at least one --x value".into(),
            ))
        } else {
            Ok(x)
        }
    };
    let need_q = || -> Result<&[f64]> {
        if q.is_empty() {
            Err(Error::Validation(
                "quantile needs at least one --q level".into(),
            ))
        } else {
            Ok(q)
        }
    };
    let need_delta = || -> Result<f64> {
        delta.ok_or_else(|| Error::Validation("moment needs --delta".into()))
    };

    let (header, rows): (&str, Vec<(f64, f64)>) = match (family, op) {
        ("gg", "pdf") => {
            let p = gg_params_from_json(params)?;
            (
                "x,pdf",
                need_x()?
                    .iter()
                    .map(|&xi| gg_pdf(xi, &p).map(|v| (xi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("gg", "cdf") => {
            let p = gg_params_from_json(params)?;
            (
                "x,cdf",
                need_x()?
                    .iter()
                    .map(|&xi| gg_cdf(xi, &p).map(|v| (xi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("gg", "quantile") => {
            let p = gg_params_from_json(params)?;
            (
                "q,x",
                need_q()?
                    .iter()
                    .map(|&qi| gg_quantile(qi, &p).map(|v| (qi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("gg", "moment") => {
            let p = gg_params_from_json(params)?;
            let d = need_delta()?;
            ("delta,moment", vec![(d, gg_moment(d, &p)?)])
        }
        ("gnb", "pdf") => {
            let p = gg_params_from_json(params)?;
            (
                "k,pmf",
                need_x()?
                    .iter()
                    .map(|&k| gnb_pmf(k as u64, &p).map(|v| (k.trunc(), v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("gnb", "cdf") => {
            let p = gg_params_from_json(params)?;
            (
                "k,cdf",
                need_x()?
                    .iter()
                    .map(|&k| {
                        (0..=k as u64)
                            .try_fold(0.0, |acc, j| Ok(acc + gnb_pmf(j, &p)?))
                            .map(|v: f64| (k.trunc(), v.min(1.0)))
                    })
                    .collect::<Result<_>>()?,
            )
        }
        ("gnb", "quantile") => {
            let p = gg_params_from_json(params)?;
            let cap = bounded_pmf_scan_cap(&p)?;
            let mut rows = Vec::new();
            for &qi in need_q()? {
                if !(qi > 0.0 && qi < 1.0) {
                    return Err(Error::domain(format!("q must lie in (0,1), got {qi}")));
                }
                let mut acc = 0.0;
                let mut ans = None;
                for k in 0..=cap {
                    acc += gnb_pmf(k, &p)?;
                    if acc >= qi {
                        ans = Some(k as f64);
                        break;
                    }
                }
                let k = ans.ok_or_else(|| {
                    Error::Quadrature(format!(
                        "quantile {qi} lies beyond the computable pmf range (k > {cap})"
                    ))
                })?;
                rows.push((qi, k));
            }
            ("q,k", rows)
        }
        ("gnb", "moment") => {
            let p = gg_params_from_json(params)?;
            let d = need_delta()?;
            let cap = bounded_pmf_scan_cap(&p)?;
            let mut m = 0.0;
            let mut mass = 0.0;
            for k in 0..=cap {
                let pk = gnb_pmf(k, &p)?;
                mass += pk;
                m += (k as f64).powf(d) * pk;
            }
            if 1.0 - mass > 1e-9 {
                return Err(Error::Quadrature(format!(
                    "moment sum not converged within k <= {cap} (tail mass {:.3e})",
                    1.0 - mass
                )));
            }
            ("delta,moment", vec![(d, m)])
        }
        ("extreme", "pdf") => {
            let p = extreme_params_from_json(params)?;
            (
                "x,pdf",
                need_x()?
                    .iter()
                    .map(|&xi| extreme_pdf(xi, &p).map(|v| (xi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("extreme", "cdf") => {
            let p = extreme_params_from_json(params)?;
            (
                "x,cdf",
                need_x()?
                    .iter()
                    .map(|&xi| extreme_cdf(xi, &p).map(|v| (xi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("extreme", "quantile") => {
            let p = extreme_params_from_json(params)?;
            (
                "q,x",
                need_q()?
                    .iter()
                    .map(|&qi| extreme_quantile(qi, &p).map(|v| (qi, v)))
                    .collect::<Result<_>>()?,
            )
        }
        ("extreme", "moment") => {
            let p = extreme_params_from_json(params)?;
            let d = need_delta()?;
            ("delta,moment", vec![(d, extreme_moment(d, &p)?)])
        }
        (f, o) => {
            return Err(Error::Validation(format!(
                "unsupported family/op combination {f:?}/{o:?}"
            )))
        }
    };

    if rows.len() == 1 && csv_out.is_none() {
        println!("{:?}", rows[0].1);
        return Ok(());
    }
    emit(csv_out.as_deref(), &format_table(header, &rows))
}

fn simulate_cmd(
    family: &str,
    params: &str,
    n: usize,
    seed: u64,
    repr: &str,
    csv_out: Option<PathBuf>,
) -> Result<()> {
    if n == 0 {
        return Err(Error::Validation("need --n > 0 draws".into()));
    }
    let mut rng = Rng::with_seed(seed);
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_VERSION_HEADER}");
    let _ = writeln!(out, "value");
    match family {
        "gg" => {
            let p = gg_params_from_json(params)?;
            for _ in 0..n {
                let _ = writeln!(out, "{:?}", gg_sample(&p, &mut rng)?);
            }
        }
        "gnb" => {
            let p = gg_params_from_json(params)?;
            for _ in 0..n {
                let _ = writeln!(out, "{}", gnb_sample(&p, &mut rng)?);
            }
        }
        "extreme" => {
            let p = extreme_params_from_json(params)?;
            let repr: Representation = repr.parse()?;
            for _ in 0..n {
                let _ = writeln!(out, "{:?}", extreme_sample(&p, &mut rng, repr)?);
            }
        }
        other => {
            return Err(Error::Validation(format!(
                "unknown family {other:?}, expected gg, gnb or extreme"
            )))
        }
    }
    emit(csv_out.as_deref(), &out)
}
