//! Special functions: log-gamma, regularized incomplete gamma and beta.
//!
//! All three are the numerical backbone of the distribution code. `ln_gamma`
//! uses the Lanczos approximation with g ≈ 10.900511 and 11 coefficients
//! (Pugh's optimal set), relative error below 1e-13 on the range used here.
//! The incomplete functions follow the classic series / continued-fraction
//! split with modified Lentz evaluation.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 10.900511;

const LANCZOS_COEFFS: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_6,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_459e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_058e-4,
    4.633_994_733_599_056e-6,
    -2.719_949_084_886_077_2e-9,
];

/// ln(2·√(e/π))
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

/// As [`ln_gamma`] but without the domain check; callers guarantee x > 0.
pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // One recurrence step keeps the Lanczos sum away from its poles.
        return ln_gamma_unchecked(x + 1.0) - x.ln();
    }
    let mut s = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        s += c / (x + i as f64 - 1.0);
    }
    let t = x - 0.5 + LANCZOS_G;
    s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * (t / std::f64::consts::E).ln()
}

const INCGAMMA_EPS: f64 = 1e-16;
const INCGAMMA_MAX_ITER: usize = 100_000;
const LENTZ_TINY: f64 = 1e-300;

/// Regularized lower incomplete gamma function P(a, x) = γ(a, x) / Γ(a).
///
/// Monotone nondecreasing in x with P(a, 0) = 0 and P(a, ∞) = 1.
pub fn gamma_p(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("gamma_p requires a > 0, got {a}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("gamma_p requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        Ok(1.0 - gamma_q_contfrac(a, x)?)
    }
}

/// Regularized upper incomplete gamma function Q(a, x) = 1 − P(a, x).
///
/// Computed directly by the continued fraction when x > a + 1, so small tail
/// probabilities keep full relative accuracy.
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("gamma_q requires a > 0, got {a}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("gamma_q requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        Ok(1.0 - gamma_p_series(a, x)?)
    } else {
        gamma_q_contfrac(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> Result<f64> {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..INCGAMMA_MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * INCGAMMA_EPS {
            let ln_pref = a * x.ln() - x - ln_gamma_unchecked(a);
            return Ok((sum * ln_pref.exp()).clamp(0.0, 1.0));
        }
    }
    Err(Error::Quadrature(format!(
        "incomplete gamma series did not converge for a={a}, x={x}"
    )))
}

fn gamma_q_contfrac(a: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / LENTZ_TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..INCGAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        c = b + an / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < INCGAMMA_EPS {
            let ln_pref = a * x.ln() - x - ln_gamma_unchecked(a);
            return Ok((h * ln_pref.exp()).clamp(0.0, 1.0));
        }
    }
    Err(Error::Quadrature(format!(
        "incomplete gamma continued fraction did not converge for a={a}, x={x}"
    )))
}

/// Regularized incomplete beta function I_x(a, b).
pub fn beta_inc(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(format!(
            "beta_inc requires a > 0 and b > 0, got a={a}, b={b}"
        )));
    }
    if x.is_nan() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "beta_inc requires x in [0, 1], got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_bt = ln_gamma_unchecked(a + b) - ln_gamma_unchecked(a) - ln_gamma_unchecked(b)
        + a * x.ln()
        + b * (-x).ln_1p();
    let bt = ln_bt.exp();
    // The continued fraction converges fastest on the side of the mean.
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok((bt * beta_contfrac(a, b, x)? / a).clamp(0.0, 1.0))
    } else {
        Ok((1.0 - bt * beta_contfrac(b, a, 1.0 - x)? / b).clamp(0.0, 1.0))
    }
}

fn beta_contfrac(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < LENTZ_TINY {
        d = LENTZ_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..INCGAMMA_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < INCGAMMA_EPS {
            return Ok(h);
        }
    }
    Err(Error::Quadrature(format!(
        "incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )))
}
