//! Bracketed root finding for monotone functions (quantile inversion).

use crate::error::{Error, Result};

/// Find x in [lo, hi] with f(x) ≈ 0 for continuous f with f(lo) ≤ 0 ≤ f(hi).
///
/// Bisection with a secant acceleration step on alternating iterations, so
/// the bracket provably halves at least every other step. `f_tol` bounds
/// |f| at the returned point; `x_tol` bounds the final bracket width
/// relative to the root location (the relative form keeps steep functions
/// accurate near 0).
pub fn bisect_root(
    f: &mut impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    f_tol: f64,
    x_tol: f64,
) -> Result<f64> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Domain(format!(
            "root not bracketed: f({lo}) = {flo}, f({hi}) = {fhi}"
        )));
    }
    let mut best = 0.5 * (lo + hi);
    for iter in 0..600 {
        // Secant candidate on odd iterations, kept only if it lands firmly
        // inside the bracket; plain bisection otherwise.
        let mid = if iter % 2 == 1 {
            let s = lo - flo * (hi - lo) / (fhi - flo);
            let guard = 0.01 * (hi - lo);
            if s > lo + guard && s < hi - guard {
                s
            } else {
                0.5 * (lo + hi)
            }
        } else {
            0.5 * (lo + hi)
        };
        let fmid = f(mid);
        best = mid;
        if fmid.abs() <= f_tol || (hi - lo) <= x_tol * mid.abs() {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        // Bracket exhausted at floating-point resolution.
        if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()) {
            break;
        }
    }
    Ok(best)
}

/// Expand an upper bracket for an increasing function until g(hi) >= target.
pub fn expand_upper(
    g: &mut impl FnMut(f64) -> f64,
    start: f64,
    target: f64,
    max_doublings: usize,
) -> Result<f64> {
    let mut hi = start.max(1e-12);
    for _ in 0..max_doublings {
        if g(hi) >= target {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::Domain(format!(
        "could not bracket target {target} below {hi}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let mut f = |x: f64| x * x * x - 2.0;
        let r = bisect_root(&mut f, 0.0, 2.0, 1e-14, 1e-14).unwrap();
        assert!((r - 2.0_f64.powf(1.0 / 3.0)).abs() < 1e-10);
    }

    #[test]
    fn rejects_unbracketed() {
        let mut f = |x: f64| x * x + 1.0;
        assert!(bisect_root(&mut f, -1.0, 1.0, 1e-12, 1e-12).is_err());
    }

    #[test]
    fn expands_bracket() {
        let mut g = |x: f64| 1.0 - (-x).exp();
        let hi = expand_upper(&mut g, 0.5, 0.99, 60).unwrap();
        assert!(g(hi) >= 0.99);
    }
}
