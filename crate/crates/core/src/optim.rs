//! Derivative-free simplex minimization (Nelder–Mead) with deterministic
//! multi-starts.
//!
//! The fitting objectives here are cheap but non-smooth (the ℓ∞ histogram
//! distance in particular), which rules out gradient methods. Objectives may
//! return `f64::INFINITY` to reject a point.

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Convergence threshold on the spread of simplex function values.
    pub f_tol: f64,
    /// Convergence threshold on the simplex diameter.
    pub x_tol: f64,
    /// Initial step added to each coordinate when building the simplex.
    pub step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: 4000,
            f_tol: 1e-10,
            x_tol: 1e-10,
            step: 0.5,
        }
    }
}

/// Classic Nelder–Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) from a single starting point.
pub fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    start: &[f64],
    opts: SimplexOptions,
) -> SimplexResult {
    let n = start.len();
    assert!(n >= 1, "empty parameter vector");

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += opts.step;
        let fp = f(&p);
        simplex.push((p, fp));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;

        let diameter = simplex[1..]
            .iter()
            .map(|(p, _)| {
                p.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.f_tol * (1.0 + best.abs()) && diameter <= opts.x_tol {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; n];
        for (p, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }

        let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
        };

        let reflected = blend(&centroid, &simplex[n].0, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = blend(&centroid, &simplex[n].0, -2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[n].1 {
                blend(&centroid, &reflected, 0.5)
            } else {
                blend(&centroid, &simplex[n].0, 0.5)
            };
            let fc = f(&contracted);
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let best_point = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    entry.0 = blend(&best_point, &entry.0, 0.5);
                    entry.1 = f(&entry.0);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fval) = simplex.swap_remove(0);
    SimplexResult {
        x,
        f: fval,
        iterations,
        converged,
    }
}

/// Run [`nelder_mead`] from each start and keep the best minimum found.
pub fn multi_start_nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    starts: &[Vec<f64>],
    opts: SimplexOptions,
) -> SimplexResult {
    assert!(!starts.is_empty(), "no starting points");
    let mut best: Option<SimplexResult> = None;
    for start in starts {
        let r = nelder_mead(f, start, opts);
        if best.as_ref().is_none_or(|b| r.f < b.f) {
            best = Some(r);
        }
    }
    best.expect("at least one start")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let mut f = |p: &[f64]| (p[0] - 3.0).powi(2) + 2.0 * (p[1] + 1.0).powi(2);
        let r = nelder_mead(&mut f, &[0.0, 0.0], SimplexOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 3.0).abs() < 1e-5);
        assert!((r.x[1] + 1.0).abs() < 1e-5);
    }

    #[test]
    fn rosenbrock_multi_start() {
        let mut f = |p: &[f64]| {
            let (x, y) = (p[0], p[1]);
            (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2)
        };
        let starts = vec![vec![-1.5, 2.0], vec![0.0, 0.0], vec![2.0, 2.0]];
        let opts = SimplexOptions {
            max_iterations: 20_000,
            ..Default::default()
        };
        let r = multi_start_nelder_mead(&mut f, &starts, opts);
        assert!((r.x[0] - 1.0).abs() < 1e-4, "{:?}", r.x);
        assert!((r.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn non_smooth_objective() {
        // ℓ∞-style objective with a kink at the optimum.
        let mut f = |p: &[f64]| (p[0] - 0.7).abs().max(0.5 * (p[1] - 0.2).abs());
        let r = nelder_mead(&mut f, &[5.0, -4.0], SimplexOptions::default());
        assert!((r.x[0] - 0.7).abs() < 1e-4);
        assert!((r.x[1] - 0.2).abs() < 1e-4);
    }

    #[test]
    fn deterministic_given_start() {
        let mut f = |p: &[f64]| p[0].powi(4) + (p[1] - 1.0).powi(2);
        let a = nelder_mead(&mut f, &[2.0, 2.0], SimplexOptions::default());
        let b = nelder_mead(&mut f, &[2.0, 2.0], SimplexOptions::default());
        assert_eq!(a.x, b.x);
        assert_eq!(a.f, b.f);
    }

    #[test]
    fn infinity_rejects_region() {
        let mut f = |p: &[f64]| {
            if p[0] < 0.0 {
                f64::INFINITY
            } else {
                (p[0] - 2.0).powi(2)
            }
        };
        let r = nelder_mead(&mut f, &[1.0], SimplexOptions::default());
        assert!((r.x[0] - 2.0).abs() < 1e-5);
    }
}
