//! Kolmogorov–Smirnov distances and asymptotic critical values.
//!
//! Used throughout the test suites to compare sampler output against
//! analytic CDFs and samplers against each other.

/// One-sample KS statistic sup |F_n(x) − F(x)| against a reference CDF.
///
/// `samples` is consumed and sorted. Ties are handled correctly because both
/// one-sided deviations are evaluated at every order statistic.
pub fn ks_statistic_cdf(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty(), "empty sample");
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        let upper = (i + 1) as f64 / n - f;
        let lower = f - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    d
}

/// Two-sample KS statistic sup |F_n(x) − G_m(x)|.
pub fn ks_statistic_two(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "empty sample");
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0_f64;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic one-sample critical value at significance `alpha`.
pub fn ks_critical(alpha: f64, n: usize) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0);
    ((2.0 / alpha).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Asymptotic two-sample critical value at significance `alpha`.
pub fn ks_critical_two(alpha: f64, n: usize, m: usize) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0);
    let scale = ((n + m) as f64 / (n as f64 * m as f64)).sqrt();
    ((2.0 / alpha).ln() / 2.0).sqrt() * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn uniform_sample_passes_against_uniform_cdf() {
        let mut rng = Rng::with_seed(11);
        let samples: Vec<f64> = (0..50_000).map(|_| rng.open01()).collect();
        let d = ks_statistic_cdf(samples, |x| x.clamp(0.0, 1.0));
        assert!(d < ks_critical(0.01, 50_000), "d = {d}");
    }

    #[test]
    fn shifted_sample_fails() {
        let mut rng = Rng::with_seed(12);
        let samples: Vec<f64> = (0..10_000).map(|_| 0.8 * rng.open01()).collect();
        let d = ks_statistic_cdf(samples, |x| x.clamp(0.0, 1.0));
        assert!(d > ks_critical(0.01, 10_000));
    }

    #[test]
    fn two_sample_known_value() {
        // Empirical CDFs differ by 1/3 at most (worked example).
        let a = vec![0.3, 0.2, 0.25, 0.1, 0.9, 0.6];
        let b = vec![0.1, 0.8, 0.34, 0.09, 0.12, 0.81];
        let d = ks_statistic_two(a, b);
        assert!((d - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_sample_identical_is_zero() {
        let a = vec![1.0, 2.0, 2.0, 3.0];
        let d = ks_statistic_two(a.clone(), a);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn critical_value_magnitude() {
        // c(0.01) = 1.6276/sqrt(n)
        let c = ks_critical(0.01, 100_000);
        assert!((c - 1.627_6 / 316.227_77).abs() < 1e-4);
    }
}
