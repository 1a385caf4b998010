//! Log-log slope fitting for endpoint and far-field exponents.

use crate::error::{Error, Result};

/// Least-squares slope of `ln|value|` against `ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Fits `ln|v| = a + p ln x` over the samples with `x` in `window`.
pub fn slope_fit(samples: &[(f64, f64)], window: (f64, f64)) -> Result<SlopeFit> {
    let (lo, hi) = window;
    let pts: Vec<(f64, f64)> = samples.iter().copied().filter(|&(x, _)| x >= lo && x <= hi).collect();
    if pts.len() < 8 {
        return Err(Error::Fit(format!("need at least 8 samples in the window, got {}", pts.len())));
    }
    let sign = pts[0].1.signum();
    if pts.iter().any(|&(x, v)| !(x > 0.0) || v == 0.0 || v.signum() != sign || !v.is_finite()) {
        return Err(Error::Fit("values must be finite, non-zero and of one sign in the window".into()));
    }
    let n = pts.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = pts.iter().map(|&(x, v)| (x.ln(), v.abs().ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("window holds a single abscissa".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, stderr, samples: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::logspace;

    #[test]
    fn exact_power_law() {
        let s: Vec<(f64, f64)> = logspace(1e-3, 1.0, 30).into_iter().map(|x| (x, -3.0 * x.powf(-0.7))).collect();
        let f = slope_fit(&s, (1e-3, 1.0)).unwrap();
        assert!((f.slope + 0.7).abs() < 1e-12);
    }

    #[test]
    fn perturbed_power_law() {
        let s: Vec<(f64, f64)> =
            logspace(10.0, 100.0, 60).into_iter().map(|x| (x, x.powf(1.3) * (1.0 + 0.01 * x.sin()))).collect();
        let full = slope_fit(&s, (10.0, 100.0)).unwrap();
        assert!((full.slope - 1.3).abs() < 0.02);
        let half = slope_fit(&s, (10.0, 10f64.powf(1.5))).unwrap();
        assert!((half.slope - full.slope).abs() < 2.0 * full.stderr.max(half.stderr));
    }

    #[test]
    fn rejects_bad_windows() {
        let s: Vec<(f64, f64)> = (1..20).map(|i| (i as f64, (i as f64 - 10.0).sin())).collect();
        assert!(slope_fit(&s, (1.0, 20.0)).is_err());
        assert!(slope_fit(&s, (1.0, 3.0)).is_err());
    }
}
