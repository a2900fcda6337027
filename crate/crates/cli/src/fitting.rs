//! Least-squares exponent fits on log-log data.

#[derive(Debug, PartialEq)]
pub enum FitError {
    TooFewPoints(usize),
    NonPositive(f64, f64),
    Degenerate,
}

impl std::fmt::Display for FitError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitError::TooFewPoints(n) => write!(f, "need at least 3 points, got {n}"),
            FitError::NonPositive(x, y) => write!(f, "log-log fit needs positive data, got ({x}, {y})"),
            FitError::Degenerate => write!(f, "x values carry no spread"),
        }
    }
}

impl std::error::Error for FitError {}

/// Slope of `ln y` against `ln x` plus goodness measures.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub exponent: f64,
    /// Intercept in ln-space: `ln y ≈ exponent·ln x + intercept`.
    pub intercept: f64,
    /// Root-mean-square residual in ln-space.
    pub residual: f64,
}

pub fn fit_exponent(pairs: &[(f64, f64)]) -> Result<ScalingFit, FitError> {
    if pairs.len() < 3 {
        return Err(FitError::TooFewPoints(pairs.len()));
    }
    for &(x, y) in pairs {
        if x <= 0.0 || y <= 0.0 || !x.is_finite() || !y.is_finite() {
            return Err(FitError::NonPositive(x, y));
        }
    }
    let logs: Vec<(f64, f64)> = pairs.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx < 1e-12 {
        return Err(FitError::Degenerate);
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss: f64 = logs
        .iter()
        .map(|p| {
            let e = p.1 - (exponent * p.0 + intercept);
            e * e
        })
        .sum();
    Ok(ScalingFit {
        points: pairs.to_vec(),
        exponent,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_synthetic_two_thirds() {
        let pairs: Vec<(f64, f64)> = (1..=8)
            .map(|i| {
                let n = (100 * i) as f64;
                (n, n.powf(2.0 / 3.0))
            })
            .collect();
        let fit = fit_exponent(&pairs).unwrap();
        assert!((fit.exponent - 2.0 / 3.0).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn constant_data_fits_zero() {
        let pairs = vec![(10.0, 5.0), (100.0, 5.0), (1000.0, 5.0)];
        let fit = fit_exponent(&pairs).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            fit_exponent(&[(1.0, 1.0), (2.0, 2.0)]),
            Err(FitError::TooFewPoints(2))
        ));
        assert!(matches!(
            fit_exponent(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]),
            Err(FitError::Degenerate)
        ));
        assert!(matches!(
            fit_exponent(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]),
            Err(FitError::NonPositive(..))
        ));
    }
}
