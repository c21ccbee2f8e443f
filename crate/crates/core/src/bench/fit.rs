//! Power-law fits `t = c * x^p` by least squares on `log t = log c + p log x`.
//!
//! The coefficient of determination is measured on the original scale:
//! `R^2 = 1 - sum (t - t_hat)^2 / sum (t - mean t)^2`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} is not positive and finite: ({x}, {t})")]
    NonPositive { index: usize, x: f64, t: f64 },
    #[error("all x values are equal")]
    DegenerateData,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub coefficient: f64,
    pub exponent: f64,
    pub r_square: f64,
    /// Set when the coefficient was divided by `N^2` for a sweep at fixed `N`.
    pub fixed_n: Option<f64>,
}

impl FitResult {
    pub fn predict(&self, x: f64) -> f64 {
        let scale = self.fixed_n.map_or(1.0, |n| n * n);
        self.coefficient * scale * x.powf(self.exponent)
    }
}

/// Fits `t = c * x^p`. With `fixed_n = Some(N)` the model is read as
/// `t = c * N^2 * x^p` and `c` is reported accordingly.
pub fn fit_power_law(points: &[(f64, f64)], fixed_n: Option<f64>) -> Result<FitResult, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    for (index, &(x, t)) in points.iter().enumerate() {
        if !(x > 0.0 && t > 0.0 && x.is_finite() && t.is_finite()) {
            return Err(FitError::NonPositive { index, x, t });
        }
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::DegenerateData);
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let c = (my - exponent * mx).exp();

    let mean_t = points.iter().map(|p| p.1).sum::<f64>() / n;
    let ss_res: f64 = points.iter().map(|&(x, t)| (t - c * x.powf(exponent)).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|&(_, t)| (t - mean_t).powi(2)).sum();
    let r_square = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        f64::NEG_INFINITY
    };
    Ok(FitResult {
        coefficient: fixed_n.map_or(c, |nn| c / (nn * nn)),
        exponent,
        r_square,
        fixed_n,
    })
}
