//! Log-log least-squares estimates of decay exponents.

use crate::densities::{tail_q, tail_r, FlightParams};
use crate::error::{Error, Result};

use super::difference_table;

/// Points whose value is at most this fraction of the largest one are
/// treated as zero and dropped.
const ZERO_RTOL: f64 = 1e-14;

/// Least-squares line `ln y = intercept + slope · ln t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination, in `[0, 1]`.
    pub r_squared: f64,
    /// Number of points used, at least 3.
    pub points: usize,
}

/// Which remainder [`fit_remainder_rate`] fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Remainder {
    /// `R = f_ac - (λ/2c) e^{-λt} I_0(w)`.
    R,
    /// `Q = g - (λ/2c) e^{-λt} I_0(w)`.
    Q,
}

/// Unweighted least-squares fit of `ln y` against `ln t`.
///
/// Non-positive `y` values are dropped. Fails if fewer than three
/// points remain or the `t` values are not strictly increasing.
///
/// ```
/// use randflight::analysis::log_log_fit;
/// let ts = [1.0, 2.0, 4.0, 8.0];
/// let ys: Vec<f64> = ts.iter().map(|t: &f64| 3.0 * t.powf(-1.5)).collect();
/// let fit = log_log_fit(&ts, &ys).unwrap();
/// assert!((fit.slope + 1.5).abs() < 1e-12);
/// assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
/// ```
pub fn log_log_fit(ts: &[f64], ys: &[f64]) -> Result<RateFit> {
    check_times(ts)?;
    let points: Vec<(f64, f64)> = ts
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > 0.0 && y.is_finite())
        .map(|(&t, &y)| (t.ln(), y.ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(RateFit {
        slope,
        intercept: mean_y - slope * mean_x,
        r_squared,
        points: points.len(),
    })
}

fn check_times(ts: &[f64]) -> Result<()> {
    if ts.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: ts.len(),
        });
    }
    if ts.iter().any(|t| !(t.is_finite() && *t > 0.0)) || ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedTimes);
    }
    Ok(())
}

/// Fit of `ln |f - g|` against `ln t` at the point `x`.
///
/// Differences at or below `10⁻¹⁴` of the largest one are dropped.
pub fn fit_convergence_rate(x: f64, p: &FlightParams, ts: &[f64]) -> Result<RateFit> {
    check_times(ts)?;
    let rows = difference_table(x, p, ts)?;
    let largest = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let diffs: Vec<f64> = rows
        .iter()
        .map(|r| {
            if r.abs_diff > ZERO_RTOL * largest {
                r.abs_diff
            } else {
                0.0
            }
        })
        .collect();
    log_log_fit(ts, &diffs)
}

/// Fit of `ln R` or `ln Q` against `ln t` at the point `x`.
pub fn fit_remainder_rate(
    which: Remainder,
    x: f64,
    p: &FlightParams,
    ts: &[f64],
) -> Result<RateFit> {
    check_times(ts)?;
    let ys = ts
        .iter()
        .map(|&t| match which {
            Remainder::R => tail_r(x, t, p),
            Remainder::Q => tail_q(x, t, p),
        })
        .collect::<Result<Vec<f64>>>()?;
    log_log_fit(ts, &ys)
}
