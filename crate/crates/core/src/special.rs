//! Exponentially scaled modified Bessel functions `e^{-z} I_ν(z)` of integer
//! order and the scaled modified Struve function `e^{-z} L_0(z)`.
//!
//! The densities multiply these functions by `e^{-λt}` with `λt` in the
//! thousands, where `I_0(λt)` alone is far outside `f64` range. Every routine
//! here therefore returns the scaled value, which lies in `[0, 1]` for
//! `z >= 0`.
//!
//! Evaluation regimes for `e^{-z} I_ν(z)`:
//!
//! * `z <= 25`: the defining power series, with `e^{-z}` folded into the first
//!   term so the partial sums never leave `[0, 1]`.
//! * `z > 25`: the large-argument expansion
//!   `√(2πz) e^{-z} I_ν(z) ~ Σ (-1)^k a_k(ν) / z^k`, summed until the next
//!   term drops below `1e-16` of the sum. For orders large compared to `√z`
//!   the expansion starts to diverge before reaching that accuracy; those
//!   orders come from a backward recurrence started with the continued
//!   fraction for `I_{ν+1}/I_ν` and normalised by `e^{-z} I_0(z)`.

use std::f64::consts::PI;

use crate::error::{require_non_negative, Result};

/// Upper end of the power-series regime for `I_ν`.
pub const BESSEL_SERIES_LIMIT: f64 = 25.0;

/// Upper end of the power-series regime for `L_0`.
pub const STRUVE_SERIES_LIMIT: f64 = 40.0;

const SERIES_RTOL: f64 = 1e-16;
const ASYMPTOTIC_MAX_TERMS: usize = 200;
const CF_MAX_ITER: usize = 1_000_000;
const RESCALE_ABOVE: f64 = 1e250;

/// A quantity stored as `value · e^{scale_exponent}`.
///
/// Used when a caller needs to carry a Bessel or Struve value together with
/// the exponential it was scaled by, e.g. `I_0(z) = ScaledValue { value:
/// e^{-z} I_0(z), scale_exponent: z }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub value: f64,
    pub scale_exponent: f64,
}

impl ScaledValue {
    pub fn new(value: f64, scale_exponent: f64) -> Self {
        Self {
            value,
            scale_exponent,
        }
    }

    /// `ln(value) + scale_exponent`, `-∞` for a zero value.
    pub fn ln(&self) -> f64 {
        if self.value == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.value.ln() + self.scale_exponent
        }
    }

    /// The represented quantity multiplied by `e^{shift}`, i.e.
    /// `value · e^{scale_exponent + shift}`. Never forms `e^{scale_exponent}`
    /// on its own.
    pub fn shifted(&self, shift: f64) -> f64 {
        self.value * (self.scale_exponent + shift).exp()
    }
}

/// `I_ν(z)` in scaled form.
pub fn bessel_i(nu: u32, z: f64) -> Result<ScaledValue> {
    Ok(ScaledValue::new(bessel_i_scaled(nu, z)?, z))
}

/// `L_0(z)` in scaled form.
pub fn struve_l0(z: f64) -> Result<ScaledValue> {
    Ok(ScaledValue::new(struve_l0_scaled(z)?, z))
}

/// `e^{-z} I_ν(z)` for `z >= 0`.
///
/// ```
/// use randflight::special::bessel_i_scaled;
/// assert_eq!(bessel_i_scaled(0, 0.0).unwrap(), 1.0);
/// assert_eq!(bessel_i_scaled(1, 0.0).unwrap(), 0.0);
/// assert!(bessel_i_scaled(0, -1.0).is_err());
/// ```
pub fn bessel_i_scaled(nu: u32, z: f64) -> Result<f64> {
    require_non_negative("z", z)?;
    Ok(i_scaled(nu, z))
}

/// `e^{-z} I_k(z)` for every order `k = 0..=max_order`.
pub fn bessel_i_scaled_orders(max_order: u32, z: f64) -> Result<Vec<f64>> {
    require_non_negative("z", z)?;
    Ok(i_scaled_orders(max_order, z))
}

/// `ln I_ν(z)`; `-∞` for `ν >= 1` at `z = 0`.
pub fn log_bessel_i(nu: u32, z: f64) -> Result<f64> {
    require_non_negative("z", z)?;
    if z == 0.0 {
        return Ok(if nu == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let scaled = i_scaled(nu, z);
    if scaled.is_normal() {
        return Ok(z + scaled.ln());
    }
    // e^{-z} I_ν(z) underflowed: only possible deep in the series regime
    // (large order, modest z), so redo the series in log space.
    let half = 0.5 * z;
    let log_first = nu as f64 * half.ln() - ln_factorial(nu);
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu as f64));
        if term <= SERIES_RTOL * sum {
            break;
        }
        sum += term;
    }
    Ok(log_first + sum.ln())
}

/// `e^{-z} L_0(z)` for `z >= 0`.
///
/// ```
/// use randflight::special::struve_l0_scaled;
/// assert_eq!(struve_l0_scaled(0.0).unwrap(), 0.0);
/// ```
pub fn struve_l0_scaled(z: f64) -> Result<f64> {
    require_non_negative("z", z)?;
    Ok(l0_scaled(z))
}

/// `e^{-z} L_0(z)` through the alternating Bessel sum
/// `L_0(z) = (4/π) Σ_k (-1)^k I_{2k+1}(z) / (2k+1)`.
///
/// Independent of [`struve_l0_scaled`] apart from sharing `e^{-z} I_0` as the
/// recurrence normalisation; used to cross-check it.
pub fn struve_l0_scaled_bessel_sum(z: f64) -> Result<f64> {
    require_non_negative("z", z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    let max_order = (80.0 * z).sqrt().ceil() as u32 + 41;
    let orders = i_scaled_orders(max_order, z);
    let mut sum: f64 = 0.0;
    let mut sign = 1.0;
    for nu in (1..=max_order as usize).step_by(2) {
        let term = orders[nu] / nu as f64;
        if sum != 0.0 && term < SERIES_RTOL * sum.abs() {
            break;
        }
        sum += sign * term;
        sign = -sign;
    }
    Ok(4.0 / PI * sum)
}

pub(crate) fn i_scaled(nu: u32, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    if z <= BESSEL_SERIES_LIMIT {
        return series_i_scaled(nu, z);
    }
    asymptotic_i_scaled(nu, z).unwrap_or_else(|| i_scaled_orders(nu, z)[nu as usize])
}

fn series_i_scaled(nu: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = (-z).exp();
    for k in 1..=nu {
        term *= half / k as f64;
    }
    let q = half * half;
    let order = nu as f64;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + order));
        if term <= SERIES_RTOL * sum {
            break;
        }
        sum += term;
    }
    sum
}

/// `None` when the expansion starts diverging before reaching full accuracy.
fn asymptotic_i_scaled(nu: u32, z: f64) -> Option<f64> {
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let mut term: f64 = 1.0;
    let mut sum: f64 = 1.0;
    for k in 1..=ASYMPTOTIC_MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * z);
        if next.abs() < SERIES_RTOL * sum.abs() {
            return Some(sum / (2.0 * PI * z).sqrt());
        }
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        term = next;
    }
    None
}

fn i_scaled_orders(max_order: u32, z: f64) -> Vec<f64> {
    let n = max_order as usize;
    if z == 0.0 {
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0;
        return out;
    }
    let i0 = if z <= BESSEL_SERIES_LIMIT {
        series_i_scaled(0, z)
    } else {
        asymptotic_i_scaled(0, z).expect("order-0 expansion converges for z > 25")
    };
    if n == 0 {
        return vec![i0];
    }

    // Backward recurrence I_{k-1} = I_{k+1} + (2k/z) I_k from the exact ratio
    // at the top, then normalise by I_0.
    let mut y = vec![0.0; n + 2];
    y[n] = 1.0;
    y[n + 1] = ratio_next_order(max_order, z);
    for k in (1..=n).rev() {
        y[k - 1] = y[k + 1] + (2.0 * k as f64 / z) * y[k];
        if y[k - 1] > RESCALE_ABOVE {
            for v in &mut y[k - 1..] {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    let norm = i0 / y[0];
    y.truncate(n + 1);
    for v in &mut y {
        *v *= norm;
    }
    y
}

/// `I_{ν+1}(z) / I_ν(z)` by the continued fraction
/// `1 / (2(ν+1)/z + 1 / (2(ν+2)/z + ...))`, modified Lentz.
fn ratio_next_order(nu: u32, z: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let b = |j: usize| 2.0 * (nu as f64 + 1.0 + j as f64) / z;
    let mut f = b(0).max(TINY);
    let mut c = f;
    let mut d = 0.0;
    for j in 1..CF_MAX_ITER {
        let bj = b(j);
        d += bj;
        if d == 0.0 {
            d = TINY;
        }
        c = bj + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

fn l0_scaled(z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if z <= STRUVE_SERIES_LIMIT {
        return series_l0_scaled(z);
    }
    // L_0 = I_0 - (I_0 - L_0), the difference being algebraically small:
    // I_0(z) - L_0(z) ~ (2/(πz)) Σ ((2k-1)!!)² / z^{2k}.
    let inv_z2 = 1.0 / (z * z);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..ASYMPTOTIC_MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = term * odd * odd * inv_z2;
        if next < SERIES_RTOL * sum || next > term {
            break;
        }
        sum += next;
        term = next;
    }
    let gap = 2.0 / (PI * z) * sum;
    i_scaled(0, z) - gap * (-z).exp()
}

fn series_l0_scaled(z: f64) -> f64 {
    // (z/2)^{2k+1} / Γ(k+3/2)², first term (z/2)/(π/4).
    let half = 0.5 * z;
    let q = half * half;
    let mut term = 2.0 * z / PI * (-z).exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        let g = k + 0.5;
        term *= q / (g * g);
        if term <= SERIES_RTOL * sum {
            break;
        }
        sum += term;
    }
    sum
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
