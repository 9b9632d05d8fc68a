//! Integrals, distribution functions, goodness-of-fit statistics and the
//! long-time comparison of the telegraph density `f` with the marginal
//! density `g`.
//!
//! All integrals over a line segment of the support use the substitution
//! `x = ct sin θ`, under which `dx = s dθ` with `s = √(c²t² - x²) = ct cos θ`.
//! The `1/s` edge singularity of `g` cancels and every integrand becomes
//! smooth on `[-π/2, π/2]`.

pub mod ks;
pub mod quadrature;
pub mod rate;
pub mod table;

use std::f64::consts::FRAC_PI_2;

use crate::densities::{marginal_times_chord, telegraph_ac_times_chord, Chord, FlightParams};
use crate::error::{require_positive, Error, Result};
use quadrature::{integrate, DEFAULT_ABS_TOL, DEFAULT_BUDGET};

pub use ks::{ks_critical_value, ks_distance, ks_distance_samples, two_sample_ks};
pub use quadrature::QuadratureResult;
pub use rate::{fit_convergence_rate, fit_remainder_rate, log_log_fit, RateFit, Remainder};
pub use table::{difference_table, figure_grid, DiffRow, GridRow, COMPARISON_TIMES};

/// Which density [`integrate_density`] integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// Absolutely continuous part of the telegraph density over `x`.
    TelegraphAc,
    /// Marginal density of the planar flight over `x`.
    Marginal,
    /// Absolutely continuous planar density over the annulus `a <= ‖x‖ <= b`.
    PlanarRadial,
}

/// One-dimensional law for [`cdf`], [`quantile`] and the KS statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// Telegraph process, atoms of `e^{-λt}/2` at `±ct` included.
    Telegraph,
    /// Either coordinate of the planar flight.
    Marginal,
}

/// Integrand in the `θ` variable, `x = ct sin θ`.
pub(crate) fn theta_integrand(
    kind: DensityKind,
    t: f64,
    p: FlightParams,
) -> impl Fn(f64) -> f64 + Sync + Send {
    let ct = p.reach(t);
    move |theta: f64| {
        let (sin, cos) = theta.sin_cos();
        let r = (ct * sin).abs();
        let chord = Chord::from_parts(r, ct * cos.max(0.0), ct, &p);
        match kind {
            DensityKind::TelegraphAc => telegraph_ac_times_chord(&chord, t, &p),
            DensityKind::Marginal => marginal_times_chord(&chord, t, &p),
            // 2πr · (λ/2πc) e^{w-λt}/s · s
            DensityKind::PlanarRadial => p.lambda() / p.c() * r * chord.exponent.exp(),
        }
    }
}

/// `θ = asin(x/ct)`, clamped to `[-π/2, π/2]`.
pub(crate) fn to_theta(x: f64, ct: f64) -> f64 {
    (x / ct).clamp(-1.0, 1.0).asin()
}

/// Integral of a density over `[a, b]` (a radial interval for
/// [`DensityKind::PlanarRadial`]).
///
/// ```
/// use randflight::analysis::{integrate_density, DensityKind};
/// use randflight::densities::FlightParams;
/// let p = FlightParams::new(2.0, 1.0).unwrap();
/// let total = integrate_density(DensityKind::Marginal, 5.0, &p, -10.0, 10.0).unwrap();
/// assert!((total.value - 1.0).abs() < 1e-8);
/// ```
pub fn integrate_density(
    kind: DensityKind,
    t: f64,
    p: &FlightParams,
    a: f64,
    b: f64,
) -> Result<QuadratureResult> {
    require_positive("t", t)?;
    let ct = p.reach(t);
    let lo = match kind {
        DensityKind::PlanarRadial => 0.0,
        _ => -ct,
    };
    let slack = 1e-12 * ct;
    let contained = a.is_finite() && b.is_finite() && a <= b && a >= lo - slack && b <= ct + slack;
    if !contained {
        return Err(Error::IntervalOutsideSupport { a, b, lo, hi: ct });
    }
    let f = theta_integrand(kind, t, *p);
    integrate(
        f,
        to_theta(a, ct),
        to_theta(b, ct),
        DEFAULT_ABS_TOL,
        DEFAULT_BUDGET,
    )
}

fn interior_kind(law: Law) -> DensityKind {
    match law {
        Law::Telegraph => DensityKind::TelegraphAc,
        Law::Marginal => DensityKind::Marginal,
    }
}

fn atom(law: Law, t: f64, p: &FlightParams) -> f64 {
    match law {
        Law::Telegraph => 0.5 * p.no_switch_probability(t),
        Law::Marginal => 0.0,
    }
}

/// `Pr{X <= x}` on the open support, by symmetry about 0.
fn interior_cdf(law: Law, x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let half = integrate_density(interior_kind(law), t, p, 0.0, x.abs())?.value;
    let v = if x >= 0.0 { 0.5 + half } else { 0.5 - half };
    Ok(v.clamp(0.0, 1.0))
}

/// Right-continuous distribution function `Pr{X <= x}`.
///
/// For the telegraph law this jumps by `e^{-λt}/2` at each of `±ct`; the
/// marginal law is continuous. Points outside the support give 0 or 1.
///
/// ```
/// use randflight::analysis::{cdf, Law};
/// use randflight::densities::FlightParams;
/// let p = FlightParams::new(2.0, 1.0).unwrap();
/// assert_eq!(cdf(Law::Telegraph, 0.0, 5.0, &p).unwrap(), 0.5);
/// assert_eq!(cdf(Law::Telegraph, 10.0, 5.0, &p).unwrap(), 1.0);
/// ```
pub fn cdf(law: Law, x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    require_positive("t", t)?;
    let ct = p.reach(t);
    if x.is_nan() {
        return Err(Error::Domain {
            name: "x",
            requirement: "not NaN",
            value: x,
        });
    }
    if x < -ct {
        Ok(0.0)
    } else if x >= ct {
        Ok(1.0)
    } else if x == -ct {
        Ok(atom(law, t, p))
    } else {
        interior_cdf(law, x, t, p)
    }
}

/// Left limit `Pr{X < x}`.
pub fn cdf_left(law: Law, x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    require_positive("t", t)?;
    let ct = p.reach(t);
    if x.is_nan() {
        return Err(Error::Domain {
            name: "x",
            requirement: "not NaN",
            value: x,
        });
    }
    if x <= -ct {
        Ok(0.0)
    } else if x > ct {
        Ok(1.0)
    } else if x == ct {
        Ok(1.0 - atom(law, t, p))
    } else {
        interior_cdf(law, x, t, p)
    }
}

/// Smallest `x` with `cdf(x) >= prob`.
pub fn quantile(law: Law, prob: f64, t: f64, p: &FlightParams) -> Result<f64> {
    require_positive("t", t)?;
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::Domain {
            name: "prob",
            requirement: "in [0, 1]",
            value: prob,
        });
    }
    let ct = p.reach(t);
    let mass = atom(law, t, p);
    if prob <= mass {
        return Ok(-ct);
    }
    if prob > 1.0 - mass || prob == 1.0 {
        return Ok(ct);
    }
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if interior_cdf(law, ct * mid.sin(), t, p)? < prob {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ct * hi.sin())
}

/// Central-difference residual of the telegraph equation
/// `∂²f/∂t² + 2λ ∂f/∂t - c² ∂²f/∂x²` for the absolutely continuous part,
/// with the same step `h` in `x` and `t`.
pub fn telegraph_pde_residual(x: f64, t: f64, h: f64, p: &FlightParams) -> Result<f64> {
    require_positive("h", h)?;
    let f = |x: f64, t: f64| -> Result<f64> {
        let chord = Chord::at(x, t, p).ok_or(Error::OutsideSupport { x, ct: p.reach(t) })?;
        Ok(crate::densities::telegraph_ac(&chord, t, p))
    };
    require_positive("t - h", t - h)?;
    let centre = f(x, t)?;
    let (t_up, t_down) = (f(x, t + h)?, f(x, t - h)?);
    let (x_up, x_down) = (f(x + h, t)?, f(x - h, t)?);
    let d2t = (t_up - 2.0 * centre + t_down) / (h * h);
    let dt = (t_up - t_down) / (2.0 * h);
    let d2x = (x_up - 2.0 * centre + x_down) / (h * h);
    Ok(d2t + 2.0 * p.lambda() * dt - p.c() * p.c() * d2x)
}
