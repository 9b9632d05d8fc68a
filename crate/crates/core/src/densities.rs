//! Transition densities of the telegraph process, the planar random flight
//! and the planar flight's coordinate marginals.
//!
//! Singular parts are never evaluated as spikes. A [`DensitySplit`] carries
//! the absolutely continuous value at the query point next to the total
//! probability `e^{-λt}` held by the zero-switch paths: two atoms of
//! `e^{-λt}/2` at `±ct` for the telegraph process, a uniform measure on the
//! circle of radius `ct` for the planar flight.
//!
//! Every Bessel/Struve factor is evaluated as `e^{w-λt} · e^{-w} F(w)` with
//! `w = (λ/c)√(c²t² - x²)`. The exponent `w - λt = -λx² / (c(ct + s))` is
//! non-positive and computed without cancellation, so nothing overflows for
//! any `t`.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::special::{i_scaled, struve_l0_scaled};

/// Points closer than this (relative to `ct`) to the edge of the support are
/// treated as lying on it.
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// Speed `c` and switching rate `λ` shared by both processes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightParams {
    c: f64,
    lambda: f64,
}

impl FlightParams {
    pub fn new(c: f64, lambda: f64) -> Result<Self> {
        require_positive("c", c)?;
        require_positive("lambda", lambda)?;
        Ok(Self { c, lambda })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Radius `ct` of the support at time `t`.
    pub fn reach(&self, t: f64) -> f64 {
        self.c * t
    }

    /// Probability `e^{-λt}` that no switch happens before `t`.
    pub fn no_switch_probability(&self, t: f64) -> f64 {
        (-self.lambda * t).exp()
    }
}

/// Absolutely continuous density at a point plus the singular mass of the law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySplit {
    pub ac: f64,
    /// Total probability carried by the singular component at time `t`.
    pub singular_mass: f64,
    /// Whether the point is in the open support.
    pub in_support: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPoint {
    pub x1: f64,
    pub x2: f64,
}

impl PlanarPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn norm(&self) -> f64 {
        self.x1.hypot(self.x2)
    }
}

/// Interior geometry of a point at distance `r` from the origin.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Chord {
    /// `√(c²t² - r²)`
    pub s: f64,
    /// `w - λt`, always `<= 0`
    pub exponent: f64,
}

impl Chord {
    /// `None` on or outside the boundary.
    pub(crate) fn at(r: f64, t: f64, p: &FlightParams) -> Option<Self> {
        let ct = p.reach(t);
        let r = r.abs();
        let gap = ct - r;
        if gap <= BOUNDARY_RTOL * ct {
            return None;
        }
        let s = (gap * (ct + r)).sqrt();
        Some(Self::from_parts(r, s, ct, p))
    }

    /// From `s` directly, for callers that parametrise `r = ct sin θ`,
    /// `s = ct cos θ`.
    pub(crate) fn from_parts(r: f64, s: f64, ct: f64, p: &FlightParams) -> Self {
        let exponent = -p.lambda * r * r / (p.c * (ct + s));
        Self { s, exponent }
    }

    fn w(&self, p: &FlightParams) -> f64 {
        p.lambda / p.c * self.s
    }
}

fn check_time(t: f64) -> Result<()> {
    require_positive("t", t)
}

fn check_position(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            requirement: "finite",
            value: x,
        })
    }
}

fn interior(x: f64, t: f64, p: &FlightParams) -> Result<Chord> {
    check_time(t)?;
    check_position("x", x)?;
    Chord::at(x, t, p).ok_or(Error::OutsideSupport { x, ct: p.reach(t) })
}

/// Density of the telegraph process at `x`, time `t`.
///
/// Inside `(-ct, ct)`:
/// `ac = (λ/2c) e^{-λt} [I_0(w) + (ct/s) I_1(w)]`.
/// The two endpoint atoms carry `e^{-λt}/2` each; at or beyond `|x| = ct`
/// the result has `ac = 0` and `in_support = false`.
pub fn telegraph_density(x: f64, t: f64, p: &FlightParams) -> Result<DensitySplit> {
    check_time(t)?;
    check_position("x", x)?;
    let singular_mass = p.no_switch_probability(t);
    Ok(match Chord::at(x, t, p) {
        Some(chord) => DensitySplit {
            ac: telegraph_ac(&chord, t, p),
            singular_mass,
            in_support: true,
        },
        None => DensitySplit {
            ac: 0.0,
            singular_mass,
            in_support: false,
        },
    })
}

pub(crate) fn telegraph_ac(chord: &Chord, t: f64, p: &FlightParams) -> f64 {
    let w = chord.w(p);
    let ct = p.reach(t);
    p.lambda / (2.0 * p.c) * chord.exponent.exp() * (i_scaled(0, w) + ct / chord.s * i_scaled(1, w))
}

/// `s · f_ac`, bounded up to the boundary.
pub(crate) fn telegraph_ac_times_chord(chord: &Chord, t: f64, p: &FlightParams) -> f64 {
    let w = chord.w(p);
    let ct = p.reach(t);
    p.lambda / (2.0 * p.c) * chord.exponent.exp() * (chord.s * i_scaled(0, w) + ct * i_scaled(1, w))
}

/// The same absolutely continuous part written as
/// `(e^{-λt}/2c) [λ I_0(w) + ∂_t I_0(w)]`, with `∂_t I_0(w) = I_1(w) ∂_t w`
/// and `∂_t w = λct/s`.
pub fn telegraph_density_derivative_form(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let chord = interior(x, t, p)?;
    let w = chord.w(p);
    let dw_dt = p.lambda * p.c * t / chord.s;
    let decay = chord.exponent.exp();
    let i0_term = p.lambda * i_scaled(0, w);
    let derivative_term = i_scaled(1, w) * dw_dt;
    Ok(decay * (i0_term + derivative_term) / (2.0 * p.c))
}

/// Density of the planar random flight at `pt`.
///
/// `ac = (λ/2πc) e^{-λt + (λ/c)s} / s` with `s = √(c²t² - ‖x‖²)`; the
/// singular mass `e^{-λt}` is spread uniformly over the circle `‖x‖ = ct`.
pub fn planar_density(pt: PlanarPoint, t: f64, p: &FlightParams) -> Result<DensitySplit> {
    check_time(t)?;
    check_position("x1", pt.x1)?;
    check_position("x2", pt.x2)?;
    let singular_mass = p.no_switch_probability(t);
    Ok(match Chord::at(pt.norm(), t, p) {
        Some(chord) => DensitySplit {
            ac: p.lambda / (2.0 * PI * p.c) * chord.exponent.exp() / chord.s,
            singular_mass,
            in_support: true,
        },
        None => DensitySplit {
            ac: 0.0,
            singular_mass,
            in_support: false,
        },
    })
}

/// Density of either coordinate of the planar flight,
/// `g = e^{-λt}/(π s) + (λ/2c) e^{-λt} [I_0(w) + L_0(w)]`.
///
/// The law has no singular part but `g` diverges like `1/s` at `±ct`, so the
/// closed support is rejected.
pub fn marginal_density(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let chord = interior(x, t, p)?;
    Ok(marginal_from(&chord, t, p))
}

pub(crate) fn marginal_from(chord: &Chord, t: f64, p: &FlightParams) -> f64 {
    circle_projection(chord, t, p) + bulk_term(chord, p)
}

/// `s · g`, bounded up to the boundary.
pub(crate) fn marginal_times_chord(chord: &Chord, t: f64, p: &FlightParams) -> f64 {
    p.no_switch_probability(t) / PI + chord.s * bulk_term(chord, p)
}

fn circle_projection(chord: &Chord, t: f64, p: &FlightParams) -> f64 {
    p.no_switch_probability(t) / (PI * chord.s)
}

fn bulk_term(chord: &Chord, p: &FlightParams) -> f64 {
    let w = chord.w(p);
    let l0 = struve_l0_scaled(w).expect("w >= 0");
    p.lambda / (2.0 * p.c) * chord.exponent.exp() * (i_scaled(0, w) + l0)
}

/// `(λ/2c) e^{-λt} I_0(w)`, the term the telegraph and marginal densities
/// have in common.
pub fn common_term(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let chord = interior(x, t, p)?;
    Ok(p.lambda / (2.0 * p.c) * chord.exponent.exp() * i_scaled(0, chord.w(p)))
}

/// Telegraph remainder `R = (λt/2) e^{-λt} I_1(w) / s`, so that
/// `f_ac = common_term + R`.
pub fn tail_r(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let chord = interior(x, t, p)?;
    let w = chord.w(p);
    Ok(0.5 * p.lambda * t / chord.s * chord.exponent.exp() * i_scaled(1, w))
}

/// Marginal remainder `Q = e^{-λt}/(π s) + (λ/2c) e^{-λt} L_0(w)`, so that
/// `g = common_term + Q`.
pub fn tail_q(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    let chord = interior(x, t, p)?;
    let w = chord.w(p);
    let l0 = struve_l0_scaled(w)?;
    Ok(circle_projection(&chord, t, p) + p.lambda / (2.0 * p.c) * chord.exponent.exp() * l0)
}

/// Large-time leading term `(1/2c) √(λ / (2πt))` shared by `R` and `Q`.
///
/// ```
/// use randflight::densities::{leading_term, FlightParams};
/// let p = FlightParams::new(0.5, 2.0 * std::f64::consts::PI).unwrap();
/// assert!((leading_term(1.0, &p).unwrap() - 1.0).abs() < 1e-15);
/// ```
pub fn leading_term(t: f64, p: &FlightParams) -> Result<f64> {
    check_time(t)?;
    Ok((p.lambda / (2.0 * PI * t)).sqrt() / (2.0 * p.c))
}

/// `w - λt` at an interior point. Never positive.
pub fn decay_exponent(x: f64, t: f64, p: &FlightParams) -> Result<f64> {
    Ok(interior(x, t, p)?.exponent)
}
