//! Kolmogorov–Smirnov distances.
//!
//! The telegraph law has atoms at `±ct`, so the one-sample distance compares
//! the empirical CDF with both one-sided limits of the analytic CDF at every
//! distinct sample value: `F_n(v-)` against `F(v-)` and `F_n(v)` against
//! `F(v)`. Since both functions are monotone and `F_n` is flat between
//! samples, the supremum is attained at one of these points.

use rayon::prelude::*;

use super::quadrature::integrate;
use super::{theta_integrand, to_theta, DensityKind, Law};
use crate::densities::FlightParams;
use crate::error::{require_positive, Error, Result};
use crate::montecarlo::SampleBatch;

const GAP_ABS_TOL: f64 = 1e-13;
const GAP_BUDGET: usize = 100_000;

/// KS distance between a scalar batch and the analytic law at `(t, p)`.
pub fn ks_distance(batch: &SampleBatch<f64>, law: Law, t: f64, p: &FlightParams) -> Result<f64> {
    if batch.horizon != t {
        return Err(Error::BatchMismatch {
            what: "t",
            batch: batch.horizon,
            requested: t,
        });
    }
    if batch.params.c() != p.c() {
        return Err(Error::BatchMismatch {
            what: "c",
            batch: batch.params.c(),
            requested: p.c(),
        });
    }
    if batch.params.lambda() != p.lambda() {
        return Err(Error::BatchMismatch {
            what: "lambda",
            batch: batch.params.lambda(),
            requested: p.lambda(),
        });
    }
    ks_distance_samples(&batch.positions, law, t, p)
}

/// KS distance between raw samples and the analytic law at `(t, p)`.
pub fn ks_distance_samples(samples: &[f64], law: Law, t: f64, p: &FlightParams) -> Result<f64> {
    require_positive("t", t)?;
    if samples.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if let Some(&bad) = samples.iter().find(|x| x.is_nan()) {
        return Err(Error::Domain {
            name: "sample",
            requirement: "not NaN",
            value: bad,
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;

    let groups = group_ties(&sorted);
    let ct = p.reach(t);
    let atom = match law {
        Law::Telegraph => 0.5 * p.no_switch_probability(t),
        Law::Marginal => 0.0,
    };

    // Analytic CDF at the interior values by summing the mass between
    // consecutive values, starting from -ct.
    let interior: Vec<f64> = groups
        .iter()
        .map(|g| g.value)
        .filter(|&v| v > -ct && v < ct)
        .collect();
    let kind = match law {
        Law::Telegraph => DensityKind::TelegraphAc,
        Law::Marginal => DensityKind::Marginal,
    };
    let f = theta_integrand(kind, t, *p);
    let thetas: Vec<f64> = std::iter::once(-std::f64::consts::FRAC_PI_2)
        .chain(interior.iter().map(|&v| to_theta(v, ct)))
        .collect();
    let increments: Vec<f64> = thetas
        .par_windows(2)
        .map(|w| integrate(&f, w[0], w[1], GAP_ABS_TOL, GAP_BUDGET).map(|r| r.value))
        .collect::<Result<_>>()?;
    let mut interior_cdf = Vec::with_capacity(increments.len());
    let mut acc = atom;
    for inc in increments {
        acc += inc;
        interior_cdf.push(acc.min(1.0 - atom));
    }

    let mut distance: f64 = 0.0;
    let mut seen = 0usize;
    let mut next_interior = interior_cdf.iter();
    for g in &groups {
        let (left, right) = if g.value < -ct {
            (0.0, 0.0)
        } else if g.value == -ct {
            (0.0, atom)
        } else if g.value < ct {
            let v = *next_interior.next().expect("one entry per interior value");
            (v, v)
        } else if g.value == ct {
            (1.0 - atom, 1.0)
        } else {
            (1.0, 1.0)
        };
        let emp_left = seen as f64 / n;
        seen += g.count;
        let emp_right = seen as f64 / n;
        distance = distance
            .max((emp_left - left).abs())
            .max((emp_right - right).abs());
    }
    Ok(distance)
}

struct Tie {
    value: f64,
    count: usize,
}

fn group_ties(sorted: &[f64]) -> Vec<Tie> {
    let mut out: Vec<Tie> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some(last) if last.value == v => last.count += 1,
            _ => out.push(Tie { value: v, count: 1 }),
        }
    }
    out
}

/// Two-sample KS statistic `sup |F_a - F_b|`.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut stat: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] == v {
            i += 1;
        }
        while j < b.len() && b[j] == v {
            j += 1;
        }
        stat = stat.max((i as f64 / na - j as f64 / nb).abs());
    }
    stat
}

/// Asymptotic critical value of the KS statistic at significance `alpha`,
/// `√(-ln(α/2)/2) / √n_eff`. For two samples pass
/// `n_eff = n·m/(n+m)`.
pub fn ks_critical_value(alpha: f64, n_eff: f64) -> f64 {
    (-(0.5 * alpha).ln() / 2.0).sqrt() / n_eff.sqrt()
}
