mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::xprec;
use proptest::prelude::*;
use randflight::analysis::quadrature::integrate;
use randflight::analysis::{integrate_density, telegraph_pde_residual, DensityKind};
use randflight::densities::{
    decay_exponent, marginal_density, planar_density, telegraph_density,
    telegraph_density_derivative_form, FlightParams, PlanarPoint,
};

fn params() -> FlightParams {
    FlightParams::new(2.0, 1.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn telegraph_matches_double_double_oracle() {
    for &(lambda, c) in &[(1.0, 2.0), (0.3, 1.0), (4.0, 0.5)] {
        let p = FlightParams::new(c, lambda).unwrap();
        for &t in &[0.1, 1.0, 2.0, 5.0, 10.0, 40.0, 150.0] {
            let ct = c * t;
            for &frac in &[0.0, 0.1, 0.5, 0.9, 0.99, 0.999_9] {
                let x = frac * ct;
                let got = telegraph_density(x, t, &p).unwrap().ac;
                let want = xprec::telegraph_ac(x, t, lambda, c);
                assert!(
                    rel(got, want) < 1e-11,
                    "λ={lambda} c={c} t={t} x={x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn marginal_matches_double_double_oracle() {
    for &(lambda, c) in &[(1.0, 2.0), (0.3, 1.0), (4.0, 0.5)] {
        let p = FlightParams::new(c, lambda).unwrap();
        for &t in &[0.1, 1.0, 2.0, 5.0, 10.0, 40.0, 150.0] {
            let ct = c * t;
            for &frac in &[0.0, 0.1, 0.5, 0.9, 0.99, 0.999_9] {
                let x = -frac * ct;
                let got = marginal_density(x, t, &p).unwrap();
                let want = xprec::marginal(x, t, lambda, c);
                assert!(
                    rel(got, want) < 1e-10,
                    "λ={lambda} c={c} t={t} x={x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn tabulated_values_at_five() {
    // (t, f, g) printed to six decimals.
    let table = [
        (5.0, 0.051002, 0.050719),
        (10.0, 0.046783, 0.047306),
        (20.0, 0.038183, 0.038526),
        (50.0, 0.026466, 0.026583),
        (100.0, 0.019315, 0.019361),
        (150.0, 0.015940, 0.015965),
        (200.0, 0.013878, 0.013895),
        (300.0, 0.011393, 0.011402),
        (400.0, 0.009893, 0.009899),
        (500.0, 0.008863, 0.008867),
        (1000.0, 0.006287, 0.006289),
    ];
    let p = params();
    for (t, f, g) in table {
        let got_f = telegraph_density(5.0, t, &p).unwrap().ac;
        let got_g = marginal_density(5.0, t, &p).unwrap();
        assert!((got_f - f).abs() <= 1.5e-6, "f at t={t}: {got_f}");
        assert!((got_g - g).abs() <= 1.5e-6, "g at t={t}: {got_g}");
    }
}

#[test]
fn normalisation() {
    let p = params();
    for &t in &[1.0, 5.0, 20.0] {
        let ct = p.reach(t);
        let ac_mass = 1.0 - (-t).exp();
        let g = integrate_density(DensityKind::Marginal, t, &p, -ct, ct).unwrap();
        let f = integrate_density(DensityKind::TelegraphAc, t, &p, -ct, ct).unwrap();
        let disk = integrate_density(DensityKind::PlanarRadial, t, &p, 0.0, ct).unwrap();
        assert!((g.value - 1.0).abs() < 1e-8, "g at {t}: {}", g.value);
        assert!((f.value - ac_mass).abs() < 1e-8, "f at {t}: {}", f.value);
        assert!(
            (disk.value - ac_mass).abs() < 1e-8,
            "disk at {t}: {}",
            disk.value
        );
    }
}

#[test]
fn marginal_is_projection_of_planar_density() {
    // g(x₁) = e^{-λt}/(π s) + ∫ p_ac(x₁, x₂) dx₂ over |x₂| < s, with the
    // substitution x₂ = s sin φ to remove the edge singularity.
    let p = params();
    for &t in &[0.5, 2.0, 6.0] {
        let ct = p.reach(t);
        for &frac in &[0.0, 0.3, 0.8, 0.97] {
            let x1 = frac * ct;
            let s = ((ct - x1) * (ct + x1)).sqrt();
            let integrand = |phi: f64| {
                let (sin, cos) = phi.sin_cos();
                let ac = planar_density(PlanarPoint::new(x1, s * sin), t, &p)
                    .unwrap()
                    .ac;
                ac * s * cos
            };
            let bulk = integrate(integrand, -FRAC_PI_2, FRAC_PI_2, 1e-12, 1_000_000).unwrap();
            let projected = (-t).exp() / (PI * s) + bulk.value;
            let g = marginal_density(x1, t, &p).unwrap();
            assert!(rel(projected, g) < 1e-6, "t={t} x={x1}: {projected} vs {g}");
        }
    }
}

#[test]
fn derivative_form_agrees() {
    let p = params();
    for &t in &[2.0, 5.0, 10.0] {
        let ct = p.reach(t);
        for i in 0..1000 {
            let x = ct * (-0.999 + 1.998 * i as f64 / 999.0);
            let a = telegraph_density(x, t, &p).unwrap().ac;
            let b = telegraph_density_derivative_form(x, t, &p).unwrap();
            assert!(rel(b, a) < 1e-12, "t={t} x={x}");
        }
    }
}

#[test]
fn pde_residual_converges_at_second_order() {
    let p = params();
    let points = [
        (0.0, 1.0),
        (0.5, 1.0),
        (-1.0, 1.5),
        (1.5, 2.0),
        (0.0, 3.0),
        (2.0, 3.0),
        (-3.0, 4.0),
        (4.0, 5.0),
        (1.0, 6.0),
        (-6.0, 8.0),
    ];
    for (x, t) in points {
        let coarse = telegraph_pde_residual(x, t, 0.02, &p).unwrap();
        let fine = telegraph_pde_residual(x, t, 0.01, &p).unwrap();
        let ratio = coarse / fine;
        assert!((3.6..4.4).contains(&ratio), "x={x} t={t}: ratio {ratio}");
    }
}

#[test]
fn boundary_and_outside() {
    let p = params();
    let t = 3.0;
    let edge = telegraph_density(6.0, t, &p).unwrap();
    assert!(!edge.in_support);
    assert_eq!(edge.ac, 0.0);
    assert_eq!(edge.singular_mass, (-3.0f64).exp());
    assert!(!telegraph_density(-7.0, t, &p).unwrap().in_support);
    assert!(
        !planar_density(PlanarPoint::new(3.6, 4.8), t, &p)
            .unwrap()
            .in_support
    );
    assert!(marginal_density(6.0, t, &p).is_err());
    assert!(marginal_density(f64::NAN, t, &p).is_err());
    assert!(telegraph_density(0.0, 0.0, &p).is_err());
    assert!(telegraph_density(f64::INFINITY, 1.0, &p).is_err());
}

#[test]
fn long_times_stay_finite() {
    let p = params();
    for &t in &[1000.0, 2000.0] {
        let f = telegraph_density(5.0, t, &p).unwrap().ac;
        let g = marginal_density(5.0, t, &p).unwrap();
        assert!(f.is_finite() && f > 0.0);
        assert!(g.is_finite() && g > 0.0);
        let near_edge = telegraph_density(p.reach(t) * (1.0 - 1e-10), t, &p).unwrap();
        assert!(near_edge.ac.is_finite() && near_edge.ac >= 0.0);
    }
}

fn any_params() -> impl Strategy<Value = FlightParams> {
    (0.1f64..5.0, 0.1f64..5.0).prop_map(|(c, l)| FlightParams::new(c, l).unwrap())
}

proptest! {
    #[test]
    fn telegraph_is_even(p in any_params(), t in 0.01f64..200.0, u in 0.0f64..1.0) {
        let x = u * p.reach(t);
        let a = telegraph_density(x, t, &p).unwrap();
        let b = telegraph_density(-x, t, &p).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn marginal_is_even_and_positive(p in any_params(), t in 0.01f64..200.0, u in 0.0f64..0.999) {
        let x = u * p.reach(t);
        let a = marginal_density(x, t, &p).unwrap();
        prop_assert_eq!(a, marginal_density(-x, t, &p).unwrap());
        prop_assert!(a >= 0.0 && a.is_finite());
        if decay_exponent(x, t, &p).unwrap() > -700.0 {
            prop_assert!(a > 0.0);
        }
    }

    #[test]
    fn planar_is_radial(p in any_params(), t in 0.01f64..200.0, u in 0.0f64..0.999, a in 0.0f64..6.3, b in 0.0f64..6.3) {
        let r = u * p.reach(t);
        let one = planar_density(PlanarPoint::new(r * a.cos(), r * a.sin()), t, &p).unwrap();
        let two = planar_density(PlanarPoint::new(r * b.cos(), r * b.sin()), t, &p).unwrap();
        // Rounding in r·cos a, r·sin a is amplified by the exponent and by
        // the chord near the edge.
        let ct = p.reach(t);
        let exponent = decay_exponent(r, t, &p).unwrap().abs();
        let tol = 1e-14 * (1.0 + exponent + ct * ct / (ct * ct - r * r));
        prop_assert!((one.ac - two.ac).abs() <= tol * one.ac.max(two.ac));
        prop_assert!(one.ac >= 0.0);
    }

    #[test]
    fn decay_exponent_never_positive(p in any_params(), t in 0.001f64..5000.0, u in -0.999_999f64..0.999_999) {
        let x = u * p.reach(t);
        let e = decay_exponent(x, t, &p).unwrap();
        prop_assert!(e <= 0.0);
        let f = telegraph_density(x, t, &p).unwrap();
        // Far from the origin at long times the density underflows to 0.
        prop_assert!(f.ac.is_finite() && f.ac >= 0.0);
        prop_assert!(f.singular_mass >= 0.0);
    }

    #[test]
    fn telegraph_dominates_near_edge(p in any_params(), t in 0.1f64..20.0) {
        // Near ±ct the I₁/s term of f grows like 1/s while g carries the
        // same 1/s order through the circle projection; both stay positive.
        let x = p.reach(t) * (1.0 - 1e-6);
        let f = telegraph_density(x, t, &p).unwrap().ac;
        let g = marginal_density(x, t, &p).unwrap();
        prop_assert!(f > 0.0 && g > 0.0);
    }
}
