//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! The panel with the largest error estimate is halved until the summed
//! estimate meets the absolute tolerance. A panel's estimate is
//! `|K15 - G7|`, the difference between the Kronrod value and its embedded
//! 7-point Gauss value. That is an estimate for the Gauss rule, so it
//! overstates the error of the Kronrod value that is actually returned.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

/// Absolute tolerance used by the density integrals.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Integrand evaluation budget.
pub const DEFAULT_BUDGET: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const EVALS_PER_PANEL: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f` to absolute tolerance `abs_tol`, using at most `budget`
/// integrand evaluations.
///
/// ```
/// use randflight::analysis::quadrature::integrate;
/// let r = integrate(|x: f64| x.cos(), 0.0, std::f64::consts::FRAC_PI_2, 1e-12, 10_000).unwrap();
/// assert!((r.value - 1.0).abs() < 1e-12);
/// ```
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut panels = vec![gauss_kronrod(&f, a, b)];
    let mut evaluations = EVALS_PER_PANEL;
    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let value: f64 = panels.iter().map(|p| p.value).sum();
        if !value.is_finite() {
            return Err(Error::Domain {
                name: "integrand",
                requirement: "finite on the interval",
                value,
            });
        }
        if error <= abs_tol {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let Panel { a: lo, b: hi, .. } = panels[worst];
        let mid = 0.5 * (lo + hi);
        let too_narrow = mid <= lo.min(hi) || mid >= lo.max(hi);
        if evaluations + 2 * EVALS_PER_PANEL > budget || too_narrow {
            return Err(Error::QuadratureBudget {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        panels[worst] = gauss_kronrod(&f, lo, mid);
        panels.push(gauss_kronrod(&f, mid, hi));
        evaluations += 2 * EVALS_PER_PANEL;
    }
}
