//! Pointwise comparison of the telegraph density `f` with the marginal
//! density `g`.

use rayon::prelude::*;

use crate::densities::{marginal_density, telegraph_density, FlightParams};
use crate::error::{require_positive, Error, Result};

/// Times at which the comparison at `x = 5` is conventionally tabulated.
pub const COMPARISON_TIMES: [f64; 11] = [
    5.0, 10.0, 20.0, 50.0, 100.0, 150.0, 200.0, 300.0, 400.0, 500.0, 1000.0,
];

/// One time slice of the comparison at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffRow {
    pub t: f64,
    pub f: f64,
    pub g: f64,
    /// `|f - g|` of the stored values.
    pub abs_diff: f64,
}

/// One point of a plotting grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub f: f64,
    pub g: f64,
}

const GRID_EPSILON: f64 = 1e-3;

/// `f(x, t)` (absolutely continuous part) and `g(x, t)` for each `t`.
///
/// ```
/// use randflight::analysis::difference_table;
/// use randflight::densities::FlightParams;
/// let p = FlightParams::new(2.0, 1.0).unwrap();
/// let rows = difference_table(5.0, &p, &[5.0]).unwrap();
/// assert!((rows[0].f - 0.051002).abs() < 1e-6);
/// assert!((rows[0].g - 0.050719).abs() < 1e-6);
/// ```
pub fn difference_table(x: f64, p: &FlightParams, ts: &[f64]) -> Result<Vec<DiffRow>> {
    ts.par_iter()
        .map(|&t| {
            let f = telegraph_density(x, t, p)?;
            if !f.in_support {
                return Err(Error::OutsideSupport { x, ct: p.reach(t) });
            }
            let g = marginal_density(x, t, p)?;
            Ok(DiffRow {
                t,
                f: f.ac,
                g,
                abs_diff: (f.ac - g).abs(),
            })
        })
        .collect()
}

/// `f` and `g` on `n_points` equally spaced points of
/// `[-ct(1-ε), ct(1-ε)]`, `ε = 10⁻³`. The grid is exactly symmetric.
pub fn figure_grid(t: f64, p: &FlightParams, n_points: usize) -> Result<Vec<GridRow>> {
    require_positive("t", t)?;
    if n_points < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: n_points,
        });
    }
    let half_width = p.reach(t) * (1.0 - GRID_EPSILON);
    let denom = (n_points - 1) as f64;
    (0..n_points)
        .into_par_iter()
        .map(|i| {
            let k = 2.0 * i as f64 - denom;
            let x = half_width * k / denom;
            let f = telegraph_density(x, t, p)?.ac;
            let g = marginal_density(x, t, p)?;
            Ok(GridRow { x, f, g })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> FlightParams {
        FlightParams::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn abs_diff_matches_stored_values() {
        for row in difference_table(5.0, &params(), &COMPARISON_TIMES).unwrap() {
            assert_eq!(row.abs_diff, (row.f - row.g).abs());
        }
    }

    #[test]
    fn rows_follow_input_order() {
        let ts = [100.0, 5.0, 20.0];
        let rows = difference_table(5.0, &params(), &ts).unwrap();
        let got: Vec<f64> = rows.iter().map(|r| r.t).collect();
        assert_eq!(got, ts);
    }

    #[test]
    fn point_outside_support_is_an_error() {
        assert!(difference_table(5.0, &params(), &[2.0]).is_err());
        assert!(difference_table(5.0, &params(), &[2.5]).is_err());
    }

    #[test]
    fn grid_is_symmetric_and_spans_interior() {
        let grid = figure_grid(2.0, &params(), 11).unwrap();
        assert_eq!(grid.len(), 11);
        assert_eq!(grid[5].x, 0.0);
        assert!((grid[0].x + 4.0 * (1.0 - 1e-3)).abs() < 1e-14);
        for i in 0..11 {
            let (a, b) = (grid[i], grid[10 - i]);
            assert_eq!(a.x, -b.x);
            assert_eq!(a.f, b.f);
            assert_eq!(a.g, b.g);
        }
        assert!(figure_grid(2.0, &params(), 1).is_err());
    }
}
