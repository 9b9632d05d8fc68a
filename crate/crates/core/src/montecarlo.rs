//! Seeded simulation of terminal positions of the telegraph process and the
//! planar random flight.
//!
//! # Reproducibility contract
//!
//! A batch of `n` samples is cut into chunks of [`CHUNK_SIZE`] consecutive
//! samples (the last chunk may be shorter). Chunk `k` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `k`, and consumes
//! its stream sample by sample in order. Chunks are simulated in parallel
//! and concatenated in chunk order, so the output depends only on
//! `(params, t, n, seed)` and never on the thread count.
//!
//! Per path, the draws are: one uniform for the initial direction, then one
//! uniform per holding time (inverse CDF of the exponential law), and for
//! the planar flight one more uniform per new direction.

use std::f64::consts::TAU;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::densities::{FlightParams, PlanarPoint};
use crate::error::{require_positive, Error, Result};

pub const CHUNK_SIZE: usize = 1 << 16;

/// Relative distance from `ct` within which a sample counts as on the
/// boundary.
pub const BOUNDARY_FLAG_RTOL: f64 = 1e-9;

/// Terminal positions of `n` independent paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch<P> {
    pub params: FlightParams,
    pub horizon: f64,
    pub seed: u64,
    pub positions: Vec<P>,
    /// `true` where the path never switched, i.e. the sample sits on the
    /// boundary of the support.
    pub boundary_flags: Vec<bool>,
}

impl<P> SampleBatch<P> {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn boundary_fraction(&self) -> f64 {
        let hits = self.boundary_flags.iter().filter(|&&b| b).count();
        hits as f64 / self.len() as f64
    }
}

/// Coordinate axis for [`project_marginal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
}

impl TryFrom<u8> for Axis {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Axis::X1),
            2 => Ok(Axis::X2),
            other => Err(Error::Domain {
                name: "axis",
                requirement: "1 or 2",
                value: other as f64,
            }),
        }
    }
}

fn check_request(t: f64, n: usize) -> Result<()> {
    require_positive("t", t)?;
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    Ok(())
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn simulate_chunks<P, F>(n: usize, seed: u64, path: F) -> Vec<P>
where
    P: Send,
    F: Fn(&mut ChaCha8Rng) -> P + Sync,
{
    let chunks = n.div_ceil(CHUNK_SIZE);
    let parts: Vec<Vec<P>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK_SIZE.min(n - k * CHUNK_SIZE);
            let mut rng = chunk_rng(seed, k);
            (0..len).map(|_| path(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

fn holding_time(rng: &mut ChaCha8Rng, lambda: f64) -> f64 {
    let u: f64 = rng.random();
    -(-u).ln_1p() / lambda
}

fn telegraph_path(rng: &mut ChaCha8Rng, c: f64, lambda: f64, t: f64) -> f64 {
    let mut direction = if rng.random::<f64>() < 0.5 { 1.0 } else { -1.0 };
    let mut clock = 0.0;
    let mut position = 0.0;
    loop {
        let hold = holding_time(rng, lambda);
        if clock + hold >= t {
            position += direction * c * (t - clock);
            let ct = c * t;
            return position.clamp(-ct, ct);
        }
        position += direction * c * hold;
        clock += hold;
        direction = -direction;
    }
}

fn planar_path(rng: &mut ChaCha8Rng, c: f64, lambda: f64, t: f64) -> PlanarPoint {
    let mut angle = TAU * rng.random::<f64>();
    let mut clock = 0.0;
    let (mut x1, mut x2) = (0.0, 0.0);
    loop {
        let hold = holding_time(rng, lambda);
        let last = clock + hold >= t;
        let step = if last { c * (t - clock) } else { c * hold };
        let (sin, cos) = angle.sin_cos();
        x1 += step * cos;
        x2 += step * sin;
        if last {
            break;
        }
        clock += hold;
        angle = TAU * rng.random::<f64>();
    }
    clip_to_disk(PlanarPoint::new(x1, x2), c * t)
}

fn clip_to_disk(mut pt: PlanarPoint, radius: f64) -> PlanarPoint {
    let norm = pt.norm();
    if norm > radius {
        let mut scale = radius / norm;
        loop {
            let candidate = PlanarPoint::new(pt.x1 * scale, pt.x2 * scale);
            if candidate.norm() <= radius {
                pt = candidate;
                break;
            }
            scale *= 1.0 - f64::EPSILON;
        }
    }
    pt
}

fn on_boundary(r: f64, ct: f64) -> bool {
    r.abs() >= ct * (1.0 - BOUNDARY_FLAG_RTOL)
}

/// Terminal positions of `n` telegraph paths run to time `t`.
///
/// ```
/// use randflight::densities::FlightParams;
/// use randflight::montecarlo::simulate_telegraph;
/// let p = FlightParams::new(2.0, 1.0).unwrap();
/// let batch = simulate_telegraph(&p, 5.0, 1000, 7).unwrap();
/// assert!(batch.positions.iter().all(|x| x.abs() <= 10.0));
/// ```
pub fn simulate_telegraph(
    p: &FlightParams,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<SampleBatch<f64>> {
    check_request(t, n)?;
    let (c, lambda) = (p.c(), p.lambda());
    let positions = simulate_chunks(n, seed, |rng| telegraph_path(rng, c, lambda, t));
    let ct = p.reach(t);
    let boundary_flags = positions.iter().map(|&x| on_boundary(x, ct)).collect();
    Ok(SampleBatch {
        params: *p,
        horizon: t,
        seed,
        positions,
        boundary_flags,
    })
}

/// Terminal positions of `n` planar random-flight paths run to time `t`.
pub fn simulate_planar(
    p: &FlightParams,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<SampleBatch<PlanarPoint>> {
    check_request(t, n)?;
    let (c, lambda) = (p.c(), p.lambda());
    let positions = simulate_chunks(n, seed, |rng| planar_path(rng, c, lambda, t));
    let ct = p.reach(t);
    let boundary_flags = positions
        .iter()
        .map(|pt| on_boundary(pt.norm(), ct))
        .collect();
    Ok(SampleBatch {
        params: *p,
        horizon: t,
        seed,
        positions,
        boundary_flags,
    })
}

/// One coordinate of every planar sample. The projected law has no atoms,
/// so all boundary flags are cleared.
pub fn project_marginal(batch: &SampleBatch<PlanarPoint>, axis: Axis) -> SampleBatch<f64> {
    let positions: Vec<f64> = batch
        .positions
        .iter()
        .map(|pt| match axis {
            Axis::X1 => pt.x1,
            Axis::X2 => pt.x2,
        })
        .collect();
    let boundary_flags = vec![false; positions.len()];
    SampleBatch {
        params: batch.params,
        horizon: batch.horizon,
        seed: batch.seed,
        positions,
        boundary_flags,
    }
}

/// A sample type that knows its CSV header and row.
pub trait CsvSample {
    const HEADER: &'static str;
    fn write_row<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()>;
}

impl CsvSample for f64 {
    const HEADER: &'static str = "x";
    fn write_row<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{:.16e}", self)
    }
}

impl CsvSample for PlanarPoint {
    const HEADER: &'static str = "x1,x2";
    fn write_row<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{:.16e},{:.16e}", self.x1, self.x2)
    }
}

impl<P: CsvSample> SampleBatch<P> {
    /// Header line, then one sample per line with 17 significant digits.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", P::HEADER)?;
        for pos in &self.positions {
            pos.write_row(out)?;
        }
        Ok(())
    }
}
