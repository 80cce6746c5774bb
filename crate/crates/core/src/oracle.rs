//! Brute-force checks that share no code path with the closed-form checkers,
//! and the seeded simplex generator.
//!
//! # Random number contract
//!
//! Every generator here is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`.
//!
//! * [`random_simplex`] draws coordinates one at a time, vertex by vertex, as
//!   `u = (next_u64() >> 11) * 2^-53`, coordinate `2u - 1`.
//! * [`mc_ball_in_simplex`] splits the samples into chunks of
//!   [`SAMPLE_CHUNK`]; chunk `c` uses stream `c` of the seeded generator, so
//!   results do not depend on how many threads process the chunks.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::geom::{GeomError, Point, Simplex, Sphere};
use crate::scalar::Real;
use crate::tolerance::REL_TOL;

/// Samples per independently seeded chunk.
pub const SAMPLE_CHUNK: usize = 4096;

/// Default quality floor for [`random_simplex`].
pub const DEFAULT_QUALITY_FLOOR: f64 = 0.05;

/// Rejection budget for [`random_simplex`].
pub const REJECTION_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("sample_count must be at least 1")]
    NoSamples,
    #[error("no points given")]
    EmptyInput,
    #[error("quality floor {floor} outside (0, {bound})")]
    QualityFloor { floor: f64, bound: f64 },
    #[error("no simplex with r/R >= {floor} found in {attempts} attempts")]
    BudgetExhausted { floor: f64, attempts: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { sample_count: 100_000, seed: 0 }
    }
}

/// Fraction of points sampled uniformly in `ball` whose barycentric
/// coordinates in `s` are all at least `-REL_TOL`.
pub fn mc_ball_in_simplex(ball: &Sphere, s: &Simplex, cfg: SampleConfig) -> Result<f64, OracleError> {
    if cfg.sample_count == 0 {
        return Err(OracleError::NoSamples);
    }
    if ball.center.dim() != s.dim() {
        return Err(GeomError::DimensionMismatch { expected: s.dim(), found: ball.center.dim() }.into());
    }
    let frame = s.frame()?;
    let n = s.dim();
    let chunks = cfg.sample_count.div_ceil(SAMPLE_CHUNK);
    let inside: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = SAMPLE_CHUNK.min(cfg.sample_count - c * SAMPLE_CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c as u64);
            let mut x = vec![0.0; n];
            let mut hits = 0;
            for _ in 0..count {
                sample_ball(&mut rng, ball, &mut x);
                if frame.contains_coords(&x, REL_TOL) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(inside as f64 / cfg.sample_count as f64)
}

fn sample_ball(rng: &mut ChaCha8Rng, ball: &Sphere, out: &mut [f64]) {
    let n = out.len();
    let norm = loop {
        for v in out.iter_mut() {
            *v = StandardNormal.sample(rng);
        }
        let q = out.iter().map(|v| v * v).sum::<f64>().sqrt();
        if q > 0.0 {
            break q;
        }
    };
    let u = unit_interval(rng);
    let scale = ball.radius * u.powf(1.0 / n as f64) / norm;
    for (v, c) in out.iter_mut().zip(ball.center.coords()) {
        *v = c + *v * scale;
    }
}

fn unit_interval(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `max_p | |p - center| - radius | / radius`.
pub fn sphere_fit_residual<T: Real>(points: &[Point<T>], sphere: &Sphere<T>) -> Result<T, OracleError> {
    if points.is_empty() {
        return Err(OracleError::EmptyInput);
    }
    let mut worst = T::zero();
    for p in points {
        if p.dim() != sphere.center.dim() {
            return Err(GeomError::DimensionMismatch { expected: sphere.center.dim(), found: p.dim() }.into());
        }
        worst = worst.max(((p.distance(&sphere.center) - sphere.radius) / sphere.radius).abs());
    }
    Ok(worst)
}

/// Random simplex with vertices uniform in `[-1, 1]^n` and `r/R >= quality_floor`.
pub fn random_simplex(n: usize, seed: u64, quality_floor: f64) -> Result<Simplex, OracleError> {
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n).into());
    }
    let bound = 1.0 / (n as f64 - 1.0);
    if !(quality_floor > 0.0 && quality_floor < bound) {
        return Err(OracleError::QualityFloor { floor: quality_floor, bound });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_BUDGET {
        let rows: Vec<Vec<f64>> =
            (0..=n).map(|_| (0..n).map(|_| 2.0 * unit_interval(&mut rng) - 1.0).collect()).collect();
        let s = Simplex::from_rows(&rows)?;
        if s.is_degenerate() {
            continue;
        }
        let (Ok(ins), Ok(circ)) = (s.insphere(), s.circumsphere()) else {
            continue;
        };
        if ins.radius / circ.radius >= quality_floor {
            return Ok(s);
        }
    }
    Err(OracleError::BudgetExhausted { floor: quality_floor, attempts: REJECTION_BUDGET })
}

/// Matrix with entry `(i, j) = (t_i - center) . (s_j - center)`.
pub fn gram_matrix<T: Real>(s: &Simplex<T>, t: &Simplex<T>, center: &Point<T>) -> Result<Vec<Vec<T>>, OracleError> {
    for d in [t.dim(), center.dim()] {
        if d != s.dim() {
            return Err(GeomError::DimensionMismatch { expected: s.dim(), found: d }.into());
        }
    }
    let left: Vec<Point<T>> = t.vertices().iter().map(|v| v - center).collect();
    let right: Vec<Point<T>> = s.vertices().iter().map(|v| v - center).collect();
    Ok(left.iter().map(|a| right.iter().map(|b| a.dot(b)).collect()).collect())
}

/// Mean and population standard deviation of the off-diagonal entries.
pub fn off_diagonal_stats(m: &[Vec<f64>]) -> (f64, f64) {
    let vals: Vec<f64> =
        m.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, &v)| v)).collect();
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64;
    (mean, var.sqrt())
}
