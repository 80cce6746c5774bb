//! Iterated roots `S_{k+1} = Root(S_k)` and convergence diagnostics for the
//! circumcenter sequence.
//!
//! Each root is centered at the previous incenter, so `O_{k+1} = I_k`, and its
//! circumradius is `R_k^2 / r_k`. The simplices therefore grow geometrically
//! while the circumcenters settle onto two limits, one for even `k` and one
//! for odd `k`. Absolute positions are resolved only to about
//! `unit_roundoff * R_k`, which is why the iteration is normally run in
//! [`DoubleDouble`](crate::DoubleDouble) and guarded by a resolution limit.

use std::f64::consts::FRAC_PI_3;

use serde::Serialize;

use crate::geom::{GeomError, Point, Simplex};
use crate::root::root_from_parts;
use crate::scalar::Real;
use crate::tolerance::{NOISE_FACTOR, OVERFLOW_RADIUS};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum IterationError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    /// The guard fired before two iterates existed.
    #[error("circumradius {radius:e} exceeded the overflow guard before two steps")]
    OverflowBeforeTwoSteps { radius: f64 },
    #[error("trajectory has {len} records, need at least {needed}")]
    TooShort { len: usize, needed: usize },
    #[error("operation needs dimension 2, trajectory has dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid iteration config: {0}")]
    InvalidConfig(&'static str),
}

/// Iteration parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationConfig {
    /// Largest number of simplices to produce (`S_1 ... S_K`).
    pub max_steps: usize,
    /// Absolute threshold on the final same-parity step `|O_k - O_{k+2}|`.
    pub cauchy_tolerance: f64,
    /// Translate every iterate so its incenter is the local origin.
    pub recenter: bool,
    /// Stop once a circumradius exceeds this.
    pub overflow_radius: f64,
    /// Stop once absolute positions can no longer be resolved to
    /// `cauchy_tolerance` in the working precision.
    pub resolution_guard: bool,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_steps: 40,
            cauchy_tolerance: 1e-9,
            recenter: true,
            overflow_radius: OVERFLOW_RADIUS,
            resolution_guard: true,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<(), IterationError> {
        if self.max_steps < 2 {
            return Err(IterationError::InvalidConfig("max_steps must be at least 2"));
        }
        if !(self.cauchy_tolerance > 0.0) {
            return Err(IterationError::InvalidConfig("cauchy_tolerance must be positive"));
        }
        if !(self.overflow_radius > 0.0) {
            return Err(IterationError::InvalidConfig("overflow_radius must be positive"));
        }
        Ok(())
    }
}

/// One iterate `S_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord<T = f64> {
    /// 1-based step index.
    pub k: usize,
    /// `S_k` in its local frame.
    pub simplex: Simplex<T>,
    /// Absolute position of the local origin.
    pub offset: Point<T>,
    /// `I_k`, absolute.
    pub incenter: Point<T>,
    /// `O_k`, absolute.
    pub circumcenter: Point<T>,
    pub inradius: T,
    pub circumradius: T,
    /// `r_k / R_k`.
    pub ratio: T,
    /// Estimated absolute uncertainty of `I_k` and `O_k`.
    pub resolution: f64,
}

impl<T: Real> TrajectoryRecord<T> {
    /// `S_k` in absolute coordinates.
    pub fn absolute_simplex(&self) -> Simplex<T> {
        self.simplex.translated(&-&self.offset)
    }
}

/// Why [`iterate`] stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxSteps,
    Overflow,
    ResolutionLimit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T = f64> {
    pub records: Vec<TrajectoryRecord<T>>,
    pub stop: StopReason,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.records.first().map_or(0, |r| r.simplex.dim())
    }

    /// `|O_k - O_{k+2}|` for `k = 1 ..= K-2`.
    pub fn cauchy_steps(&self) -> Vec<f64> {
        self.records
            .windows(3)
            .map(|w| w[0].circumcenter.distance(&w[2].circumcenter).as_f64())
            .collect()
    }
}

fn resolution<T: Real>(circumradius: f64) -> f64 {
    NOISE_FACTOR * T::unit_roundoff() * circumradius
}

/// Iterate the root map from `s1` for up to `cfg.max_steps` simplices.
///
/// Stops early when a circumradius passes `cfg.overflow_radius` or, with the
/// resolution guard on, when the next iterate's absolute centers would carry
/// more than `cfg.cauchy_tolerance` of rounding noise.
pub fn iterate<T: Real>(s1: &Simplex<T>, cfg: &IterationConfig) -> Result<Trajectory<T>, IterationError> {
    cfg.validate()?;
    let dim = s1.dim();
    let (mut local, mut offset) = if cfg.recenter {
        let i = s1.insphere()?.center;
        (s1.translated(&i), i)
    } else {
        (s1.clone(), Point::origin(dim))
    };
    let mut records: Vec<TrajectoryRecord<T>> = Vec::with_capacity(cfg.max_steps);
    let mut stop = StopReason::MaxSteps;
    for k in 1..=cfg.max_steps {
        let (ins, _, contacts) = local.incircle_data()?;
        let circ = local.circumsphere()?;
        let big = circ.radius.as_f64();
        if !(big <= cfg.overflow_radius) {
            stop = StopReason::Overflow;
            break;
        }
        records.push(TrajectoryRecord {
            k,
            simplex: local.clone(),
            incenter: &offset + &ins.center,
            circumcenter: &offset + &circ.center,
            offset: offset.clone(),
            inradius: ins.radius,
            circumradius: circ.radius,
            ratio: ins.radius / circ.radius,
            resolution: resolution::<T>(big),
        });
        if k == cfg.max_steps {
            break;
        }
        let next_radius = (circ.radius * circ.radius / ins.radius).as_f64();
        if !(next_radius <= cfg.overflow_radius) {
            stop = StopReason::Overflow;
            break;
        }
        if cfg.resolution_guard && resolution::<T>(next_radius) > cfg.cauchy_tolerance {
            stop = StopReason::ResolutionLimit;
            break;
        }
        let next = root_from_parts(&ins, &circ, &contacts)?;
        if cfg.recenter {
            let i = next.insphere()?.center;
            local = next.translated(&i);
            offset = &offset + &i;
        } else {
            local = next;
        }
    }
    if records.len() < 2 && stop == StopReason::Overflow {
        let radius = records.last().map_or_else(|| local.circumsphere().map_or(f64::INFINITY, |c| c.radius.as_f64()), |r| {
            let b = r.circumradius;
            (b * b / r.inradius).as_f64()
        });
        return Err(IterationError::OverflowBeforeTwoSteps { radius });
    }
    Ok(Trajectory { records, stop })
}

/// Even/odd circumcenter convergence summary.
///
/// "Even" is `O_2, O_4, ...` and "odd" is `O_1, O_3, ...`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Last even-index circumcenter.
    pub even_limit: Vec<f64>,
    /// Last odd-index circumcenter.
    pub odd_limit: Vec<f64>,
    /// `|even_limit - odd_limit|`.
    pub gap: f64,
    /// Final even step `|O_k - O_{k+2}|` below the Cauchy tolerance.
    pub even_converged: bool,
    pub odd_converged: bool,
    /// First even `k` with `|O_k - O_{k+2}|` below the tolerance.
    pub even_converged_at: Option<usize>,
    pub odd_converged_at: Option<usize>,
    pub steps_used: usize,
    /// `|O_k - O_{k+2}|` for `k = 1 ..= K-2`.
    pub cauchy_steps: Vec<f64>,
    /// `|O_{k+2} O_{k+4}| / |O_k O_{k+2}|` for `k = 1 ..= K-4`.
    pub decay_ratios: Vec<f64>,
    /// Whether both steps of each decay ratio sit above the noise floor.
    pub decay_resolved: Vec<bool>,
    /// Final `r_K / R_K`.
    pub rho_estimate: f64,
    /// `max_k |I_{k+1} - O_{k+2}| / R_{k+1}`.
    pub center_identity_residual: f64,
    pub cauchy_tolerance: f64,
}

impl ConvergenceReport {
    pub fn converged(&self) -> bool {
        self.even_converged && self.odd_converged
    }

    /// The last `count` decay ratios whose steps are above the noise floor.
    pub fn tail_decay_ratios(&self, count: usize) -> Vec<f64> {
        let resolved: Vec<f64> = self
            .decay_ratios
            .iter()
            .zip(&self.decay_resolved)
            .filter(|(_, &ok)| ok)
            .map(|(&r, _)| r)
            .collect();
        resolved[resolved.len().saturating_sub(count)..].to_vec()
    }
}

/// Summarize the even and odd circumcenter subsequences of a trajectory.
pub fn subsequence_limits<T: Real>(traj: &Trajectory<T>, cfg: &IterationConfig) -> Result<ConvergenceReport, IterationError> {
    let recs = &traj.records;
    let len = recs.len();
    if len < 4 {
        return Err(IterationError::TooShort { len, needed: 4 });
    }
    let tol = cfg.cauchy_tolerance;
    let steps = traj.cauchy_steps();
    // steps[i] belongs to k = i + 1
    let parity_of = |i: usize| (i + 1) % 2;
    let last_step = |parity: usize| {
        (0..steps.len()).rev().find(|&i| parity_of(i) == parity).map(|i| steps[i])
    };
    let first_below = |parity: usize| {
        (0..steps.len()).find(|&i| parity_of(i) == parity && steps[i] < tol).map(|i| i + 1)
    };
    let last_of = |parity: usize| recs.iter().rev().find(|r| r.k % 2 == parity).expect("len >= 4");
    let even = last_of(0);
    let odd = last_of(1);

    let mut decay_ratios = Vec::new();
    let mut decay_resolved = Vec::new();
    for i in 0..steps.len().saturating_sub(2) {
        let (a, b) = (steps[i], steps[i + 2]);
        decay_ratios.push(if b == 0.0 { 0.0 } else { b / a });
        let floor = |j: usize| 10.0 * recs[j + 2].resolution;
        decay_resolved.push(a > floor(i) && b > floor(i + 2));
    }

    let mut identity = 0.0f64;
    for w in recs.windows(2) {
        // I_{k+1} == O_{k+2}
        let d = w[0].incenter.distance(&w[1].circumcenter) / w[0].circumradius;
        identity = identity.max(d.as_f64());
    }

    Ok(ConvergenceReport {
        even_limit: even.circumcenter.to_f64(),
        odd_limit: odd.circumcenter.to_f64(),
        gap: even.circumcenter.distance(&odd.circumcenter).as_f64(),
        even_converged: last_step(0).is_some_and(|s| s < tol),
        odd_converged: last_step(1).is_some_and(|s| s < tol),
        even_converged_at: first_below(0),
        odd_converged_at: first_below(1),
        steps_used: len,
        cauchy_steps: steps,
        decay_ratios,
        decay_resolved,
        rho_estimate: recs[len - 1].ratio.as_f64(),
        center_identity_residual: identity,
        cauchy_tolerance: tol,
    })
}

/// Interior angles of every triangle in the trajectory minus `pi/3`.
pub fn triangle_angle_deviations<T: Real>(traj: &Trajectory<T>) -> Result<Vec<[f64; 3]>, IterationError> {
    let dim = traj.dimension();
    if dim != 2 {
        return Err(IterationError::UnsupportedDimension(dim));
    }
    Ok(traj.records.iter().map(|r| angle_deviations(&r.simplex)).collect())
}

fn angle_deviations<T: Real>(s: &Simplex<T>) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let a = s.vertex(i);
        let u = (s.vertex((i + 1) % 3) - a).to_f64();
        let v = (s.vertex((i + 2) % 3) - a).to_f64();
        let scale = (u[0].hypot(u[1])) * (v[0].hypot(v[1]));
        let cross = (u[0] * v[1] - u[1] * v[0]).abs() / scale;
        let dot = (u[0] * v[0] + u[1] * v[1]) / scale;
        *slot = cross.atan2(dot) - FRAC_PI_3;
    }
    out
}

/// Final ratio `r_K / R_K`, the best available lower estimate of the ratio limit.
pub fn estimate_rho<T: Real>(traj: &Trajectory<T>) -> Result<f64, IterationError> {
    if traj.len() < 2 {
        return Err(IterationError::TooShort { len: traj.len(), needed: 2 });
    }
    Ok(traj.records[traj.len() - 1].ratio.as_f64())
}
