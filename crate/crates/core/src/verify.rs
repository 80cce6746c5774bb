//! Batch verification of the root's properties, one report per simplex.

use rayon::prelude::*;
use serde::Serialize;

use crate::geom::Simplex;
use crate::oracle::{self, OracleError, SampleConfig, DEFAULT_QUALITY_FLOOR};
use crate::root::{check_containment, check_gram_identity, check_incenter_interior, check_root_circumsphere, radius_chain, root};
use crate::tolerance::REL_TOL;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Relative tolerance for every residual.
    pub tolerance: f64,
    /// Monte Carlo samples per case.
    pub mc_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tolerance: REL_TOL, mc_samples: 100_000 }
    }
}

/// Residuals of one case. Relative residuals are scaled by `R` (or `R^2`);
/// absolute ones are in input units.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub index: usize,
    /// Generator seed, for random cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub dimension: usize,
    pub circumradius: f64,
    pub inradius: f64,
    pub circumsphere_residual: f64,
    pub circumsphere_residual_abs: f64,
    pub gram_residual: f64,
    pub gram_residual_abs: f64,
    pub min_margin: f64,
    pub min_margin_abs: f64,
    pub mc_fraction: f64,
    pub container_slack: f64,
    pub ratio_slack: f64,
    pub recurrence_residual: f64,
    pub incenter_interior: bool,
    pub circumcenter_interior: bool,
    pub passed: bool,
}

/// Run every root checker and the Monte Carlo containment oracle on `s`.
pub fn verify_simplex(s: &Simplex, index: usize, seed: Option<u64>, cfg: &VerifyConfig) -> Result<CaseReport, OracleError> {
    let rr = root(s)?;
    let big = rr.source_circumsphere.radius;
    let small = rr.source_insphere.radius;
    let root_big = rr.expected_circumradius();
    let circ = check_root_circumsphere(&rr)?;
    let gram = check_gram_identity(&rr, s);
    let containment = check_containment(&rr, s)?;
    let chain = radius_chain(s)?;
    let mc = oracle::mc_ball_in_simplex(
        &rr.source_circumsphere,
        &rr.root,
        SampleConfig { sample_count: cfg.mc_samples, seed: seed.unwrap_or(index as u64) },
    )?;
    let tol = cfg.tolerance;
    let margin = containment.min_relative_margin();
    let incenter_interior = check_incenter_interior(&rr)?;
    let circumcenter_interior = containment.circumcenter_interior();
    let passed = circ <= tol
        && gram <= tol
        && margin >= -tol
        && mc == 1.0
        && chain.recurrence_residual() <= tol
        && chain.container_slack() >= -tol
        && chain.ratio_slack() >= -tol
        && incenter_interior
        && circumcenter_interior;
    Ok(CaseReport {
        index,
        seed,
        dimension: s.dim(),
        circumradius: big,
        inradius: small,
        circumsphere_residual: circ,
        circumsphere_residual_abs: circ * root_big,
        gram_residual: gram,
        gram_residual_abs: gram * big * big,
        min_margin: margin,
        min_margin_abs: margin * big,
        mc_fraction: mc,
        container_slack: chain.container_slack(),
        ratio_slack: chain.ratio_slack(),
        recurrence_residual: chain.recurrence_residual(),
        incenter_interior,
        circumcenter_interior,
        passed,
    })
}

/// Seed of random case `i` in a batch started at `seed`.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Verify `count` generated simplices of dimension `dim`, in parallel, reports in case order.
pub fn verify_random(count: usize, dim: usize, seed: u64, cfg: &VerifyConfig) -> Result<Vec<CaseReport>, OracleError> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let cs = case_seed(seed, i);
            let s = oracle::random_simplex(dim, cs, DEFAULT_QUALITY_FLOOR)?;
            verify_simplex(&s, i, Some(cs), cfg)
        })
        .collect()
}

/// Largest value of each residual over a batch.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub failures: usize,
    pub circumsphere_residual: f64,
    pub gram_residual: f64,
    /// Most negative relative margin.
    pub min_margin: f64,
    pub min_mc_fraction: f64,
    pub recurrence_residual: f64,
    pub min_container_slack: f64,
    pub min_ratio_slack: f64,
}

pub fn summarize(reports: &[CaseReport]) -> Summary {
    let mut s = Summary {
        cases: reports.len(),
        min_margin: f64::INFINITY,
        min_mc_fraction: 1.0,
        min_container_slack: f64::INFINITY,
        min_ratio_slack: f64::INFINITY,
        ..Default::default()
    };
    for r in reports {
        s.failures += usize::from(!r.passed);
        s.circumsphere_residual = s.circumsphere_residual.max(r.circumsphere_residual);
        s.gram_residual = s.gram_residual.max(r.gram_residual);
        s.min_margin = s.min_margin.min(r.min_margin);
        s.min_mc_fraction = s.min_mc_fraction.min(r.mc_fraction);
        s.recurrence_residual = s.recurrence_residual.max(r.recurrence_residual);
        s.min_container_slack = s.min_container_slack.min(r.container_slack);
        s.min_ratio_slack = s.min_ratio_slack.min(r.ratio_slack);
    }
    s
}
