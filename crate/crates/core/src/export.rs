//! Trajectory export as CSV or JSON.
//!
//! CSV columns, in order: `k, r_k, R_k, ratio, I_k_1..I_k_n, O_k_1..O_k_n,
//! dist_O_k_O_k+2`. The last column is empty in the final two rows. Numbers
//! use 17 significant digits and lines end in `\n`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::iteration::{ConvergenceReport, StopReason, Trajectory};
use crate::scalar::Real;

pub fn csv_header(dim: usize) -> String {
    let mut cols = vec!["k".to_string(), "r_k".into(), "R_k".into(), "ratio".into()];
    cols.extend((1..=dim).map(|i| format!("I_k_{i}")));
    cols.extend((1..=dim).map(|i| format!("O_k_{i}")));
    cols.push("dist_O_k_O_k+2".into());
    cols.join(",")
}

pub fn to_csv<T: Real>(traj: &Trajectory<T>) -> String {
    let mut out = csv_header(traj.dimension());
    out.push('\n');
    let steps = traj.cauchy_steps();
    for (i, r) in traj.records.iter().enumerate() {
        let _ = write!(out, "{}", r.k);
        let mut vals = vec![r.inradius.as_f64(), r.circumradius.as_f64(), r.ratio.as_f64()];
        vals.extend(r.incenter.to_f64());
        vals.extend(r.circumcenter.to_f64());
        for v in vals {
            let _ = write!(out, ",{v:.16e}");
        }
        out.push(',');
        if let Some(d) = steps.get(i) {
            let _ = write!(out, "{d:.16e}");
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Row {
    k: usize,
    inradius: f64,
    circumradius: f64,
    ratio: f64,
    incenter: Vec<f64>,
    circumcenter: Vec<f64>,
    vertices: Vec<Vec<f64>>,
    dist_o_k_o_k2: Option<f64>,
}

#[derive(Serialize)]
struct Export<'a> {
    dimension: usize,
    precision: &'static str,
    stop: StopReason,
    trajectory: Vec<Row>,
    report: Option<&'a ConvergenceReport>,
}

/// Trajectory rows (with absolute vertices) plus the convergence report, if any.
pub fn to_json<T: Real>(traj: &Trajectory<T>, report: Option<&ConvergenceReport>) -> String {
    let steps = traj.cauchy_steps();
    let trajectory = traj
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| Row {
            k: r.k,
            inradius: r.inradius.as_f64(),
            circumradius: r.circumradius.as_f64(),
            ratio: r.ratio.as_f64(),
            incenter: r.incenter.to_f64(),
            circumcenter: r.circumcenter.to_f64(),
            vertices: r.absolute_simplex().to_rows(),
            dist_o_k_o_k2: steps.get(i).copied(),
        })
        .collect();
    let doc = Export { dimension: traj.dimension(), precision: T::NAME, stop: traj.stop, trajectory, report };
    let mut s = serde_json::to_string_pretty(&doc).expect("export serializes");
    s.push('\n');
    s
}
