//! Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use simplex_root::oracle::{mc_ball_in_simplex, random_simplex, SampleConfig, DEFAULT_QUALITY_FLOOR};
use simplex_root::verify::{verify_random, CaseReport, VerifyConfig};
use simplex_root::{
    catalog, estimate_rho, iterate, root, subsequence_limits, triangle_angle_deviations, DoubleDouble, IterationConfig,
    Point, Real, Simplex, Sphere,
};

const TOL: f64 = 1e-9;
const CORPUS_PER_DIM: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn corpus_seed(n: usize) -> u64 {
    1000 * n as u64
}

fn corpus() -> Vec<(u64, Simplex)> {
    (2..=6)
        .flat_map(|n| (0..CORPUS_PER_DIM).map(move |i| corpus_seed(n) + i as u64))
        .zip((2..=6).flat_map(|n| std::iter::repeat(n).take(CORPUS_PER_DIM)))
        .map(|(seed, n)| (seed, random_simplex(n, seed, DEFAULT_QUALITY_FLOOR).unwrap()))
        .collect()
}

/// Circumsphere by plain Gaussian elimination on `2 (v_i - v_0) . x = |v_i|^2 - |v_0|^2`.
fn solve_circumsphere(v: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let n = v.len() - 1;
    let sq = |p: &[f64]| p.iter().map(|x| x * x).sum::<f64>();
    let mut a: Vec<Vec<f64>> = (1..=n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|c| 2.0 * (v[i][c] - v[0][c])).collect();
            row.push(sq(&v[i]) - sq(&v[0]));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let x: Vec<f64> = (0..n).map(|r| a[r][n] / a[r][r]).collect();
    let radius = v.iter().map(|p| p.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()).sum::<f64>()
        / v.len() as f64;
    (x, radius)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1(corpus: &[(u64, Simplex)]) -> Outcome {
    let (worst, dt) = timed(|| {
        corpus
            .par_iter()
            .map(|(_, s)| {
                let rr = root(s).unwrap();
                let (center, radius) = solve_circumsphere(&rr.root.to_rows());
                let want = rr.expected_circumradius();
                let off = Point::new(center).unwrap().distance(&rr.source_insphere.center);
                (off / want).max((radius - want).abs() / want)
            })
            .reduce(|| 0.0, f64::max)
    });
    let pass = worst <= TOL && dt < Duration::from_secs(5);
    outcome(pass, format!("500 simplices, max relative residual {worst:.2e}, {:.3}s", dt.as_secs_f64()))
}

fn criterion_2(reports: &[CaseReport]) -> Outcome {
    let worst = reports.iter().map(|r| r.gram_residual).fold(0.0, f64::max);
    outcome(worst <= TOL, format!("max Gram residual {worst:.2e}"))
}

fn criterion_3(reports: &[CaseReport]) -> Outcome {
    let margin = reports.iter().map(|r| r.min_margin).fold(f64::INFINITY, f64::min);
    let mc = reports.iter().map(|r| r.mc_fraction).fold(1.0, f64::min);
    outcome(margin >= -TOL && mc == 1.0, format!("min margin {margin:.3e} R, min mc fraction {mc} at 1e5 samples"))
}

fn criterion_4(reports: &[CaseReport]) -> Outcome {
    let container = reports.iter().map(|r| r.container_slack).fold(f64::INFINITY, f64::min);
    let ratio = reports.iter().map(|r| r.ratio_slack).fold(f64::INFINITY, f64::min);
    outcome(container >= -TOL && ratio >= -TOL, format!("min r2-R1 slack {container:.3e}, min ratio slack {ratio:.3e}"))
}

fn triangles(count: usize, base: u64) -> Vec<Simplex<DoubleDouble>> {
    (0..count as u64).map(|i| random_simplex(2, base + i, DEFAULT_QUALITY_FLOOR).unwrap().cast()).collect()
}

fn criterion_5() -> Outcome {
    let tris = triangles(50, 5000);
    let cfg = IterationConfig { max_steps: 40, ..Default::default() };
    let ((worst, monotone), dt) = timed(|| {
        let mut worst = 0.0f64;
        let mut monotone = true;
        for s in &tris {
            let t = iterate(s, &cfg).unwrap();
            let ratios: Vec<f64> = t.records.iter().map(|r| r.ratio.as_f64()).collect();
            monotone &= ratios.windows(2).all(|w| w[1] >= w[0] - TOL);
            worst = worst.max((ratios[ratios.len() - 1] - 0.5).abs());
        }
        (worst, monotone)
    });
    let pass = worst <= 1e-6 && monotone && dt < Duration::from_secs(2);
    outcome(pass, format!("50 triangles, max |r/R - 1/2| {worst:.2e}, monotone {monotone}, {:.3}s", dt.as_secs_f64()))
}

fn criterion_6() -> Outcome {
    let cfg = IterationConfig { max_steps: 60, ..Default::default() };
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 3..=5 {
        let bound = 1.0 / (n as f64 - 1.0);
        let mut rhos = Vec::new();
        let mut max_ratio = 0.0f64;
        for i in 0..20 {
            let s = random_simplex(n, 6000 + 100 * n as u64 + i, DEFAULT_QUALITY_FLOOR).unwrap().cast::<DoubleDouble>();
            let t = iterate(&s, &cfg).unwrap();
            max_ratio = t.records.iter().map(|r| r.ratio.as_f64()).fold(max_ratio, f64::max);
            rhos.push(estimate_rho(&t).unwrap());
        }
        pass &= max_ratio <= bound + TOL;
        let lo = rhos.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = rhos.iter().copied().fold(0.0, f64::max);
        parts.push(format!("n={n}: max ratio {max_ratio:.6} <= {bound:.6}, rho in [{lo:.6}, {hi:.6}]"));
    }
    outcome(pass, parts.join("; "))
}

fn convergence_case(s: &Simplex<DoubleDouble>) -> Result<(f64, f64, f64), String> {
    // first pass fixes the scale, second checks the Cauchy criterion against it
    let probe = IterationConfig { max_steps: 60, ..Default::default() };
    let t = iterate(s, &probe).map_err(|e| e.to_string())?;
    let first = subsequence_limits(&t, &probe).map_err(|e| e.to_string())?;
    let scale = first.gap.max(1e-6 * t.records[0].circumradius.as_f64());
    let cfg = IterationConfig { cauchy_tolerance: TOL * scale, ..probe };
    let t = iterate(s, &cfg).map_err(|e| e.to_string())?;
    let rep = subsequence_limits(&t, &cfg).map_err(|e| e.to_string())?;
    let at = rep.even_converged_at.max(rep.odd_converged_at);
    if !rep.converged() || at.map_or(true, |k| k + 2 >= 60) {
        return Err(format!("not Cauchy before 60 steps (stop {:?}, len {})", t.stop, t.len()));
    }
    let tail = rep.tail_decay_ratios(3);
    if tail.is_empty() {
        return Err("no resolved decay ratios".into());
    }
    let decay = tail.iter().copied().fold(0.0, f64::max);
    Ok((decay, rep.center_identity_residual, at.unwrap() as f64))
}

fn criterion_7() -> Outcome {
    let mut cases = triangles(50, 7000);
    cases.extend((0..20).map(|i| random_simplex(3, 7100 + i, DEFAULT_QUALITY_FLOOR).unwrap().cast::<DoubleDouble>()));
    let (results, dt) = timed(|| cases.par_iter().map(convergence_case).collect::<Vec<_>>());
    let mut decay = 0.0f64;
    let mut identity = 0.0f64;
    let mut latest = 0.0f64;
    let mut errors = Vec::new();
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok((d, id, at)) => {
                decay = decay.max(*d);
                identity = identity.max(*id);
                latest = latest.max(*at);
            }
            Err(e) => errors.push(format!("case {i}: {e}")),
        }
    }
    let pass = errors.is_empty() && decay <= 0.6 && identity <= TOL && dt < Duration::from_secs(10);
    let mut detail = format!(
        "50 triangles + 20 tetrahedra, Cauchy by k={latest}, max tail decay {decay:.3}, max |I_k+1 - O_k+2|/R_k+1 {identity:.2e}, {:.3}s",
        dt.as_secs_f64()
    );
    if !errors.is_empty() {
        detail.push_str(&format!("; {}", errors.join("; ")));
    }
    outcome(pass, detail)
}

fn criterion_8() -> Outcome {
    let cfg = IterationConfig { max_steps: 30, ..Default::default() };
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for s in triangles(50, 8000) {
        let t = iterate(&s, &cfg).unwrap();
        let dev = triangle_angle_deviations(&t).unwrap();
        for w in dev.windows(2) {
            for v in 0..3 {
                worst = worst.max((w[1][v] + 0.5 * w[0][v]).abs());
                checked += 1;
            }
        }
    }
    outcome(worst <= TOL, format!("{checked} angle steps on 50 triangles, max |d_k+1 + d_k/2| {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let cfg = IterationConfig { max_steps: 12, ..Default::default() };
    let mut drift = 0.0f64;
    let mut dilation = 0.0f64;
    for n in 2..=5 {
        let s = catalog::regular(n);
        let t = iterate(&s.cast::<DoubleDouble>(), &cfg).unwrap();
        let center = s.centroid().cast::<DoubleDouble>();
        for w in t.records.windows(2) {
            let big = w[0].circumradius;
            drift = drift.max((w[1].circumcenter.distance(&w[0].circumcenter) / big).as_f64());
            drift = drift.max((w[0].circumcenter.distance(&center) / big).as_f64());
        }
        let rr = root(&s).unwrap();
        let g = s.centroid();
        for (c, a) in rr.root.vertices().iter().zip(s.vertices()) {
            let want = &(&(a - &g) * n as f64) + &g;
            dilation = dilation.max(c.distance(&want) / rr.expected_circumradius());
        }
    }
    let pass = drift <= 1e-12 && dilation <= 1e-12;
    outcome(pass, format!("equilateral and regular n=3..5, max drift {drift:.2e} R_k, max dilation error {dilation:.2e}"))
}

fn criterion_10() -> Outcome {
    let cli = Command::new(env!("CARGO_BIN_EXE_simplex-root"))
        .args(["verify", "--random", "5", "--dim", "3", "--seed", "10", "--tol", "0", "--mc-samples", "1000"])
        .output()
        .unwrap();
    let exit = cli.status.code();
    let mut fractions = Vec::new();
    for n in 2..=6 {
        let s = catalog::regular(n);
        let rr = root(&s).unwrap();
        let c = &rr.source_circumsphere;
        let inflated = Sphere { center: c.center.clone(), radius: 1.05 * c.radius };
        fractions.push(mc_ball_in_simplex(&inflated, &rr.root, SampleConfig { sample_count: 100_000, seed: n as u64 }).unwrap());
    }
    let worst = fractions.iter().copied().fold(0.0, f64::max);
    let pass = exit == Some(1) && worst < 1.0;
    outcome(pass, format!("verify --tol 0 exit {exit:?}, inflated-ball fractions {fractions:?}"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let cfg = VerifyConfig::default();
    let reports: Vec<CaseReport> = (2..=6)
        .flat_map(|n| verify_random(CORPUS_PER_DIM, n, corpus_seed(n), &cfg).unwrap())
        .collect();
    assert_eq!(reports.len(), corpus.len());
    for (r, (seed, _)) in reports.iter().zip(&corpus) {
        assert_eq!(r.seed, Some(*seed));
    }

    let results = [
        ("root circumsphere is (I, R^2/r)", criterion_1(&corpus)),
        ("Gram identity IC_i.IA_j = -R^2", criterion_2(&reports)),
        ("circumball inside root", criterion_3(&reports)),
        ("container inequalities", criterion_4(&reports)),
        ("triangle ratio tends to 1/2", criterion_5()),
        ("ratio bound 1/(n-1)", criterion_6()),
        ("parity subsequences converge", criterion_7()),
        ("angle map d -> -d/2", criterion_8()),
        ("regular fixed points", criterion_9()),
        ("falsifiability controls", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
