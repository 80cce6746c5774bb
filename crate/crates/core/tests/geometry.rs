//! Classical simplex quantities checked against independent formulas.

use simplex_root::oracle::random_simplex;
use simplex_root::{catalog, GeomError, Point, Simplex};

fn tri345() -> Simplex {
    catalog::right_345()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Unsigned volume from pairwise distances only.
fn cayley_menger_volume(pts: &[Vec<f64>]) -> f64 {
    let m = pts.len();
    let n = m - 1;
    let mut cm = vec![vec![1.0; m + 1]; m + 1];
    cm[0][0] = 0.0;
    for i in 0..m {
        for j in 0..m {
            cm[i + 1][j + 1] = dist2(&pts[i], &pts[j]);
        }
    }
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    (sign * det(cm) / (2f64.powi(n as i32) * fact * fact)).sqrt()
}

/// (n-1)-volume of the facet spanned by `pts` via the Gram determinant.
fn facet_volume(pts: &[&Vec<f64>]) -> f64 {
    let k = pts.len() - 1;
    let edges: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect()).collect();
    let g: Vec<Vec<f64>> =
        edges.iter().map(|a| edges.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    det(g).sqrt() / fact
}

#[test]
fn signed_volume_examples() {
    let unit = Simplex::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
    assert!(close(unit.signed_volume(), 0.5, 1e-15));
    let flipped = Simplex::from_rows(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
    assert!(close(flipped.signed_volume(), -0.5, 1e-15));
    let flat = Simplex::from_rows(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
    assert_eq!(flat.signed_volume(), 0.0);
    assert!(flat.is_degenerate());
}

#[test]
fn regular_tetrahedron_volume_matches_cayley_menger() {
    let rows = vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.5, 3f64.sqrt() / 2.0, 0.0],
        vec![0.5, 3f64.sqrt() / 6.0, (2.0f64 / 3.0).sqrt()],
    ];
    let s = Simplex::from_rows(&rows).unwrap();
    let oracle = cayley_menger_volume(&rows);
    assert!(close(oracle, 1.0 / (6.0 * 2f64.sqrt()), 1e-14));
    assert!(close(s.signed_volume().abs(), oracle, 1e-14));
}

#[test]
fn volume_matches_cayley_menger_on_random_simplices() {
    for n in 2..=6 {
        for seed in 0..10 {
            let s = random_simplex(n, seed, 0.05).unwrap();
            let oracle = cayley_menger_volume(&s.to_rows());
            assert!(close(s.signed_volume().abs(), oracle, 1e-10 * oracle), "n={n} seed={seed}");
        }
    }
}

#[test]
fn facet_hyperplanes_of_345() {
    let s = tri345();
    let h = s.facet_hyperplane(2).unwrap();
    assert!(close(h.unit_normal[0], 0.0, 1e-15) && close(h.unit_normal[1], 1.0, 1e-15));
    assert!(close(h.offset, 0.0, 1e-15));
    // plane through (4,0),(0,3): 3x + 4y = 12, oriented toward (0,0)
    let h = s.facet_hyperplane(0).unwrap();
    assert!(close(h.unit_normal[0], -0.6, 1e-15) && close(h.unit_normal[1], -0.8, 1e-15));
    assert!(close(h.offset, -2.4, 1e-15));
    assert!(h.signed_distance(s.vertex(0)) > 0.0);
    assert!(matches!(s.facet_hyperplane(3), Err(GeomError::IndexOutOfRange { .. })));
}

#[test]
fn regular_simplex_facets_sit_at_minus_one_over_n() {
    for n in 2..=6 {
        let s = catalog::regular(n);
        for i in 0..=n {
            let h = s.facet_hyperplane(i).unwrap();
            let a = s.vertex(i);
            // normal is +A_i (unit), offset -1/n
            assert!(close(h.unit_normal.dot(a), 1.0, 1e-13), "n={n} i={i}");
            assert!(close(h.offset, -1.0 / n as f64, 1e-13));
        }
    }
}

#[test]
fn insphere_examples() {
    let s = tri345();
    let ins = s.insphere().unwrap();
    // right triangle: r = (a + b - c) / 2
    let r = (3.0 + 4.0 - 5.0) / 2.0;
    assert!(close(ins.radius, r, 1e-14));
    assert!(close(ins.center[0], 1.0, 1e-14) && close(ins.center[1], 1.0, 1e-14));
    let eq = catalog::equilateral().insphere().unwrap();
    assert!(close(eq.radius, 0.5, 1e-15) && eq.center.norm() < 1e-15);
    for n in 2..=6 {
        let ins = catalog::regular(n).insphere().unwrap();
        assert!(close(ins.radius, 1.0 / n as f64, 1e-13) && ins.center.norm() < 1e-13);
    }
}

#[test]
fn insphere_matches_facet_weighted_incenter() {
    for n in 2..=6 {
        for seed in 0..10 {
            let s = random_simplex(n, 100 + seed, 0.05).unwrap();
            let rows = s.to_rows();
            let areas: Vec<f64> = (0..=n)
                .map(|i| facet_volume(&rows.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r).collect::<Vec<_>>()))
                .collect();
            let total: f64 = areas.iter().sum();
            let center: Vec<f64> = (0..n).map(|c| rows.iter().zip(&areas).map(|(r, a)| a * r[c]).sum::<f64>() / total).collect();
            let radius = n as f64 * cayley_menger_volume(&rows) / total;
            let ins = s.insphere().unwrap();
            assert!(close(ins.radius, radius, 1e-10 * radius), "n={n} seed={seed}");
            assert!(dist2(ins.center.coords(), &center).sqrt() < 1e-10 * radius);
        }
    }
}

#[test]
fn circumsphere_examples() {
    let c = tri345().circumsphere().unwrap();
    assert!(close(c.center[0], 2.0, 1e-14) && close(c.center[1], 1.5, 1e-14) && close(c.radius, 2.5, 1e-14));
    let c = catalog::equilateral().circumsphere().unwrap();
    assert!(c.center.norm() < 1e-15 && close(c.radius, 1.0, 1e-15));
    let t = Simplex::from_rows(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
    let c = t.circumsphere().unwrap();
    for x in c.center.coords() {
        assert!(close(*x, 0.5, 1e-15));
    }
    assert!(close(c.radius, 3f64.sqrt() / 2.0, 1e-15));
}

/// Contact points of a triangle from tangent lengths `s - a`.
fn tangent_contacts(rows: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let side = |i: usize| dist2(&rows[(i + 1) % 3], &rows[(i + 2) % 3]).sqrt();
    let semi = (side(0) + side(1) + side(2)) / 2.0;
    (0..3)
        .map(|i| {
            // on the side opposite vertex i, measured from vertex j = i+1
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let t = (semi - side(j)) / side(i);
            [rows[j][0] + t * (rows[k][0] - rows[j][0]), rows[j][1] + t * (rows[k][1] - rows[j][1])]
        })
        .collect()
}

#[test]
fn contact_points_examples() {
    let s = tri345();
    let b = s.contact_points().unwrap();
    let want = [[1.6, 1.8], [0.0, 1.0], [1.0, 0.0]];
    for (p, w) in b.iter().zip(want) {
        assert!(close(p[0], w[0], 1e-14) && close(p[1], w[1], 1e-14));
    }
    let oracle = tangent_contacts(&s.to_rows());
    for (p, w) in b.iter().zip(oracle) {
        assert!(close(p[0], w[0], 1e-14) && close(p[1], w[1], 1e-14));
    }
    let eq = catalog::equilateral();
    for (i, p) in eq.contact_points().unwrap().iter().enumerate() {
        let mid = &(eq.vertex((i + 1) % 3) + eq.vertex((i + 2) % 3)) * 0.5;
        assert!(p.distance(&mid) < 1e-15);
    }
    for n in 2..=6 {
        let s = catalog::regular(n);
        for (i, p) in s.contact_points().unwrap().iter().enumerate() {
            let want = s.vertex(i) * (-1.0 / n as f64);
            assert!(p.distance(&want) < 1e-13);
            assert!(close(p.norm(), 1.0 / n as f64, 1e-13));
        }
    }
}

#[test]
fn contact_points_match_tangent_lengths_on_random_triangles() {
    for seed in 0..50 {
        let s = random_simplex(2, seed, 0.05).unwrap();
        let scale = s.circumsphere().unwrap().radius;
        for (p, w) in s.contact_points().unwrap().iter().zip(tangent_contacts(&s.to_rows())) {
            assert!(close(p[0], w[0], 1e-12 * scale) && close(p[1], w[1], 1e-12 * scale), "seed {seed}");
        }
    }
}

#[test]
fn barycentric_examples() {
    let s = tri345();
    let l = s.barycentric(s.vertex(0)).unwrap();
    assert!(close(l[0], 1.0, 1e-15) && close(l[1], 0.0, 1e-15) && close(l[2], 0.0, 1e-15));
    for n in 2..=5 {
        let s = random_simplex(n, 3, 0.05).unwrap();
        for x in s.barycentric(&s.centroid()).unwrap() {
            assert!(close(x, 1.0 / (n + 1) as f64, 1e-13));
        }
    }
    // incenter barycentrics are proportional to opposite side lengths (5, 3, 4)
    let l = s.barycentric(&Point::new(vec![1.0, 1.0]).unwrap()).unwrap();
    for (got, want) in l.iter().zip([5.0 / 12.0, 0.25, 1.0 / 3.0]) {
        assert!(close(*got, want, 1e-15));
    }
    let dim = s.barycentric(&Point::new(vec![1.0, 1.0, 1.0]).unwrap());
    assert!(matches!(dim, Err(GeomError::DimensionMismatch { .. })));
}

#[test]
fn degenerate_inputs_are_rejected() {
    let flat = Simplex::from_rows(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
    assert!(matches!(flat.insphere(), Err(GeomError::Degenerate { .. })));
    assert!(matches!(flat.circumsphere(), Err(GeomError::Degenerate { .. })));
    assert!(matches!(flat.contact_points(), Err(GeomError::Degenerate { .. })));
    assert!(matches!(flat.facet_hyperplane(0), Err(GeomError::Degenerate { .. })));
    assert!(matches!(Simplex::from_rows(&[[0.0, f64::INFINITY], [1.0, 0.0], [0.0, 1.0]]), Err(GeomError::NonFinite)));
    assert!(matches!(Simplex::from_rows(&[[0.0, 0.0], [1.0, 0.0]]), Err(GeomError::VertexCount { .. })));
    // nearly flat but scale-free: tiny and huge copies agree
    let thin = |k: f64| Simplex::from_rows(&[[0.0, 0.0], [k, 0.0], [0.5 * k, 1e-13 * k]]).unwrap();
    assert!(thin(1.0).is_degenerate() && thin(1e100).is_degenerate() && thin(1e-100).is_degenerate());
    let ok = |k: f64| Simplex::from_rows(&[[0.0, 0.0], [k, 0.0], [0.5 * k, 1e-11 * k]]).unwrap();
    assert!(!ok(1.0).is_degenerate() && !ok(1e100).is_degenerate());
}
