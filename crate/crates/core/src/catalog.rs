//! Named simplices used by the CLI and the tests.

use crate::geom::{Point, Simplex};

/// Triangle `(1, 0), (-1/2, sqrt(3)/2), (-1/2, -sqrt(3)/2)`: circumradius 1, centered at the origin.
pub fn equilateral() -> Simplex {
    regular(2)
}

/// Right triangle `(0, 0), (4, 0), (0, 3)`.
pub fn right_345() -> Simplex {
    Simplex::from_rows(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]).expect("valid triangle")
}

/// Regular n-simplex with circumradius 1 centered at the origin, first vertex on the first axis.
///
/// Built recursively: the remaining n vertices sit at first coordinate `-1/n` and
/// form a regular (n-1)-simplex of circumradius `sqrt(1 - 1/n^2)` in the last n-1
/// coordinates.
pub fn regular(n: usize) -> Simplex {
    assert!(n >= 2, "regular simplex needs n >= 2");
    let rows = regular_rows(n);
    Simplex::new(rows.into_iter().map(|r| Point::new(r).expect("finite")).collect()).expect("valid simplex")
}

fn regular_rows(n: usize) -> Vec<Vec<f64>> {
    if n == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let nf = n as f64;
    let shrink = (1.0 - 1.0 / (nf * nf)).sqrt();
    let mut rows = Vec::with_capacity(n + 1);
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    rows.push(first);
    for w in regular_rows(n - 1) {
        let mut r = Vec::with_capacity(n);
        r.push(-1.0 / nf);
        r.extend(w.iter().map(|x| x * shrink));
        rows.push(r);
    }
    rows
}

/// Look up `equilateral`, `right-3-4-5` or `regular-N`.
pub fn by_name(name: &str) -> Option<Simplex> {
    match name {
        "equilateral" => Some(equilateral()),
        "right-3-4-5" => Some(right_345()),
        _ => {
            let n: usize = name.strip_prefix("regular-")?.parse().ok()?;
            (n >= 2).then(|| regular(n))
        }
    }
}
