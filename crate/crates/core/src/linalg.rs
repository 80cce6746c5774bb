//! Small dense LU factorization with partial pivoting.
//!
//! The systems solved here are at most (n+1)x(n+1) for the low dimensions this
//! crate targets, so a straightforward row-major implementation is enough.

use crate::scalar::Real;

/// Failure to factor a matrix.
#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum LinalgError {
    /// A pivot vanished, or pivots spread over more than the format can resolve.
    #[error("matrix is singular or too ill-conditioned to factor (pivot ratio {pivot_ratio:e})")]
    Singular {
        /// Smallest over largest absolute pivot.
        pivot_ratio: f64,
    },
    /// Input shape is inconsistent.
    #[error("expected a {n}x{n} matrix, got {len} entries")]
    Shape {
        /// Requested order.
        n: usize,
        /// Number of entries supplied.
        len: usize,
    },
}

/// LU factors `P A = L U`, stored packed in one row-major buffer.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
    swaps: usize,
}

impl<T: Real> Lu<T> {
    /// Factor a row-major `n x n` matrix.
    pub fn factor(n: usize, mut a: Vec<T>) -> Result<Self, LinalgError> {
        if a.len() != n * n {
            return Err(LinalgError::Shape { n, len: a.len() });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let mut max_pivot = T::zero();
        let mut min_pivot = T::infinity();
        for col in 0..n {
            let (p, best) = (col..n)
                .map(|r| (r, a[r * n + col].abs()))
                .fold((col, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if !(best > T::zero()) || !best.is_finite() {
                return Err(LinalgError::Singular { pivot_ratio: 0.0 });
            }
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                }
                perm.swap(p, col);
                swaps += 1;
            }
            max_pivot = max_pivot.max(best);
            min_pivot = min_pivot.min(best);
            let pivot = a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / pivot;
                a[r * n + col] = f;
                for c in col + 1..n {
                    let v = a[col * n + c];
                    a[r * n + c] = a[r * n + c] - f * v;
                }
            }
        }
        let ratio = (min_pivot / max_pivot).as_f64();
        if ratio < 8.0 * T::unit_roundoff() * n as f64 {
            return Err(LinalgError::Singular { pivot_ratio: ratio });
        }
        Ok(Lu { n, lu: a, perm, swaps })
    }

    /// Order of the factored matrix.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        assert_eq!(b.len(), n, "right-hand side length");
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                x[r] = x[r] - self.lu[r * n + c] * x[c];
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                x[r] = x[r] - self.lu[r * n + c] * x[c];
            }
            x[r] = x[r] / self.lu[r * n + r];
        }
        x
    }

    /// Determinant of `A`.
    pub fn det(&self) -> T {
        let d = (0..self.n).fold(T::one(), |acc, i| acc * self.lu[i * self.n + i]);
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Row-major inverse of `A`.
    pub fn inverse(&self) -> Vec<T> {
        let n = self.n;
        let mut inv = vec![T::zero(); n * n];
        let mut e = vec![T::zero(); n];
        for c in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[c] = T::one();
            let col = self.solve(&e);
            for r in 0..n {
                inv[r * n + c] = col[r];
            }
        }
        inv
    }
}

/// Determinant by partial-pivot elimination; zero when a pivot vanishes.
///
/// Unlike [`Lu::factor`] this does not reject ill-conditioned input, so it is
/// usable for degeneracy measurements.
pub fn determinant<T: Real>(n: usize, mut a: Vec<T>) -> T {
    assert_eq!(a.len(), n * n);
    let mut det = T::one();
    for col in 0..n {
        let (p, best) = (col..n)
            .map(|r| (r, a[r * n + col].abs()))
            .fold((col, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(best > T::zero()) {
            return T::zero();
        }
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det = det * pivot;
        for r in col + 1..n {
            let f = a[r * n + col] / pivot;
            for c in col + 1..n {
                let v = a[col * n + c];
                a[r * n + c] = a[r * n + c] - f * v;
            }
        }
    }
    det
}
