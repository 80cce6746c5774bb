//! Points, simplices, spheres and hyperplanes in n-dimensional Euclidean space,
//! and the classical simplex quantities: volume, facets, insphere,
//! circumsphere, contact points and barycentric coordinates.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::linalg::{determinant, LinalgError, Lu};
use crate::scalar::{sum, Real};
use crate::tolerance::DEGENERACY_THRESHOLD;

/// Errors raised by geometric constructions.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GeomError {
    /// Two objects live in spaces of different dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Dimension required by context.
        expected: usize,
        /// Dimension supplied.
        found: usize,
    },
    /// An n-simplex needs exactly n+1 vertices.
    #[error("a simplex in dimension {dimension} needs {} vertices, got {count}", dimension + 1)]
    VertexCount {
        /// Ambient dimension.
        dimension: usize,
        /// Number of vertices supplied.
        count: usize,
    },
    /// Only dimensions two and up are supported.
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    /// A coordinate is NaN or infinite.
    #[error("non-finite coordinate")]
    NonFinite,
    /// The simplex is (numerically) flat.
    #[error("degenerate simplex (scaled volume {scaled_volume:e})")]
    Degenerate {
        /// |volume| / (longest edge)^n.
        scaled_volume: f64,
    },
    /// Vertex or facet index outside `0..=n`.
    #[error("index {index} out of range for {count} vertices")]
    IndexOutOfRange {
        /// Requested index.
        index: usize,
        /// Vertex count.
        count: usize,
    },
    /// A computed radius left the representable range.
    #[error("radius {radius:e} exceeds the overflow guard")]
    Overflow {
        /// Offending radius.
        radius: f64,
    },
    /// An operation that needs at least one point got none.
    #[error("empty point set")]
    Empty,
}

impl From<LinalgError> for GeomError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular { pivot_ratio } => GeomError::Degenerate { scaled_volume: pivot_ratio },
            LinalgError::Shape { n, len } => GeomError::DimensionMismatch { expected: n * n, found: len },
        }
    }
}

/// A point (or displacement vector) in n-dimensional space.
#[derive(Clone, PartialEq)]
pub struct Point<T = f64>(Vec<T>);

impl<T: Real> Point<T> {
    /// Build a point from coordinates, rejecting non-finite values.
    pub fn new(coords: Vec<T>) -> Result<Self, GeomError> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Point(coords))
    }

    /// The origin of `dim`-space.
    pub fn origin(dim: usize) -> Self {
        Point(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        sum(self.0.iter().zip(&other.0).map(|(&a, &b)| a * b))
    }

    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        (self - other).norm()
    }

    /// Convert every coordinate to another scalar type.
    pub fn cast<U: Real>(&self) -> Point<U> {
        Point(self.0.iter().map(|&c| convert(c)).collect())
    }

    /// Coordinates rounded to `f64`.
    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.as_f64()).collect()
    }
}

/// Scalar conversion that keeps the low word when going to a wider format.
pub(crate) fn convert<S: Real, U: Real>(x: S) -> U {
    let hi = x.as_f64();
    let lo = (x - S::of(hi)).as_f64();
    U::of(hi) + U::of(lo)
}

impl<T: fmt::Debug> fmt::Debug for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real> Sub for &Point<T> {
    type Output = Point<T>;
    fn sub(self, rhs: &Point<T>) -> Point<T> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl<T: Real> Add for &Point<T> {
    type Output = Point<T>;
    fn add(self, rhs: &Point<T>) -> Point<T> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl<T: Real> Mul<T> for &Point<T> {
    type Output = Point<T>;
    fn mul(self, k: T) -> Point<T> {
        Point(self.0.iter().map(|&a| a * k).collect())
    }
}

impl<T: Real> Neg for &Point<T> {
    type Output = Point<T>;
    fn neg(self) -> Point<T> {
        Point(self.0.iter().map(|&a| -a).collect())
    }
}

/// Sphere given by center and radius; used for both (I, r) and (O, R).
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere<T = f64> {
    pub center: Point<T>,
    pub radius: T,
}

/// Oriented hyperplane `{x : normal . x = offset}`.
///
/// `signed_distance` is positive on the side the normal points to. Facet
/// hyperplanes of a simplex are oriented toward the opposite vertex, so the
/// simplex interior is the positive side of all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<T = f64> {
    pub unit_normal: Point<T>,
    pub offset: T,
}

impl<T: Real> Hyperplane<T> {
    pub fn signed_distance(&self, x: &Point<T>) -> T {
        self.unit_normal.dot(x) - self.offset
    }

    /// Orthogonal projection of `x` onto the hyperplane.
    pub fn project(&self, x: &Point<T>) -> Point<T> {
        let d = self.signed_distance(x);
        x - &(&self.unit_normal * d)
    }
}

/// Ordered list of n+1 vertices in n-dimensional space.
///
/// Construction checks shape and finiteness only. Operations that need a
/// nondegenerate simplex report [`GeomError::Degenerate`] themselves, which
/// lets [`Simplex::signed_volume`] measure flat inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex<T = f64> {
    vertices: Vec<Point<T>>,
}

impl Simplex<f64> {
    /// Convenience constructor from rows of coordinates.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, GeomError> {
        let pts = rows.iter().map(|r| Point::new(r.as_ref().to_vec())).collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }
}

impl<T: Real> Simplex<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self, GeomError> {
        let dim = vertices.first().map(Point::dim).ok_or(GeomError::Empty)?;
        if dim < 2 {
            return Err(GeomError::DimensionTooSmall(dim));
        }
        if vertices.len() != dim + 1 {
            return Err(GeomError::VertexCount { dimension: dim, count: vertices.len() });
        }
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        if vertices.iter().flat_map(|v| v.coords()).any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Simplex { vertices })
    }

    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point<T> {
        &self.vertices[i]
    }

    pub fn centroid(&self) -> Point<T> {
        let k = T::one() / T::of(self.vertices.len() as f64);
        let mut c = Point::origin(self.dim());
        for v in &self.vertices {
            c = &c + v;
        }
        &c * k
    }

    /// Same simplex moved by `-shift`.
    pub fn translated(&self, shift: &Point<T>) -> Self {
        Simplex { vertices: self.vertices.iter().map(|v| v - shift).collect() }
    }

    /// Convert every coordinate to another scalar type.
    pub fn cast<U: Real>(&self) -> Simplex<U> {
        Simplex { vertices: self.vertices.iter().map(Point::cast).collect() }
    }

    /// Vertex rows rounded to `f64`.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(Point::to_f64).collect()
    }

    pub fn longest_edge(&self) -> T {
        let mut best = T::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max(a.distance(b));
            }
        }
        best
    }

    /// Edge matrix `[A_2 - A_1, ..., A_{n+1} - A_1]` stored with one edge per row,
    /// each entry multiplied by `scale`.
    fn edge_rows(&self, scale: T) -> Vec<T> {
        let a0 = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .flat_map(|v| v.coords().iter().zip(a0.coords()).map(move |(&x, &y)| (x - y) * scale))
            .collect()
    }

    /// `det(A_2 - A_1, ..., A_{n+1} - A_1) / n!`.
    pub fn signed_volume(&self) -> T {
        let n = self.dim();
        let l = self.longest_edge();
        if l == T::zero() {
            return T::zero();
        }
        let det = determinant(n, self.edge_rows(T::one() / l));
        let fact = (1..=n).fold(T::one(), |acc, k| acc * T::of(k as f64));
        det * l.powi(n as i32) / fact
    }

    /// `|volume| / (longest edge)^n`, a scale-free flatness measure.
    pub fn scaled_volume(&self) -> T {
        let n = self.dim();
        let l = self.longest_edge();
        if l == T::zero() {
            return T::zero();
        }
        let fact = (1..=n).fold(T::one(), |acc, k| acc * T::of(k as f64));
        determinant(n, self.edge_rows(T::one() / l)).abs() / fact
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.scaled_volume().as_f64() >= DEGENERACY_THRESHOLD)
    }

    fn ensure_nondegenerate(&self) -> Result<(), GeomError> {
        let v = self.scaled_volume().as_f64();
        if v >= DEGENERACY_THRESHOLD {
            Ok(())
        } else {
            Err(GeomError::Degenerate { scaled_volume: v })
        }
    }

    /// Affine frame giving barycentric coordinates and all facet hyperplanes.
    pub fn frame(&self) -> Result<BarycentricFrame<T>, GeomError> {
        self.ensure_nondegenerate()?;
        let n = self.dim();
        // Columns of M are the edges from A_1, so lambda_{2..} = M^-1 (x - A_1).
        let rows = self.edge_rows(T::one());
        let mut m = vec![T::zero(); n * n];
        for e in 0..n {
            for c in 0..n {
                m[c * n + e] = rows[e * n + c];
            }
        }
        let inv = Lu::factor(n, m)?.inverse();
        let mut gradients = Vec::with_capacity(n + 1);
        let mut g0 = vec![T::zero(); n];
        for r in 0..n {
            for c in 0..n {
                g0[c] = g0[c] - inv[r * n + c];
            }
        }
        gradients.push(Point(g0));
        for r in 0..n {
            gradients.push(Point(inv[r * n..(r + 1) * n].to_vec()));
        }
        Ok(BarycentricFrame { base: self.vertices[0].clone(), gradients, vertices: self.vertices.clone() })
    }

    /// Hyperplane through every vertex except `A_i`, oriented toward `A_i`.
    pub fn facet_hyperplane(&self, i: usize) -> Result<Hyperplane<T>, GeomError> {
        if i > self.dim() {
            return Err(GeomError::IndexOutOfRange { index: i, count: self.vertices.len() });
        }
        Ok(self.frame()?.facet(i))
    }

    /// All n+1 facet hyperplanes, facet `i` opposite vertex `i`.
    pub fn facet_hyperplanes(&self) -> Result<Vec<Hyperplane<T>>, GeomError> {
        let frame = self.frame()?;
        Ok((0..=self.dim()).map(|i| frame.facet(i)).collect())
    }

    /// Inscribed sphere.
    ///
    /// Solves the (n+1)-unknown system `normal_i . I - r = offset_i`, i.e.
    /// equal signed distance `r` from the center to every facet.
    pub fn insphere(&self) -> Result<Sphere<T>, GeomError> {
        let facets = self.facet_hyperplanes()?;
        Self::insphere_from_facets(self.dim(), &facets)
    }

    fn insphere_from_facets(n: usize, facets: &[Hyperplane<T>]) -> Result<Sphere<T>, GeomError> {
        let m = n + 1;
        let mut a = Vec::with_capacity(m * m);
        let mut b = Vec::with_capacity(m);
        for h in facets {
            a.extend_from_slice(h.unit_normal.coords());
            a.push(-T::one());
            b.push(h.offset);
        }
        let x = Lu::factor(m, a)?.solve(&b);
        let radius = x[n];
        if !(radius > T::zero()) {
            return Err(GeomError::Degenerate { scaled_volume: 0.0 });
        }
        Ok(Sphere { center: Point(x[..n].to_vec()), radius })
    }

    /// Circumscribed sphere, from `2 (A_j - A_1) . x = |A_j - A_1|^2`, `O = A_1 + x`.
    pub fn circumsphere(&self) -> Result<Sphere<T>, GeomError> {
        self.ensure_nondegenerate()?;
        let n = self.dim();
        let a0 = &self.vertices[0];
        let l = self.longest_edge();
        // Unknown is scaled by 1/l so squared edges stay in range for huge simplices.
        let inv_l = T::one() / l;
        let mut a = Vec::with_capacity(n * n);
        let mut b = Vec::with_capacity(n);
        for v in &self.vertices[1..] {
            let e = &(v - a0) * inv_l;
            a.extend(e.coords().iter().map(|&c| c + c));
            b.push(e.norm_squared());
        }
        let x = Point(Lu::factor(n, a)?.solve(&b));
        let radius = x.norm() * l;
        let center = a0 + &(&x * l);
        Ok(Sphere { center, radius })
    }

    /// Points where the insphere touches the facets; entry `i` lies on the
    /// facet opposite vertex `i`.
    pub fn contact_points(&self) -> Result<Vec<Point<T>>, GeomError> {
        let facets = self.facet_hyperplanes()?;
        let ins = Self::insphere_from_facets(self.dim(), &facets)?;
        Ok(facets.iter().map(|h| h.project(&ins.center)).collect())
    }

    /// Insphere, facets and contact points in one pass.
    pub(crate) fn incircle_data(&self) -> Result<(Sphere<T>, Vec<Hyperplane<T>>, Vec<Point<T>>), GeomError> {
        let facets = self.facet_hyperplanes()?;
        let ins = Self::insphere_from_facets(self.dim(), &facets)?;
        let contacts = facets.iter().map(|h| h.project(&ins.center)).collect();
        Ok((ins, facets, contacts))
    }

    /// Barycentric coordinates of `x`.
    pub fn barycentric(&self, x: &Point<T>) -> Result<Vec<T>, GeomError> {
        if x.dim() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        Ok(self.frame()?.coordinates(x))
    }
}

/// Precomputed affine map `x -> barycentric(x)` for a nondegenerate simplex.
///
/// `lambda_i(x) = gradient_i . (x - A_1) + [i == 0]`.
#[derive(Clone, Debug)]
pub struct BarycentricFrame<T = f64> {
    base: Point<T>,
    gradients: Vec<Point<T>>,
    vertices: Vec<Point<T>>,
}

impl<T: Real> BarycentricFrame<T> {
    pub fn coordinates(&self, x: &Point<T>) -> Vec<T> {
        let d = x - &self.base;
        let mut out: Vec<T> = self.gradients.iter().map(|g| g.dot(&d)).collect();
        out[0] = out[0] + T::one();
        out
    }

    /// True when every coordinate is at least `-slack`.
    pub fn contains(&self, x: &Point<T>, slack: T) -> bool {
        self.contains_coords(x.coords(), slack)
    }

    /// [`contains`](Self::contains) on raw coordinates, without allocating.
    pub fn contains_coords(&self, x: &[T], slack: T) -> bool {
        let base = self.base.coords();
        self.gradients.iter().enumerate().all(|(i, g)| {
            let mut l = if i == 0 { T::one() } else { T::zero() };
            for ((&gc, &xc), &bc) in g.coords().iter().zip(x).zip(base) {
                l = l + gc * (xc - bc);
            }
            l >= -slack
        })
    }

    /// Facet hyperplane opposite vertex `i`; the zero set of `lambda_i`.
    pub fn facet(&self, i: usize) -> Hyperplane<T> {
        let g = &self.gradients[i];
        let inv_len = T::one() / g.norm();
        let unit_normal = g * inv_len;
        let others = self.vertices.iter().enumerate().filter(|(j, _)| *j != i);
        let count = T::of(self.vertices.len() as f64 - 1.0);
        let offset = sum(others.map(|(_, v)| unit_normal.dot(v))) / count;
        Hyperplane { unit_normal, offset }
    }

    /// Height of vertex `i` over its opposite facet.
    pub fn height(&self, i: usize) -> T {
        T::one() / self.gradients[i].norm()
    }
}
