//! The root of a simplex and checkers for its geometric properties.

use crate::geom::{GeomError, Point, Simplex, Sphere};
use crate::scalar::Real;
use crate::tolerance::OVERFLOW_RADIUS;

/// Output of [`root`]: the root simplex together with the source data it was
/// built from.
#[derive(Clone, Debug, PartialEq)]
pub struct RootResult<T = f64> {
    /// `C_1 ... C_{n+1}`; vertex `i` comes from the contact point on the facet
    /// opposite source vertex `i`.
    pub root: Simplex<T>,
    /// `(I, r)` of the source.
    pub source_insphere: Sphere<T>,
    /// `(O, R)` of the source.
    pub source_circumsphere: Sphere<T>,
    /// Contact points `B_i` of the source.
    pub contact_simplex: Vec<Point<T>>,
}

impl<T: Real> RootResult<T> {
    /// Homothety coefficient magnitude `(R/r)^2` mapping the contact simplex onto the root.
    pub fn dilation(&self) -> T {
        let q = self.source_circumsphere.radius / self.source_insphere.radius;
        q * q
    }

    /// Circumradius the root must have: `R^2 / r`.
    pub fn expected_circumradius(&self) -> T {
        let big = self.source_circumsphere.radius;
        big * big / self.source_insphere.radius
    }
}

/// Root of a nondegenerate simplex.
///
/// Inverting `B_i` in the sphere `(I, R)` and reflecting through `I` sends it to
/// `I - (R^2 / |IB_i|^2)(B_i - I)`. Since `|IB_i| = r` by construction this is
/// the homothety `C_i = I - (R/r)^2 (B_i - I)`, which is what is evaluated.
pub fn root<T: Real>(s: &Simplex<T>) -> Result<RootResult<T>, GeomError> {
    let (insphere, _, contacts) = s.incircle_data()?;
    let circumsphere = s.circumsphere()?;
    let q = circumsphere.radius / insphere.radius;
    let root_radius = (circumsphere.radius * q).as_f64();
    if !(root_radius <= OVERFLOW_RADIUS) {
        return Err(GeomError::Overflow { radius: root_radius });
    }
    Ok(RootResult {
        root: root_from_parts(&insphere, &circumsphere, &contacts)?,
        source_insphere: insphere,
        source_circumsphere: circumsphere,
        contact_simplex: contacts,
    })
}

pub(crate) fn root_from_parts<T: Real>(
    insphere: &Sphere<T>,
    circumsphere: &Sphere<T>,
    contacts: &[Point<T>],
) -> Result<Simplex<T>, GeomError> {
    let q = circumsphere.radius / insphere.radius;
    let k = q * q;
    let center = &insphere.center;
    Simplex::new(contacts.iter().map(|b| center - &(&(b - center) * k)).collect())
}

/// Relative deviation of the root's circumsphere from `(I, R^2/r)`.
///
/// Solves the root's circumsphere from scratch and returns the largest of the
/// center offset, the radius error and every `| |C_i - I| - R^2/r |`, all
/// divided by `R^2/r`.
pub fn check_root_circumsphere<T: Real>(rr: &RootResult<T>) -> Result<T, GeomError> {
    let expected = rr.expected_circumradius();
    let center = &rr.source_insphere.center;
    let solved = rr.root.circumsphere()?;
    let mut worst = solved.center.distance(center).max((solved.radius - expected).abs());
    for c in rr.root.vertices() {
        worst = worst.max((c.distance(center) - expected).abs());
    }
    Ok(worst / expected)
}

/// `max_{i != j} |(C_i - I) . (A_j - I) + R^2| / R^2`.
pub fn check_gram_identity<T: Real>(rr: &RootResult<T>, s: &Simplex<T>) -> T {
    let center = &rr.source_insphere.center;
    let r2 = rr.source_circumsphere.radius * rr.source_circumsphere.radius;
    let mut worst = T::zero();
    for (i, c) in rr.root.vertices().iter().enumerate() {
        let ic = c - center;
        for (j, a) in s.vertices().iter().enumerate() {
            if i != j {
                worst = worst.max((ic.dot(&(a - center)) + r2).abs());
            }
        }
    }
    worst / r2
}

/// Result of [`check_containment`].
#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentCheck<T = f64> {
    /// `signed_distance(O, Gamma_i) - R` for each root facet, facet `i`
    /// opposite root vertex `i`; nonnegative when the source circumball lies
    /// on the inner side of that facet.
    pub margins: Vec<T>,
    /// Barycentric coordinates of the source circumcenter in the root.
    pub circumcenter_barycentric: Vec<T>,
    /// Source circumradius `R`.
    pub circumradius: T,
}

impl<T: Real> ContainmentCheck<T> {
    /// Smallest margin divided by `R`.
    pub fn min_relative_margin(&self) -> T {
        self.margins.iter().fold(T::infinity(), |m, &x| m.min(x)) / self.circumradius
    }

    pub fn circumcenter_interior(&self) -> bool {
        self.circumcenter_barycentric.iter().all(|&l| l > T::zero())
    }

    /// Every margin at least `-rel_tol * R` and the circumcenter strictly inside.
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.min_relative_margin() >= -T::of(rel_tol) && self.circumcenter_interior()
    }
}

/// Per-facet containment margins of the source circumball in the root.
///
/// The root facet opposite `C_i` is `{X : (X - I) . (A_i - I) = -R^2}`, a
/// hyperplane orthogonal to `IA_i` meeting the line `A_i I` at `H` with
/// `|IH| |IA_i| = R^2`, hence `|A_i H| >= 2R`. With `G` the foot of `O` on that
/// facet, `|A_i H| <= |A_i O| + |OG| = R + |OG|`, so `|OG| >= R`. The margins
/// returned here are the numerical `|OG| - R`, measured with the root's own
/// facet hyperplanes.
pub fn check_containment<T: Real>(rr: &RootResult<T>, s: &Simplex<T>) -> Result<ContainmentCheck<T>, GeomError> {
    if s.dim() != rr.root.dim() {
        return Err(GeomError::DimensionMismatch { expected: rr.root.dim(), found: s.dim() });
    }
    let frame = rr.root.frame()?;
    let o = &rr.source_circumsphere.center;
    let big = rr.source_circumsphere.radius;
    let margins = (0..=s.dim()).map(|i| frame.facet(i).signed_distance(o) - big).collect();
    Ok(ContainmentCheck { margins, circumcenter_barycentric: frame.coordinates(o), circumradius: big })
}

/// True when every barycentric coordinate of `I` in the root is positive.
pub fn check_incenter_interior<T: Real>(rr: &RootResult<T>) -> Result<bool, GeomError> {
    let l = rr.root.barycentric(&rr.source_insphere.center)?;
    Ok(l.iter().all(|&x| x > T::zero()))
}

/// In- and circumradii of a simplex and of its root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusChain<T = f64> {
    pub source_inradius: T,
    pub source_circumradius: T,
    pub root_inradius: T,
    pub root_circumradius: T,
}

impl<T: Real> RadiusChain<T> {
    /// `|R_2 r_1 - R_1^2| / R_1^2`.
    pub fn recurrence_residual(&self) -> T {
        let r1 = self.source_circumradius;
        (self.root_circumradius * self.source_inradius - r1 * r1).abs() / (r1 * r1)
    }

    /// `(r_2 - R_1) / R_1`; nonnegative when the root's insphere is at least
    /// as large as the source circumsphere.
    pub fn container_slack(&self) -> T {
        (self.root_inradius - self.source_circumradius) / self.source_circumradius
    }

    /// `r_2/R_2 - r_1/R_1`.
    pub fn ratio_slack(&self) -> T {
        self.root_inradius / self.root_circumradius - self.source_inradius / self.source_circumradius
    }

    pub fn holds(&self, rel_tol: f64) -> bool {
        let tol = T::of(rel_tol);
        self.recurrence_residual() <= tol && self.container_slack() >= -tol && self.ratio_slack() >= -tol
    }
}

/// `(r_1, R_1, r_2, R_2)` with the root radii solved independently on the root.
pub fn radius_chain<T: Real>(s: &Simplex<T>) -> Result<RadiusChain<T>, GeomError> {
    let rr = root(s)?;
    let ins = rr.root.insphere()?;
    let circ = rr.root.circumsphere()?;
    Ok(RadiusChain {
        source_inradius: rr.source_insphere.radius,
        source_circumradius: rr.source_circumsphere.radius,
        root_inradius: ins.radius,
        root_circumradius: circ.radius,
    })
}
