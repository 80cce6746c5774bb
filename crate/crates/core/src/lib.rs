//! The root of a simplex and its iteration.
//!
//! For a nondegenerate simplex `S = A_1 ... A_{n+1}` with inscribed sphere
//! `(I, r)`, circumradius `R` and contact points `B_i`, the root is the simplex
//! with vertices `C_i = I - (R/r)^2 (B_i - I)`: inversion of the contact points
//! in the sphere of radius `R` about `I`, followed by the point reflection
//! through `I`.
//!
//! The crate provides
//!
//! * [`geom`]: simplices, spheres, hyperplanes and barycentric frames in `R^n`;
//! * [`root`]: the root construction and numerical checkers for its
//!   properties (circumsphere `(I, R^2/r)`, the Gram identity
//!   `IC_i . IA_j = -R^2`, containment of the source circumball, ratio
//!   monotonicity);
//! * [`iteration`]: `S_{k+1} = Root(S_k)`, trajectory bookkeeping and the
//!   even/odd circumcenter convergence diagnostics;
//! * [`oracle`]: independent brute-force checks and seeded generators;
//! * [`verify`]: batch property verification used by the CLI;
//! * [`document`], [`export`], [`svg`]: the JSON/CSV/SVG file formats.
//!
//! Geometry is generic over [`Real`]; `f64` is the default and
//! [`DoubleDouble`] is used by the iteration.

// NaN must fail range checks, so comparisons are written negated on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod document;
pub mod export;
pub mod geom;
pub mod iteration;
pub mod linalg;
pub mod oracle;
pub mod root;
pub mod scalar;
pub mod svg;
pub mod tolerance;
pub mod verify;

pub use geom::{BarycentricFrame, GeomError, Hyperplane, Point, Simplex, Sphere};
pub use iteration::{
    estimate_rho, iterate, subsequence_limits, triangle_angle_deviations, ConvergenceReport, IterationConfig,
    IterationError, StopReason, Trajectory, TrajectoryRecord,
};
pub use root::{
    check_containment, check_gram_identity, check_incenter_interior, check_root_circumsphere, radius_chain, root,
    ContainmentCheck, RadiusChain, RootResult,
};
pub use scalar::{DoubleDouble, Real};
