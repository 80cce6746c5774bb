//! Numeric thresholds shared by the checkers, the iteration and the CLI.

/// Relative tolerance for geometric identity checks, scaled by the local
/// circumradius (or its square, for dot-product identities).
pub const REL_TOL: f64 = 1e-9;

/// A simplex is degenerate when `|volume| / (longest edge)^n` falls below this.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Circumradius beyond which roots are refused and iterations stop.
pub const OVERFLOW_RADIUS: f64 = 1e150;

/// Empirical bound on absolute circumcenter noise, in units of
/// `unit_roundoff * R_k`, for the recentered iteration.
pub const NOISE_FACTOR: f64 = 1e3;
