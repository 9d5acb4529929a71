//! Numerical tolerances used across the crate.
//!
//! Every threshold that decides between "holds" and "fails" lives here with a
//! note on where it applies, so the choices can be audited in one place and
//! tests do not each invent their own magic numbers.

/// Causal classification: a vector counts as null when `|<v,v>|` is below
/// this factor times `max(1, |v|_E^2)`, where `|v|_E` is the Euclidean norm.
/// The relative scaling keeps the test meaningful for both tiny and huge
/// vectors.
pub const CAUSAL_TOL: f64 = 1e-12;

/// A curve passes the unit-speed gate when `| |c'(t)| - 1 |` stays below this
/// bound at the evaluation point. Frenet construction refuses to run on
/// curves that fail it.
pub const UNIT_SPEED_TOL: f64 = 1e-6;

/// Speeds below this bound abort arc-length work: the tangent is numerically
/// too close to the light cone (or to zero) for a reparametrization to be
/// trustworthy.
pub const NEAR_NULL_SPEED: f64 = 1e-8;

/// A curvature whose magnitude falls below this bound is treated as
/// vanishing; the Frenet chain stops there because the next frame vector is
/// no longer determined.
pub const CURVATURE_TOL: f64 = 1e-8;

/// Maximum allowed deviation of the frame Gram matrix from
/// `diag(-1, 1, 1, 1)`, and of the frame determinant from `+1`.
pub const FRAME_TOL: f64 = 1e-9;

/// Two pointwise values of the Mannheim constant count as equal when they
/// differ by less than this; the spread across all samples must stay below
/// it for a curve to count as a Mannheim curve.
pub const BETA_SPREAD_TOL: f64 = 1e-6;

/// Generic bound for residuals of algebraic identities between curvature
/// quantities (e.g. the defining relation between `k1`, `k2`, and the
/// Mannheim constant).
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Bound for geometric partner checks: the partner point must land on the
/// normal line of the base within this distance, and partner frame vectors
/// must match their closed forms within it.
pub const PAIR_TOL: f64 = 1e-6;

/// Default relative tolerance for adaptive quadrature (arc length, position
/// synthesis).
pub const QUAD_RTOL: f64 = 1e-10;

/// Step used by finite-difference residual probes of the frame equations.
/// With central differences the probe itself carries an `O(FD_STEP^2)`
/// error, so residuals are only meaningful down to roughly `1e-7`.
pub const FD_STEP: f64 = 1e-4;
