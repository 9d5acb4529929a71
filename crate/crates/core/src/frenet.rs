//! The Frenet apparatus of unit-speed timelike curves.
//!
//! For a curve `c` with timelike unit tangent `T = c'` and nondegenerate
//! higher derivatives, the construction produces an orthonormal frame
//! `{T, N, B1, B2}` with `<T,T> = -1` and spacelike `N, B1, B2`, plus three
//! curvature functions, satisfying
//!
//! ```text
//! T'  =  k1 N
//! N'  =  k1 T + k2 B1
//! B1' = -k2 N + k3 B2
//! B2' = -k3 B1
//! ```
//!
//! (the `+k1 T` in the second line is forced by `<T,T> = -1`). The frame is
//! built in four steps: normalize `T'` to get `N` and `k1`; subtract the
//! tangential part of `N'` and normalize to get `B1` and `k2`; then `B2` is
//! the normalized remainder `B1' + k2 N`, with its sign fixed by requiring
//! the frame determinant to be `+1`. The sign `epsilon` records whether that
//! orientation kept or flipped the remainder, and `k3 = <B1', B2>` equals
//! `epsilon * |B1' + k2 N|`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::curve::{check_domain, deriv4, dot4_series, CurveError, CurveModel};
use crate::lorentz::{
    causal_character, frame_determinant, gram_deviation, minkowski_dot, minkowski_norm_sq,
    CausalCharacter, Vec4,
};
use crate::real;
use crate::tol;

/// Frame and curvatures of a curve at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct FrenetApparatus {
    pub t: Vec4,
    pub n: Vec4,
    pub b1: Vec4,
    pub b2: Vec4,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// `+1` if the determinant-fixed `B2` equals the normalized remainder
    /// `B1' + k2 N`, `-1` if it is its negative; equals the sign of `k3`.
    pub epsilon: f64,
}

/// Why the Frenet construction refused to produce a frame.
#[derive(Clone, Debug, PartialEq)]
pub enum FrenetError {
    /// `| |c'| - 1 |` exceeded the unit-speed gate.
    NotUnitSpeed { t: f64, speed: f64 },
    /// The tangent is not timelike, so this frame construction does not
    /// apply.
    NotTimelike { t: f64 },
    /// Curvature `index` (1, 2, or 3 in the chain) vanished, leaving the
    /// next frame vector undetermined.
    VanishingCurvature { t: f64, index: u8 },
    Curve(CurveError),
}

impl fmt::Display for FrenetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrenetError::NotUnitSpeed { t, speed } => {
                write!(f, "curve is not unit-speed at t = {t} (speed {speed})")
            }
            FrenetError::NotTimelike { t } => {
                write!(f, "tangent is not timelike at t = {t}")
            }
            FrenetError::VanishingCurvature { t, index } => {
                write!(f, "curvature k{index} vanishes at t = {t}")
            }
            FrenetError::Curve(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FrenetError {}

impl From<CurveError> for FrenetError {
    fn from(e: CurveError) -> Self {
        FrenetError::Curve(e)
    }
}

/// Computes the frame and curvatures at `t`.
///
/// The curve must be unit-speed with timelike tangent, and `k1`, `k2`, and
/// `|B1' + k2 N|` must all clear [`tol::CURVATURE_TOL`]; otherwise the
/// matching error is returned.
pub fn frenet_apparatus(c: &dyn CurveModel, t: f64) -> Result<FrenetApparatus, FrenetError> {
    let cs = c.series(t)?;

    // Tangent and the unit-speed / causal gates.
    let ts = deriv4(&cs);
    let t_vec = Vec4([ts[0].value(), ts[1].value(), ts[2].value(), ts[3].value()]);
    if causal_character(t_vec) != CausalCharacter::Timelike {
        return Err(FrenetError::NotTimelike { t });
    }
    let speed = real::sqrt(-minkowski_norm_sq(t_vec));
    if real::abs(speed - 1.0) > tol::UNIT_SPEED_TOL {
        return Err(FrenetError::NotUnitSpeed { t, speed });
    }

    // k1 and N from T' (spacelike since it is orthogonal to timelike T).
    let tp = deriv4(&ts);
    let ip = dot4_series(&tp, &tp);
    if ip.value() <= tol::CURVATURE_TOL * tol::CURVATURE_TOL {
        return Err(FrenetError::VanishingCurvature { t, index: 1 });
    }
    let k1_ser = ip.sqrt();
    let n_ser = [
        tp[0] / k1_ser,
        tp[1] / k1_ser,
        tp[2] / k1_ser,
        tp[3] / k1_ser,
    ];
    let k1 = k1_ser.value();
    let n_vec = Vec4([
        n_ser[0].value(),
        n_ser[1].value(),
        n_ser[2].value(),
        n_ser[3].value(),
    ]);

    // k2 and B1 from the non-tangential part of N'.
    let w_ser = [
        n_ser[0].deriv() - k1_ser * ts[0],
        n_ser[1].deriv() - k1_ser * ts[1],
        n_ser[2].deriv() - k1_ser * ts[2],
        n_ser[3].deriv() - k1_ser * ts[3],
    ];
    let w_ip = dot4_series(&w_ser, &w_ser);
    if w_ip.value() <= tol::CURVATURE_TOL * tol::CURVATURE_TOL {
        return Err(FrenetError::VanishingCurvature { t, index: 2 });
    }
    let k2_ser = w_ip.sqrt();
    let k2 = k2_ser.value();
    let b1_ser = [
        w_ser[0] / k2_ser,
        w_ser[1] / k2_ser,
        w_ser[2] / k2_ser,
        w_ser[3] / k2_ser,
    ];
    let b1_vec = Vec4([
        b1_ser[0].value(),
        b1_ser[1].value(),
        b1_ser[2].value(),
        b1_ser[3].value(),
    ]);

    // B2 from the remainder B1' + k2 N, oriented by the determinant.
    let b1p = Vec4([
        b1_ser[0].derivative(1),
        b1_ser[1].derivative(1),
        b1_ser[2].derivative(1),
        b1_ser[3].derivative(1),
    ]);
    let u = b1p + k2 * n_vec;
    let u_norm = real::sqrt(real::abs(minkowski_norm_sq(u)));
    if u_norm <= tol::CURVATURE_TOL {
        return Err(FrenetError::VanishingCurvature { t, index: 3 });
    }
    let candidate = u / u_norm;
    let det = frame_determinant(&[t_vec, n_vec, b1_vec, candidate]);
    let (b2_vec, epsilon) = if det >= 0.0 {
        (candidate, 1.0)
    } else {
        (-candidate, -1.0)
    };
    let k3 = minkowski_dot(b1p, b2_vec);

    Ok(FrenetApparatus {
        t: t_vec,
        n: n_vec,
        b1: b1_vec,
        b2: b2_vec,
        k1,
        k2,
        k3,
        epsilon,
    })
}

/// Finite-difference residuals of the four frame equations at `t`.
///
/// Frame fields at `t - delta` and `t + delta` approximate the derivatives
/// by central differences; each residual is the largest absolute component
/// of (derivative estimate) minus (frame equation right-hand side). The
/// probe itself carries an `O(delta^2)` truncation error.
#[derive(Clone, Copy, Debug)]
pub struct FrenetResiduals {
    pub t_eq: f64,
    pub n_eq: f64,
    pub b1_eq: f64,
    pub b2_eq: f64,
}

impl FrenetResiduals {
    pub fn max(&self) -> f64 {
        real::max(real::max(self.t_eq, self.n_eq), real::max(self.b1_eq, self.b2_eq))
    }
}

pub fn frenet_residuals(
    c: &dyn CurveModel,
    t: f64,
    delta: f64,
) -> Result<FrenetResiduals, FrenetError> {
    let dom = c.domain();
    check_domain(t - delta, dom).map_err(FrenetError::Curve)?;
    check_domain(t + delta, dom).map_err(FrenetError::Curve)?;
    let center = frenet_apparatus(c, t)?;
    let minus = frenet_apparatus(c, t - delta)?;
    let plus = frenet_apparatus(c, t + delta)?;
    let diff = |a: Vec4, b: Vec4| (a - b) * (0.5 / delta);

    let t_eq = (diff(plus.t, minus.t) - center.k1 * center.n).max_abs();
    let n_eq = (diff(plus.n, minus.n) - (center.k1 * center.t + center.k2 * center.b1)).max_abs();
    let b1_eq =
        (diff(plus.b1, minus.b1) - (-center.k2 * center.n + center.k3 * center.b2)).max_abs();
    let b2_eq = (diff(plus.b2, minus.b2) - (-center.k3 * center.b1)).max_abs();

    Ok(FrenetResiduals {
        t_eq,
        n_eq,
        b1_eq,
        b2_eq,
    })
}

/// One row of a [`FrameScan`].
#[derive(Clone, Copy, Debug)]
pub struct FrameSample {
    pub t: f64,
    pub apparatus: FrenetApparatus,
    /// Deviation of the frame Gram matrix from `diag(-1, 1, 1, 1)`.
    pub gram_deviation: f64,
    /// Frame determinant (should be `+1`).
    pub determinant: f64,
}

/// Frame data over a sample grid, with the aggregates a caller needs to
/// decide whether the curve carries this frame structure everywhere.
#[derive(Clone, Debug)]
pub struct FrameScan {
    pub samples: Vec<FrameSample>,
    /// First parameter value where the construction failed, with the error
    /// rendered as text.
    pub first_failure: Option<(f64, String)>,
    pub max_gram_deviation: f64,
    pub max_det_deviation: f64,
    pub min_k1: f64,
    pub min_k2: f64,
    pub min_abs_k3: f64,
}

impl FrameScan {
    /// True when every sample produced a frame that is orthonormal and
    /// correctly oriented within [`tol::FRAME_TOL`], with nonvanishing
    /// curvatures.
    pub fn is_special(&self) -> bool {
        self.first_failure.is_none()
            && self.max_gram_deviation <= tol::FRAME_TOL
            && self.max_det_deviation <= tol::FRAME_TOL
            && self.min_k1 > tol::CURVATURE_TOL
            && self.min_k2 > tol::CURVATURE_TOL
    }
}

/// Runs the frame construction on each parameter value in `params`.
pub fn scan_frames(c: &dyn CurveModel, params: &[f64]) -> FrameScan {
    let mut samples = Vec::with_capacity(params.len());
    let mut first_failure = None;
    let mut max_gram: f64 = 0.0;
    let mut max_det: f64 = 0.0;
    let mut min_k1 = f64::INFINITY;
    let mut min_k2 = f64::INFINITY;
    let mut min_k3 = f64::INFINITY;
    for &t in params {
        match frenet_apparatus(c, t) {
            Ok(app) => {
                let frame = [app.t, app.n, app.b1, app.b2];
                let gram = gram_deviation(&frame);
                let det = frame_determinant(&frame);
                max_gram = real::max(max_gram, gram);
                max_det = real::max(max_det, real::abs(det - 1.0));
                min_k1 = real::min(min_k1, app.k1);
                min_k2 = real::min(min_k2, app.k2);
                min_k3 = real::min(min_k3, real::abs(app.k3));
                samples.push(FrameSample {
                    t,
                    apparatus: app,
                    gram_deviation: gram,
                    determinant: det,
                });
            }
            Err(e) => {
                if first_failure.is_none() {
                    first_failure = Some((t, format!("{e}")));
                }
            }
        }
    }
    FrameScan {
        samples,
        first_failure,
        max_gram_deviation: max_gram,
        max_det_deviation: max_det,
        min_k1,
        min_k2,
        min_abs_k3: min_k3,
    }
}

/// Evenly spaced interior parameter values of a curve's domain, leaving a
/// `margin` fraction free at both ends (finite-difference probes and frame
/// scans want to stay away from the boundary).
pub fn interior_grid(c: &dyn CurveModel, samples: usize, margin: f64) -> Vec<f64> {
    let (lo, hi) = c.domain();
    let span = hi - lo;
    let a = lo + margin * span;
    let b = hi - margin * span;
    let n = samples.max(1);
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let frac = if n == 1 {
            0.5
        } else {
            i as f64 / (n - 1) as f64
        };
        grid.push(a + (b - a) * frac);
    }
    grid
}
