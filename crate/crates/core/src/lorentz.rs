//! Four-vectors in Minkowski space with signature `(-, +, +, +)`.
//!
//! Coordinates are ordered `(x0, x1, x2, x3)` with `x0` the timelike axis, so
//! the scalar product is `<u, v> = -u0*v0 + u1*v1 + u2*v2 + u3*v3`.

use core::fmt;
use core::ops::{Add, Div, Index, Mul, Neg, Sub};

use crate::real;
use crate::tol;

/// A point or direction in `E_1^4`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Vec4([x0, x1, x2, x3])
    }

    /// Squared Euclidean norm, used only as a scale reference for causal
    /// classification.
    pub fn euclid_norm_sq(self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0, |m, x| real::max(m, real::abs(*x)))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;

    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for Vec4 {
    type Output = Vec4;

    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for Vec4 {
    type Output = Vec4;

    fn neg(self) -> Vec4 {
        Vec4([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;

    fn mul(self, s: f64) -> Vec4 {
        Vec4([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;

    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

impl Div<f64> for Vec4 {
    type Output = Vec4;

    fn div(self, s: f64) -> Vec4 {
        Vec4([self.0[0] / s, self.0[1] / s, self.0[2] / s, self.0[3] / s])
    }
}

/// Lorentzian scalar product `-u0*v0 + u1*v1 + u2*v2 + u3*v3`.
pub fn minkowski_dot(u: Vec4, v: Vec4) -> f64 {
    -u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] + u.0[3] * v.0[3]
}

/// Signed squared norm `<v, v>`; negative for timelike vectors.
pub fn minkowski_norm_sq(v: Vec4) -> f64 {
    minkowski_dot(v, v)
}

/// Norm `sqrt(|<v, v>|)`, defined for every causal character.
pub fn minkowski_norm(v: Vec4) -> f64 {
    real::sqrt(real::abs(minkowski_norm_sq(v)))
}

/// Causal character of a vector under the `(-, +, +, +)` metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalCharacter {
    Timelike,
    Null,
    Spacelike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Null => "null",
            CausalCharacter::Spacelike => "spacelike",
        };
        f.write_str(name)
    }
}

/// Classifies `v` as timelike, null, or spacelike.
///
/// `<v, v>` is compared against [`tol::CAUSAL_TOL`] scaled by
/// `max(1, |v|_E^2)`, so the decision is relative to the size of the vector.
/// Note that this makes every sufficiently tiny vector classify as null.
pub fn causal_character(v: Vec4) -> CausalCharacter {
    let q = minkowski_norm_sq(v);
    let scale = real::max(1.0, v.euclid_norm_sq());
    if real::abs(q) <= tol::CAUSAL_TOL * scale {
        CausalCharacter::Null
    } else if q < 0.0 {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Spacelike
    }
}

/// Gram matrix `G[i][j] = <frame[i], frame[j]>` of four vectors.
pub fn gram_matrix(frame: &[Vec4; 4]) -> [[f64; 4]; 4] {
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = minkowski_dot(frame[i], frame[j]);
        }
    }
    g
}

/// Largest absolute deviation of the Gram matrix from `diag(-1, 1, 1, 1)`,
/// the Gram matrix of an orthonormal frame with timelike first leg.
pub fn gram_deviation(frame: &[Vec4; 4]) -> f64 {
    let g = gram_matrix(frame);
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let target = if i != j {
                0.0
            } else if i == 0 {
                -1.0
            } else {
                1.0
            };
            dev = real::max(dev, real::abs(g[i][j] - target));
        }
    }
    dev
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the matrix whose rows are the four frame vectors.
///
/// An orthonormal frame has determinant `+1` or `-1`; the Frenet
/// construction uses the sign to orient its last leg.
pub fn frame_determinant(frame: &[Vec4; 4]) -> f64 {
    let mut det = 0.0;
    for col in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for (mi, row) in (1..4).enumerate() {
            let mut mj = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                minor[mi][mj] = frame[row].0[c];
                mj += 1;
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * frame[0].0[col] * det3(minor);
    }
    det
}

/// Lorentz boost in the `(x0, x1)` plane with the given rapidity.
pub fn boost_x0x1(rapidity: f64) -> [[f64; 4]; 4] {
    let ch = real::cosh(rapidity);
    let sh = real::sinh(rapidity);
    [
        [ch, sh, 0.0, 0.0],
        [sh, ch, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Euclidean rotation in the `(x2, x3)` plane by the given angle.
pub fn rotation_x2x3(angle: f64) -> [[f64; 4]; 4] {
    let c = real::cos(angle);
    let s = real::sin(angle);
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, c, -s],
        [0.0, 0.0, s, c],
    ]
}

/// Applies a linear map (rows act on `v`) to a vector.
pub fn apply(m: &[[f64; 4]; 4], v: Vec4) -> Vec4 {
    let mut out = [0.0; 4];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * v.0[0] + row[1] * v.0[1] + row[2] * v.0[2] + row[3] * v.0[3];
    }
    Vec4(out)
}
