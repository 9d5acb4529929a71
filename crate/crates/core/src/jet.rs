//! Truncated Taylor arithmetic (forward-mode derivatives of higher order).
//!
//! Two layers live here. [`Series`] is the working representation: the
//! Taylor coefficients `a_k = f^(k)(t0) / k!` of a scalar function, truncated
//! after order [`SERIES_ORDER`]. Every operation propagates coefficients
//! exactly (up to rounding), using the classical recurrences for products,
//! quotients, and elementary functions. [`Jet`] is the compact public view
//! carrying the value and the first four derivatives, which is what the
//! Frenet formulas need; it converts to and from `Series` by scaling with
//! factorials.
//!
//! The extra orders in `Series` are not a luxury: derived curves (a partner
//! curve built from the principal normal, or a reparametrized curve) consume
//! derivatives of the input curve beyond the four they expose, so the engine
//! keeps enough headroom that every supported composition still hands out
//! honest fourth derivatives. All recurrences are lower-triangular: output
//! coefficient `k` depends only on input coefficients `0..=k`, so truncation
//! never leaks upward into the orders a caller relies on.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::real;

/// Highest derivative order a [`Series`] tracks.
pub const SERIES_ORDER: usize = 8;

/// Number of stored coefficients, `SERIES_ORDER + 1`.
pub const SERIES_LEN: usize = SERIES_ORDER + 1;

/// Taylor coefficients `a_0 .. a_8` of a scalar function about a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series(pub [f64; SERIES_LEN]);

impl Series {
    /// The constant function `x`.
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; SERIES_LEN];
        c[0] = x;
        Series(c)
    }

    /// The identity function, expanded about `t0`.
    pub fn variable(t0: f64) -> Self {
        let mut c = [0.0; SERIES_LEN];
        c[0] = t0;
        c[1] = 1.0;
        Series(c)
    }

    /// Value of the represented function at the expansion point.
    pub fn value(self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative at the expansion point (`a_k * k!`).
    pub fn derivative(self, k: usize) -> f64 {
        self.0[k] * FACTORIAL[k]
    }

    /// Series of the derivative function: coefficients shift down one order.
    /// The top coefficient of the result is garbage-free but merely
    /// truncated, so each application lowers the trustworthy order by one.
    pub fn deriv(self) -> Series {
        let mut c = [0.0; SERIES_LEN];
        for k in 0..SERIES_ORDER {
            c[k] = (k + 1) as f64 * self.0[k + 1];
        }
        Series(c)
    }

    /// Series of an antiderivative with value `c0` at the expansion point.
    pub fn integral(self, c0: f64) -> Series {
        let mut c = [0.0; SERIES_LEN];
        c[0] = c0;
        for k in 0..SERIES_ORDER {
            c[k + 1] = self.0[k] / (k + 1) as f64;
        }
        Series(c)
    }

    pub fn scale(self, s: f64) -> Series {
        let mut c = self.0;
        for x in c.iter_mut() {
            *x *= s;
        }
        Series(c)
    }

    /// Multiplicative inverse `1 / self`.
    pub fn recip(self) -> Series {
        Series::constant(1.0) / self
    }

    /// Square root; the leading coefficient must be positive for the result
    /// to be meaningful (a nonpositive value yields NaN that propagates).
    pub fn sqrt(self) -> Series {
        let mut u = [0.0; SERIES_LEN];
        u[0] = real::sqrt(self.0[0]);
        for k in 1..SERIES_LEN {
            let mut acc = self.0[k];
            for j in 1..k {
                acc -= u[j] * u[k - j];
            }
            u[k] = acc / (2.0 * u[0]);
        }
        Series(u)
    }

    pub fn exp(self) -> Series {
        let mut u = [0.0; SERIES_LEN];
        u[0] = real::exp(self.0[0]);
        for k in 1..SERIES_LEN {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.0[j] * u[k - j];
            }
            u[k] = acc / k as f64;
        }
        Series(u)
    }

    /// Sine and cosine share one recurrence, so they are computed jointly.
    pub fn sin_cos(self) -> (Series, Series) {
        let mut s = [0.0; SERIES_LEN];
        let mut c = [0.0; SERIES_LEN];
        s[0] = real::sin(self.0[0]);
        c[0] = real::cos(self.0[0]);
        for k in 1..SERIES_LEN {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                ds += j as f64 * self.0[j] * c[k - j];
                dc += j as f64 * self.0[j] * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = -dc / k as f64;
        }
        (Series(s), Series(c))
    }

    pub fn sin(self) -> Series {
        self.sin_cos().0
    }

    pub fn cos(self) -> Series {
        self.sin_cos().1
    }

    /// Hyperbolic sine and cosine, computed jointly like [`Self::sin_cos`].
    pub fn sinh_cosh(self) -> (Series, Series) {
        let mut s = [0.0; SERIES_LEN];
        let mut c = [0.0; SERIES_LEN];
        s[0] = real::sinh(self.0[0]);
        c[0] = real::cosh(self.0[0]);
        for k in 1..SERIES_LEN {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                ds += j as f64 * self.0[j] * c[k - j];
                dc += j as f64 * self.0[j] * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (Series(s), Series(c))
    }

    pub fn sinh(self) -> Series {
        self.sinh_cosh().0
    }

    pub fn cosh(self) -> Series {
        self.sinh_cosh().1
    }

    /// Integer power by repeated squaring; negative exponents go through the
    /// reciprocal.
    pub fn powi(self, n: i32) -> Series {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Series::constant(1.0);
        let mut base = self;
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Composition `outer(inner)` where `inner_offset` is the series of
    /// `inner - inner(t0)` (its leading coefficient must vanish) and the
    /// coefficients of `outer` are taken about `inner(t0)`. Evaluated by
    /// Horner's scheme on series.
    pub fn compose(outer: Series, inner_offset: Series) -> Series {
        debug_assert!(inner_offset.0[0] == 0.0, "inner offset must be centered");
        let mut acc = Series::constant(outer.0[SERIES_ORDER]);
        for k in (0..SERIES_ORDER).rev() {
            acc = acc * inner_offset + Series::constant(outer.0[k]);
        }
        acc
    }
}

impl Add for Series {
    type Output = Series;

    fn add(self, rhs: Series) -> Series {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0.iter()) {
            *x += y;
        }
        Series(c)
    }
}

impl Sub for Series {
    type Output = Series;

    fn sub(self, rhs: Series) -> Series {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0.iter()) {
            *x -= y;
        }
        Series(c)
    }
}

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}

impl Mul for Series {
    type Output = Series;

    fn mul(self, rhs: Series) -> Series {
        let mut c = [0.0; SERIES_LEN];
        for k in 0..SERIES_LEN {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.0[j] * rhs.0[k - j];
            }
            c[k] = acc;
        }
        Series(c)
    }
}

impl Div for Series {
    type Output = Series;

    fn div(self, rhs: Series) -> Series {
        let mut w = [0.0; SERIES_LEN];
        for k in 0..SERIES_LEN {
            let mut acc = self.0[k];
            for j in 0..k {
                acc -= w[j] * rhs.0[k - j];
            }
            w[k] = acc / rhs.0[0];
        }
        Series(w)
    }
}

const FACTORIAL: [f64; SERIES_LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0];

/// Value and derivatives `d/dt` through order four at one parameter value.
///
/// `d0` is the function value and `dk` its `k`-th derivative. This is the
/// order every public formula in the crate consumes; the conversion from
/// [`Series`] simply rescales coefficients by factorials.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
}

impl Jet {
    pub fn constant(x: f64) -> Self {
        Jet {
            d0: x,
            ..Jet::default()
        }
    }

    /// The identity function at `t`: value `t`, first derivative one.
    pub fn variable(t: f64) -> Self {
        Jet {
            d0: t,
            d1: 1.0,
            ..Jet::default()
        }
    }

    pub fn from_series(s: Series) -> Self {
        Jet {
            d0: s.0[0],
            d1: s.0[1],
            d2: 2.0 * s.0[2],
            d3: 6.0 * s.0[3],
            d4: 24.0 * s.0[4],
        }
    }

    pub fn to_series(self) -> Series {
        let mut c = [0.0; SERIES_LEN];
        c[0] = self.d0;
        c[1] = self.d1;
        c[2] = self.d2 / 2.0;
        c[3] = self.d3 / 6.0;
        c[4] = self.d4 / 24.0;
        Series(c)
    }

    pub fn sqrt(self) -> Jet {
        Jet::from_series(self.to_series().sqrt())
    }

    pub fn exp(self) -> Jet {
        Jet::from_series(self.to_series().exp())
    }

    pub fn sin(self) -> Jet {
        Jet::from_series(self.to_series().sin())
    }

    pub fn cos(self) -> Jet {
        Jet::from_series(self.to_series().cos())
    }

    pub fn sinh(self) -> Jet {
        Jet::from_series(self.to_series().sinh())
    }

    pub fn cosh(self) -> Jet {
        Jet::from_series(self.to_series().cosh())
    }

    pub fn powi(self, n: i32) -> Jet {
        Jet::from_series(self.to_series().powi(n))
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, rhs: Jet) -> Jet {
        Jet {
            d0: self.d0 + rhs.d0,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
            d3: self.d3 + rhs.d3,
            d4: self.d4 + rhs.d4,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, rhs: Jet) -> Jet {
        Jet {
            d0: self.d0 - rhs.d0,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
            d3: self.d3 - rhs.d3,
            d4: self.d4 - rhs.d4,
        }
    }
}

impl Neg for Jet {
    type Output = Jet;

    fn neg(self) -> Jet {
        Jet {
            d0: -self.d0,
            d1: -self.d1,
            d2: -self.d2,
            d3: -self.d3,
            d4: -self.d4,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, rhs: Jet) -> Jet {
        Jet::from_series(self.to_series() * rhs.to_series())
    }
}

impl Div for Jet {
    type Output = Jet;

    fn div(self, rhs: Jet) -> Jet {
        Jet::from_series(self.to_series() / rhs.to_series())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_series_at_zero_has_reciprocal_factorials() {
        let u = Series::variable(0.0).exp();
        for k in 0..SERIES_LEN {
            assert_relative_eq!(u.0[k], 1.0 / FACTORIAL[k], max_relative = 1e-15);
        }
    }

    #[test]
    fn sin_series_at_zero_alternates() {
        // sin x = x - x^3/6 + x^5/120 - x^7/5040
        let s = Series::variable(0.0).sin();
        let expected = [0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0, 0.0, -1.0 / 5040.0, 0.0];
        for k in 0..SERIES_LEN {
            assert_relative_eq!(s.0[k], expected[k], epsilon = 1e-16);
        }
    }

    #[test]
    fn geometric_series_from_division() {
        // 1 / (1 - x) = 1 + x + x^2 + ...
        let denom = Series::constant(1.0) - Series::variable(0.0);
        let q = Series::constant(1.0) / denom;
        for k in 0..SERIES_LEN {
            assert_relative_eq!(q.0[k], 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn sqrt_of_one_plus_x_matches_binomial_series() {
        let u = (Series::constant(1.0) + Series::variable(0.0)).sqrt();
        // binomial(1/2, k)
        let expected = [
            1.0,
            0.5,
            -0.125,
            0.0625,
            -0.0390625,
            0.02734375,
            -0.0205078125,
            0.01611328125,
            -0.013092041015625,
        ];
        for k in 0..SERIES_LEN {
            assert_relative_eq!(u.0[k], expected[k], max_relative = 1e-14);
        }
    }

    #[test]
    fn hyperbolic_functions_recover_their_derivatives() {
        let x = 0.7;
        let sh = Series::variable(x).sinh();
        assert_relative_eq!(sh.derivative(0), real::sinh(x), max_relative = 1e-15);
        assert_relative_eq!(sh.derivative(1), real::cosh(x), max_relative = 1e-15);
        assert_relative_eq!(sh.derivative(2), real::sinh(x), max_relative = 1e-14);
        assert_relative_eq!(sh.derivative(3), real::cosh(x), max_relative = 1e-14);
        assert_relative_eq!(sh.derivative(8), real::sinh(x), max_relative = 1e-12);
    }

    #[test]
    fn product_rule_via_series_multiplication() {
        // (t^2 * sin t)' = 2t sin t + t^2 cos t at t = 1.3
        let t = 1.3;
        let v = Series::variable(t);
        let p = v * v * v.sin();
        let expected = 2.0 * t * real::sin(t) + t * t * real::cos(t);
        assert_relative_eq!(p.derivative(1), expected, max_relative = 1e-14);
    }

    #[test]
    fn composition_of_sin_with_square() {
        // sin(x^2) about 0: x^2 - x^6/6 (the x^10 term is beyond our order)
        let outer = Series::variable(0.0).sin();
        let inner_offset = Series::variable(0.0) * Series::variable(0.0);
        let c = Series::compose(outer, inner_offset);
        let expected = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0 / 6.0, 0.0, 0.0];
        for k in 0..SERIES_LEN {
            assert_relative_eq!(c.0[k], expected[k], epsilon = 1e-15);
        }
    }

    #[test]
    fn composition_about_shifted_point() {
        // f(g(t)) with f = exp about g(t0), g(t) = 3t: derivatives 3^k e^{3 t0}
        let t0 = 0.4;
        let g = Series::variable(t0).scale(3.0);
        let mut g_offset = g;
        g_offset.0[0] = 0.0;
        let outer = Series::variable(g.0[0]).exp();
        let c = Series::compose(outer, g_offset);
        for k in 0..SERIES_LEN {
            let expected = real::powi(3.0, k as i32) * real::exp(3.0 * t0);
            assert_relative_eq!(c.derivative(k), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn powi_handles_negative_exponents() {
        // d/dt t^-2 = -2 t^-3 at t = 2
        let p = Series::variable(2.0).powi(-2);
        assert_relative_eq!(p.value(), 0.25, max_relative = 1e-15);
        assert_relative_eq!(p.derivative(1), -0.25, max_relative = 1e-14);
    }

    #[test]
    fn integral_then_derivative_round_trips() {
        let s = Series::variable(0.9).cos();
        let back = s.integral(7.0).deriv();
        for k in 0..SERIES_ORDER {
            assert_relative_eq!(back.0[k], s.0[k], epsilon = 1e-15);
        }
    }

    #[test]
    fn jet_matches_series_through_order_four() {
        let x = 0.31;
        let j = Jet::variable(x).sinh() * Jet::variable(x).exp();
        let s = Series::variable(x).sinh() * Series::variable(x).exp();
        assert_relative_eq!(j.d0, s.derivative(0), max_relative = 1e-14);
        assert_relative_eq!(j.d1, s.derivative(1), max_relative = 1e-14);
        assert_relative_eq!(j.d2, s.derivative(2), max_relative = 1e-14);
        assert_relative_eq!(j.d3, s.derivative(3), max_relative = 1e-14);
        assert_relative_eq!(j.d4, s.derivative(4), max_relative = 1e-14);
    }

    #[test]
    fn jet_division_inverts_multiplication() {
        let a = Jet {
            d0: 1.7,
            d1: -0.3,
            d2: 0.9,
            d3: 2.2,
            d4: -1.1,
        };
        let b = Jet {
            d0: 0.6,
            d1: 1.4,
            d2: -2.0,
            d3: 0.5,
            d4: 3.3,
        };
        let q = (a * b) / b;
        assert_relative_eq!(q.d0, a.d0, max_relative = 1e-13);
        assert_relative_eq!(q.d1, a.d1, max_relative = 1e-13);
        assert_relative_eq!(q.d2, a.d2, max_relative = 1e-13);
        assert_relative_eq!(q.d3, a.d3, max_relative = 1e-12);
        assert_relative_eq!(q.d4, a.d4, max_relative = 1e-12);
    }
}
