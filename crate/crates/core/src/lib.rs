//! Geometry of timelike curves in four-dimensional Minkowski space.
//!
//! The crate works in the flat space `E_1^4` with metric signature
//! `(-, +, +, +)` and provides, for unit-speed timelike curves:
//!
//! * the orthonormal Frenet frame `{T, N, B1, B2}` together with the three
//!   curvature functions `k1, k2, k3` and the frame orientation sign
//!   ([`frenet`]),
//! * detection and construction of generalized Mannheim partner pairs, where
//!   the second binormal of the partner runs along the principal normal of
//!   the base curve ([`mannheim`]),
//! * a synthesis routine that builds curves of this Mannheim class from two
//!   free scalar profiles and a constant ([`generator`]).
//!
//! Supporting machinery lives in its own modules: exact arithmetic on
//! truncated Taylor expansions ([`jet`]), a small expression language for
//! curve components ([`expr`]), adaptive Gauss-Kronrod quadrature ([`quad`]),
//! and the curve models plus arc-length reparametrization that glue it all
//! together ([`curve`]).
//!
//! The crate is `no_std` (with `alloc`); all transcendental functions are
//! routed through `libm` so results do not depend on the host math library.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curve;
pub mod expr;
pub mod frenet;
pub mod generator;
pub mod jet;
pub mod lorentz;
pub mod mannheim;
pub mod quad;
mod real;
pub mod tol;
