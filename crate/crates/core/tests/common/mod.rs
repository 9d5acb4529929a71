//! Shared fixtures: the analytic screw curves used as ground truth, a
//! programmatic expression builder (no float-to-string round trips), and an
//! independent finite-difference oracle for derivatives.
#![allow(dead_code)]

use mannheim_core::curve::{CurveModel, ParsedCurve};
use mannheim_core::expr::{Expr, Func};

pub fn lit(x: f64) -> Expr {
    Expr::Lit(x)
}

pub fn var() -> Expr {
    Expr::Var("t".to_string())
}

pub fn add(a: Expr, b: Expr) -> Expr {
    Expr::Add(Box::new(a), Box::new(b))
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

pub fn fun(f: Func, a: Expr) -> Expr {
    Expr::Fun(f, Box::new(a))
}

/// The screw curve `(a sinh t, a cosh t, b cos(w t), b sin(w t))`.
///
/// Its speed is the constant `sqrt(a^2 - b^2 w^2)`, so it is unit-speed
/// exactly when `a^2 = 1 + b^2 w^2`, and all three curvatures are constant.
pub fn screw_curve(a: f64, b: f64, omega: f64, domain: (f64, f64)) -> ParsedCurve {
    let components = [
        mul(lit(a), fun(Func::Sinh, var())),
        mul(lit(a), fun(Func::Cosh, var())),
        mul(lit(b), fun(Func::Cos, mul(lit(omega), var()))),
        mul(lit(b), fun(Func::Sin, mul(lit(omega), var()))),
    ];
    ParsedCurve::new(components, "t", domain).expect("screw curve fixture")
}

/// Unit-speed screw curve with `b = 0.2`, `w = 2`: curvatures
/// `k1 = sqrt(1.8)`, `k2 = sqrt(116/45)`, `|k3| = sqrt(20/9)`, and Mannheim
/// constant `beta = -k1 / (k1^2 - k2^2) = 9 sqrt(1.8) / 7`.
pub fn curve_one() -> ParsedCurve {
    screw_curve(1.16f64.sqrt(), 0.2, 2.0, (0.0, 2.0))
}

pub const CURVE_ONE_K1: f64 = 1.3416407864998738; // sqrt(1.8)
pub const CURVE_ONE_K2: f64 = 1.6055459438389740; // sqrt(116/45)
pub const CURVE_ONE_ABS_K3: f64 = 1.4907119849998598; // sqrt(20/9)
pub const CURVE_ONE_BETA: f64 = 1.7249667254998378; // 9 sqrt(1.8) / 7
/// `1 + beta * k1 = 23.2 / 7` for `curve_one`.
pub const CURVE_ONE_SHIFT: f64 = 3.3142857142857145;
/// Partner speed `sqrt(1 + beta * k1)`.
pub const CURVE_ONE_MATE_SPEED: f64 = 1.8205179796655783;
/// Partner curvature magnitudes `|k1*|, |k2*|, |k3*|` for `curve_one`.
pub const CURVE_ONE_MATE_K1: f64 = 1.2456821978061;
pub const CURVE_ONE_MATE_K2: f64 = 1.4907119849998598;
pub const CURVE_ONE_MATE_K3: f64 = 0.484431965813483;

/// Unit-speed screw curve with `b = 1`, `w = 1`: here `k2 < k1`
/// (`k1 = sqrt(3)`, `k2 = sqrt(8/3)`), the Mannheim constant is
/// `beta = -3 sqrt(3)`, and `1 + beta k1 = -8`, so the displaced partner
/// has a spacelike tangent.
pub fn curve_two() -> ParsedCurve {
    screw_curve(2f64.sqrt(), 1.0, 1.0, (0.0, 2.0))
}

pub const CURVE_TWO_K1: f64 = 1.7320508075688772; // sqrt(3)
pub const CURVE_TWO_K2: f64 = 1.6329931618554521; // sqrt(8/3)
pub const CURVE_TWO_ABS_K3: f64 = 0.5773502691896258; // 1/sqrt(3)
pub const CURVE_TWO_BETA: f64 = -5.196152422706632; // -3 sqrt(3)

/// Frequency and major radius of the screw curve where `k1 = k2`, the
/// degenerate case where no Mannheim constant exists (root found
/// numerically at 50-digit precision, then frozen).
pub const DEGENERATE_OMEGA: f64 = 1.74297464805467;

pub fn degenerate_curve() -> ParsedCurve {
    let omega = DEGENERATE_OMEGA;
    let a = (1.0 + 0.04 * omega * omega).sqrt();
    screw_curve(a, 0.2, omega, (0.0, 2.0))
}

/// A curve that is NOT a Mannheim curve: detuning only the last component
/// (`sin(2.1 t)` against `cos(2 t)`) destroys the homogeneity that made the
/// curvatures constant, so the pointwise Mannheim constant varies by O(1).
pub fn non_mannheim_curve() -> ParsedCurve {
    let a = 1.16f64.sqrt();
    let components = [
        mul(lit(a), fun(Func::Sinh, var())),
        mul(lit(a), fun(Func::Cosh, var())),
        mul(lit(0.2), fun(Func::Cos, mul(lit(2.0), var()))),
        mul(lit(0.2), fun(Func::Sin, mul(lit(2.1), var()))),
    ];
    ParsedCurve::new(components, "t", (0.0, 2.0)).expect("fixture")
}

/// Applies a linear map to the component expressions of a curve, producing
/// the transformed curve symbolically (rows of `m` act on components).
pub fn transform_curve(base: &ParsedCurve, m: &[[f64; 4]; 4]) -> ParsedCurve {
    let comps = base.components();
    let mut out: Vec<Expr> = Vec::with_capacity(4);
    for row in m.iter() {
        let mut acc: Option<Expr> = None;
        for (coeff, comp) in row.iter().zip(comps.iter()) {
            if *coeff == 0.0 {
                continue;
            }
            let term = mul(lit(*coeff), comp.clone());
            acc = Some(match acc {
                None => term,
                Some(prev) => add(prev, term),
            });
        }
        out.push(acc.unwrap_or(Expr::Lit(0.0)));
    }
    let components: [Expr; 4] = [
        out[0].clone(),
        out[1].clone(),
        out[2].clone(),
        out[3].clone(),
    ];
    ParsedCurve::new(components, base.var(), base.domain()).expect("transformed fixture")
}

/// Finite differences with two Richardson extrapolation steps; an oracle
/// for derivatives that shares no code with the series engine.
pub mod fd {
    fn stencil<F: Fn(f64) -> f64>(f: &F, t: f64, order: usize, h: f64) -> f64 {
        match order {
            1 => (f(t + h) - f(t - h)) / (2.0 * h),
            2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
            3 => (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h))
                / (2.0 * h * h * h),
            4 => (f(t + 2.0 * h) - 4.0 * f(t + h) + 6.0 * f(t) - 4.0 * f(t - h)
                + f(t - 2.0 * h))
                / (h * h * h * h),
            _ => panic!("order 1..=4 only"),
        }
    }

    /// Central-difference derivative of the given order, sharpened from
    /// error `O(h^2)` to `O(h^6)` by two Richardson steps.
    pub fn derivative<F: Fn(f64) -> f64>(f: &F, t: f64, order: usize, h: f64) -> f64 {
        let d1 = stencil(f, t, order, h);
        let d2 = stencil(f, t, order, 0.5 * h);
        let d3 = stencil(f, t, order, 0.25 * h);
        let r1 = (4.0 * d2 - d1) / 3.0;
        let r2 = (4.0 * d3 - d2) / 3.0;
        (16.0 * r2 - r1) / 15.0
    }
}
