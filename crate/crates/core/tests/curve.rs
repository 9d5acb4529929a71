mod common;

use approx::assert_relative_eq;

use common::*;
use mannheim_core::curve::{
    arc_length, max_speed_deviation, reparametrize_unit_speed, speed, CurveError, CurveModel,
    MateCurve, ParsedCurve, DEFAULT_REPARAM_NODES,
};
use mannheim_core::expr::Func;

#[test]
fn screw_curve_speed_is_the_expected_constant() {
    let c = curve_one();
    for i in 0..32 {
        let t = 0.03 + 1.94 * i as f64 / 31.0;
        assert_relative_eq!(speed(&c, t).unwrap(), 1.0, epsilon = 1e-12);
    }
    let fast = screw_curve(2.0, 0.2, 2.0, (0.0, 2.0));
    // speed = sqrt(a^2 - b^2 w^2) = sqrt(4 - 0.16)
    let expected = (3.84f64).sqrt();
    assert_relative_eq!(speed(&fast, 0.7).unwrap(), expected, max_relative = 1e-13);
    assert!(max_speed_deviation(&fast, 16).unwrap() > 0.9);
}

#[test]
fn jets_match_analytic_derivatives_of_the_components() {
    let a = 1.16f64.sqrt();
    let (b, w) = (0.2, 2.0);
    let c = curve_one();
    for &t in &[0.15, 0.8, 1.7] {
        let jets = c.jets(t).unwrap();
        // x0 = a sinh t
        assert_relative_eq!(jets[0].d1, a * t.cosh(), max_relative = 1e-13);
        assert_relative_eq!(jets[0].d2, a * t.sinh(), max_relative = 1e-13);
        assert_relative_eq!(jets[0].d3, a * t.cosh(), max_relative = 1e-13);
        assert_relative_eq!(jets[0].d4, a * t.sinh(), max_relative = 1e-13);
        // x2 = b cos(w t)
        assert_relative_eq!(jets[2].d1, -b * w * (w * t).sin(), max_relative = 1e-12);
        assert_relative_eq!(jets[2].d2, -b * w * w * (w * t).cos(), max_relative = 1e-12);
        assert_relative_eq!(jets[2].d3, b * w * w * w * (w * t).sin(), max_relative = 1e-12);
        assert_relative_eq!(jets[2].d4, b * w * w * w * w * (w * t).cos(), max_relative = 1e-12);
    }
}

#[test]
fn jets_agree_with_a_finite_difference_oracle() {
    let c = curve_one();
    let t = 0.9;
    let jets = c.jets(t).unwrap();
    for i in 0..4 {
        let f = |x: f64| c.position(x).unwrap()[i];
        let scale = 1.0_f64.max(jets[i].d1.abs());
        assert!((fd::derivative(&f, t, 1, 1e-2) - jets[i].d1).abs() < 1e-9 * scale);
        assert!((fd::derivative(&f, t, 2, 2e-2) - jets[i].d2).abs() < 1e-7 * scale);
        assert!((fd::derivative(&f, t, 3, 5e-2) - jets[i].d3).abs() < 1e-6 * scale);
        assert!((fd::derivative(&f, t, 4, 8e-2) - jets[i].d4).abs() < 1e-4 * scale);
    }
}

#[test]
fn arc_length_of_a_unit_speed_curve_is_the_parameter_span() {
    let c = curve_one();
    let length = arc_length(&c, 0.0, 2.0).unwrap();
    assert_relative_eq!(length, 2.0, epsilon = 1e-10);
}

#[test]
fn arc_length_is_additive() {
    let c = screw_curve(2.0, 0.3, 1.5, (0.0, 2.0));
    let whole = arc_length(&c, 0.0, 2.0).unwrap();
    for &mid in &[0.3, 0.95, 1.618] {
        let left = arc_length(&c, 0.0, mid).unwrap();
        let right = arc_length(&c, mid, 2.0).unwrap();
        assert_relative_eq!(left + right, whole, max_relative = 1e-11);
    }
}

#[test]
fn out_of_domain_evaluation_is_rejected() {
    let c = curve_one();
    match c.series(2.5) {
        Err(CurveError::OutOfDomain { t, lo, hi }) => {
            assert_eq!((t, lo, hi), (2.5, 0.0, 2.0));
        }
        other => panic!("expected domain error, got {other:?}"),
    }
    assert!(arc_length(&c, -0.5, 1.0).is_err());
}

#[test]
fn unknown_identifier_surfaces_at_construction() {
    let err = ParsedCurve::parse(["q", "t", "t", "t"], "t", (0.0, 1.0)).unwrap_err();
    assert!(matches!(err, CurveError::Expr(_)));
}

#[test]
fn degenerate_domains_are_rejected() {
    assert!(matches!(
        ParsedCurve::parse(["t", "t", "t", "t"], "t", (1.0, 1.0)),
        Err(CurveError::InvalidDomain { .. })
    ));
}

/// `curve_one` traversed at double speed: `c(2t)` on `[0, 1]`.
fn double_speed_curve() -> ParsedCurve {
    let a = 1.16f64.sqrt();
    let two_t = mul(lit(2.0), var());
    let components = [
        mul(lit(a), fun(Func::Sinh, two_t.clone())),
        mul(lit(a), fun(Func::Cosh, two_t.clone())),
        mul(lit(0.2), fun(Func::Cos, mul(lit(2.0), two_t.clone()))),
        mul(lit(0.2), fun(Func::Sin, mul(lit(2.0), two_t))),
    ];
    ParsedCurve::new(components, "t", (0.0, 1.0)).expect("fixture")
}

#[test]
fn reparametrization_recovers_the_unit_speed_parametrization() {
    let fast = double_speed_curve();
    let slow = curve_one();
    let rep = reparametrize_unit_speed(Box::new(fast), 256).unwrap();
    assert_relative_eq!(rep.total_length(), 2.0, epsilon = 1e-9);

    for i in 0..24 {
        let s = 0.02 + 1.96 * i as f64 / 23.0;
        // Same point in space as the honestly unit-speed model.
        let p = rep.position(s).unwrap();
        let q = slow.position(s).unwrap();
        assert!((p - q).max_abs() < 1e-9, "position gap at s = {s}");
        // Unit speed after reparametrization.
        assert_relative_eq!(speed(&rep, s).unwrap(), 1.0, epsilon = 1e-9);
        // Derivatives of the composite match the reference curve.
        let jr = rep.jets(s).unwrap();
        let js = slow.jets(s).unwrap();
        for k in 0..4 {
            assert_relative_eq!(jr[k].d1, js[k].d1, epsilon = 1e-8);
            assert_relative_eq!(jr[k].d2, js[k].d2, epsilon = 1e-7);
            assert_relative_eq!(jr[k].d3, js[k].d3, epsilon = 1e-6);
            assert_relative_eq!(jr[k].d4, js[k].d4, epsilon = 1e-5);
        }
    }
}

#[test]
fn arc_table_and_its_inverse_round_trip() {
    let c = screw_curve(2.0, 0.3, 1.5, (0.0, 2.0));
    let rep = reparametrize_unit_speed(Box::new(c), DEFAULT_REPARAM_NODES).unwrap();
    for i in 0..16 {
        let t = 0.05 + 1.9 * i as f64 / 15.0;
        let s = rep.arc_from_start(t).unwrap();
        let back = rep.base_param_at(s).unwrap();
        assert_relative_eq!(back, t, epsilon = 1e-10);
    }
}

#[test]
fn null_tangent_stops_arc_length_work() {
    // velocity (1, 1, 0, 0) is null everywhere, so every quadrature node
    // sees a vanishing speed.
    let c = ParsedCurve::parse(["t", "t", "0", "0"], "t", (0.0, 1.0)).unwrap();
    match arc_length(&c, 0.0, 1.0) {
        Err(CurveError::NearNullTangent { t, speed }) => {
            assert!((0.0..=1.0).contains(&t));
            assert!(speed < 1e-12);
        }
        other => panic!("expected near-null failure, got {other:?}"),
    }
}

#[test]
fn null_tangent_stops_reparametrization() {
    let c = ParsedCurve::parse(["t", "t", "0", "0"], "t", (0.0, 1.0)).unwrap();
    assert!(matches!(
        reparametrize_unit_speed(Box::new(c), 32),
        Err(CurveError::NearNullTangent { .. })
    ));
}

#[test]
fn arc_length_integrates_through_an_isolated_causal_change() {
    // velocity (sinh t, 1, 0, 0) turns spacelike past sinh t = 1; the speed
    // keeps an integrable kink there, so the arc integral still converges.
    // Downstream frame construction is where such a curve gets rejected.
    let c = ParsedCurve::parse(["cosh(t)", "t", "0", "0"], "t", (0.0, 1.5)).unwrap();
    let length = arc_length(&c, 0.0, 1.5).unwrap();
    assert!(length.is_finite() && length > 0.0);
}

#[test]
fn displaced_curve_follows_the_principal_normal() {
    let beta = 0.37;
    let mate = MateCurve::new(Box::new(curve_one()), beta);
    let a = 1.16f64.sqrt();
    let k1 = 1.8f64.sqrt();
    for &t in &[0.2, 1.0, 1.9] {
        let p = mate.position(t).unwrap();
        // c + beta c''/k1 with c'' = (a sinh, a cosh, -0.8 cos 2t, -0.8 sin 2t)
        let expected = [
            a * t.sinh() + beta * a * t.sinh() / k1,
            a * t.cosh() + beta * a * t.cosh() / k1,
            0.2 * (2.0 * t).cos() - beta * 0.8 * (2.0 * t).cos() / k1,
            0.2 * (2.0 * t).sin() - beta * 0.8 * (2.0 * t).sin() / k1,
        ];
        for i in 0..4 {
            assert_relative_eq!(p[i], expected[i], epsilon = 1e-12);
        }
    }
}

#[test]
fn displacement_needs_a_nonvanishing_curvature() {
    let line = ParsedCurve::parse(["2*t", "sqrt(3)*t", "0", "0"], "t", (0.0, 1.0)).unwrap();
    let mate = MateCurve::new(Box::new(line), 1.0);
    assert!(matches!(
        mate.series(0.5),
        Err(CurveError::DegenerateFrame { .. })
    ));
}
