use approx::assert_relative_eq;
use proptest::prelude::*;

use mannheim_core::curve::{reparametrize_unit_speed, speed, CurveModel};
use mannheim_core::expr::parse;
use mannheim_core::frenet::frenet_apparatus;
use mannheim_core::generator::{
    abbreviations, build_generated_curve, f_of_s, generated_curvatures, intermediates,
    profile_f_variant, verify_generator_relation, GeneratorError, GeneratorSpec,
};
use mannheim_core::jet::Jet;
use mannheim_core::lorentz::{causal_character, minkowski_norm_sq, CausalCharacter};
use mannheim_core::mannheim::estimate_beta;

fn constant_spec(beta: f64) -> GeneratorSpec {
    GeneratorSpec::parse("0.3", "0.2", "s", beta, (0.0, 1.0)).unwrap()
}

fn wavy_spec(beta: f64) -> GeneratorSpec {
    GeneratorSpec::parse("0.4*sin(s)", "0.3*cos(s)", "s", beta, (0.0, 1.0)).unwrap()
}

fn jets_of(spec: &GeneratorSpec, s: f64) -> (Jet, Jet) {
    let g = mannheim_core::expr::eval_jet(&spec.g, &spec.var, s).unwrap();
    let h = mannheim_core::expr::eval_jet(&spec.h, &spec.var, s).unwrap();
    (g, h)
}

#[test]
fn abbreviations_for_constant_profiles() {
    let (g, h) = jets_of(&constant_spec(2.0), 0.4);
    let ab = abbreviations(&g, &h);
    assert_relative_eq!(ab.a, 0.87, epsilon = 1e-15);
    assert_eq!((ab.b, ab.c, ab.d, ab.e, ab.f), (0.0, -0.0, 0.0, -0.0, 0.0));
}

#[test]
fn abbreviations_for_a_linear_profile() {
    // g = s, h = 0 at s = 0.5: A = 0.75, B = -0.5, C = -1, rest zero.
    let spec = GeneratorSpec::parse("s", "0", "s", 1.0, (0.0, 0.9)).unwrap();
    let (g, h) = jets_of(&spec, 0.5);
    let ab = abbreviations(&g, &h);
    assert_relative_eq!(ab.a, 0.75, epsilon = 1e-15);
    assert_relative_eq!(ab.b, -0.5, epsilon = 1e-15);
    assert_relative_eq!(ab.c, -1.0, epsilon = 1e-15);
    assert_eq!((ab.d, ab.e, ab.f), (0.0, -0.0, 0.0));
}

#[test]
fn abbreviation_derivative_identities() {
    // dA/ds = 2B, dB/ds = C + D, dC/ds = 2E, checked against jets of the
    // abbreviations themselves.
    let spec = wavy_spec(1.5);
    for i in 0..20 {
        let s = 0.025 + 0.95 * i as f64 / 19.0;
        let g = mannheim_core::expr::eval_series(&spec.g, &spec.var, s).unwrap();
        let h = mannheim_core::expr::eval_series(&spec.h, &spec.var, s).unwrap();
        let one = mannheim_core::jet::Series::constant(1.0);
        let a_ser = one - g * g - h * h;
        let b_ser = -(g * g.deriv() + h * h.deriv());
        let c_ser = -(g.deriv() * g.deriv() + h.deriv() * h.deriv());
        let (gj, hj) = jets_of(&spec, s);
        let ab = abbreviations(&gj, &hj);
        assert_relative_eq!(a_ser.derivative(1), 2.0 * ab.b, max_relative = 1e-12);
        assert_relative_eq!(b_ser.derivative(1), ab.c + ab.d, max_relative = 1e-12);
        assert_relative_eq!(c_ser.derivative(1), 2.0 * ab.e, max_relative = 1e-12);
    }
}

#[test]
fn unreduced_intermediates_collapse_to_the_tilde_forms() {
    let spec = wavy_spec(1.5);
    for i in 0..20 {
        let s = 0.025 + 0.95 * i as f64 / 19.0;
        let (g, h) = jets_of(&spec, s);
        let ab = abbreviations(&g, &h);
        let im = intermediates(&ab);
        let a2 = ab.a * ab.a;
        assert_relative_eq!(im.p_raw, a2 * im.p_tilde, max_relative = 1e-12);
        assert_relative_eq!(im.q_raw, a2 * im.q_tilde, max_relative = 1e-14);
        assert_relative_eq!(im.r_raw, a2 * im.r_tilde, max_relative = 1e-12);
    }
}

#[test]
fn profile_is_one_for_constant_g_and_h() {
    let spec = constant_spec(2.0);
    for &s in &[0.0, 0.31, 0.77, 1.0] {
        let (g, h) = jets_of(&spec, s);
        assert_relative_eq!(f_of_s(&g, &h, s).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn profile_values_for_wavy_profiles() {
    // Frozen from an independent high-precision evaluation of the same
    // closed form.
    let spec = wavy_spec(1.5);
    for (s, expected) in [
        (0.1, 0.864681476361),
        (0.5, 0.812550618323),
        (0.9, 0.705784353534),
    ] {
        let (g, h) = jets_of(&spec, s);
        assert_relative_eq!(f_of_s(&g, &h, s).unwrap(), expected, max_relative = 1e-11);
    }
}

#[test]
fn variant_profile_transcription_disagrees() {
    // The other printed form of the profile is negative even for constant
    // profiles ((A-2)/A), so the two transcriptions cannot both be right.
    // The authoritative form is the one yielding f = 1 there.
    let spec = constant_spec(2.0);
    let (g, h) = jets_of(&spec, 0.5);
    let variant = profile_f_variant(&g, &h);
    assert_relative_eq!(variant, (0.87 - 2.0) / 0.87, epsilon = 1e-12);
    assert!(variant < 0.0);
    let (gw, hw) = jets_of(&wavy_spec(1.5), 0.5);
    let gap = (profile_f_variant(&gw, &hw) - f_of_s(&gw, &hw, 0.5).unwrap()).abs();
    assert!(gap > 1.0, "transcriptions unexpectedly close: gap = {gap}");
}

#[test]
fn constant_profile_curve_has_closed_form_position_and_speed() {
    let curve = build_generated_curve(constant_spec(2.0)).unwrap();
    // f = 1: velocity is 2(cosh s, sinh s, 0.3, 0.2), position integrates
    // to 2(sinh s, cosh s - 1, 0.3 s, 0.2 s).
    let p = curve.position(1.0).unwrap();
    assert_relative_eq!(p[0], 2.0 * 1.0f64.sinh(), max_relative = 1e-11);
    assert_relative_eq!(p[1], 2.0 * (1.0f64.cosh() - 1.0), max_relative = 1e-11);
    assert_relative_eq!(p[2], 0.6, max_relative = 1e-11);
    assert_relative_eq!(p[3], 0.4, max_relative = 1e-11);
    // Speed = |beta| f sqrt(A).
    let expected_speed = 2.0 * 0.87f64.sqrt();
    for &s in &[0.15, 0.5, 0.95] {
        assert_relative_eq!(speed(&curve, s).unwrap(), expected_speed, max_relative = 1e-10);
        let v = curve.velocity(s).unwrap();
        assert_eq!(causal_character(v), CausalCharacter::Timelike);
        assert_relative_eq!(
            minkowski_norm_sq(v),
            -expected_speed * expected_speed,
            max_relative = 1e-10
        );
    }
}

#[test]
fn wavy_profile_speed_matches_the_closed_form() {
    let curve = build_generated_curve(wavy_spec(1.5)).unwrap();
    for &s in &[0.1, 0.5, 0.9] {
        let f = curve.profile(s).unwrap();
        let (g, h) = jets_of(curve.spec(), s);
        let a = 1.0 - g.d0 * g.d0 - h.d0 * h.d0;
        assert_relative_eq!(
            speed(&curve, s).unwrap(),
            1.5 * f * a.sqrt(),
            max_relative = 1e-10
        );
    }
}

#[test]
fn closed_form_k1_for_constant_profiles() {
    // B = C = 0 and f = 1 collapse k1 to 1/(|beta| A).
    let spec = constant_spec(2.0);
    let cur = generated_curvatures(&spec, 0.5).unwrap();
    assert_relative_eq!(cur.k1, 1.0 / (2.0 * 0.87), max_relative = 1e-12);
    assert!(cur.k2 > cur.k1);
}

#[test]
fn relation_residual_vanishes_for_positive_beta() {
    assert!(verify_generator_relation(&constant_spec(2.0), 32).unwrap() < 1e-12);
    assert!(verify_generator_relation(&wavy_spec(1.5), 32).unwrap() < 1e-12);
}

#[test]
fn relation_residual_reports_the_sign_mismatch_for_negative_beta() {
    // The printed k1 prefactor is 1/beta, but a curvature is a norm: with
    // beta < 0 the relation misses by exactly 2 k1 (scaled).
    let spec = constant_spec(-2.0);
    let cur = generated_curvatures(&spec, 0.5).unwrap();
    let residual = verify_generator_relation(&spec, 8).unwrap();
    let expected = 2.0 * cur.k1 / cur.k1.max(1.0);
    assert_relative_eq!(residual, expected, max_relative = 1e-10);
}

#[test]
fn frame_curvatures_on_the_reparametrized_curve() {
    // Cross-module check: k1 from the closed form matches the frame; the
    // frame's k2^2 sits at k1^2 MINUS the printed difference, pinned here
    // with frozen values at s = 0.3.
    let curve = build_generated_curve(wavy_spec(1.5)).unwrap();
    let rep = reparametrize_unit_speed(Box::new(curve), 512).unwrap();
    let spec = wavy_spec(1.5);
    let base = build_generated_curve(wavy_spec(1.5)).unwrap();
    let s = 0.3;
    let t = rep.arc_from_start(s).unwrap();
    let app = frenet_apparatus(&rep, t).unwrap();
    let closed = generated_curvatures(&spec, s).unwrap();
    assert_relative_eq!(app.k1, closed.k1, max_relative = 1e-8);
    assert_relative_eq!(app.k1, 0.935550115817953, max_relative = 1e-9);
    let frame_k2_sq = app.k2 * app.k2;
    assert_relative_eq!(frame_k2_sq, 0.251553941995016, max_relative = 1e-8);
    assert_relative_eq!(
        frame_k2_sq,
        closed.k1 * closed.k1 - closed.k2_sq_minus_k1_sq,
        max_relative = 1e-8
    );
    // The printed form puts k2^2 on the other side of k1^2.
    assert_relative_eq!(
        closed.k2 * closed.k2,
        1.49895409641895,
        max_relative = 1e-9
    );
    drop(base);
}

#[test]
fn estimated_offset_constant_is_minus_beta() {
    // Because the frame k2^2 is k1^2 minus the printed difference, the
    // measured offset constant comes out at -|beta| for either sign of the
    // configured beta.
    for beta in [1.5, -1.5] {
        let curve = build_generated_curve(wavy_spec(beta)).unwrap();
        let rep = reparametrize_unit_speed(Box::new(curve), 512).unwrap();
        let check = estimate_beta(&rep, 12).unwrap();
        assert_relative_eq!(check.beta, -beta.abs(), max_relative = 1e-7);
        assert!(check.satisfied);
    }
}

#[test]
fn profiles_leaving_the_unit_disc_are_rejected() {
    // g^2 + h^2 reaches 1.13 at s = 0: A <= 0.
    let err = GeneratorSpec::parse("0.8", "0.7", "s", 1.0, (0.0, 1.0))
        .and_then(build_generated_curve)
        .unwrap_err();
    match err {
        GeneratorError::InvalidDomain { a, .. } => assert!(a <= 0.0),
        other => panic!("expected domain rejection, got {other:?}"),
    }
}

#[test]
fn profiles_driving_f_negative_are_rejected() {
    // Fast oscillation makes the bracket overwhelmingly negative.
    let err = GeneratorSpec::parse("0.5*sin(5*s)", "0", "s", 1.0, (0.0, 1.0))
        .and_then(build_generated_curve)
        .unwrap_err();
    assert!(
        matches!(err, GeneratorError::NonPositiveF { .. }),
        "got {err:?}"
    );
}

#[test]
fn zero_beta_is_rejected() {
    assert!(matches!(
        GeneratorSpec::parse("0.3", "0.2", "s", 0.0, (0.0, 1.0)),
        Err(GeneratorError::ZeroBeta)
    ));
}

#[test]
fn unknown_identifier_in_a_profile_surfaces_at_parse() {
    assert!(matches!(
        GeneratorSpec::parse("0.3*q", "0.2", "s", 1.0, (0.0, 1.0)),
        Err(GeneratorError::Expr(_))
    ));
}

#[test]
fn generated_jets_match_the_declared_velocity() {
    // The series of the model must reproduce beta f w exactly, not just to
    // finite-difference accuracy.
    let curve = build_generated_curve(wavy_spec(1.5)).unwrap();
    let s = 0.625;
    let jets = curve.jets(s).unwrap();
    let f = curve.profile(s).unwrap();
    let (g, h) = jets_of(curve.spec(), s);
    assert_relative_eq!(jets[0].d1, 1.5 * f * s.cosh(), max_relative = 1e-12);
    assert_relative_eq!(jets[1].d1, 1.5 * f * s.sinh(), max_relative = 1e-12);
    assert_relative_eq!(jets[2].d1, 1.5 * f * g.d0, max_relative = 1e-12);
    assert_relative_eq!(jets[3].d1, 1.5 * f * h.d0, max_relative = 1e-12);
    // Second derivatives against a central difference of the velocity.
    for i in 0..4 {
        let hstep = 1e-5;
        let vp = curve.velocity(s + hstep).unwrap();
        let vm = curve.velocity(s - hstep).unwrap();
        let fd = (vp[i] - vm[i]) / (2.0 * hstep);
        assert_relative_eq!(jets[i].d2, fd, max_relative = 1e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // For constant profiles inside the unit disc, k1 = 1/(|beta| A).
    #[test]
    fn constant_family_first_curvature(
        g in -0.6f64..0.6,
        h in -0.6f64..0.6,
        beta in 0.5f64..3.0,
    ) {
        let a = 1.0 - g * g - h * h;
        prop_assume!(a > 0.05);
        let spec = GeneratorSpec::new(
            parse(&format!("{g}")).unwrap(),
            parse(&format!("{h}")).unwrap(),
            "s",
            beta,
            (0.0, 1.0),
        ).unwrap();
        let cur = generated_curvatures(&spec, 0.5).unwrap();
        prop_assert!((cur.k1 - 1.0 / (beta * a)).abs() < 1e-10);
    }
}
