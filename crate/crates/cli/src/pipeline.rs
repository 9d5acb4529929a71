use std::path::Path;

use serde::Serialize;

use mannheim_core::curve::{
    max_speed_deviation, reparametrize_unit_speed, CurveModel, MateCurve, ParsedCurve,
    DEFAULT_REPARAM_NODES,
};
use mannheim_core::frenet::{frenet_apparatus, interior_grid};
use mannheim_core::generator::{
    build_generated_curve, verify_generator_relation, GeneratorSpec,
};
use mannheim_core::lorentz::{
    causal_character, frame_determinant, gram_deviation, minkowski_norm_sq, CausalCharacter,
};
use mannheim_core::mannheim::{estimate_beta, verify_mannheim_pair};
use mannheim_core::tol;

use crate::config::{merge, CurveConfig, Effective, OutputFormat, Overrides, RunConfig};
use crate::emit::{csv_bytes, sci, to_json_bytes, write_report};
use crate::error::CliError;

/// What a completed run concluded. `Falsified` means the computation went
/// through but the property under test does not hold; it maps to exit
/// code 2 so scripts can tell it apart from inputs that could not be
/// processed at all.
pub enum Outcome {
    Verified,
    Falsified,
}

/// Relation tolerance for the end-to-end generated-curve check.
const GENERATOR_RESIDUAL_TOL: f64 = 1e-6;

pub fn execute(
    command: &'static str,
    config_path: Option<&Path>,
    flags: Overrides,
) -> Result<Outcome, CliError> {
    let file = match config_path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let eff = merge(command, file, flags)?;
    match command {
        "frenet" => frenet(&eff),
        "check-mannheim" => check_mannheim(&eff),
        "mate" => mate(&eff),
        "generate" => generate(&eff),
        "verify-pair" => verify_pair(&eff),
        other => unreachable!("unknown command {other}"),
    }
}

/// A report document; the same shape for every command.
#[derive(Serialize)]
struct Document<R: Serialize, S: Serialize> {
    command: &'static str,
    config: crate::config::ConfigEcho,
    samples: Vec<R>,
    summary: S,
}

struct Prepared {
    model: Box<dyn CurveModel>,
    reparametrized: bool,
}

/// Parses the configured curve and brings it to unit speed if it is not
/// already; the frame construction downstream requires an arc-length
/// parameter.
fn prepare_curve(cfg: &CurveConfig) -> Result<Prepared, CliError> {
    let components = [
        cfg.components[0].as_str(),
        cfg.components[1].as_str(),
        cfg.components[2].as_str(),
        cfg.components[3].as_str(),
    ];
    let parsed = ParsedCurve::parse(components, &cfg.param, (cfg.domain[0], cfg.domain[1]))?;
    let deviation = max_speed_deviation(&parsed, 256)?;
    if deviation > tol::UNIT_SPEED_TOL {
        eprintln!(
            "note: curve speed deviates from 1 by up to {deviation:.3e}; reparametrizing by arc length"
        );
        let rep = reparametrize_unit_speed(Box::new(parsed), DEFAULT_REPARAM_NODES)?;
        Ok(Prepared {
            model: Box::new(rep),
            reparametrized: true,
        })
    } else {
        Ok(Prepared {
            model: Box::new(parsed),
            reparametrized: false,
        })
    }
}

fn curve_section(eff: &Effective) -> &CurveConfig {
    eff.curve.as_ref().expect("merge() verified the section")
}

/// Offset constant to use: the configured one, or an estimate from the
/// curvature relation when none was given.
fn resolve_beta(eff: &Effective, model: &dyn CurveModel) -> Result<f64, CliError> {
    match eff.beta {
        Some(beta) => Ok(beta),
        None => {
            let check = estimate_beta(model, eff.samples)?;
            eprintln!(
                "note: no beta given; estimated beta = {:.12e} (spread {:.3e})",
                check.beta, check.beta_spread
            );
            Ok(check.beta)
        }
    }
}

fn emit<R: Serialize, S: Serialize>(
    eff: &Effective,
    doc: &Document<R, S>,
    header: &str,
    csv_rows: Vec<Vec<String>>,
) -> Result<(), CliError> {
    let bytes = match eff.output {
        OutputFormat::Json => to_json_bytes(doc)?,
        OutputFormat::Csv => csv_bytes(header, &csv_rows),
    };
    write_report(eff.out.as_deref(), &bytes)?;
    Ok(())
}

// ---------------------------------------------------------------- frenet

const FRENET_HEADER: &str = "t, x0, x1, x2, x3, T0, T1, T2, T3, N0, N1, N2, N3, B1_0, B1_1, B1_2, B1_3, B2_0, B2_1, B2_2, B2_3, k1, k2, k3, epsilon";

#[derive(Serialize)]
struct FrenetRow {
    t: f64,
    x: [f64; 4],
    tangent: [f64; 4],
    normal: [f64; 4],
    binormal1: [f64; 4],
    binormal2: [f64; 4],
    k1: f64,
    k2: f64,
    k3: f64,
    epsilon: f64,
    gram_deviation: f64,
    determinant: f64,
}

#[derive(Serialize)]
struct FrenetSummary {
    reparametrized: bool,
    max_gram_deviation: f64,
    max_det_deviation: f64,
    min_k1: f64,
    min_k2: f64,
    min_abs_k3: f64,
    frame_verified: bool,
}

fn frenet(eff: &Effective) -> Result<Outcome, CliError> {
    let prepared = prepare_curve(curve_section(eff))?;
    let model = prepared.model.as_ref();
    let grid = interior_grid(model, eff.samples, 0.005);
    let mut rows = Vec::with_capacity(grid.len());
    let mut max_gram: f64 = 0.0;
    let mut max_det: f64 = 0.0;
    let mut min_k1 = f64::INFINITY;
    let mut min_k2 = f64::INFINITY;
    let mut min_abs_k3 = f64::INFINITY;
    for &t in &grid {
        let app = frenet_apparatus(model, t)?;
        let frame = [app.t, app.n, app.b1, app.b2];
        let gram = gram_deviation(&frame);
        let det = frame_determinant(&frame);
        max_gram = max_gram.max(gram);
        max_det = max_det.max((det - 1.0).abs());
        min_k1 = min_k1.min(app.k1);
        min_k2 = min_k2.min(app.k2);
        min_abs_k3 = min_abs_k3.min(app.k3.abs());
        rows.push(FrenetRow {
            t,
            x: model.position(t)?.0,
            tangent: app.t.0,
            normal: app.n.0,
            binormal1: app.b1.0,
            binormal2: app.b2.0,
            k1: app.k1,
            k2: app.k2,
            k3: app.k3,
            epsilon: app.epsilon,
            gram_deviation: gram,
            determinant: det,
        });
    }
    let frame_verified = max_gram <= tol::FRAME_TOL && max_det <= tol::FRAME_TOL;
    let summary = FrenetSummary {
        reparametrized: prepared.reparametrized,
        max_gram_deviation: max_gram,
        max_det_deviation: max_det,
        min_k1,
        min_k2,
        min_abs_k3,
        frame_verified,
    };
    let csv_rows = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::with_capacity(25);
            cells.push(sci(r.t));
            for v in [r.x, r.tangent, r.normal, r.binormal1, r.binormal2] {
                cells.extend(v.iter().map(|&c| sci(c)));
            }
            cells.extend([sci(r.k1), sci(r.k2), sci(r.k3), sci(r.epsilon)]);
            cells
        })
        .collect();
    let doc = Document {
        command: "frenet",
        config: eff.echo(),
        samples: rows,
        summary,
    };
    emit(eff, &doc, FRENET_HEADER, csv_rows)?;
    if frame_verified {
        eprintln!(
            "frenet: {} samples; max Gram deviation {:.3e}, max det deviation {:.3e}; frame verified",
            grid.len(),
            max_gram,
            max_det
        );
        Ok(Outcome::Verified)
    } else {
        eprintln!(
            "frenet: {} samples; max Gram deviation {:.3e}, max det deviation {:.3e}; frame NOT orthonormal within {:.1e}",
            grid.len(),
            max_gram,
            max_det,
            tol::FRAME_TOL
        );
        Ok(Outcome::Falsified)
    }
}

// -------------------------------------------------------- check-mannheim

#[derive(Serialize)]
struct BetaRow {
    t: f64,
    beta: f64,
}

#[derive(Serialize)]
struct CheckSummary {
    beta: f64,
    beta_spread: f64,
    max_residual: f64,
    reparametrized: bool,
    satisfied: bool,
}

fn check_mannheim(eff: &Effective) -> Result<Outcome, CliError> {
    let prepared = prepare_curve(curve_section(eff))?;
    let check = estimate_beta(prepared.model.as_ref(), eff.samples)?;
    let rows: Vec<BetaRow> = check
        .params
        .iter()
        .zip(&check.beta_pointwise)
        .map(|(&t, &beta)| BetaRow { t, beta })
        .collect();
    let csv_rows = rows
        .iter()
        .map(|r| vec![sci(r.t), sci(r.beta)])
        .collect();
    let summary = CheckSummary {
        beta: check.beta,
        beta_spread: check.beta_spread,
        max_residual: check.max_residual,
        reparametrized: prepared.reparametrized,
        satisfied: check.satisfied,
    };
    let doc = Document {
        command: "check-mannheim",
        config: eff.echo(),
        samples: rows,
        summary,
    };
    emit(eff, &doc, "t, beta_pointwise", csv_rows)?;
    if check.satisfied {
        eprintln!(
            "check-mannheim: beta = {:.12e} (spread {:.3e}, max residual {:.3e}); relation holds",
            check.beta, check.beta_spread, check.max_residual
        );
        Ok(Outcome::Verified)
    } else {
        eprintln!(
            "check-mannheim: beta = {:.12e} (spread {:.3e}, max residual {:.3e}); relation FAILS",
            check.beta, check.beta_spread, check.max_residual
        );
        Ok(Outcome::Falsified)
    }
}

// ------------------------------------------------------------------ mate

#[derive(Serialize)]
struct MateRow {
    t: f64,
    x: [f64; 4],
    tangent_norm_sq: f64,
    character: String,
}

#[derive(Serialize)]
struct MateSummary {
    beta: f64,
    reparametrized: bool,
    all_timelike: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_non_timelike: Option<f64>,
}

fn mate(eff: &Effective) -> Result<Outcome, CliError> {
    let prepared = prepare_curve(curve_section(eff))?;
    let grid = interior_grid(prepared.model.as_ref(), eff.samples, 0.005);
    let beta = resolve_beta(eff, prepared.model.as_ref())?;
    let mate = MateCurve::new(prepared.model, beta);
    let mut rows = Vec::with_capacity(grid.len());
    let mut first_non_timelike = None;
    for &t in &grid {
        let x = mate.position(t)?;
        let v = mate.velocity(t)?;
        let character = causal_character(v);
        if !matches!(character, CausalCharacter::Timelike) && first_non_timelike.is_none() {
            first_non_timelike = Some(t);
        }
        rows.push(MateRow {
            t,
            x: x.0,
            tangent_norm_sq: minkowski_norm_sq(v),
            character: character.to_string(),
        });
    }
    let csv_rows = rows
        .iter()
        .map(|r| {
            let mut cells = vec![sci(r.t)];
            cells.extend(r.x.iter().map(|&c| sci(c)));
            cells.push(sci(r.tangent_norm_sq));
            cells.push(r.character.clone());
            cells
        })
        .collect();
    let all_timelike = first_non_timelike.is_none();
    let summary = MateSummary {
        beta,
        reparametrized: prepared.reparametrized,
        all_timelike,
        first_non_timelike,
    };
    let doc = Document {
        command: "mate",
        config: eff.echo(),
        samples: rows,
        summary,
    };
    emit(
        eff,
        &doc,
        "t, x0, x1, x2, x3, tangent_norm_sq, character",
        csv_rows,
    )?;
    match first_non_timelike {
        None => {
            eprintln!(
                "mate: beta = {:.12e}; tangent timelike at all {} samples",
                beta,
                grid.len()
            );
            Ok(Outcome::Verified)
        }
        Some(t) => {
            eprintln!(
                "mate: beta = {beta:.12e}; tangent leaves the timelike cone (first at t = {t:.6})"
            );
            Ok(Outcome::Falsified)
        }
    }
}

// -------------------------------------------------------------- generate

#[derive(Serialize)]
struct GenerateRow {
    s: f64,
    x: [f64; 4],
    f: f64,
    k1: f64,
    k2_sq_minus_k1_sq: f64,
    k2: f64,
}

#[derive(Serialize)]
struct GenerateSummary {
    beta: f64,
    relation_residual: f64,
    relation_verified: bool,
}

fn generate(eff: &Effective) -> Result<Outcome, CliError> {
    let gc = eff
        .generator
        .as_ref()
        .expect("merge() verified the section");
    let beta = eff.beta.unwrap_or(gc.beta);
    let mut spec = GeneratorSpec::parse(
        &gc.g,
        &gc.h,
        &gc.param,
        beta,
        (gc.domain[0], gc.domain[1]),
    )?;
    spec.nodes = gc.nodes.max(8);
    spec.rtol = gc.rtol;
    let curve = build_generated_curve(spec.clone())?;
    let relation_residual = verify_generator_relation(&spec, eff.samples)?;
    let (lo, hi) = spec.domain;
    let n = eff.samples;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let cur = curve.curvatures(s)?;
        rows.push(GenerateRow {
            s,
            x: curve.position(s)?.0,
            f: curve.profile(s)?,
            k1: cur.k1,
            k2_sq_minus_k1_sq: cur.k2_sq_minus_k1_sq,
            k2: cur.k2,
        });
    }
    let csv_rows = rows
        .iter()
        .map(|r| {
            let mut cells = vec![sci(r.s)];
            cells.extend(r.x.iter().map(|&c| sci(c)));
            cells.extend([sci(r.f), sci(r.k1), sci(r.k2)]);
            cells
        })
        .collect();
    let relation_verified = relation_residual <= GENERATOR_RESIDUAL_TOL;
    let summary = GenerateSummary {
        beta,
        relation_residual,
        relation_verified,
    };
    let doc = Document {
        command: "generate",
        config: eff.echo(),
        samples: rows,
        summary,
    };
    emit(eff, &doc, "s, x0, x1, x2, x3, f, k1, k2", csv_rows)?;
    if relation_verified {
        eprintln!("generate: relation residual {relation_residual:.3e}; curvature relation holds");
        Ok(Outcome::Verified)
    } else {
        eprintln!("generate: relation residual {relation_residual:.3e}; curvature relation FAILS");
        Ok(Outcome::Falsified)
    }
}

// ----------------------------------------------------------- verify-pair

#[derive(Serialize)]
struct PairRow {
    t: f64,
    f_prime: f64,
}

#[derive(Serialize)]
struct PairSummary {
    beta: f64,
    reparametrized: bool,
    mate_causal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_non_timelike: Option<f64>,
    max_relation_residual: f64,
    max_n_dot_tstar: Option<f64>,
    max_n_dot_nstar: Option<f64>,
    b2star_alignment: Option<f64>,
    mate_curvature_dev: Option<f64>,
    verified_def31: bool,
    verified_thm33: bool,
}

fn verify_pair(eff: &Effective) -> Result<Outcome, CliError> {
    let prepared = prepare_curve(curve_section(eff))?;
    let beta = resolve_beta(eff, prepared.model.as_ref())?;
    let report = verify_mannheim_pair(prepared.model, beta, eff.samples)?;
    let rows: Vec<PairRow> = report
        .f_prime_samples
        .iter()
        .map(|&(t, f_prime)| PairRow { t, f_prime })
        .collect();
    let csv_rows = rows
        .iter()
        .map(|r| vec![sci(r.t), sci(r.f_prime)])
        .collect();
    let mate_causal = report.mate_causal.to_string();
    let summary = PairSummary {
        beta: report.beta,
        reparametrized: prepared.reparametrized,
        mate_causal: mate_causal.clone(),
        first_non_timelike: report.first_non_timelike,
        max_relation_residual: report.max_relation_residual,
        max_n_dot_tstar: report.max_n_dot_tstar,
        max_n_dot_nstar: report.max_n_dot_nstar,
        b2star_alignment: report.b2star_alignment,
        mate_curvature_dev: report.mate_curvature_dev,
        verified_def31: report.verified_def31,
        verified_thm33: report.verified_thm33,
    };
    let doc = Document {
        command: "verify-pair",
        config: eff.echo(),
        samples: rows,
        summary,
    };
    emit(eff, &doc, "t, f_prime", csv_rows)?;
    if let Some(t) = report.first_non_timelike {
        eprintln!(
            "verify-pair: beta = {:.12e}; mate tangent is {} at t = {:.6}; the pair cannot carry the timelike frame",
            report.beta, mate_causal, t
        );
        return Ok(Outcome::Falsified);
    }
    if report.verified_thm33 {
        eprintln!(
            "verify-pair: beta = {:.12e}; normal-line conditions hold (|<N,T*>| <= {:.3e}, |<N,N*>| <= {:.3e}); third normal aligned within {:.3e}; pair verified",
            report.beta,
            report.max_n_dot_tstar.unwrap_or(f64::NAN),
            report.max_n_dot_nstar.unwrap_or(f64::NAN),
            report.b2star_alignment.unwrap_or(f64::NAN),
        );
        Ok(Outcome::Verified)
    } else {
        eprintln!(
            "verify-pair: beta = {:.12e}; pair NOT verified (|<N,T*>| <= {:.3e}, |<N,N*>| <= {:.3e})",
            report.beta,
            report.max_n_dot_tstar.unwrap_or(f64::NAN),
            report.max_n_dot_nstar.unwrap_or(f64::NAN),
        );
        Ok(Outcome::Falsified)
    }
}
