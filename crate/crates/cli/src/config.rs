use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Output table format.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// A curve given as four component expressions of one parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    /// Component expressions `(x0, x1, x2, x3)` in the grammar of the
    /// expression engine.
    pub components: [String; 4],
    /// Name of the curve parameter inside the expressions.
    #[serde(default = "default_curve_param")]
    pub param: String,
    /// Parameter interval `[lo, hi]`.
    pub domain: [f64; 2],
}

fn default_curve_param() -> String {
    String::from("t")
}

/// A curve of the parametric family, given by its two profile expressions.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub g: String,
    pub h: String,
    /// Name of the profile parameter inside `g` and `h`.
    #[serde(default = "default_generator_param")]
    pub param: String,
    /// Offset constant of the family; must be nonzero.
    pub beta: f64,
    /// Parameter interval `[lo, hi]`.
    pub domain: [f64; 2],
    /// Checkpoint count for the position quadrature.
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    /// Relative tolerance for the position quadrature.
    #[serde(default = "default_rtol")]
    pub rtol: f64,
}

fn default_generator_param() -> String {
    String::from("s")
}

fn default_nodes() -> usize {
    256
}

fn default_rtol() -> f64 {
    mannheim_core::tol::QUAD_RTOL
}

/// A run configuration file. Every field can also be set (or overridden)
/// by a command-line flag; flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Optional subcommand name recorded in the file. Purely informative:
    /// the actual subcommand comes from the command line, and a mismatch
    /// only produces a warning.
    pub command: Option<String>,
    pub curve: Option<CurveConfig>,
    pub generator: Option<GeneratorConfig>,
    pub samples: Option<usize>,
    /// Offset constant for `mate` and `verify-pair`; estimated from the
    /// curve when absent. For `generate` the constant lives in
    /// `generator.beta`.
    pub beta: Option<f64>,
    pub output: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        // serde_json's message already carries "at line L column C".
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// Flag values that override the file; mirrors the shared CLI flags.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub samples: Option<usize>,
    pub beta: Option<f64>,
    pub output: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// The fully merged settings a pipeline runs with.
#[derive(Clone, Debug)]
pub struct Effective {
    pub curve: Option<CurveConfig>,
    pub generator: Option<GeneratorConfig>,
    pub samples: usize,
    pub beta: Option<f64>,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
}

/// The part of the effective settings echoed into reports. Output routing
/// (format, path) is deliberately left out so that the same computation
/// writes byte-identical reports wherever they are sent.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

pub fn merge(command: &str, file: RunConfig, flags: Overrides) -> Result<Effective, CliError> {
    if let Some(recorded) = &file.command {
        if recorded != command {
            eprintln!(
                "warning: config file records command `{recorded}`, running `{command}`"
            );
        }
    }
    let eff = Effective {
        curve: file.curve,
        generator: file.generator,
        samples: flags.samples.or(file.samples).unwrap_or(64),
        beta: flags.beta.or(file.beta),
        output: flags.output.or(file.output).unwrap_or_default(),
        out: flags.out.or(file.out),
    };
    if eff.samples < 2 {
        return Err(CliError::Config(String::from(
            "samples must be at least 2",
        )));
    }
    match (&eff.curve, &eff.generator) {
        (Some(_), Some(_)) => Err(CliError::Config(String::from(
            "config supplies both `curve` and `generator`; exactly one is allowed",
        ))),
        (None, None) => Err(CliError::Config(format!(
            "`{command}` needs a `{}` section in the config",
            needed_section(command)
        ))),
        (Some(_), None) if needed_section(command) == "generator" => Err(CliError::Config(
            format!("`{command}` works on a `generator` section, not `curve`"),
        )),
        (None, Some(_)) if needed_section(command) == "curve" => Err(CliError::Config(
            format!("`{command}` works on a `curve` section, not `generator`"),
        )),
        _ => Ok(eff),
    }
}

fn needed_section(command: &str) -> &'static str {
    match command {
        "generate" => "generator",
        _ => "curve",
    }
}

impl Effective {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            curve: self.curve.clone(),
            generator: self.generator.clone(),
            samples: self.samples,
            beta: self.beta,
        }
    }
}
