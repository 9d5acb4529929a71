use mannheim_core::curve::CurveError;
use mannheim_core::expr::ExprError;
use mannheim_core::frenet::FrenetError;
use mannheim_core::generator::GeneratorError;
use mannheim_core::mannheim::MannheimError;
use thiserror::Error;

/// Anything that stops a run before it can produce a verdict. All of these
/// map to exit code 1; a run that completes but fails its verification
/// exits 2 instead.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Curve(#[from] CurveError),
    #[error("{0}")]
    Frenet(#[from] FrenetError),
    #[error("{0}")]
    Mannheim(#[from] MannheimError),
    #[error("{0}")]
    Generator(#[from] GeneratorError),
}

fn expr_name(e: &ExprError) -> &'static str {
    match e {
        ExprError::Syntax { .. } => "Syntax",
        ExprError::UnknownIdentifier { .. } => "UnknownIdentifier",
    }
}

fn curve_name(e: &CurveError) -> &'static str {
    match e {
        CurveError::OutOfDomain { .. } => "OutOfDomain",
        CurveError::InvalidDomain { .. } => "InvalidDomain",
        CurveError::NearNullTangent { .. } => "NearNullTangent",
        CurveError::DegenerateFrame { .. } => "DegenerateFrame",
        CurveError::Quadrature(_) => "QuadratureFailure",
        CurveError::Expr(e) => expr_name(e),
    }
}

fn frenet_name(e: &FrenetError) -> &'static str {
    match e {
        FrenetError::NotUnitSpeed { .. } => "NotUnitSpeed",
        FrenetError::NotTimelike { .. } => "NotTimelike",
        FrenetError::VanishingCurvature { .. } => "VanishingCurvature",
        FrenetError::Curve(c) => curve_name(c),
    }
}

impl CliError {
    /// Short stable identifier for scripting against standard error; the
    /// innermost library error variant wins.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Config(_) => "Config",
            CliError::Io(_) => "Io",
            CliError::Json(_) => "Json",
            CliError::Curve(e) => curve_name(e),
            CliError::Frenet(e) => frenet_name(e),
            CliError::Mannheim(e) => match e {
                MannheimError::DegenerateBeta { .. } => "DegenerateBeta",
                MannheimError::SingularMateSpeed { .. } => "SingularMateSpeed",
                MannheimError::Frenet(f) => frenet_name(f),
                MannheimError::Curve(c) => curve_name(c),
            },
            CliError::Generator(e) => match e {
                GeneratorError::ZeroBeta => "ZeroBeta",
                GeneratorError::InvalidDomain { .. } => "InvalidDomain",
                GeneratorError::NonPositiveF { .. } => "NonPositiveF",
                GeneratorError::NegativeK2Squared { .. } => "NegativeK2Squared",
                GeneratorError::Expr(x) => expr_name(x),
                GeneratorError::Curve(c) => curve_name(c),
            },
        }
    }
}
