//! Curve models and arc-length machinery.
//!
//! A [`CurveModel`] hands out the full coefficient series of its four
//! components about any admissible parameter value; everything else (values,
//! velocities, public jets) derives from that. Three models live here:
//!
//! * [`ParsedCurve`]: components given as expressions in one variable,
//! * [`MateCurve`]: a curve displaced along the principal normal of a base
//!   curve by a constant offset (the raw, not yet unit-speed, partner),
//! * [`ReparamCurve`]: a base curve traded for its arc-length
//!   parametrization, backed by a cumulative length table with Newton
//!   refinement and an exact series-level inversion of the parameter map.
//!
//! The generated-curve model lives in [`crate::generator`], next to the
//! formulas it implements.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};
use core::fmt;

use crate::expr::{self, Expr, ExprError};
use crate::jet::{Jet, Series, SERIES_LEN, SERIES_ORDER};
use crate::lorentz::{minkowski_norm_sq, Vec4};
use crate::quad::{self, QuadError};
use crate::real;
use crate::tol;

/// Failure while evaluating or constructing a curve model.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveError {
    /// Parameter outside the declared domain.
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    /// Domain bounds are not an interval of positive length.
    InvalidDomain { lo: f64, hi: f64 },
    /// The tangent is numerically null (or zero), so speed-based work like
    /// arc length or reparametrization cannot proceed.
    NearNullTangent { t: f64, speed: f64 },
    /// A derived curve needed a frame direction of its base (the principal
    /// normal) where the base curvature vanishes.
    DegenerateFrame { t: f64 },
    /// Arc-length integration failed to converge.
    Quadrature(QuadError),
    /// A component expression failed to parse or evaluate.
    Expr(ExprError),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::OutOfDomain { t, lo, hi } => {
                write!(f, "parameter {t} outside domain [{lo}, {hi}]")
            }
            CurveError::InvalidDomain { lo, hi } => {
                write!(f, "invalid domain [{lo}, {hi}]")
            }
            CurveError::NearNullTangent { t, speed } => {
                write!(f, "tangent too close to null at t = {t} (speed {speed})")
            }
            CurveError::DegenerateFrame { t } => {
                write!(f, "base curvature vanishes at t = {t}; normal direction undefined")
            }
            CurveError::Quadrature(e) => write!(f, "{e}"),
            CurveError::Expr(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CurveError {}

impl From<QuadError> for CurveError {
    fn from(e: QuadError) -> Self {
        CurveError::Quadrature(e)
    }
}

impl From<ExprError> for CurveError {
    fn from(e: ExprError) -> Self {
        CurveError::Expr(e)
    }
}

/// A parametrized curve in `E_1^4`.
///
/// Implementations provide [`series`](CurveModel::series); position,
/// velocity, and the public four-derivative jets all derive from it.
pub trait CurveModel {
    /// Parameter interval `[lo, hi]` on which the curve is defined.
    fn domain(&self) -> (f64, f64);

    /// Coefficient series of the four components about `t`.
    fn series(&self, t: f64) -> Result<[Series; 4], CurveError>;

    /// Value and first four derivatives of each component at `t`.
    fn jets(&self, t: f64) -> Result<[Jet; 4], CurveError> {
        let s = self.series(t)?;
        Ok([
            Jet::from_series(s[0]),
            Jet::from_series(s[1]),
            Jet::from_series(s[2]),
            Jet::from_series(s[3]),
        ])
    }

    fn position(&self, t: f64) -> Result<Vec4, CurveError> {
        let s = self.series(t)?;
        Ok(Vec4([s[0].value(), s[1].value(), s[2].value(), s[3].value()]))
    }

    fn velocity(&self, t: f64) -> Result<Vec4, CurveError> {
        let s = self.series(t)?;
        Ok(Vec4([
            s[0].derivative(1),
            s[1].derivative(1),
            s[2].derivative(1),
            s[3].derivative(1),
        ]))
    }
}

/// Checks `t` against a domain, with a relative slack so that values
/// produced by arithmetic on the endpoints still count as inside.
pub(crate) fn check_domain(t: f64, (lo, hi): (f64, f64)) -> Result<(), CurveError> {
    let slack = 1e-9 * real::max(1.0, hi - lo);
    if t < lo - slack || t > hi + slack || !t.is_finite() {
        Err(CurveError::OutOfDomain { t, lo, hi })
    } else {
        Ok(())
    }
}

fn check_interval((lo, hi): (f64, f64)) -> Result<(), CurveError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(CurveError::InvalidDomain { lo, hi })
    }
}

/// Componentwise derivative of a four-component series.
pub(crate) fn deriv4(s: &[Series; 4]) -> [Series; 4] {
    [s[0].deriv(), s[1].deriv(), s[2].deriv(), s[3].deriv()]
}

/// Lorentzian scalar product lifted to series:
/// `-u0*v0 + u1*v1 + u2*v2 + u3*v3` as functions of the parameter.
pub fn dot4_series(u: &[Series; 4], v: &[Series; 4]) -> Series {
    u[1] * v[1] + u[2] * v[2] + u[3] * v[3] - u[0] * v[0]
}

/// A curve whose components are expressions in one variable.
#[derive(Clone, Debug)]
pub struct ParsedCurve {
    components: [Expr; 4],
    var: String,
    domain: (f64, f64),
}

impl ParsedCurve {
    /// Wraps four component expressions. Evaluates them once at the domain
    /// midpoint so that unknown identifiers surface here instead of deep in
    /// later numerics.
    pub fn new(components: [Expr; 4], var: &str, domain: (f64, f64)) -> Result<Self, CurveError> {
        check_interval(domain)?;
        let mid = 0.5 * (domain.0 + domain.1);
        for c in &components {
            expr::eval_series(c, var, mid)?;
        }
        Ok(ParsedCurve {
            components,
            var: String::from(var),
            domain,
        })
    }

    /// Parses four component sources and wraps them.
    pub fn parse(sources: [&str; 4], var: &str, domain: (f64, f64)) -> Result<Self, CurveError> {
        let parsed = [
            expr::parse(sources[0])?,
            expr::parse(sources[1])?,
            expr::parse(sources[2])?,
            expr::parse(sources[3])?,
        ];
        ParsedCurve::new(parsed, var, domain)
    }

    pub fn components(&self) -> &[Expr; 4] {
        &self.components
    }

    pub fn var(&self) -> &str {
        &self.var
    }
}

impl CurveModel for ParsedCurve {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn series(&self, t: f64) -> Result<[Series; 4], CurveError> {
        check_domain(t, self.domain)?;
        Ok([
            expr::eval_series(&self.components[0], &self.var, t)?,
            expr::eval_series(&self.components[1], &self.var, t)?,
            expr::eval_series(&self.components[2], &self.var, t)?,
            expr::eval_series(&self.components[3], &self.var, t)?,
        ])
    }
}

/// The curve `c(t) + beta * N(t)` where `N` is the principal normal of the
/// (unit-speed, timelike) base curve.
///
/// Note the parameter is inherited from the base, so this model is generally
/// not unit-speed itself; wrap it in a [`ReparamCurve`] for frame work.
pub struct MateCurve {
    base: Box<dyn CurveModel>,
    beta: f64,
}

impl MateCurve {
    pub fn new(base: Box<dyn CurveModel>, beta: f64) -> Self {
        MateCurve { base, beta }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn base(&self) -> &dyn CurveModel {
        self.base.as_ref()
    }
}

impl CurveModel for MateCurve {
    fn domain(&self) -> (f64, f64) {
        self.base.domain()
    }

    fn series(&self, t: f64) -> Result<[Series; 4], CurveError> {
        let c = self.base.series(t)?;
        // N = c'' / |c''| for a unit-speed base (then T' = c'' is spacelike).
        let cpp = deriv4(&deriv4(&c));
        let ip = dot4_series(&cpp, &cpp);
        if ip.value() <= tol::CURVATURE_TOL * tol::CURVATURE_TOL {
            return Err(CurveError::DegenerateFrame { t });
        }
        let k1 = ip.sqrt();
        Ok([
            c[0] + (cpp[0] / k1).scale(self.beta),
            c[1] + (cpp[1] / k1).scale(self.beta),
            c[2] + (cpp[2] / k1).scale(self.beta),
            c[3] + (cpp[3] / k1).scale(self.beta),
        ])
    }
}

/// Speed `|c'(t)|` (Minkowski norm of the velocity).
pub fn speed(c: &dyn CurveModel, t: f64) -> Result<f64, CurveError> {
    let v = c.velocity(t)?;
    Ok(real::sqrt(real::abs(minkowski_norm_sq(v))))
}

/// Largest deviation of the speed from one over an even grid, a cheap probe
/// for "is this already unit-speed?".
pub fn max_speed_deviation(c: &dyn CurveModel, samples: usize) -> Result<f64, CurveError> {
    let (lo, hi) = c.domain();
    let n = samples.max(2);
    let mut dev: f64 = 0.0;
    for i in 0..n {
        let t = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
        dev = real::max(dev, real::abs(speed(c, t)? - 1.0));
    }
    Ok(dev)
}

/// Integrates the speed over `[a, b]`, watching for near-null tangents and
/// propagating any evaluation error out of the integrand.
fn integrate_speed(
    c: &dyn CurveModel,
    a: f64,
    b: f64,
    rtol: f64,
) -> Result<f64, CurveError> {
    let inner_error: RefCell<Option<CurveError>> = RefCell::new(None);
    let near_null: Cell<Option<(f64, f64)>> = Cell::new(None);
    let integrand = |t: f64| -> f64 {
        match c.velocity(t) {
            Ok(v) => {
                let sp = real::sqrt(real::abs(minkowski_norm_sq(v)));
                if sp < tol::NEAR_NULL_SPEED && near_null.get().is_none() {
                    near_null.set(Some((t, sp)));
                }
                sp
            }
            Err(e) => {
                let mut slot = inner_error.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                f64::NAN
            }
        }
    };
    let result = quad::integrate(integrand, a, b, rtol);
    if let Some(e) = inner_error.into_inner() {
        return Err(e);
    }
    if let Some((t, sp)) = near_null.take() {
        return Err(CurveError::NearNullTangent { t, speed: sp });
    }
    Ok(result?.value)
}

/// Arc length of the curve between two parameter values.
pub fn arc_length(c: &dyn CurveModel, a: f64, b: f64) -> Result<f64, CurveError> {
    let dom = c.domain();
    check_domain(a, dom)?;
    check_domain(b, dom)?;
    integrate_speed(c, a, b, tol::QUAD_RTOL)
}

/// Default node count for the cumulative arc-length table.
pub const DEFAULT_REPARAM_NODES: usize = 1024;

/// A base curve reparametrized by arc length: domain `[0, L]`, unit speed.
///
/// Construction tabulates cumulative arc length at evenly spaced base
/// parameters. Evaluation inverts the table (bracketed Newton iteration,
/// with a single Kronrod panel refining the length inside one table cell)
/// and then builds the series of the inverse parameter map from the
/// identity `dt/ds = 1 / |c'(t)|`, order by order, so the reparametrized
/// curve hands out derivatives exactly like a directly defined model.
pub struct ReparamCurve {
    base: Box<dyn CurveModel>,
    nodes: Vec<f64>,
    cum: Vec<f64>,
}

impl ReparamCurve {
    pub fn base(&self) -> &dyn CurveModel {
        self.base.as_ref()
    }

    /// Total arc length of the base curve over its domain.
    pub fn total_length(&self) -> f64 {
        *self.cum.last().expect("table is never empty")
    }

    /// Arc length from the start of the base domain to base parameter `t`.
    pub fn arc_from_start(&self, t: f64) -> Result<f64, CurveError> {
        check_domain(t, self.base.domain())?;
        let i = match self.nodes.binary_search_by(|n| n.total_cmp(&t)) {
            Ok(i) => i.min(self.nodes.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.nodes.len() - 2),
        };
        let mut err: Option<CurveError> = None;
        let mut f = |x: f64| match speed_or_record(self.base.as_ref(), x, &mut err) {
            Some(sp) => sp,
            None => f64::NAN,
        };
        let tail = quad::single_panel(&mut f, self.nodes[i], t);
        if let Some(e) = err {
            return Err(e);
        }
        Ok(self.cum[i] + tail)
    }

    /// Base parameter at arc length `s` from the start.
    pub fn base_param_at(&self, s: f64) -> Result<f64, CurveError> {
        let total = self.total_length();
        check_domain(s, (0.0, total))?;
        let s = real::min(real::max(s, 0.0), total);
        // Locate the table cell with cum[i] <= s <= cum[i+1].
        let mut i = self.cum.partition_point(|&c| c < s);
        i = i.saturating_sub(1).min(self.nodes.len() - 2);
        let (mut lo, mut hi) = (self.nodes[i], self.nodes[i + 1]);
        let (slo, shi) = (self.cum[i], self.cum[i + 1]);
        let span = self.base.domain().1 - self.base.domain().0;
        // Linear initial guess inside the cell.
        let mut t = if shi > slo {
            lo + (hi - lo) * (s - slo) / (shi - slo)
        } else {
            0.5 * (lo + hi)
        };
        let mut err: Option<CurveError> = None;
        for _ in 0..60 {
            let mut f = |x: f64| match speed_or_record(self.base.as_ref(), x, &mut err) {
                Some(sp) => sp,
                None => f64::NAN,
            };
            let residual = self.cum[i] + quad::single_panel(&mut f, self.nodes[i], t) - s;
            if let Some(e) = err {
                return Err(e);
            }
            let sp = speed(self.base.as_ref(), t)?;
            if sp < tol::NEAR_NULL_SPEED {
                return Err(CurveError::NearNullTangent { t, speed: sp });
            }
            if residual > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = residual / sp;
            if real::abs(residual) <= 1e-13 * real::max(1.0, total) {
                return Ok(t);
            }
            let mut next = t - step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if real::abs(next - t) <= 1e-15 * real::max(1.0, span) {
                return Ok(next);
            }
            t = next;
        }
        Ok(t)
    }
}

fn speed_or_record(
    c: &dyn CurveModel,
    t: f64,
    err: &mut Option<CurveError>,
) -> Option<f64> {
    match c.velocity(t) {
        Ok(v) => Some(real::sqrt(real::abs(minkowski_norm_sq(v)))),
        Err(e) => {
            if err.is_none() {
                *err = Some(e);
            }
            None
        }
    }
}

impl CurveModel for ReparamCurve {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.total_length())
    }

    fn series(&self, s: f64) -> Result<[Series; 4], CurveError> {
        check_domain(s, self.domain())?;
        let t0 = self.base_param_at(s)?;
        let c = self.base.series(t0)?;
        let v = deriv4(&c);
        let q = dot4_series(&v, &v);
        let qv = q.value();
        if real::abs(qv) < tol::NEAR_NULL_SPEED * tol::NEAR_NULL_SPEED {
            return Err(CurveError::NearNullTangent {
                t: t0,
                speed: real::sqrt(real::abs(qv)),
            });
        }
        let speed_ser = if qv < 0.0 { (-q).sqrt() } else { q.sqrt() };
        let g = speed_ser.recip();
        // Solve dt/ds = g(t(s)) for the coefficient series of t(s) - t0.
        let mut offset = Series([0.0; SERIES_LEN]);
        for k in 0..SERIES_ORDER {
            let u = Series::compose(g, offset);
            offset.0[k + 1] = u.0[k] / (k + 1) as f64;
        }
        Ok([
            Series::compose(c[0], offset),
            Series::compose(c[1], offset),
            Series::compose(c[2], offset),
            Series::compose(c[3], offset),
        ])
    }
}

/// Builds the arc-length reparametrization of `base` with the given table
/// resolution (node intervals; [`DEFAULT_REPARAM_NODES`] is a good default).
pub fn reparametrize_unit_speed(
    base: Box<dyn CurveModel>,
    intervals: usize,
) -> Result<ReparamCurve, CurveError> {
    let (lo, hi) = base.domain();
    check_interval((lo, hi))?;
    let n = intervals.max(8);
    let mut nodes = Vec::with_capacity(n + 1);
    for i in 0..=n {
        nodes.push(lo + (hi - lo) * i as f64 / n as f64);
    }
    // The inverse map needs the speed bounded away from zero; probe the
    // table nodes before spending any quadrature work.
    for &t in &nodes {
        let sp = speed(base.as_ref(), t)?;
        if sp < tol::NEAR_NULL_SPEED {
            return Err(CurveError::NearNullTangent { t, speed: sp });
        }
    }
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    let mut acc = 0.0;
    for i in 0..n {
        acc += integrate_speed(base.as_ref(), nodes[i], nodes[i + 1], tol::QUAD_RTOL)?;
        cum.push(acc);
    }
    Ok(ReparamCurve { base, nodes, cum })
}
