//! Adaptive Gauss-Kronrod quadrature.
//!
//! Each interval is estimated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule provides the error estimate `|K15 - G7|`, which for
//! smooth integrands overestimates the true error and therefore errs on the
//! side of further subdivision. The worst interval is split first (a heap
//! keyed by the local error estimate) until the summed estimate meets the
//! requested relative tolerance or the subdivision budget runs out.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::fmt;

use crate::real;

/// Abscissae of the 15-point Kronrod rule on `[-1, 1]` (nonnegative half;
/// the even-indexed entries are the embedded Gauss points).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule (for `XGK[1], XGK[3], ...`).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Hard cap on the number of subintervals before giving up.
const MAX_INTERVALS: usize = 1 << 16;

/// Integral estimate with its error bound and the work it took.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    /// Summed `|K15 - G7|` over all final subintervals.
    pub error_estimate: f64,
    pub subdivisions: usize,
}

/// The integrator could not reach the requested tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadError {
    /// Either the subdivision budget was exhausted or the integrand produced
    /// a non-finite value; `value` and `error_estimate` report the state at
    /// the point of failure.
    Failure {
        a: f64,
        b: f64,
        value: f64,
        error_estimate: f64,
    },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::Failure {
                a,
                b,
                value,
                error_estimate,
            } => write!(
                f,
                "quadrature failed on [{a}, {b}]: estimate {value} with error {error_estimate}"
            ),
        }
    }
}

impl core::error::Error for QuadError {}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        if x == 0.0 {
            let fc = f(center);
            kronrod += wk * fc;
            gauss += WG[3] * fc;
        } else {
            let fa = f(center - half * x);
            let fb = f(center + half * x);
            kronrod += wk * (fa + fb);
            if i % 2 == 1 {
                gauss += WG[i / 2] * (fa + fb);
            }
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: real::abs((kronrod - gauss) * half),
    }
}

/// One unadapted K15 estimate over `[a, b]`, for callers that know the
/// interval is already small and smooth (e.g. Newton refinement between two
/// nodes of an arc-length table).
pub(crate) fn single_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    kronrod_panel(f, a, b).value
}

/// Integrates `f` over `[a, b]` to the given relative tolerance.
///
/// Reversed bounds negate the result. The absolute acceptance floor is
/// `rtol` itself, so integrals that are genuinely zero still converge.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rtol: f64,
) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }
    if b < a {
        let mut r = integrate(f, b, a, rtol)?;
        r.value = -r.value;
        return Ok(r);
    }

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let first = kronrod_panel(&mut f, a, b);
    let mut total_value = first.value;
    let mut total_error = first.error;
    heap.push(first);

    loop {
        if !total_value.is_finite() || !total_error.is_finite() {
            return Err(QuadError::Failure {
                a,
                b,
                value: total_value,
                error_estimate: total_error,
            });
        }
        let tolerance = real::max(rtol * real::abs(total_value), rtol);
        if total_error <= tolerance {
            return Ok(QuadResult {
                value: total_value,
                error_estimate: total_error,
                subdivisions: heap.len(),
            });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(QuadError::Failure {
                a,
                b,
                value: total_value,
                error_estimate: total_error,
            });
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval collapsed to machine precision without converging.
            return Err(QuadError::Failure {
                a,
                b,
                value: total_value,
                error_estimate: total_error,
            });
        }
        let left = kronrod_panel(&mut f, worst.a, mid);
        let right = kronrod_panel(&mut f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}
