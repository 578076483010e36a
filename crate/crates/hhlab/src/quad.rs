//! Adaptive quadrature on finite intervals.
//!
//! Each panel is integrated with a 15-point Kronrod rule; the embedded
//! 7-point Gauss rule supplies the local error estimate `|K15 - G7|`. A
//! panel is accepted when its estimate fits the tolerance prorated by panel
//! width, otherwise it is bisected, up to a fixed panel budget. Accepted
//! panels are summed in position order so the result is deterministic
//! regardless of traversal.

use crate::path::{FuncError, FuncSpec, PathSegment};

// Kronrod abscissae for the interval [-1, 1], descending, ending at 0.
// Odd-indexed entries are the embedded Gauss-7 nodes.
#[allow(clippy::excessive_precision)]
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

// Gauss-7 weights, paired with XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

// Kronrod-15 weights, paired with XGK.
#[allow(clippy::excessive_precision)]
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

/// Default absolute tolerance per unit length.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default panel budget (2^14).
pub const DEFAULT_MAX_PANELS: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            tol: DEFAULT_TOL,
            max_panels: DEFAULT_MAX_PANELS,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig {
            tol,
            ..QuadConfig::default()
        }
    }
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Sum of the accepted panels' local error estimates.
    pub error_bound: f64,
    /// Number of accepted panels.
    pub subdivisions: usize,
    /// True when every panel met its prorated tolerance.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("integration interval must satisfy lo < hi, got [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
    #[error("tolerance must be positive, got {tol}")]
    BadTolerance { tol: f64 },
    #[error(transparent)]
    Eval(#[from] FuncError),
}

/// Below this multiple of eps·∫|g| the high/low-rule difference is rounding
/// noise; bisecting such a panel cannot improve it.
const ROUNDOFF_LIMIT: f64 = 100.0 * f64::EPSILON;

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    res_abs: f64,
}

fn gk15<F>(g: &mut F, lo: f64, hi: f64) -> Result<Panel, FuncError>
where
    F: FnMut(f64) -> Result<f64, FuncError>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = g(centre)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut res_abs = WGK[7] * fc.abs();
    for (i, &node) in XGK.iter().enumerate().take(7) {
        let dx = half * node;
        let f1 = g(centre - dx)?;
        let f2 = g(centre + dx)?;
        kronrod += WGK[i] * (f1 + f2);
        res_abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        err: ((kronrod - gauss) * half).abs(),
        res_abs: res_abs * half,
    })
}

/// Integrates `g` over `[lo, hi]`.
///
/// Evaluation errors from `g` abort the integration and carry their
/// location. Running out of panel budget is not an error: the estimate
/// comes back with `converged == false` and the caller decides.
pub fn integrate<F>(
    mut g: F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<IntegralEstimate, QuadError>
where
    F: FnMut(f64) -> Result<f64, FuncError>,
{
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(QuadError::BadInterval { lo, hi });
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(QuadError::BadTolerance { tol: cfg.tol });
    }
    let span = hi - lo;
    let mut stack = vec![gk15(&mut g, lo, hi)?];
    let mut accepted: Vec<Panel> = Vec::new();
    let mut panel_count = 1usize;
    while let Some(panel) = stack.pop() {
        let width = panel.hi - panel.lo;
        let budget = cfg.tol * width / span;
        let at_roundoff = panel.err <= ROUNDOFF_LIMIT * panel.res_abs;
        let splittable = width > span * 1e-14 && panel_count < cfg.max_panels;
        if panel.err <= budget || at_roundoff || !splittable {
            accepted.push(panel);
        } else {
            let mid = 0.5 * (panel.lo + panel.hi);
            panel_count += 1;
            stack.push(gk15(&mut g, mid, panel.hi)?);
            stack.push(gk15(&mut g, panel.lo, mid)?);
        }
    }
    accepted.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    // Neumaier-compensated sum: with many panels of a large integrand the
    // plain sum's rounding alone would eat the caller's tolerance.
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error_bound = 0.0;
    for p in &accepted {
        let t = value + p.value;
        if value.abs() >= p.value.abs() {
            comp += (value - t) + p.value;
        } else {
            comp += (p.value - t) + value;
        }
        value = t;
        error_bound += p.err;
    }
    let value = value + comp;
    Ok(IntegralEstimate {
        value,
        error_bound,
        subdivisions: accepted.len(),
        converged: error_bound <= cfg.tol,
    })
}

/// The normalized integral mean of `f` along the path:
/// `∫₀¹ f(a + t·d) dt`, which equals the path integral of `f` divided by the
/// displacement.
pub fn mean_integral(
    f: &FuncSpec,
    seg: &PathSegment,
    cfg: &QuadConfig,
) -> Result<IntegralEstimate, QuadError> {
    integrate(|t| f.path_eval(seg, t), 0.0, 1.0, cfg)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(
        "closed form undefined for r = {r}: the antiderivative changes form at r = 0 and r = -1"
    )]
    UnsupportedExponent { r: f64 },
}

/// Closed form of `∫₀¹ ((1−t)A + tB)^{1/r} dt`:
///
/// ```text
/// (r/(r+1)) · (B^{(r+1)/r} − A^{(r+1)/r}) / (B − A)    (A ≠ B)
/// A^{1/r}                                              (A = B)
/// ```
///
/// This is the independent oracle the quadrature is tested against; the
/// difference quotient is evaluated through `expm1` so near-equal `A`, `B`
/// do not cancel.
pub fn exact_tight_integral(a: f64, b: f64, r: f64) -> Result<f64, OracleError> {
    if !r.is_finite() || r.abs() < 1e-12 || (r + 1.0).abs() < 1e-12 {
        return Err(OracleError::UnsupportedExponent { r });
    }
    if a == b {
        return Ok((a.ln() / r).exp());
    }
    let k = (r + 1.0) / r;
    // (b^k - a^k)/(b - a) = a^k · expm1(k·ln(b/a)) / (b - a)
    let diff_quot = (k * a.ln()).exp() * (k * ((b - a) / a).ln_1p()).exp_m1() / (b - a);
    Ok(r / (r + 1.0) * diff_quot)
}
