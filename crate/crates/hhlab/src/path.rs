//! Concrete model of the angled path `a + t·e^{iφ}(b − a)` and the library
//! of positive function families evaluated along it.
//!
//! The exponential factor is formally complex; this module realizes it in
//! two real readings:
//!
//! * [`SegMode::RealProjection`] — the effective displacement is
//!   `d = cos(φ)·(b − a)`, so every integral stays on the real line. At
//!   φ = 0 this reduces exactly to the ordinary segment `[a, b]`.
//! * [`SegMode::Parameter`] — the path is treated abstractly through its
//!   parameter: `d = 1` by convention and evaluation happens on t ∈ [0, 1].
//!
//! Either way, endpoint bounds downstream use `f(a)` and `f(b)` at the
//! *original* endpoints, never `f(a + d)`; that is the reading under test.

use crate::expr;
use crate::means::R_ZERO_THRESHOLD;
use std::f64::consts::FRAC_PI_2;

/// cos(φ) at or below this is treated as a collapsed segment.
const DEGENERATE_COS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegMode {
    RealProjection,
    Parameter,
}

impl SegMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SegMode::RealProjection => "real",
            SegMode::Parameter => "param",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "real" => Some(SegMode::RealProjection),
            "param" => Some(SegMode::Parameter),
            _ => None,
        }
    }
}

/// An oriented path from `a` toward `b` at angle `phi`, with its effective
/// displacement `d` precomputed. Construct via [`make_segment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment {
    a: f64,
    b: f64,
    phi: f64,
    mode: SegMode,
    d: f64,
}

impl PathSegment {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn mode(&self) -> SegMode {
        self.mode
    }

    /// Effective displacement: `cos(φ)(b − a)` in real-projection mode, 1 in
    /// parameter mode.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// The path point at parameter `t`.
    pub fn point(&self, t: f64) -> f64 {
        self.a + t * self.d
    }

    /// The realized interval `[a, a + d]` the path sweeps.
    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.a + self.d)
    }

    /// Contraction applied to sub-paths drawn between two interior points,
    /// mirroring how the segment itself was built from `(a, b)`.
    pub fn angle_factor(&self) -> f64 {
        match self.mode {
            SegMode::RealProjection => self.phi.cos(),
            SegMode::Parameter => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PathError {
    #[error("segment endpoints must satisfy a < b, got a = {a}, b = {b}")]
    EndpointsOutOfOrder { a: f64, b: f64 },
    #[error("path angle must lie in [0, pi/2], got {phi}")]
    PhiOutOfRange { phi: f64 },
    #[error("path angle {phi} collapses the segment to a point (cos(phi) ~ 0)")]
    DegenerateSegment { phi: f64 },
}

pub fn make_segment(a: f64, b: f64, phi: f64, mode: SegMode) -> Result<PathSegment, PathError> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(PathError::EndpointsOutOfOrder { a, b });
    }
    if !phi.is_finite() || !(0.0..=FRAC_PI_2).contains(&phi) {
        return Err(PathError::PhiOutOfRange { phi });
    }
    let d = match mode {
        SegMode::RealProjection => {
            let cos = if phi == 0.0 { 1.0 } else { phi.cos() };
            if cos <= DEGENERATE_COS {
                return Err(PathError::DegenerateSegment { phi });
            }
            cos * (b - a)
        }
        SegMode::Parameter => 1.0,
    };
    Ok(PathSegment { a, b, phi, mode, d })
}

/// A positive function usable in the checks: one of three closed-form
/// families, or a parsed expression.
///
/// * `Tight { a, b, r }` — `g(t) = ((1−t)·a + t·b)^{1/r}`, defined on the
///   path parameter itself. Its r-th power is affine along any path, so it
///   attains equality in the r-convexity inequality; this is the closed-form
///   oracle family.
/// * `ExpAffine { alpha, beta }` — `f(x) = exp(αx + β)`, exactly log-convex.
/// * `PowerAffine { p, c, m }` — `f(x) = (c + m·x)^p`, requiring a positive
///   base on the segment.
/// * `Expr` — anything [`expr::parse`] accepts, checked for positivity at
///   every sampled point.
#[derive(Debug, Clone, PartialEq)]
pub enum FuncKind {
    Tight { a: f64, b: f64, r: f64 },
    ExpAffine { alpha: f64, beta: f64 },
    PowerAffine { p: f64, c: f64, m: f64 },
    Expr(expr::Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuncSpec {
    kind: FuncKind,
    label: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuncParseError {
    #[error("unknown function family `{family}`; expected `tight:`, `expaffine:`, `poweraffine:` or `expr:`")]
    UnknownFamily { family: String },
    #[error("`{family}` expects {expected} comma-separated parameters")]
    WrongArity {
        family: &'static str,
        expected: usize,
    },
    #[error("invalid number `{text}` in function spec")]
    BadNumber { text: String },
    #[error("invalid parameters for `{family}`: {reason}")]
    BadParams {
        family: &'static str,
        reason: String,
    },
    #[error(transparent)]
    Expr(#[from] expr::ParseError),
}

/// Evaluation failure, carrying the parameter `t` and the path point `x` at
/// which it occurred.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuncError {
    #[error("function value {value:e} is not strictly positive at t = {t}, x = {x}")]
    NonPositive { t: f64, x: f64, value: f64 },
    #[error("{message} (t = {t}, x = {x})")]
    Domain { t: f64, x: f64, message: String },
    #[error("function value overflowed at t = {t}, x = {x}")]
    Overflow { t: f64, x: f64 },
    #[error("path parameter t must lie in [0, 1], got {t}")]
    ParameterOutOfRange { t: f64 },
}

fn finite(family: &'static str, name: &str, v: f64) -> Result<f64, FuncParseError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(FuncParseError::BadParams {
            family,
            reason: format!("{name} must be finite, got {v}"),
        })
    }
}

impl FuncSpec {
    pub fn tight(a: f64, b: f64, r: f64) -> Result<Self, FuncParseError> {
        finite("tight", "A", a)?;
        finite("tight", "B", b)?;
        finite("tight", "r", r)?;
        if a <= 0.0 || b <= 0.0 {
            return Err(FuncParseError::BadParams {
                family: "tight",
                reason: format!("A and B must be positive, got A = {a}, B = {b}"),
            });
        }
        if r.abs() < R_ZERO_THRESHOLD {
            return Err(FuncParseError::BadParams {
                family: "tight",
                reason: format!("r must be nonzero, got r = {r}"),
            });
        }
        Ok(FuncSpec {
            label: format!("tight:{a},{b},{r}"),
            kind: FuncKind::Tight { a, b, r },
        })
    }

    pub fn exp_affine(alpha: f64, beta: f64) -> Result<Self, FuncParseError> {
        finite("expaffine", "alpha", alpha)?;
        finite("expaffine", "beta", beta)?;
        Ok(FuncSpec {
            label: format!("expaffine:{alpha},{beta}"),
            kind: FuncKind::ExpAffine { alpha, beta },
        })
    }

    pub fn power_affine(p: f64, c: f64, m: f64) -> Result<Self, FuncParseError> {
        finite("poweraffine", "p", p)?;
        finite("poweraffine", "c", c)?;
        finite("poweraffine", "m", m)?;
        Ok(FuncSpec {
            label: format!("poweraffine:{p},{c},{m}"),
            kind: FuncKind::PowerAffine { p, c, m },
        })
    }

    pub fn from_expr(ast: expr::Expr) -> Self {
        FuncSpec {
            label: format!("expr:{ast}"),
            kind: FuncKind::Expr(ast),
        }
    }

    /// Parses the CLI text forms `tight:A,B,r`, `expaffine:alpha,beta`,
    /// `poweraffine:p,c,m` and `expr:<expression>`.
    pub fn parse(text: &str) -> Result<Self, FuncParseError> {
        let (family, rest) = text
            .split_once(':')
            .ok_or_else(|| FuncParseError::UnknownFamily {
                family: text.to_string(),
            })?;
        let nums = |family: &'static str, expected: usize| -> Result<Vec<f64>, FuncParseError> {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != expected {
                return Err(FuncParseError::WrongArity { family, expected });
            }
            parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| FuncParseError::BadNumber {
                            text: p.trim().to_string(),
                        })
                })
                .collect()
        };
        match family {
            "tight" => {
                let v = nums("tight", 3)?;
                FuncSpec::tight(v[0], v[1], v[2])
            }
            "expaffine" => {
                let v = nums("expaffine", 2)?;
                FuncSpec::exp_affine(v[0], v[1])
            }
            "poweraffine" => {
                let v = nums("poweraffine", 3)?;
                FuncSpec::power_affine(v[0], v[1], v[2])
            }
            "expr" => Ok(FuncSpec::from_expr(expr::parse(rest)?)),
            other => Err(FuncParseError::UnknownFamily {
                family: other.to_string(),
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &FuncKind {
        &self.kind
    }

    /// Text form that reconstructs this spec bit-exactly (17 significant
    /// digits on every parameter); used in report echoes.
    pub fn canonical_text(&self) -> String {
        let n = |v: f64| format!("{v:.16e}");
        match &self.kind {
            FuncKind::Tight { a, b, r } => format!("tight:{},{},{}", n(*a), n(*b), n(*r)),
            FuncKind::ExpAffine { alpha, beta } => {
                format!("expaffine:{},{}", n(*alpha), n(*beta))
            }
            FuncKind::PowerAffine { p, c, m } => {
                format!("poweraffine:{},{},{}", n(*p), n(*c), n(*m))
            }
            FuncKind::Expr(ast) => format!("expr:{ast}"),
        }
    }

    /// `f(a + t·d)` for the x-domain families; the t-domain formula directly
    /// for the tight family.
    pub fn path_eval(&self, seg: &PathSegment, t: f64) -> Result<f64, FuncError> {
        if t.is_nan() || !(0.0..=1.0).contains(&t) {
            return Err(FuncError::ParameterOutOfRange { t });
        }
        self.eval_param(seg, t)
    }

    /// Values at the *original* endpoints: `(f(a), f(b))`. For the tight
    /// family these are `(A^{1/r}, B^{1/r})` by construction.
    pub fn endpoint_values(&self, seg: &PathSegment) -> Result<(f64, f64), FuncError> {
        match &self.kind {
            FuncKind::Tight { a, b, r } => {
                let fa = tight_value(*a, *b, *r, 0.0, 0.0, seg.a())?;
                let fb = tight_value(*a, *b, *r, 1.0, 1.0, seg.b())?;
                Ok((fa, fb))
            }
            _ => {
                let fa = self.eval_x(seg.a(), 0.0)?;
                let fb = self.eval_x(seg.b(), 1.0)?;
                Ok((fa, fb))
            }
        }
    }

    /// Evaluates at a point `x` of the realized domain `[a, a + d]`. The
    /// tight family maps `x` back to its parameter `(x − a)/d`.
    pub fn eval_at(&self, seg: &PathSegment, x: f64) -> Result<f64, FuncError> {
        match &self.kind {
            FuncKind::Tight { .. } => {
                let t = (x - seg.a()) / seg.d();
                self.eval_param(seg, t.clamp(0.0, 1.0))
            }
            _ => self.eval_x(x, (x - seg.a()) / seg.d()),
        }
    }

    fn eval_param(&self, seg: &PathSegment, t: f64) -> Result<f64, FuncError> {
        match &self.kind {
            FuncKind::Tight { a, b, r } => tight_value(*a, *b, *r, t, t, seg.point(t)),
            _ => self.eval_x(seg.point(t), t),
        }
    }

    fn eval_x(&self, x: f64, t: f64) -> Result<f64, FuncError> {
        let value = match &self.kind {
            FuncKind::Tight { .. } => unreachable!("tight family evaluates on the parameter"),
            FuncKind::ExpAffine { alpha, beta } => {
                let v = (alpha * x + beta).exp();
                if !v.is_finite() {
                    return Err(FuncError::Overflow { t, x });
                }
                v
            }
            FuncKind::PowerAffine { p, c, m } => {
                let base = c + m * x;
                if base <= 0.0 {
                    return Err(FuncError::Domain {
                        t,
                        x,
                        message: format!("power-affine base c + m*x = {base} is not positive"),
                    });
                }
                let v = base.powf(*p);
                if !v.is_finite() {
                    return Err(FuncError::Overflow { t, x });
                }
                v
            }
            FuncKind::Expr(ast) => match ast.eval(x) {
                Ok(v) => v,
                Err(expr::EvalError::Domain { what, .. }) => {
                    return Err(FuncError::Domain {
                        t,
                        x,
                        message: format!("domain error: {what}"),
                    })
                }
                Err(expr::EvalError::Overflow { .. }) => {
                    return Err(FuncError::Overflow { t, x });
                }
            },
        };
        if value.is_nan() || value <= 0.0 {
            return Err(FuncError::NonPositive { t, x, value });
        }
        Ok(value)
    }
}

/// `((1−t)A + tB)^{1/r}` via the log domain; the convex combination of two
/// positive numbers is always positive, so only overflow can fail.
fn tight_value(a: f64, b: f64, r: f64, t: f64, t_err: f64, x_err: f64) -> Result<f64, FuncError> {
    let w = (1.0 - t) * a + t * b;
    let v = (w.ln() / r).exp();
    if !v.is_finite() || v <= 0.0 {
        return Err(FuncError::Overflow { t: t_err, x: x_err });
    }
    Ok(v)
}
