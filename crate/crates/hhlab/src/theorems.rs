//! One verdict operation per inequality under study.
//!
//! Every check compares a quadrature (or closed-form) left side against the
//! stated right side and accounts for tolerances explicitly:
//!
//! ```text
//! tolerance = atol + rtol·|rhs| + Σ contributing quadrature error bounds
//! holds     ⇔ margin ≥ −tolerance          (margin = rhs − lhs)
//! violated  ⇔ margin < −tolerance and |margin| > the quadrature budget
//! ```
//!
//! with `inconclusive` covering the remaining sliver (a nominal violation
//! smaller than the numerical uncertainty). A quadrature that stops at its
//! roundoff floor inflates the tolerance honestly instead of guessing.
//!
//! Two inequalities ship in both their printed and their reconstructed forms
//! (`z4` paper/corrected, corollary `c2-first`); the printed forms are
//! implemented verbatim, misprints included, so the discrepancies can be
//! measured rather than asserted.

use crate::classify::GridSpec;
use crate::means::{geo_mean, log_mean, MeanError};
use crate::path::{make_segment, FuncError, FuncSpec, PathError, PathSegment, SegMode};
use crate::quad::{integrate, mean_integral, IntegralEstimate, QuadConfig, QuadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Full input echo attached to every verdict so any result is reproducible
/// from a report alone. Function specs are echoed in their canonical
/// 17-digit text form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InputEcho {
    pub func: Option<String>,
    pub func_label: Option<String>,
    pub func2: Option<String>,
    pub func2_label: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub phi: Option<f64>,
    pub mode: Option<SegMode>,
    pub d: Option<f64>,
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub variant: Option<String>,
    pub atol: f64,
    pub rtol: f64,
    pub quad_tol: f64,
    pub max_panels: usize,
    pub grid: Option<GridSpec>,
    pub resolution: Option<f64>,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs − lhs; negative means the inequality failed by that much.
    pub margin: f64,
    pub tolerance: f64,
    pub status: Status,
    /// Hypothesis ranges and proof-step validity notes; exposition, not
    /// enforcement.
    pub regime: String,
    pub inputs: InputEcho,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub atol: f64,
    pub rtol: f64,
    pub quad: QuadConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            atol: 1e-9,
            rtol: 1e-9,
            quad: QuadConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Mean(#[from] MeanError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("exponent {name} must be a positive finite real, got {value}")]
    NonPositiveExponent { name: &'static str, value: f64 },
    #[error("check `{check}` requires a second function (--func2)")]
    MissingSecondFunction { check: &'static str },
    #[error("check `{check}` requires an exponent (--r)")]
    MissingExponent { check: &'static str },
}

fn require_positive(name: &'static str, value: f64) -> Result<(), CheckError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(CheckError::NonPositiveExponent { name, value })
    }
}

impl CheckConfig {
    fn echo(&self, f: &FuncSpec, seg: &PathSegment) -> InputEcho {
        InputEcho {
            func: Some(f.canonical_text()),
            func_label: Some(f.label().to_string()),
            a: Some(seg.a()),
            b: Some(seg.b()),
            phi: Some(seg.phi()),
            mode: Some(seg.mode()),
            d: Some(seg.d()),
            atol: self.atol,
            rtol: self.rtol,
            quad_tol: self.quad.tol,
            max_panels: self.quad.max_panels,
            ..InputEcho::default()
        }
    }
}

fn verdict(
    check_id: &str,
    lhs: f64,
    rhs: f64,
    quad_err: f64,
    regime: &str,
    inputs: InputEcho,
    cfg: &CheckConfig,
) -> Verdict {
    let tolerance = cfg.atol + cfg.rtol * rhs.abs() + quad_err;
    let margin = rhs - lhs;
    let status = if margin >= -tolerance {
        Status::Holds
    } else if margin.abs() > quad_err {
        Status::Violated
    } else {
        Status::Inconclusive
    };
    Verdict {
        check_id: check_id.to_string(),
        lhs,
        rhs,
        margin,
        tolerance,
        status,
        regime: regime.to_string(),
        inputs,
    }
}

/// `(fa^r + fb^r)^{1/r}` for positive arguments and `r > 0`, in the log
/// domain so large powers cannot overflow intermediates.
fn power_sum(fa: f64, fb: f64, r: f64) -> f64 {
    let u = r * fa.ln();
    let v = r * fb.ln();
    let m = u.max(v);
    ((m + (u.min(v) - m).exp().ln_1p()) / r).exp()
}

/// Classical two-sided bound on `[a, b]`:
/// midpoint value ≤ integral mean ≤ endpoint average.
pub fn check_hh_classic(
    f: &FuncSpec,
    a: f64,
    b: f64,
    cfg: &CheckConfig,
) -> Result<Vec<Verdict>, CheckError> {
    let seg = make_segment(a, b, 0.0, SegMode::RealProjection)?;
    let est = mean_integral(f, &seg, &cfg.quad)?;
    let mid = f.path_eval(&seg, 0.5)?;
    let (fa, fb) = f.endpoint_values(&seg)?;
    let echo = cfg.echo(f, &seg);
    let regime = "classical interval, phi = 0; hypothesis: convex f";
    Ok(vec![
        verdict(
            "hh-left",
            mid,
            est.value,
            est.error_bound,
            regime,
            echo.clone(),
            cfg,
        ),
        verdict(
            "hh-right",
            est.value,
            0.5 * (fa + fb),
            est.error_bound,
            regime,
            echo,
            cfg,
        ),
    ])
}

/// The six chain terms for a log-convex `f` on `[a, b]` and the five
/// adjacent-pair verdicts between them.
#[derive(Debug, Clone)]
pub struct ChainReport {
    /// midpoint value, exp of the log-integral mean, mean of geometric
    /// pairings, integral mean, logarithmic endpoint mean, arithmetic
    /// endpoint mean.
    pub terms: [f64; 6],
    pub verdicts: Vec<Verdict>,
}

/// Five-link refinement chain between the midpoint value and the endpoint
/// average, valid for log-convex functions on `[a, b]`.
pub fn check_chain_z2(
    f: &FuncSpec,
    a: f64,
    b: f64,
    cfg: &CheckConfig,
) -> Result<ChainReport, CheckError> {
    let seg = make_segment(a, b, 0.0, SegMode::RealProjection)?;
    let t1 = f.path_eval(&seg, 0.5)?;

    let log_est = integrate(|t| f.path_eval(&seg, t).map(f64::ln), 0.0, 1.0, &cfg.quad)?;
    let t2 = log_est.value.exp();
    // First-order propagation through exp.
    let t2_err = t2 * log_est.error_bound;

    let geo_est = integrate(
        |t| {
            let fx = f.path_eval(&seg, t)?;
            let fmirror = f.path_eval(&seg, 1.0 - t)?;
            geo_mean(fx, fmirror).map_err(|e| FuncError::Domain {
                t,
                x: seg.point(t),
                message: e.to_string(),
            })
        },
        0.0,
        1.0,
        &cfg.quad,
    )?;
    let t3 = geo_est.value;

    let mean_est = mean_integral(f, &seg, &cfg.quad)?;
    let t4 = mean_est.value;

    let (fa, fb) = f.endpoint_values(&seg)?;
    let t5 = log_mean(fa, fb)?;
    let t6 = 0.5 * (fa + fb);

    let echo = cfg.echo(f, &seg);
    let regime = "log-convexity refinement chain on [a, b]";
    let links: [(&str, f64, f64, f64); 5] = [
        ("z2-1", t1, t2, t2_err),
        ("z2-2", t2, t3, t2_err + geo_est.error_bound),
        ("z2-3", t3, t4, geo_est.error_bound + mean_est.error_bound),
        ("z2-4", t4, t5, mean_est.error_bound),
        ("z2-5", t5, t6, 0.0),
    ];
    let verdicts = links
        .iter()
        .map(|(id, lhs, rhs, err)| verdict(id, *lhs, *rhs, *err, regime, echo.clone(), cfg))
        .collect();
    Ok(ChainReport {
        terms: [t1, t2, t3, t4, t5, t6],
        verdicts,
    })
}

/// Two-sided bound along an angled path: value at the path midpoint ≤
/// integral mean along the path ≤ average of `f(a)` and `f(b)` at the
/// original endpoints.
pub fn check_z3(
    f: &FuncSpec,
    seg: &PathSegment,
    cfg: &CheckConfig,
) -> Result<Vec<Verdict>, CheckError> {
    let est = mean_integral(f, seg, &cfg.quad)?;
    let mid = f.path_eval(seg, 0.5)?;
    let (fa, fb) = f.endpoint_values(seg)?;
    let echo = cfg.echo(f, seg);
    let regime = "hypothesis: phi-convex f; bounds use f at the original endpoint b";
    Ok(vec![
        verdict(
            "z3-left",
            mid,
            est.value,
            est.error_bound,
            regime,
            echo.clone(),
            cfg,
        ),
        verdict(
            "z3-right",
            est.value,
            0.5 * (fa + fb),
            est.error_bound,
            regime,
            echo,
            cfg,
        ),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z4Variant {
    /// The bound as printed: coefficient `(r/(r+1))^{1/r}`.
    Paper,
    /// The bound the quoted proof chain actually yields once the dropped
    /// outer exponent is restored: coefficient `r/(r+1)`.
    Corrected,
}

impl Z4Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Z4Variant::Paper => "paper",
            Z4Variant::Corrected => "corrected",
        }
    }
}

/// Upper bound on the integral mean of an r-convex `f` by a power sum of its
/// endpoint values, in the printed or the corrected form.
pub fn check_z4(
    f: &FuncSpec,
    seg: &PathSegment,
    r: f64,
    variant: Z4Variant,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckError> {
    require_positive("r", r)?;
    let est = mean_integral(f, seg, &cfg.quad)?;
    let (fa, fb) = f.endpoint_values(seg)?;
    let ps = power_sum(fa, fb, r);
    let (check_id, coeff, regime) = match variant {
        Z4Variant::Paper => (
            "z4-paper",
            ((r / (r + 1.0)).ln() / r).exp(),
            "paper variant, consistent with Jensen for r >= 1; the Minkowski proof step requires 1/r >= 1, i.e. r <= 1",
        ),
        Z4Variant::Corrected => (
            "z4-corrected",
            r / (r + 1.0),
            "restored Minkowski conclusion (coefficient r/(r+1) to the first power); the proof step is valid for 0 < r <= 1",
        ),
    };
    let mut echo = cfg.echo(f, seg);
    echo.r = Some(r);
    echo.variant = Some(variant.as_str().to_string());
    Ok(verdict(
        check_id,
        est.value,
        coeff * ps,
        est.error_bound,
        regime,
        echo,
        cfg,
    ))
}

fn product_integral(
    f: &FuncSpec,
    g: &FuncSpec,
    seg: &PathSegment,
    quad: &QuadConfig,
) -> Result<IntegralEstimate, QuadError> {
    integrate(
        |t| {
            let fv = f.path_eval(seg, t)?;
            let gv = g.path_eval(seg, t)?;
            let prod = fv * gv;
            if !prod.is_finite() {
                return Err(FuncError::Overflow { t, x: seg.point(t) });
            }
            Ok(prod)
        },
        0.0,
        1.0,
        quad,
    )
}

fn echo_pair(
    f: &FuncSpec,
    g: &FuncSpec,
    seg: &PathSegment,
    r: Option<f64>,
    s: Option<f64>,
    cfg: &CheckConfig,
) -> InputEcho {
    let mut echo = cfg.echo(f, seg);
    echo.func2 = Some(g.canonical_text());
    echo.func2_label = Some(g.label().to_string());
    echo.r = r;
    echo.s = s;
    echo
}

/// Sum-form product bound: twice the integral mean of `f·g` against the
/// weighted power sums of the endpoint values.
pub fn check_16(
    f: &FuncSpec,
    g: &FuncSpec,
    seg: &PathSegment,
    r: f64,
    s: f64,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckError> {
    require_positive("r", r)?;
    require_positive("s", s)?;
    let est = product_integral(f, g, seg, &cfg.quad)?;
    let (fa, fb) = f.endpoint_values(seg)?;
    let (ga, gb) = g.endpoint_values(seg)?;
    let ps_f = power_sum(fa, fb, r);
    let ps_g = power_sum(ga, gb, s);
    let rhs = r / (r + 2.0) * ps_f * ps_f + s / (s + 2.0) * ps_g * ps_g;
    Ok(verdict(
        "t16",
        2.0 * est.value,
        rhs,
        2.0 * est.error_bound,
        "hypotheses: phi-r-convex f, phi-s-convex g; the Minkowski steps require 2/r >= 1 and 2/s >= 1, i.e. r, s <= 2",
        echo_pair(f, g, seg, Some(r), Some(s), cfg),
        cfg,
    ))
}

/// Product-form bound on the integral mean of `f·g`, as printed (squared
/// endpoint power sums).
pub fn check_160(
    f: &FuncSpec,
    g: &FuncSpec,
    seg: &PathSegment,
    r: f64,
    s: f64,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckError> {
    require_positive("r", r)?;
    require_positive("s", s)?;
    let est = product_integral(f, g, seg, &cfg.quad)?;
    let (fa, fb) = f.endpoint_values(seg)?;
    let (ga, gb) = g.endpoint_values(seg)?;
    let ps_f = power_sum(fa, fb, r);
    let ps_g = power_sum(ga, gb, s);
    let rhs = (r * s / ((r + 2.0) * (s + 2.0))).sqrt() * ps_f * ps_f * ps_g * ps_g;
    Ok(verdict(
        "t160",
        est.value,
        rhs,
        est.error_bound,
        "product form; hypotheses as the sum form, Minkowski steps require r, s <= 2; not homogeneous under joint rescaling of f and g",
        echo_pair(f, g, seg, Some(r), Some(s), cfg),
        cfg,
    ))
}

/// The corollaries and closing remarks, each a first-class check.
///
/// `*Printed` forms reproduce the text verbatim (including the dropped
/// squares in the first part of corollary 2, which the constant-function
/// example falsifies); `C2FirstReconstructed` substitutes `r = s = 1` into
/// the sum-form product bound directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    C1,
    C2FirstPrinted,
    C2FirstReconstructed,
    C2Second,
    C3First,
    C3Second,
    RemarkFirstPrinted,
    RemarkSecond,
}

impl Corollary {
    pub fn id(self) -> &'static str {
        match self {
            Corollary::C1 => "c1",
            Corollary::C2FirstPrinted => "c2-first-printed",
            Corollary::C2FirstReconstructed => "c2-first-reconstructed",
            Corollary::C2Second => "c2-second",
            Corollary::C3First => "c3-first",
            Corollary::C3Second => "c3-second",
            Corollary::RemarkFirstPrinted => "remark-first-printed",
            Corollary::RemarkSecond => "remark-second",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "c1" => Corollary::C1,
            "c2-first-printed" => Corollary::C2FirstPrinted,
            "c2-first-reconstructed" => Corollary::C2FirstReconstructed,
            "c2-second" => Corollary::C2Second,
            "c3-first" => Corollary::C3First,
            "c3-second" => Corollary::C3Second,
            "remark-first-printed" => Corollary::RemarkFirstPrinted,
            "remark-second" => Corollary::RemarkSecond,
            _ => return None,
        })
    }

    fn needs_second_function(self) -> bool {
        matches!(
            self,
            Corollary::C2FirstPrinted | Corollary::C2FirstReconstructed | Corollary::C2Second
        )
    }

    fn needs_exponent(self) -> bool {
        matches!(self, Corollary::C3First | Corollary::C3Second)
    }
}

pub fn check_corollary(
    which: Corollary,
    f: &FuncSpec,
    g: Option<&FuncSpec>,
    seg: &PathSegment,
    r: Option<f64>,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckError> {
    if which.needs_second_function() && g.is_none() {
        return Err(CheckError::MissingSecondFunction { check: which.id() });
    }
    if which.needs_exponent() && r.is_none() {
        return Err(CheckError::MissingExponent { check: which.id() });
    }
    let (fa, fb) = f.endpoint_values(seg)?;
    match which {
        Corollary::C1 => {
            let est = mean_integral(f, seg, &cfg.quad)?;
            Ok(verdict(
                which.id(),
                est.value,
                0.5 * (fa + fb),
                est.error_bound,
                "r = 1 reduction; coincides with the arithmetic endpoint bound",
                cfg.echo(f, seg),
                cfg,
            ))
        }
        Corollary::C2FirstPrinted | Corollary::C2FirstReconstructed | Corollary::C2Second => {
            let g = g.expect("checked above");
            let est = product_integral(f, g, seg, &cfg.quad)?;
            let (ga, gb) = g.endpoint_values(seg)?;
            let sum_f = fa + fb;
            let sum_g = ga + gb;
            let (rhs, regime) = match which {
                Corollary::C2FirstPrinted => (
                    (sum_f + sum_g) / 6.0,
                    "printed form: the squares of the r = s = 1 reduction are dropped; falsified by constants",
                ),
                Corollary::C2FirstReconstructed => (
                    (sum_f * sum_f + sum_g * sum_g) / 6.0,
                    "r = s = 1 substituted into the sum-form product bound",
                ),
                _ => (
                    sum_f * sum_f * sum_g * sum_g / 3.0,
                    "printed form; agrees with the r = s = 1 substitution into the product-form bound",
                ),
            };
            Ok(verdict(
                which.id(),
                est.value,
                rhs,
                est.error_bound,
                regime,
                echo_pair(f, g, seg, None, None, cfg),
                cfg,
            ))
        }
        Corollary::C3First | Corollary::C3Second => {
            let r = r.expect("checked above");
            require_positive("r", r)?;
            let est = product_integral(f, f, seg, &cfg.quad)?;
            let ps = power_sum(fa, fb, r);
            let ps2 = ps * ps;
            let (rhs, regime) = match which {
                Corollary::C3First => (
                    r / (r + 2.0) * ps2,
                    "s = r, g = f reduction of the sum-form bound",
                ),
                _ => (
                    r / (r + 2.0) * ps2 * ps2,
                    "s = r, g = f reduction of the product-form bound; endpoint exponent doubles",
                ),
            };
            let mut echo = cfg.echo(f, seg);
            echo.r = Some(r);
            Ok(verdict(
                which.id(),
                est.value,
                rhs,
                est.error_bound,
                regime,
                echo,
                cfg,
            ))
        }
        Corollary::RemarkFirstPrinted | Corollary::RemarkSecond => {
            let est = mean_integral(f, seg, &cfg.quad)?;
            let sum_f = fa + fb;
            let (rhs, regime) = match which {
                Corollary::RemarkFirstPrinted => (
                    (sum_f + 2.0) / 6.0,
                    "g = 1 in the printed first part of corollary 2; inherits its dropped squares",
                ),
                _ => (
                    4.0 * sum_f * sum_f / 3.0,
                    "g = 1 in the second part of corollary 2",
                ),
            };
            Ok(verdict(
                which.id(),
                est.value,
                rhs,
                est.error_bound,
                regime,
                cfg.echo(f, seg),
                cfg,
            ))
        }
    }
}

/// Every named inequality reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    Hh,
    Z3,
    Z4(Z4Variant),
    T16,
    T160,
    Corollary(Corollary),
}

impl TheoremId {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "hh" => TheoremId::Hh,
            "z3" => TheoremId::Z3,
            "z4" => TheoremId::Z4(Z4Variant::Paper),
            "z4-corrected" => TheoremId::Z4(Z4Variant::Corrected),
            "t16" => TheoremId::T16,
            "t160" => TheoremId::T160,
            other => TheoremId::Corollary(Corollary::parse(other)?),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Hh => "hh",
            TheoremId::Z3 => "z3",
            TheoremId::Z4(Z4Variant::Paper) => "z4",
            TheoremId::Z4(Z4Variant::Corrected) => "z4-corrected",
            TheoremId::T16 => "t16",
            TheoremId::T160 => "t160",
            TheoremId::Corollary(c) => c.id(),
        }
    }

    /// Maps a verdict's `check_id` back to the theorem that produced it.
    pub fn from_check_id(check_id: &str) -> Option<Self> {
        Some(match check_id {
            "hh-left" | "hh-right" => TheoremId::Hh,
            "z3-left" | "z3-right" => TheoremId::Z3,
            "z4-paper" => TheoremId::Z4(Z4Variant::Paper),
            other => TheoremId::parse(other)?,
        })
    }

    pub fn all() -> &'static [&'static str] {
        &[
            "hh",
            "z3",
            "z4",
            "z4-corrected",
            "t16",
            "t160",
            "c1",
            "c2-first-printed",
            "c2-first-reconstructed",
            "c2-second",
            "c3-first",
            "c3-second",
            "remark-first-printed",
            "remark-second",
        ]
    }

    pub fn needs_second_function(self) -> bool {
        matches!(self, TheoremId::T16 | TheoremId::T160)
            || matches!(self, TheoremId::Corollary(c) if c.needs_second_function())
    }

    pub fn needs_r(self) -> bool {
        matches!(self, TheoremId::Z4(_) | TheoremId::T16 | TheoremId::T160)
            || matches!(self, TheoremId::Corollary(c) if c.needs_exponent())
    }

    pub fn needs_s(self) -> bool {
        matches!(self, TheoremId::T16 | TheoremId::T160)
    }
}

/// Dispatches one theorem check. `r`/`s`/`g` are validated per theorem.
pub fn run_theorem(
    id: TheoremId,
    f: &FuncSpec,
    g: Option<&FuncSpec>,
    seg: &PathSegment,
    r: Option<f64>,
    s: Option<f64>,
    cfg: &CheckConfig,
) -> Result<Vec<Verdict>, CheckError> {
    let need_r = |name| r.ok_or(CheckError::MissingExponent { check: name });
    match id {
        TheoremId::Hh => check_hh_classic(f, seg.a(), seg.b(), cfg),
        TheoremId::Z3 => check_z3(f, seg, cfg),
        TheoremId::Z4(variant) => Ok(vec![check_z4(f, seg, need_r("z4")?, variant, cfg)?]),
        TheoremId::T16 => {
            let g = g.ok_or(CheckError::MissingSecondFunction { check: "t16" })?;
            let s = s.ok_or(CheckError::MissingExponent { check: "t16 (--s)" })?;
            Ok(vec![check_16(f, g, seg, need_r("t16")?, s, cfg)?])
        }
        TheoremId::T160 => {
            let g = g.ok_or(CheckError::MissingSecondFunction { check: "t160" })?;
            let s = s.ok_or(CheckError::MissingExponent {
                check: "t160 (--s)",
            })?;
            Ok(vec![check_160(f, g, seg, need_r("t160")?, s, cfg)?])
        }
        TheoremId::Corollary(which) => Ok(vec![check_corollary(which, f, g, seg, r, cfg)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, FRAC_PI_3};

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    fn seg01() -> PathSegment {
        make_segment(0.0, 1.0, 0.0, SegMode::RealProjection).unwrap()
    }

    fn constant_one() -> FuncSpec {
        FuncSpec::parse("expr:1").unwrap()
    }

    #[test]
    fn hh_on_shifted_square() {
        let f = FuncSpec::parse("expr:x^2 + 1").unwrap();
        let vs = check_hh_classic(&f, 0.0, 1.0, &cfg()).unwrap();
        assert_eq!(vs.len(), 2);
        assert_relative_eq!(vs[0].lhs, 1.25, max_relative = 1e-12);
        assert_relative_eq!(vs[0].rhs, 4.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(vs[1].rhs, 1.5, max_relative = 1e-12);
        assert!(vs.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn hh_on_exponential() {
        let f = FuncSpec::exp_affine(1.0, 0.0).unwrap();
        let vs = check_hh_classic(&f, 0.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(vs[0].lhs, E.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(vs[0].rhs, E - 1.0, max_relative = 1e-12);
        assert_relative_eq!(vs[1].rhs, (1.0 + E) / 2.0, max_relative = 1e-12);
        assert!(vs.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn hh_on_constant_is_tight() {
        let f = FuncSpec::parse("expr:4.5").unwrap();
        let vs = check_hh_classic(&f, 0.0, 2.0, &cfg()).unwrap();
        for v in vs {
            assert!(v.margin.abs() <= v.tolerance);
            assert_eq!(v.status, Status::Holds);
        }
    }

    #[test]
    fn chain_on_exp_affine_one() {
        let f = FuncSpec::exp_affine(1.0, 0.0).unwrap();
        let rep = check_chain_z2(&f, 0.0, 1.0, &cfg()).unwrap();
        let sqrt_e = E.sqrt();
        let expected = [sqrt_e, sqrt_e, sqrt_e, E - 1.0, E - 1.0, (1.0 + E) / 2.0];
        for (term, want) in rep.terms.iter().zip(expected) {
            assert_relative_eq!(*term, want, max_relative = 1e-10);
        }
        assert_eq!(rep.verdicts.len(), 5);
        assert!(rep.verdicts.iter().all(|v| v.status == Status::Holds));
        // Links 1, 2 and 4 are exact equalities for this function.
        for idx in [0, 1, 3] {
            assert!(rep.verdicts[idx].margin.abs() <= rep.verdicts[idx].tolerance);
        }
    }

    #[test]
    fn chain_on_constant_is_flat() {
        let f = FuncSpec::parse("expr:2").unwrap();
        let rep = check_chain_z2(&f, 0.0, 1.0, &cfg()).unwrap();
        for term in rep.terms {
            assert_relative_eq!(term, 2.0, max_relative = 1e-12);
        }
        assert!(rep.verdicts.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn chain_on_exp_affine_two() {
        let f = FuncSpec::exp_affine(2.0, 0.0).unwrap();
        let rep = check_chain_z2(&f, 0.0, 1.0, &cfg()).unwrap();
        let e2 = E * E;
        assert_relative_eq!(rep.terms[0], E, max_relative = 1e-10);
        assert_relative_eq!(rep.terms[3], (e2 - 1.0) / 2.0, max_relative = 1e-10);
        assert_relative_eq!(rep.terms[4], (e2 - 1.0) / 2.0, max_relative = 1e-10);
        assert_relative_eq!(rep.terms[5], (1.0 + e2) / 2.0, max_relative = 1e-10);
        assert!(rep.verdicts.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn z3_on_square_classical() {
        let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
        let vs = check_z3(&f, &seg01(), &cfg()).unwrap();
        assert_relative_eq!(vs[0].lhs, 2.25, max_relative = 1e-12);
        assert_relative_eq!(vs[0].rhs, 7.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(vs[1].rhs, 2.5, max_relative = 1e-12);
        assert!(vs.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn z3_angled_path_uses_original_endpoint() {
        // d = 1 on [0, 2] at phi = pi/3; the right bound reads f(2) = 9.
        let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
        let seg = make_segment(0.0, 2.0, FRAC_PI_3, SegMode::RealProjection).unwrap();
        let vs = check_z3(&f, &seg, &cfg()).unwrap();
        assert_relative_eq!(vs[0].lhs, 2.25, max_relative = 1e-12);
        assert_relative_eq!(vs[0].rhs, 7.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(vs[1].rhs, 5.0, max_relative = 1e-12);
        assert!(vs.iter().all(|v| v.status == Status::Holds));
    }

    #[test]
    fn z3_on_constant_is_tight() {
        let f = FuncSpec::parse("expr:3").unwrap();
        let vs = check_z3(&f, &seg01(), &cfg()).unwrap();
        for v in vs {
            assert!(v.margin.abs() <= v.tolerance);
            assert_eq!(v.status, Status::Holds);
        }
    }

    #[test]
    fn z4_paper_holds_at_r_two() {
        let f = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
        let v = check_z4(&f, &seg01(), 2.0, Z4Variant::Paper, &cfg()).unwrap();
        assert_relative_eq!(
            v.lhs,
            2.0 / 3.0 * (2.0 * 2f64.sqrt() - 1.0),
            max_relative = 1e-10
        );
        assert_relative_eq!(v.rhs, 2f64.sqrt(), max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn z4_paper_is_equality_at_r_one() {
        let f = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        let v = check_z4(&f, &seg01(), 1.0, Z4Variant::Paper, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 1.5, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 1.5, max_relative = 1e-12);
        assert!(v.margin.abs() <= v.tolerance);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn z4_paper_fails_below_r_one() {
        let f = FuncSpec::tight(1.0, 2.0, 0.5).unwrap();
        let v = check_z4(&f, &seg01(), 0.5, Z4Variant::Paper, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 7.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 1.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Violated);
        assert_relative_eq!(v.margin, 1.0 - 7.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn z4_corrected_recovers_the_bound() {
        let f = FuncSpec::tight(1.0, 2.0, 0.5).unwrap();
        let v = check_z4(&f, &seg01(), 0.5, Z4Variant::Corrected, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 7.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn z4_rejects_nonpositive_r() {
        let f = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        assert!(matches!(
            check_z4(&f, &seg01(), 0.0, Z4Variant::Paper, &cfg()),
            Err(CheckError::NonPositiveExponent { .. })
        ));
    }

    #[test]
    fn t16_is_equality_for_matched_tight_pair() {
        let f = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
        let v = check_16(&f, &f, &seg01(), 2.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 3.0, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 3.0, max_relative = 1e-12);
        assert!(v.margin.abs() <= v.tolerance);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn t16_on_constants() {
        let one = constant_one();
        let v = check_16(&one, &one, &seg01(), 1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 2.0, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 8.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn t16_mixed_pair() {
        let f = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        let g = constant_one();
        let v = check_16(&f, &g, &seg01(), 1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 3.0, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 13.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn t160_on_matched_tight_pair() {
        let f = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
        let v = check_160(&f, &f, &seg01(), 2.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 1.5, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 4.5, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn t160_on_constants() {
        let one = constant_one();
        let v = check_160(&one, &one, &seg01(), 1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 1.0, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 16.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn t160_mixed_pair() {
        let f = FuncSpec::tight(1.0, 4.0, 1.0).unwrap();
        let g = constant_one();
        let v = check_160(&f, &g, &seg01(), 1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 2.5, max_relative = 1e-10);
        assert_relative_eq!(v.rhs, 100.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn c1_is_equality_on_affine_tight() {
        let f = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        let v = check_corollary(Corollary::C1, &f, None, &seg01(), None, &cfg()).unwrap();
        assert_relative_eq!(v.lhs, 1.5, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 1.5, max_relative = 1e-12);
        assert!(v.margin.abs() <= v.tolerance);
    }

    #[test]
    fn c1_matches_z4_paper_at_r_one() {
        let f = FuncSpec::parse("expr:exp(x) + 0.5").unwrap();
        let c1 = check_corollary(Corollary::C1, &f, None, &seg01(), None, &cfg()).unwrap();
        let z4 = check_z4(&f, &seg01(), 1.0, Z4Variant::Paper, &cfg()).unwrap();
        assert_relative_eq!(c1.rhs, z4.rhs, max_relative = 1e-12);
    }

    #[test]
    fn c2_first_printed_fails_on_constants() {
        let one = constant_one();
        let v = check_corollary(
            Corollary::C2FirstPrinted,
            &one,
            Some(&one),
            &seg01(),
            None,
            &cfg(),
        )
        .unwrap();
        assert_relative_eq!(v.lhs, 1.0, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 2.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Violated);
    }

    #[test]
    fn c2_first_reconstructed_holds_on_constants() {
        let one = constant_one();
        let v = check_corollary(
            Corollary::C2FirstReconstructed,
            &one,
            Some(&one),
            &seg01(),
            None,
            &cfg(),
        )
        .unwrap();
        assert_relative_eq!(v.rhs, 4.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn c2_second_matches_t160_at_unit_exponents() {
        let f = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        let g = FuncSpec::tight(2.0, 3.0, 1.0).unwrap();
        let c2 =
            check_corollary(Corollary::C2Second, &f, Some(&g), &seg01(), None, &cfg()).unwrap();
        let t = check_160(&f, &g, &seg01(), 1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(c2.rhs, t.rhs, max_relative = 1e-12);
        assert_relative_eq!(c2.lhs, t.lhs, max_relative = 1e-12);
    }

    #[test]
    fn c3_reductions_match_their_parents() {
        let f = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
        let first =
            check_corollary(Corollary::C3First, &f, None, &seg01(), Some(2.0), &cfg()).unwrap();
        let t16 = check_16(&f, &f, &seg01(), 2.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(2.0 * first.lhs, t16.lhs, max_relative = 1e-12);
        assert_relative_eq!(2.0 * first.rhs, t16.rhs, max_relative = 1e-12);

        let second =
            check_corollary(Corollary::C3Second, &f, None, &seg01(), Some(2.0), &cfg()).unwrap();
        let t160 = check_160(&f, &f, &seg01(), 2.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(second.rhs, t160.rhs, max_relative = 1e-12);
    }

    #[test]
    fn remark_first_printed_fails_on_constants() {
        let one = constant_one();
        let v = check_corollary(
            Corollary::RemarkFirstPrinted,
            &one,
            None,
            &seg01(),
            None,
            &cfg(),
        )
        .unwrap();
        assert_relative_eq!(v.lhs, 1.0, max_relative = 1e-12);
        assert_relative_eq!(v.rhs, 4.0 / 6.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Violated);
    }

    #[test]
    fn remark_second_holds_on_constants() {
        let one = constant_one();
        let v =
            check_corollary(Corollary::RemarkSecond, &one, None, &seg01(), None, &cfg()).unwrap();
        assert_relative_eq!(v.rhs, 16.0 / 3.0, max_relative = 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn missing_arguments_are_reported() {
        let f = constant_one();
        assert!(matches!(
            check_corollary(Corollary::C2FirstPrinted, &f, None, &seg01(), None, &cfg()),
            Err(CheckError::MissingSecondFunction { .. })
        ));
        assert!(matches!(
            check_corollary(Corollary::C3First, &f, None, &seg01(), None, &cfg()),
            Err(CheckError::MissingExponent { .. })
        ));
        assert!(matches!(
            run_theorem(
                TheoremId::T16,
                &f,
                Some(&f),
                &seg01(),
                None,
                Some(1.0),
                &cfg()
            ),
            Err(CheckError::MissingExponent { .. })
        ));
    }

    #[test]
    fn theorem_id_round_trips() {
        for id in TheoremId::all() {
            let parsed = TheoremId::parse(id).unwrap();
            assert_eq!(parsed.as_str(), *id);
        }
        assert_eq!(TheoremId::parse("z5"), None);
        assert_eq!(TheoremId::from_check_id("hh-left"), Some(TheoremId::Hh));
        assert_eq!(
            TheoremId::from_check_id("z4-paper"),
            Some(TheoremId::Z4(Z4Variant::Paper))
        );
    }

    #[test]
    fn z3_at_phi_zero_matches_hh() {
        let f = FuncSpec::parse("expr:exp(x) + 1").unwrap();
        let hh = check_hh_classic(&f, 0.25, 1.75, &cfg()).unwrap();
        let seg = make_segment(0.25, 1.75, 0.0, SegMode::RealProjection).unwrap();
        let z3 = check_z3(&f, &seg, &cfg()).unwrap();
        assert_relative_eq!(hh[1].lhs, z3[1].lhs, max_relative = 1e-12);
        assert_relative_eq!(hh[1].rhs, z3[1].rhs, max_relative = 1e-12);
        assert_relative_eq!(hh[0].lhs, z3[0].lhs, max_relative = 1e-12);
    }
}
