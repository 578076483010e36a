//! Seeded randomized search for inputs violating a chosen check.
//!
//! Each trial draws function-family parameters, the exponents and the path
//! angle from a stream indexed by `(seed, trial)`, so trials are independent
//! of evaluation order and a run is reproducible bit-for-bit. Violations are
//! shrunk by coordinate descent toward a fixed reference point (halving the
//! distance while the check still fails), which keeps emitted witnesses
//! small enough to verify by hand against the closed-form oracle.

use crate::path::{make_segment, FuncSpec, PathSegment, SegMode};
use crate::theorems::{
    run_theorem, CheckConfig, CheckError, InputEcho, Status, TheoremId, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn new(lo: f64, hi: f64) -> Self {
        Range { lo, hi }
    }

    pub fn fixed(v: f64) -> Self {
        Range { lo: v, hi: v }
    }

    fn contains(&self, v: f64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }

    fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lo, self.hi)
    }

    fn sample_uniform(&self, rng: &mut impl Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..self.hi)
        }
    }

    /// Log-uniform; requires a positive range. Scale parameters live on
    /// ratios, and violations tend to sit at scale extremes.
    fn sample_log_uniform(&self, rng: &mut impl Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo.ln()..self.hi.ln()).exp()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Tight,
    ExpAffine,
    PowerAffine,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Tight => "tight",
            Family::ExpAffine => "expaffine",
            Family::PowerAffine => "poweraffine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tight" => Some(Family::Tight),
            "expaffine" => Some(Family::ExpAffine),
            "poweraffine" => Some(Family::PowerAffine),
            _ => None,
        }
    }
}

/// Search space for the falsifier: parameter ranges per family plus the
/// segment anchors. Scale-like parameters (`A`, `B`, `c`) are drawn
/// log-uniformly, exponents and the angle uniformly.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpace {
    pub families: Vec<Family>,
    pub a: f64,
    pub b: f64,
    pub mode: SegMode,
    pub phi: Range,
    pub r: Range,
    pub s: Range,
    pub tight_a: Range,
    pub tight_b: Range,
    pub alpha: Range,
    pub beta: Range,
    pub p: Range,
    pub c: Range,
    pub m: Range,
}

impl Default for ParamSpace {
    fn default() -> Self {
        ParamSpace {
            families: vec![Family::Tight],
            a: 0.0,
            b: 1.0,
            mode: SegMode::RealProjection,
            phi: Range::fixed(0.0),
            r: Range::new(0.1, 5.0),
            s: Range::new(0.1, 5.0),
            tight_a: Range::new(0.1, 10.0),
            tight_b: Range::new(0.1, 10.0),
            alpha: Range::new(-2.0, 2.0),
            beta: Range::new(-1.0, 1.0),
            p: Range::new(1.0, 4.0),
            c: Range::new(0.1, 10.0),
            m: Range::new(-2.0, 2.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("space line {line} is not a `key = value` pair: `{text}`")]
    BadLine { line: usize, text: String },
    #[error("unknown space key `{key}`")]
    UnknownKey { key: String },
    #[error("invalid value for `{key}`: {reason}")]
    BadValue { key: String, reason: String },
    #[error("invalid space: {reason}")]
    Invalid { reason: String },
}

fn parse_range(key: &str, value: &str) -> Result<Range, SpaceError> {
    let bad = |reason: &str| SpaceError::BadValue {
        key: key.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums = nums.map_err(|_| bad("expected a number or `lo,hi`"))?;
    match nums.as_slice() {
        [v] => Ok(Range::fixed(*v)),
        [lo, hi] if lo <= hi => Ok(Range::new(*lo, *hi)),
        [_, _] => Err(bad("range must satisfy lo <= hi")),
        _ => Err(bad("expected a number or `lo,hi`")),
    }
}

impl ParamSpace {
    /// Parses a `key = value` config file. Keys: `families`, `a`, `b`,
    /// `mode`, `phi`, `r`, `s`, `A`, `B`, `alpha`, `beta`, `p`, `c`, `m`.
    /// Range values are `lo,hi` pairs or a single pinned number. `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self, SpaceError> {
        let mut space = ParamSpace::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| SpaceError::BadLine {
                line: i + 1,
                text: raw.to_string(),
            })?;
            space.set(key.trim(), value.trim())?;
        }
        space.validate()?;
        Ok(space)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SpaceError> {
        let bad = |reason: String| SpaceError::BadValue {
            key: key.to_string(),
            reason,
        };
        match key {
            "families" => {
                let fams: Option<Vec<Family>> =
                    value.split(',').map(str::trim).map(Family::parse).collect();
                self.families = fams.ok_or_else(|| bad(format!("unknown family in `{value}`")))?;
            }
            "a" => self.a = value.parse().map_err(|_| bad("expected a number".into()))?,
            "b" => self.b = value.parse().map_err(|_| bad("expected a number".into()))?,
            "mode" => {
                self.mode =
                    SegMode::parse(value).ok_or_else(|| bad("expected `real` or `param`".into()))?
            }
            "phi" => self.phi = parse_range(key, value)?,
            "r" => self.r = parse_range(key, value)?,
            "s" => self.s = parse_range(key, value)?,
            "A" => self.tight_a = parse_range(key, value)?,
            "B" => self.tight_b = parse_range(key, value)?,
            "alpha" => self.alpha = parse_range(key, value)?,
            "beta" => self.beta = parse_range(key, value)?,
            "p" => self.p = parse_range(key, value)?,
            "c" => self.c = parse_range(key, value)?,
            "m" => self.m = parse_range(key, value)?,
            other => {
                return Err(SpaceError::UnknownKey {
                    key: other.to_string(),
                })
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), SpaceError> {
        let invalid = |reason: &str| SpaceError::Invalid {
            reason: reason.to_string(),
        };
        if self.families.is_empty() {
            return Err(invalid("at least one family is required"));
        }
        if self.a.is_nan() || self.b.is_nan() || self.a >= self.b {
            return Err(invalid("segment anchors must satisfy a < b"));
        }
        if self.phi.lo < 0.0 || self.phi.hi > FRAC_PI_2 {
            return Err(invalid("phi range must lie within [0, pi/2]"));
        }
        for (name, range) in [("A", self.tight_a), ("B", self.tight_b), ("c", self.c)] {
            if range.lo <= 0.0 {
                return Err(invalid(&format!(
                    "{name} is a positive scale parameter; its range must have lo > 0"
                )));
            }
        }
        for (name, range) in [
            ("phi", self.phi),
            ("r", self.r),
            ("s", self.s),
            ("A", self.tight_a),
            ("B", self.tight_b),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("p", self.p),
            ("c", self.c),
            ("m", self.m),
        ] {
            if !(range.lo.is_finite() && range.hi.is_finite() && range.lo <= range.hi) {
                return Err(invalid(&format!(
                    "{name} range is not a finite lo <= hi pair"
                )));
            }
        }
        Ok(())
    }
}

/// A reproducible violation witness. Replaying the echoed inputs through the
/// named check reproduces the margin.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleRecord {
    pub check_id: String,
    pub inputs: InputEcho,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub seed: u64,
    pub trial_index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FalsifySummary {
    pub trials: u64,
    pub violations: u64,
    pub skipped: u64,
    pub emitted: usize,
}

#[derive(Debug, Clone)]
pub struct FalsifyOutcome {
    pub records: Vec<CounterexampleRecord>,
    pub summary: FalsifySummary,
}

/// Keeps report sizes sane when nearly every trial violates.
pub const DEFAULT_MAX_RECORDS: usize = 32;

#[derive(Debug, Clone)]
struct Trial {
    f: FuncSpec,
    g: Option<FuncSpec>,
    seg: PathSegment,
    r: Option<f64>,
    s: Option<f64>,
}

/// Raw parameter vector a trial was built from; the unit the shrinker works
/// on.
#[derive(Debug, Clone, Copy)]
struct TrialParams {
    family_f: Family,
    family_g: Option<Family>,
    phi: f64,
    r: f64,
    s: f64,
    f_params: [f64; 3],
    g_params: [f64; 3],
}

fn mix_seed(seed: u64, trial: u64) -> u64 {
    // splitmix64 over the pair; the per-trial stream must not correlate
    // across neighbouring trial indices.
    let mut z = seed ^ trial.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const EXPONENT_FLOOR: f64 = 1e-6;

fn sample_exponent(range: Range, rng: &mut impl Rng) -> Option<f64> {
    for _ in 0..128 {
        let r = range.sample_uniform(rng);
        if r.abs() >= EXPONENT_FLOOR {
            return Some(r);
        }
    }
    None
}

fn sample_family_params(
    family: Family,
    space: &ParamSpace,
    exponent: f64,
    rng: &mut impl Rng,
) -> Option<[f64; 3]> {
    match family {
        Family::Tight => Some([
            space.tight_a.sample_log_uniform(rng),
            space.tight_b.sample_log_uniform(rng),
            exponent,
        ]),
        Family::ExpAffine => Some([
            space.alpha.sample_uniform(rng),
            space.beta.sample_uniform(rng),
            0.0,
        ]),
        Family::PowerAffine => {
            let p = space.p.sample_uniform(rng);
            let c = space.c.sample_log_uniform(rng);
            // The base must stay positive across the segment; resample the
            // slope rather than wasting the whole trial.
            for _ in 0..128 {
                let m = space.m.sample_uniform(rng);
                if c + m * space.a > 1e-9 && c + m * space.b > 1e-9 {
                    return Some([p, c, m]);
                }
            }
            None
        }
    }
}

fn build_func(family: Family, params: [f64; 3]) -> Option<FuncSpec> {
    match family {
        Family::Tight => FuncSpec::tight(params[0], params[1], params[2]).ok(),
        Family::ExpAffine => FuncSpec::exp_affine(params[0], params[1]).ok(),
        Family::PowerAffine => FuncSpec::power_affine(params[0], params[1], params[2]).ok(),
    }
}

fn build_trial(id: TheoremId, space: &ParamSpace, params: &TrialParams) -> Option<Trial> {
    let seg = make_segment(space.a, space.b, params.phi, space.mode).ok()?;
    let f = build_func(params.family_f, params.f_params)?;
    let g = match params.family_g {
        Some(fam) => Some(build_func(fam, params.g_params)?),
        None => None,
    };
    Some(Trial {
        f,
        g,
        seg,
        r: id.needs_r().then_some(params.r),
        s: id.needs_s().then_some(params.s),
    })
}

fn sample_params(id: TheoremId, space: &ParamSpace, seed: u64, trial: u64) -> Option<TrialParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial));
    let phi = space.phi.sample_uniform(&mut rng);
    let r = sample_exponent(space.r, &mut rng)?;
    let s = sample_exponent(space.s, &mut rng)?;
    let family_f = space.families[rng.gen_range(0..space.families.len())];
    // A tight function's own exponent is bound to the check exponent: that
    // is the boundary case the theorems are about.
    let f_params = sample_family_params(family_f, space, r, &mut rng)?;
    let (family_g, g_params) = if id.needs_second_function() {
        let fam = space.families[rng.gen_range(0..space.families.len())];
        (Some(fam), sample_family_params(fam, space, s, &mut rng)?)
    } else {
        (None, [0.0; 3])
    };
    Some(TrialParams {
        family_f,
        family_g,
        phi,
        r,
        s,
        f_params,
        g_params,
    })
}

/// Runs the check; `Some(verdict)` is the first violated verdict, `None`
/// means the trial holds. Errors bubble to be counted as skips.
fn violated_verdict(
    id: TheoremId,
    trial: &Trial,
    cfg: &CheckConfig,
) -> Result<Option<Verdict>, CheckError> {
    let verdicts = run_theorem(
        id,
        &trial.f,
        trial.g.as_ref(),
        &trial.seg,
        trial.r,
        trial.s,
        cfg,
    )?;
    Ok(verdicts.into_iter().find(|v| v.status == Status::Violated))
}

/// Reference point the shrinker contracts toward (clamped into the declared
/// ranges): unit scales, the canonical small witnesses for exponents.
fn reference(space: &ParamSpace, params: &TrialParams) -> TrialParams {
    let ref_family = |family: Family, exp_ref: f64| -> [f64; 3] {
        match family {
            Family::Tight => [space.tight_a.clamp(1.0), space.tight_b.clamp(2.0), exp_ref],
            Family::ExpAffine => [space.alpha.clamp(1.0), space.beta.clamp(0.0), 0.0],
            Family::PowerAffine => [space.p.clamp(2.0), space.c.clamp(1.0), space.m.clamp(1.0)],
        }
    };
    let r_ref = space.r.clamp(0.5);
    let s_ref = space.s.clamp(0.5);
    TrialParams {
        family_f: params.family_f,
        family_g: params.family_g,
        phi: space.phi.clamp(0.0),
        r: r_ref,
        s: s_ref,
        f_params: ref_family(params.family_f, r_ref),
        g_params: params
            .family_g
            .map(|fam| ref_family(fam, s_ref))
            .unwrap_or([0.0; 3]),
    }
}

fn is_scale_coord(family: Family, idx: usize) -> bool {
    match family {
        Family::Tight => idx < 2,
        Family::ExpAffine => false,
        Family::PowerAffine => idx == 1,
    }
}

fn halve_toward(current: f64, target: f64, log_scale: bool) -> f64 {
    if log_scale && current > 0.0 && target > 0.0 {
        (0.5 * (current.ln() + target.ln())).exp()
    } else {
        0.5 * (current + target)
    }
}

/// Coordinate-descent shrink: repeatedly halve each coordinate's distance to
/// the reference while the check still reports a violation.
fn shrink(
    id: TheoremId,
    space: &ParamSpace,
    cfg: &CheckConfig,
    start: TrialParams,
    mut best: Verdict,
) -> (TrialParams, Verdict) {
    let target = reference(space, &start);
    let mut current = start;
    for _pass in 0..3 {
        let mut changed = false;
        let coords = coord_count(&current);
        for coord in 0..coords {
            if coord_is_aliased(&current, coord) {
                continue;
            }
            for _halving in 0..8 {
                let cur = read_coord(&current, coord);
                let tgt = read_coord(&target, coord);
                let log_scale = coord_is_scale(&current, coord);
                let mut cand_params = current;
                let cand = halve_toward(cur, tgt, log_scale);
                if !cand.is_finite() || cand == cur {
                    break;
                }
                write_coord(&mut cand_params, coord, cand);
                if !coord_valid(space, &cand_params, coord) {
                    break;
                }
                let Some(trial) = build_trial(id, space, &cand_params) else {
                    break;
                };
                match violated_verdict(id, &trial, cfg) {
                    Ok(Some(v)) if v.check_id == best.check_id => {
                        current = cand_params;
                        best = v;
                        changed = true;
                    }
                    _ => break,
                }
            }
        }
        if !changed {
            break;
        }
    }
    (current, best)
}

// Flat coordinate views over TrialParams: phi, r, s, f[0..3], g[0..3].

fn coord_count(p: &TrialParams) -> usize {
    if p.family_g.is_some() {
        9
    } else {
        6
    }
}

fn read_coord(p: &TrialParams, idx: usize) -> f64 {
    match idx {
        0 => p.phi,
        1 => p.r,
        2 => p.s,
        3..=5 => p.f_params[idx - 3],
        _ => p.g_params[idx - 6],
    }
}

fn write_coord(p: &mut TrialParams, idx: usize, v: f64) {
    match idx {
        0 => p.phi = v,
        1 => {
            p.r = v;
            if p.family_f == Family::Tight {
                p.f_params[2] = v;
            }
        }
        2 => {
            p.s = v;
            if p.family_g == Some(Family::Tight) {
                p.g_params[2] = v;
            }
        }
        3..=5 => p.f_params[idx - 3] = v,
        _ => p.g_params[idx - 6] = v,
    }
}

fn coord_is_scale(p: &TrialParams, idx: usize) -> bool {
    match idx {
        3..=5 => is_scale_coord(p.family_f, idx - 3),
        6..=8 => p
            .family_g
            .map(|fam| is_scale_coord(fam, idx - 6))
            .unwrap_or(false),
        _ => false,
    }
}

/// A tight family's exponent slot is an alias of the bound check exponent
/// (coordinates 1 and 2); the shrinker must move those through the check
/// exponent only, never independently.
fn coord_is_aliased(p: &TrialParams, idx: usize) -> bool {
    (idx == 5 && p.family_f == Family::Tight) || (idx == 8 && p.family_g == Some(Family::Tight))
}

fn coord_valid(space: &ParamSpace, p: &TrialParams, idx: usize) -> bool {
    match idx {
        0 => space.phi.contains(p.phi),
        1 => space.r.contains(p.r) && p.r.abs() >= EXPONENT_FLOOR,
        2 => space.s.contains(p.s) && p.s.abs() >= EXPONENT_FLOOR,
        3..=5 => family_params_valid(space, p.family_f, &p.f_params),
        _ => match p.family_g {
            Some(fam) => family_params_valid(space, fam, &p.g_params),
            None => false,
        },
    }
}

fn family_params_valid(space: &ParamSpace, family: Family, params: &[f64; 3]) -> bool {
    match family {
        Family::Tight => {
            space.tight_a.contains(params[0])
                && space.tight_b.contains(params[1])
                && params[0] > 0.0
                && params[1] > 0.0
        }
        Family::ExpAffine => space.alpha.contains(params[0]) && space.beta.contains(params[1]),
        Family::PowerAffine => {
            space.p.contains(params[0])
                && space.c.contains(params[1])
                && space.m.contains(params[2])
                && params[1] + params[2] * space.a > 1e-9
                && params[1] + params[2] * space.b > 1e-9
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FalsifyError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("budget must be at least 1")]
    EmptyBudget,
}

/// Searches `budget` seeded trials for violations of `id`, returning shrunk,
/// reproducible records sorted most-negative margin first.
pub fn falsify(
    id: TheoremId,
    space: &ParamSpace,
    budget: u64,
    seed: u64,
    cfg: &CheckConfig,
    max_records: usize,
) -> Result<FalsifyOutcome, FalsifyError> {
    space.validate()?;
    if budget == 0 {
        return Err(FalsifyError::EmptyBudget);
    }
    let mut summary = FalsifySummary {
        trials: budget,
        ..FalsifySummary::default()
    };
    let mut raw: Vec<(u64, TrialParams, Verdict)> = Vec::new();
    for trial_index in 0..budget {
        let Some(params) = sample_params(id, space, seed, trial_index) else {
            summary.skipped += 1;
            continue;
        };
        let Some(trial) = build_trial(id, space, &params) else {
            summary.skipped += 1;
            continue;
        };
        match violated_verdict(id, &trial, cfg) {
            Ok(Some(v)) => {
                summary.violations += 1;
                raw.push((trial_index, params, v));
            }
            Ok(None) => {}
            Err(_) => summary.skipped += 1,
        }
    }
    // Keep the worst offenders, then shrink only those.
    raw.sort_by(|x, y| x.2.margin.total_cmp(&y.2.margin).then(x.0.cmp(&y.0)));
    raw.truncate(max_records);
    let mut records: Vec<CounterexampleRecord> = raw
        .into_iter()
        .map(|(trial_index, params, verdict)| {
            let (_, v) = shrink(id, space, cfg, params, verdict);
            let mut inputs = v.inputs.clone();
            inputs.seed = Some(seed);
            inputs.budget = Some(budget);
            CounterexampleRecord {
                check_id: v.check_id.clone(),
                inputs,
                lhs: v.lhs,
                rhs: v.rhs,
                margin: v.margin,
                seed,
                trial_index,
            }
        })
        .collect();
    records.sort_by(|x, y| {
        x.margin
            .total_cmp(&y.margin)
            .then(x.trial_index.cmp(&y.trial_index))
    });
    summary.emitted = records.len();
    Ok(FalsifyOutcome { records, summary })
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReplayError {
    #[error("record does not name a known check: `{check_id}`")]
    UnknownCheck { check_id: String },
    #[error("record echo is missing field `{field}`")]
    MissingField { field: &'static str },
    #[error("function echo failed to parse: {0}")]
    Func(#[from] crate::path::FuncParseError),
    #[error(transparent)]
    Path(#[from] crate::path::PathError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Re-runs the check a record's echo describes and returns the matching
/// verdict; used to confirm that emitted counterexamples reproduce.
pub fn replay(record: &CounterexampleRecord) -> Result<Verdict, ReplayError> {
    replay_echo(&record.check_id, &record.inputs)
}

/// Replays any verdict echo (counterexample or plain check) by check id.
pub fn replay_echo(check_id: &str, inputs: &InputEcho) -> Result<Verdict, ReplayError> {
    let id = TheoremId::from_check_id(check_id).ok_or_else(|| ReplayError::UnknownCheck {
        check_id: check_id.to_string(),
    })?;
    let missing = |field: &'static str| ReplayError::MissingField { field };
    let f = FuncSpec::parse(inputs.func.as_deref().ok_or(missing("func"))?)?;
    let g = match &inputs.func2 {
        Some(text) => Some(FuncSpec::parse(text)?),
        None => None,
    };
    let seg = make_segment(
        inputs.a.ok_or(missing("a"))?,
        inputs.b.ok_or(missing("b"))?,
        inputs.phi.unwrap_or(0.0),
        inputs.mode.unwrap_or(SegMode::RealProjection),
    )?;
    let cfg = CheckConfig {
        atol: inputs.atol,
        rtol: inputs.rtol,
        quad: crate::quad::QuadConfig {
            tol: inputs.quad_tol,
            max_panels: inputs.max_panels,
        },
    };
    let verdicts = run_theorem(id, &f, g.as_ref(), &seg, inputs.r, inputs.s, &cfg)?;
    verdicts
        .into_iter()
        .find(|v| v.check_id == check_id)
        .ok_or_else(|| ReplayError::UnknownCheck {
            check_id: check_id.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight_unit_space(r_lo: f64, r_hi: f64) -> ParamSpace {
        ParamSpace {
            r: Range::new(r_lo, r_hi),
            ..ParamSpace::default()
        }
    }

    #[test]
    fn finds_the_low_exponent_violations() {
        let space = tight_unit_space(0.0, 1.0);
        let out = falsify(
            TheoremId::Z4(crate::theorems::Z4Variant::Paper),
            &space,
            1000,
            42,
            &CheckConfig::default(),
            8,
        )
        .unwrap();
        assert!(!out.records.is_empty());
        assert!(out.summary.violations > 0);
        for rec in &out.records {
            assert_eq!(rec.check_id, "z4-paper");
            assert!(rec.margin < 0.0);
            let r = rec.inputs.r.unwrap();
            assert!((0.0..1.0).contains(&r));
        }
    }

    #[test]
    fn convex_power_affine_never_falsifies_z3() {
        let space = ParamSpace {
            families: vec![Family::PowerAffine],
            ..ParamSpace::default()
        };
        let out = falsify(
            TheoremId::Z3,
            &space,
            1000,
            7,
            &CheckConfig::default(),
            DEFAULT_MAX_RECORDS,
        )
        .unwrap();
        assert!(
            out.records.is_empty(),
            "unexpected records: {:?}",
            out.records
        );
    }

    #[test]
    fn constants_falsify_the_printed_corollary() {
        let space = ParamSpace {
            families: vec![Family::PowerAffine],
            p: Range::fixed(1.0),
            c: Range::new(0.5, 2.0),
            m: Range::fixed(0.0),
            ..ParamSpace::default()
        };
        let out = falsify(
            TheoremId::Corollary(crate::theorems::Corollary::C2FirstPrinted),
            &space,
            100,
            7,
            &CheckConfig::default(),
            DEFAULT_MAX_RECORDS,
        )
        .unwrap();
        assert!(!out.records.is_empty());
    }

    #[test]
    fn identical_seeds_reproduce_identical_outcomes() {
        let space = tight_unit_space(0.0, 1.0);
        let id = TheoremId::Z4(crate::theorems::Z4Variant::Paper);
        let a = falsify(id, &space, 200, 11, &CheckConfig::default(), 8).unwrap();
        let b = falsify(id, &space, 200, 11, &CheckConfig::default(), 8).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn emitted_records_replay_as_violated() {
        let space = tight_unit_space(0.0, 1.0);
        let out = falsify(
            TheoremId::Z4(crate::theorems::Z4Variant::Paper),
            &space,
            300,
            3,
            &CheckConfig::default(),
            4,
        )
        .unwrap();
        assert!(!out.records.is_empty());
        for rec in &out.records {
            let v = replay(rec).unwrap();
            assert_eq!(v.status, Status::Violated);
            assert_eq!(v.lhs.to_bits(), rec.lhs.to_bits());
            assert_eq!(v.rhs.to_bits(), rec.rhs.to_bits());
            assert_eq!(v.margin.to_bits(), rec.margin.to_bits());
        }
    }

    #[test]
    fn space_file_round_trip() {
        let text = "\
# z4 search space
families = tight
a = 0
b = 1
phi = 0, 0.5
r = 0.05, 0.95
A = 0.5, 2
B = 0.5, 4
";
        let space = ParamSpace::parse(text).unwrap();
        assert_eq!(space.families, vec![Family::Tight]);
        assert_eq!(space.phi, Range::new(0.0, 0.5));
        assert_eq!(space.r, Range::new(0.05, 0.95));
        assert_eq!(space.tight_a, Range::new(0.5, 2.0));
        assert_eq!(space.tight_b, Range::new(0.5, 4.0));
    }

    #[test]
    fn space_validation_errors() {
        assert!(matches!(
            ParamSpace::parse("families = gaussian"),
            Err(SpaceError::BadValue { .. })
        ));
        assert!(matches!(
            ParamSpace::parse("speed = 3"),
            Err(SpaceError::UnknownKey { .. })
        ));
        assert!(matches!(
            ParamSpace::parse("r = 3, 1"),
            Err(SpaceError::BadValue { .. })
        ));
        assert!(matches!(
            ParamSpace::parse("A = -1, 2"),
            Err(SpaceError::Invalid { .. })
        ));
        assert!(matches!(
            ParamSpace::parse("not a pair"),
            Err(SpaceError::BadLine { .. })
        ));
    }

    #[test]
    fn shrink_pulls_witnesses_toward_the_reference() {
        let space = tight_unit_space(0.0, 1.0);
        let out = falsify(
            TheoremId::Z4(crate::theorems::Z4Variant::Paper),
            &space,
            50,
            5,
            &CheckConfig::default(),
            1,
        )
        .unwrap();
        let rec = &out.records[0];
        // The z4 violations persist all the way to the reference corner, so
        // the shrunk witness should sit near (A = 1, B = 2, r = 1/2).
        let func = rec.inputs.func.as_ref().unwrap();
        let spec = FuncSpec::parse(func).unwrap();
        match spec.kind() {
            crate::path::FuncKind::Tight { a, b, r } => {
                assert!((a - 1.0).abs() < 0.05, "A = {a}");
                assert!((b - 2.0).abs() < 0.1, "B = {b}");
                assert!((r - 0.5).abs() < 0.05, "r = {r}");
            }
            other => panic!("expected tight family, got {other:?}"),
        }
    }
}
