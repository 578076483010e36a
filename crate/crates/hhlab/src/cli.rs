//! Command-line front end: `check`, `chain`, `classify`, `falsify`.
//!
//! Every run emits one report (JSON by default, CSV on request) to stdout or
//! `--out`, echoing the full inputs so any verdict can be reproduced from
//! the report alone. Exit codes: 0 when everything holds (or a falsifier
//! found nothing), 1 when a violation or counterexample was found, 2 on
//! usage or evaluation errors (and for inconclusive quadrature).

use crate::classify::{
    check_phi_r_convex, r_convexity_index, ClassVerdict, ClassifyConfig, GridSpec, RIndex,
    DEFAULT_RESOLUTION,
};
use crate::falsify::{falsify, Family, ParamSpace, Range, DEFAULT_MAX_RECORDS};
use crate::means::PowerParam;
use crate::path::{make_segment, FuncSpec, PathSegment, SegMode};
use crate::quad::QuadConfig;
use crate::report::{ClassificationSummary, Report};
use crate::theorems::{run_theorem, CheckConfig, InputEcho, Status, TheoremId, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "hhlab",
    version,
    about = "Checks, classifies and tries to falsify Hermite-Hadamard-type integral inequalities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Real,
    Param,
}

impl From<ModeArg> for SegMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Real => SegMode::RealProjection,
            ModeArg::Param => SegMode::Parameter,
        }
    }
}

#[derive(Debug, Args)]
struct ToleranceArgs {
    /// Quadrature tolerance (absolute, per unit length).
    #[arg(long)]
    tol: Option<f64>,
    /// Verdict absolute tolerance.
    #[arg(long)]
    atol: Option<f64>,
    /// Verdict relative tolerance (scaled by |rhs|).
    #[arg(long)]
    rtol: Option<f64>,
    /// Quadrature panel budget.
    #[arg(long)]
    max_panels: Option<usize>,
}

impl ToleranceArgs {
    fn check_config(&self) -> CheckConfig {
        let mut cfg = CheckConfig::default();
        if let Some(tol) = self.tol {
            cfg.quad.tol = tol;
        }
        if let Some(atol) = self.atol {
            cfg.atol = atol;
        }
        if let Some(rtol) = self.rtol {
            cfg.rtol = rtol;
        }
        if let Some(max_panels) = self.max_panels {
            cfg.quad.max_panels = max_panels;
        }
        cfg
    }
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Cmd {
    /// Run one named inequality check on explicit inputs.
    Check(CheckArgs),
    /// Evaluate the five-link log-convexity chain and its six terms.
    Chain(ChainArgs),
    /// Grid-check convexity classes and estimate the r-convexity index.
    Classify(ClassifyArgs),
    /// Randomized seeded search for counterexamples to a named check.
    Falsify(FalsifyArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// One of: hh, z3, z4, z4-corrected, t16, t160, c1, c2-first-printed,
    /// c2-first-reconstructed, c2-second, c3-first, c3-second,
    /// remark-first-printed, remark-second.
    #[arg(long)]
    theorem: String,
    /// Function spec: tight:A,B,r | expaffine:alpha,beta |
    /// poweraffine:p,c,m | expr:<expression>.
    #[arg(long)]
    func: String,
    /// Second function for the product checks.
    #[arg(long)]
    func2: Option<String>,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Path angle in radians, within [0, pi/2].
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Real)]
    mode: ModeArg,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[command(flatten)]
    tols: ToleranceArgs,
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[arg(long)]
    func: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[command(flatten)]
    tols: ToleranceArgs,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    func: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Real)]
    mode: ModeArg,
    /// Grid sizes as U,V,T.
    #[arg(long, default_value = "33,33,17")]
    grid: String,
    /// Bisection resolution for the r-convexity index.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: f64,
    /// Additional exponent to grid-check besides r = 0 and r = 1.
    #[arg(long)]
    r: Option<f64>,
    /// Skip the index bisection and only run the grid checks.
    #[arg(long)]
    no_index: bool,
}

#[derive(Debug, Args)]
struct FalsifyArgs {
    /// Check to attack; same names as `check --theorem`.
    #[arg(long)]
    theorem: String,
    /// Key-value search-space file (`key = value` lines).
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on emitted counterexample records.
    #[arg(long, default_value_t = DEFAULT_MAX_RECORDS)]
    max_records: usize,
    /// Declare that the target is expected to hold (exit 0 only if nothing
    /// is found).
    #[arg(long)]
    expect_hold: bool,
    /// Families to sample, comma separated: tight, expaffine, poweraffine.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Range flags, each `lo,hi` or a single pinned value.
    #[arg(long, value_name = "LO,HI")]
    phi_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    r_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    s_range: Option<String>,
    #[arg(long = "A-range", value_name = "LO,HI")]
    a_range: Option<String>,
    #[arg(long = "B-range", value_name = "LO,HI")]
    b_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    alpha_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    beta_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    p_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    c_range: Option<String>,
    #[arg(long, value_name = "LO,HI")]
    m_range: Option<String>,
    #[command(flatten)]
    tols: ToleranceArgs,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Entry point used by the binary and the integration tests. `args` excludes
/// the program name.
pub fn run(args: Vec<String>) -> i32 {
    let command_echo = args.join(" ");
    let cli = match Cli::try_parse_from(std::iter::once("hhlab".to_string()).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful terminations, not usage errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut report = Report::new(command_echo);
    let outcome = match &cli.cmd {
        Cmd::Check(args) => run_check(args, &mut report),
        Cmd::Chain(args) => run_chain(args, &mut report),
        Cmd::Classify(args) => run_classify(args, &mut report),
        Cmd::Falsify(args) => run_falsify(args, &mut report),
    };
    if let Err(UsageError(msg)) = outcome {
        eprintln!("error: {msg}");
        return 2;
    }
    report.summary.exit_code = exit_code(&report);
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    } else {
        print!("{rendered}");
    }
    if !cli.quiet {
        eprint!("{}", human_summary(&report));
    }
    report.summary.exit_code
}

fn exit_code(report: &Report) -> i32 {
    let any_violated = report.summary.violated > 0 || !report.counterexamples.is_empty();
    if any_violated {
        1
    } else if report.summary.inconclusive > 0 {
        2
    } else {
        0
    }
}

fn human_summary(report: &Report) -> String {
    let mut out = String::new();
    for v in &report.verdicts {
        let _ = writeln!(
            out,
            "[{}] {}: lhs = {:.9e}, rhs = {:.9e}, margin = {:.3e} (tolerance {:.3e})",
            v.status.as_str(),
            v.check_id,
            v.lhs,
            v.rhs,
            v.margin,
            v.tolerance
        );
    }
    if let Some(terms) = report.summary.chain_terms {
        let joined: Vec<String> = terms.iter().map(|t| format!("{t:.9e}")).collect();
        let _ = writeln!(out, "chain terms: {}", joined.join(", "));
    }
    if let Some(class) = &report.summary.classification {
        if let Some(idx) = &class.index {
            let _ = writeln!(out, "r-convexity index: {}", idx.token());
        }
    }
    if let Some(f) = report.summary.falsify {
        let _ = writeln!(
            out,
            "falsify: {} violations in {} trials ({} skipped), {} records emitted",
            f.violations, f.trials, f.skipped, f.emitted
        );
    }
    let _ = writeln!(out, "exit code: {}", report.summary.exit_code);
    out
}

fn segment_from(a: f64, b: f64, phi: f64, mode: ModeArg) -> Result<PathSegment, UsageError> {
    Ok(make_segment(a, b, phi, mode.into())?)
}

fn run_check(args: &CheckArgs, report: &mut Report) -> Result<(), UsageError> {
    let id = TheoremId::parse(&args.theorem).ok_or_else(|| {
        UsageError(format!(
            "unknown theorem `{}`; expected one of {}",
            args.theorem,
            TheoremId::all().join(", ")
        ))
    })?;
    if id == TheoremId::Hh && args.phi != 0.0 {
        return Err(UsageError(
            "`hh` is the phi = 0 classical check; use `z3` for angled paths".into(),
        ));
    }
    let f = FuncSpec::parse(&args.func)?;
    let g = args.func2.as_deref().map(FuncSpec::parse).transpose()?;
    let seg = segment_from(args.a, args.b, args.phi, args.mode)?;
    let cfg = args.tols.check_config();
    let verdicts = run_theorem(id, &f, g.as_ref(), &seg, args.r, args.s, &cfg)?;
    report.summary.count(&verdicts);
    report.verdicts = verdicts;
    Ok(())
}

fn run_chain(args: &ChainArgs, report: &mut Report) -> Result<(), UsageError> {
    let f = FuncSpec::parse(&args.func)?;
    let cfg = args.tols.check_config();
    let chain = crate::theorems::check_chain_z2(&f, args.a, args.b, &cfg)?;
    report.summary.count(&chain.verdicts);
    report.summary.chain_terms = Some(chain.terms);
    report.verdicts = chain.verdicts;
    Ok(())
}

/// Presents a grid verdict in the common verdict shape: lhs/rhs are the
/// worst witness values, so margin = rhs - lhs = -worst_margin.
fn class_verdict_to_verdict(v: &ClassVerdict, echo: &InputEcho) -> Verdict {
    let status = if v.holds_on_grid {
        Status::Holds
    } else {
        Status::Violated
    };
    Verdict {
        check_id: format!("classify-r{}", v.r),
        lhs: v.witness.lhs,
        rhs: v.witness.rhs,
        margin: -v.worst_margin,
        tolerance: v.tolerance,
        status,
        regime: format!(
            "{} on {}x{}x{} grid; worst witness u = {:.6e}, v = {:.6e}, t = {:.6e}",
            v.qualifier, v.grid.u, v.grid.v, v.grid.t, v.witness.u, v.witness.v, v.witness.t
        ),
        inputs: echo.clone(),
    }
}

fn run_classify(args: &ClassifyArgs, report: &mut Report) -> Result<(), UsageError> {
    let f = FuncSpec::parse(&args.func)?;
    let seg = segment_from(args.a, args.b, args.phi, args.mode)?;
    let grid = GridSpec::parse(&args.grid)
        .ok_or_else(|| UsageError(format!("--grid expects U,V,T, got `{}`", args.grid)))?;
    let cfg = ClassifyConfig::default();
    let mut exponents = vec![PowerParam::Finite(0.0), PowerParam::Finite(1.0)];
    if let Some(r) = args.r {
        exponents.push(PowerParam::from_f64(r)?);
    }
    let echo = InputEcho {
        func: Some(f.canonical_text()),
        func_label: Some(f.label().to_string()),
        a: Some(seg.a()),
        b: Some(seg.b()),
        phi: Some(seg.phi()),
        mode: Some(seg.mode()),
        d: Some(seg.d()),
        atol: cfg.atol,
        rtol: cfg.rtol,
        quad_tol: QuadConfig::default().tol,
        max_panels: QuadConfig::default().max_panels,
        grid: Some(grid),
        resolution: Some(args.resolution),
        ..InputEcho::default()
    };
    let mut class_verdicts: Vec<ClassVerdict> = Vec::new();
    for r in exponents {
        class_verdicts.push(check_phi_r_convex(&f, &seg, r, &grid, &cfg)?);
    }
    let index: Option<RIndex> = if args.no_index {
        None
    } else {
        Some(r_convexity_index(&f, &seg, &grid, args.resolution, &cfg)?)
    };
    let verdicts: Vec<Verdict> = class_verdicts
        .iter()
        .map(|v| class_verdict_to_verdict(v, &echo))
        .collect();
    report.summary.count(&verdicts);
    report.verdicts = verdicts;
    report.summary.classification = Some(ClassificationSummary {
        verdicts: class_verdicts,
        index,
        resolution: args.resolution,
    });
    Ok(())
}

fn parse_range_flag(name: &str, value: &str) -> Result<Range, UsageError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    match nums.map_err(|_| UsageError(format!("--{name} expects numbers, got `{value}`")))? {
        ref v if v.len() == 1 => Ok(Range::fixed(v[0])),
        ref v if v.len() == 2 && v[0] <= v[1] => Ok(Range::new(v[0], v[1])),
        _ => Err(UsageError(format!(
            "--{name} expects `lo,hi` with lo <= hi, got `{value}`"
        ))),
    }
}

fn run_falsify(args: &FalsifyArgs, report: &mut Report) -> Result<(), UsageError> {
    let id = TheoremId::parse(&args.theorem).ok_or_else(|| {
        UsageError(format!(
            "unknown theorem `{}`; expected one of {}",
            args.theorem,
            TheoremId::all().join(", ")
        ))
    })?;
    let mut space = match &args.space {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            ParamSpace::parse(&text)?
        }
        None => ParamSpace::default(),
    };
    if let Some(families) = &args.family {
        let fams: Option<Vec<Family>> = families
            .split(',')
            .map(str::trim)
            .map(Family::parse)
            .collect();
        space.families =
            fams.ok_or_else(|| UsageError(format!("unknown family in `{families}`")))?;
    }
    if let Some(a) = args.a {
        space.a = a;
    }
    if let Some(b) = args.b {
        space.b = b;
    }
    if let Some(mode) = args.mode {
        space.mode = mode.into();
    }
    for (name, flag, slot) in [
        ("phi-range", &args.phi_range, &mut space.phi),
        ("r-range", &args.r_range, &mut space.r),
        ("s-range", &args.s_range, &mut space.s),
        ("A-range", &args.a_range, &mut space.tight_a),
        ("B-range", &args.b_range, &mut space.tight_b),
        ("alpha-range", &args.alpha_range, &mut space.alpha),
        ("beta-range", &args.beta_range, &mut space.beta),
        ("p-range", &args.p_range, &mut space.p),
        ("c-range", &args.c_range, &mut space.c),
        ("m-range", &args.m_range, &mut space.m),
    ] {
        if let Some(value) = flag {
            *slot = parse_range_flag(name, value)?;
        }
    }
    space.validate()?;
    let cfg = args.tols.check_config();
    let outcome = falsify(id, &space, args.budget, args.seed, &cfg, args.max_records)?;
    report.summary.falsify = Some(outcome.summary);
    report.counterexamples = outcome.records;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn unknown_theorem_is_a_usage_error() {
        let code = run(args(
            "check --theorem z9 --func tight:1,2,1 --a 0 --b 1 --quiet --out /dev/null",
        ));
        assert_eq!(code, 2);
    }

    #[test]
    fn malformed_func_is_a_usage_error() {
        let code = run(args(
            "check --theorem c1 --func tight:1,2 --a 0 --b 1 --quiet --out /dev/null",
        ));
        assert_eq!(code, 2);
    }

    #[test]
    fn expression_error_carries_offset() {
        // Surfaceable through the CLI: parse failure in --func expr form.
        let code = run(args(
            "check --theorem c1 --func expr:2* --a 0 --b 1 --quiet --out /dev/null",
        ));
        assert_eq!(code, 2);
    }

    #[test]
    fn equality_case_exits_zero() {
        let code = run(args(
            "check --theorem c1 --func tight:1,2,1 --a 0 --b 1 --quiet --out /dev/null",
        ));
        assert_eq!(code, 0);
    }

    #[test]
    fn violated_case_exits_one() {
        let code = run(args(
            "check --theorem z4 --func tight:1,2,0.5 --a 0 --b 1 --r 0.5 --quiet --out /dev/null",
        ));
        assert_eq!(code, 1);
    }
}
