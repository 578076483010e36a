//! hhlab — a desk-scale numerical laboratory for Hermite–Hadamard-type
//! integral inequalities of generalized convex functions along angled paths.
//!
//! The crate implements, verifies and attempts to falsify a family of
//! two-sided integral bounds for positive functions that are r-convex (their
//! r-th power is dominated by affine interpolation) along paths of the form
//! `a + t·e^{iφ}(b − a)`. The pieces:
//!
//! * [`means`] — weighted power means, geometric and logarithmic means.
//! * [`expr`] — a small expression language for user-supplied functions.
//! * [`path`] — the concrete path model and the function families,
//!   including the tight (equality-case) family that doubles as the
//!   closed-form oracle.
//! * [`quad`] — adaptive Gauss–Kronrod quadrature and the exact tight-family
//!   integral it is checked against.
//! * [`classify`] — grid-sampled class membership and an r-convexity index.
//! * [`theorems`] — one verdict operation per inequality, with explicit
//!   tolerance accounting and both printed and corrected variants where the
//!   two disagree.
//! * [`falsify`](mod@falsify) — seeded randomized counterexample search
//!   with shrinking.
//! * [`report`] / [`cli`] — reproducible JSON/CSV reports and the thin
//!   command-line front end.
//!
//! Start with the `examples/` directory: each major capability has a
//! runnable example (`cargo run --example theorem_checks`, etc.).

pub mod classify;
pub mod cli;
pub mod expr;
pub mod falsify;
pub mod means;
pub mod path;
pub mod quad;
pub mod report;
pub mod theorems;

pub use classify::{check_phi_r_convex, r_convexity_index, ClassVerdict, GridSpec, RIndex};
pub use falsify::{falsify, CounterexampleRecord, FalsifyOutcome, ParamSpace};
pub use means::{geo_mean, log_mean, power_mean, PowerParam};
pub use path::{make_segment, FuncSpec, PathSegment, SegMode};
pub use quad::{exact_tight_integral, integrate, mean_integral, IntegralEstimate, QuadConfig};
pub use report::Report;
pub use theorems::{
    check_16, check_160, check_chain_z2, check_hh_classic, check_z3, check_z4, run_theorem,
    CheckConfig, Corollary, Status, TheoremId, Verdict, Z4Variant,
};
