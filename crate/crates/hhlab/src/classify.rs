//! Grid-sampled membership tests for the generalized convexity classes, and
//! a bisection estimate of the smallest exponent at which membership holds.
//!
//! A grid verdict is evidence, not a proof: sampling cannot establish a
//! universally quantified inequality, so every verdict carries the
//! `grid-certified` qualifier and the grid it was certified on.

use crate::means::{power_mean, MeanError, PowerParam};
use crate::path::{FuncError, FuncSpec, PathSegment};

/// Exponent scan window for the convexity index.
pub const R_SCAN_MIN: f64 = -8.0;
pub const R_SCAN_MAX: f64 = 8.0;

/// Default bisection resolution for [`r_convexity_index`].
pub const DEFAULT_RESOLUTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub u: usize,
    pub v: usize,
    pub t: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        // ~18k evaluations: interactive, and fine enough for every violation
        // the test corpus exhibits.
        GridSpec {
            u: 33,
            v: 33,
            t: 17,
        }
    }
}

impl GridSpec {
    pub fn parse(text: &str) -> Option<Self> {
        let mut it = text.split(',').map(|p| p.trim().parse::<usize>().ok());
        let g = GridSpec {
            u: it.next()??,
            v: it.next()??,
            t: it.next()??,
        };
        if it.next().is_some() {
            return None;
        }
        Some(g)
    }
}

/// Tolerances separating genuine grid violations from equality-case float
/// noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyConfig {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            atol: 1e-10,
            rtol: 1e-10,
        }
    }
}

/// The grid point attaining the worst margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub u: f64,
    pub v: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of one membership scan. `holds_on_grid` means no sampled triple
/// exceeded the tolerance; `worst_margin` is `max(lhs − rhs)` over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassVerdict {
    pub r: PowerParam,
    pub holds_on_grid: bool,
    pub worst_margin: f64,
    pub witness: Witness,
    pub grid: GridSpec,
    pub tolerance: f64,
    /// Always `grid-certified`: sampling never proves the full statement.
    pub qualifier: &'static str,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("grid sizes must all be at least 2, got {u}x{v}x{t}")]
    GridTooSmall { u: usize, v: usize, t: usize },
    #[error("bisection resolution must be positive, got {resolution}")]
    BadResolution { resolution: f64 },
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Mean(#[from] MeanError),
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i == 0 {
        lo
    } else if i == n - 1 {
        hi
    } else {
        lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
    }
}

/// Scans `f(u + t·κ(v − u)) ≤ M_r(f(u), f(v); t)` over a grid of ordered
/// pairs `u ≤ v` from the realized domain and `t ∈ [0, 1]`, where κ is the
/// segment's angle factor. Ordered pairs are the directed-path reading; at
/// φ = 0 the reversed pairs are covered by the `t ↔ 1−t` symmetry.
pub fn check_phi_r_convex(
    f: &FuncSpec,
    seg: &PathSegment,
    r: PowerParam,
    grid: &GridSpec,
    cfg: &ClassifyConfig,
) -> Result<ClassVerdict, ClassifyError> {
    if grid.u < 2 || grid.v < 2 || grid.t < 2 {
        return Err(ClassifyError::GridTooSmall {
            u: grid.u,
            v: grid.v,
            t: grid.t,
        });
    }
    let (lo, hi) = seg.domain();
    let kappa = seg.angle_factor();
    let mut worst: Option<Witness> = None;
    let mut worst_margin = f64::NEG_INFINITY;
    let mut scale: f64 = 0.0;
    for iu in 0..grid.u {
        let u = lerp(lo, hi, iu, grid.u);
        let fu = f.eval_at(seg, u)?;
        for iv in 0..grid.v {
            let v = lerp(lo, hi, iv, grid.v);
            if v < u {
                continue;
            }
            let fv = f.eval_at(seg, v)?;
            for it in 0..grid.t {
                let t = lerp(0.0, 1.0, it, grid.t);
                let x = u + t * kappa * (v - u);
                let lhs = f.eval_at(seg, x)?;
                let rhs = power_mean(fu, fv, t, r)?;
                scale = scale.max(rhs.abs());
                let margin = lhs - rhs;
                // Strict improvement keeps the lexicographically first
                // witness among ties.
                if worst.is_none() || margin > worst_margin {
                    worst_margin = margin;
                    worst = Some(Witness { u, v, t, lhs, rhs });
                }
            }
        }
    }
    let tolerance = cfg.atol + cfg.rtol * scale;
    Ok(ClassVerdict {
        r,
        holds_on_grid: worst_margin <= tolerance,
        worst_margin,
        witness: worst.expect("grid is non-empty"),
        grid: *grid,
        tolerance,
        qualifier: "grid-certified",
    })
}

/// Result of the index scan over `[R_SCAN_MIN, R_SCAN_MAX]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RIndex {
    /// Membership already holds at the scan floor; the true index is at or
    /// below it.
    AtOrBelowScanFloor,
    /// Smallest scanned exponent (to within the resolution) at which the
    /// grid check holds.
    Value(f64),
    /// Membership still fails at the scan ceiling.
    AboveScanCeiling,
}

impl RIndex {
    /// Distinct serialized tokens for the sentinels.
    pub fn token(&self) -> String {
        match self {
            RIndex::AtOrBelowScanFloor => format!("<={R_SCAN_MIN}"),
            RIndex::Value(r) => format!("{r:?}"),
            RIndex::AboveScanCeiling => format!(">{R_SCAN_MAX}"),
        }
    }
}

/// Bisects for the smallest `r` at which [`check_phi_r_convex`] holds on the
/// grid, exploiting that membership at `r` implies membership at every
/// larger exponent (power-mean monotonicity).
///
/// The search runs on the lattice `R_SCAN_MIN + k·resolution`, so round
/// values such as 0 and 1/2 are returned exactly when they are the boundary.
pub fn r_convexity_index(
    f: &FuncSpec,
    seg: &PathSegment,
    grid: &GridSpec,
    resolution: f64,
    cfg: &ClassifyConfig,
) -> Result<RIndex, ClassifyError> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(ClassifyError::BadResolution { resolution });
    }
    let holds = |r: f64| -> Result<bool, ClassifyError> {
        Ok(check_phi_r_convex(f, seg, PowerParam::Finite(r), grid, cfg)?.holds_on_grid)
    };
    if holds(R_SCAN_MIN)? {
        return Ok(RIndex::AtOrBelowScanFloor);
    }
    if !holds(R_SCAN_MAX)? {
        return Ok(RIndex::AboveScanCeiling);
    }
    let steps = ((R_SCAN_MAX - R_SCAN_MIN) / resolution).ceil() as u64;
    let r_at = |k: u64| (R_SCAN_MIN + k as f64 * resolution).min(R_SCAN_MAX);
    // Invariant: fails at lo, holds at hi.
    let (mut lo, mut hi) = (0u64, steps);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(r_at(mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RIndex::Value(r_at(hi)))
}
