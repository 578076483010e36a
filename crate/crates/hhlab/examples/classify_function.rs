//! Grid-sampled convexity classification and the r-convexity index: the
//! smallest exponent at which the power-mean membership inequality holds on
//! the grid. Verdicts are grid-certified evidence, never proofs.
//!
//! Run with: cargo run --example classify_function

use hhlab::classify::{check_phi_r_convex, r_convexity_index, ClassifyConfig, GridSpec, RIndex};
use hhlab::means::PowerParam;
use hhlab::path::{make_segment, FuncSpec, SegMode};

fn main() {
    let cfg = ClassifyConfig::default();
    let grid = GridSpec::default();

    println!("r-convexity indices (scan window [-8, 8], resolution 1e-3):");
    let cases = [
        ("expaffine:1,0", 0.0, 1.0),     // log-convex: index 0
        ("poweraffine:2,1,1", 0.0, 1.0), // (1+x)^2: index 1/2
        ("expr:3", 0.0, 1.0),            // constant: r-convex for every r
        ("expr:sqrt(x)", 1.0, 4.0),      // concave, but sqrt(x)^2 affine: index 2
        ("expr:exp(x^2)", 0.0, 1.0),     // super-log-convex: index below the floor
    ];
    for (spec, a, b) in cases {
        let f = FuncSpec::parse(spec).unwrap();
        let seg = make_segment(a, b, 0.0, SegMode::RealProjection).unwrap();
        let idx = r_convexity_index(&f, &seg, &grid, 1e-3, &cfg).unwrap();
        let shown = match idx {
            RIndex::Value(r) => format!("{r}"),
            other => other.token(),
        };
        println!("  {spec:<20} on [{a}, {b}] -> {shown}");
    }

    println!();
    println!("membership scans with witnesses:");
    let f = FuncSpec::parse("expr:sqrt(x)").unwrap();
    let seg = make_segment(1.0, 4.0, 0.0, SegMode::RealProjection).unwrap();
    for r in [0.0, 1.0, 2.0] {
        let v = check_phi_r_convex(&f, &seg, PowerParam::Finite(r), &grid, &cfg).unwrap();
        if v.holds_on_grid {
            println!(
                "  sqrt(x) vs r = {r}: holds on the {}x{}x{} grid ({})",
                v.grid.u, v.grid.v, v.grid.t, v.qualifier
            );
        } else {
            println!(
                "  sqrt(x) vs r = {r}: violated; worst witness u = {}, v = {}, t = {} with margin {:+.6e}",
                v.witness.u, v.witness.v, v.witness.t, v.worst_margin
            );
        }
    }

    println!();
    println!("membership is monotone in r, so bisection pins the boundary:");
    let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
    let seg = make_segment(0.0, 1.0, 0.0, SegMode::RealProjection).unwrap();
    for r in [0.4, 0.499, 0.5, 0.6] {
        let v = check_phi_r_convex(&f, &seg, PowerParam::Finite(r), &grid, &cfg).unwrap();
        println!(
            "  (1+x)^2 vs r = {r:<6} -> {} (worst margin {:+.3e})",
            if v.holds_on_grid { "holds" } else { "violated" },
            v.worst_margin
        );
    }
}
