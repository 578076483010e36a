//! Seeded counterexample search: attack a check over a declared parameter
//! space, shrink what it finds, and replay the records to confirm they
//! reproduce.
//!
//! Run with: cargo run --example falsify_search

use hhlab::falsify::{falsify, replay, Family, ParamSpace, Range};
use hhlab::theorems::{CheckConfig, Corollary, Status, TheoremId, Z4Variant};

fn main() {
    let cfg = CheckConfig::default();

    // The paper-variant power-sum bound over the tight family with exponents
    // below 1: essentially every draw violates, and shrinking pulls the
    // witnesses to the hand-checkable corner (A = 1, B = 2, r = 1/2).
    let space = ParamSpace {
        r: Range::new(0.0, 1.0),
        ..ParamSpace::default()
    };
    let out = falsify(TheoremId::Z4(Z4Variant::Paper), &space, 1000, 42, &cfg, 5).unwrap();
    println!(
        "z4 (paper variant), tight family, r in (0, 1), seed 42: {} violations in {} trials",
        out.summary.violations, out.summary.trials
    );
    for rec in &out.records {
        println!(
            "  trial {:>4}: margin {:+.9}  {}  r = {:.6}",
            rec.trial_index,
            rec.margin,
            rec.inputs.func_label.as_deref().unwrap_or("?"),
            rec.inputs.r.unwrap()
        );
    }

    println!();
    println!("every record replays to the same violated verdict:");
    for rec in out.records.iter().take(2) {
        let v = replay(rec).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.margin.to_bits(), rec.margin.to_bits());
        println!(
            "  trial {:>4} replayed: {} with margin {:+.9}",
            rec.trial_index,
            v.status.as_str(),
            v.margin
        );
    }

    // A sound target: the two-sided angled-path bound on convex increasing
    // power-affine functions. The search comes back empty.
    println!();
    let space = ParamSpace {
        families: vec![Family::PowerAffine],
        m: Range::new(0.05, 2.0),
        phi: Range::new(0.0, 1.0),
        ..ParamSpace::default()
    };
    let out = falsify(TheoremId::Z3, &space, 1000, 7, &cfg, 5).unwrap();
    println!(
        "z3 over increasing convex power-affine functions, seed 7: {} violations in {} trials",
        out.summary.violations, out.summary.trials
    );

    // The printed first corollary, attacked with constant functions.
    println!();
    let space = ParamSpace {
        families: vec![Family::PowerAffine],
        p: Range::fixed(1.0),
        c: Range::new(0.5, 2.0),
        m: Range::fixed(0.0),
        ..ParamSpace::default()
    };
    let out = falsify(
        TheoremId::Corollary(Corollary::C2FirstPrinted),
        &space,
        100,
        7,
        &cfg,
        3,
    )
    .unwrap();
    println!(
        "c2-first-printed over constants, seed 7: {} violations in {} trials",
        out.summary.violations, out.summary.trials
    );
    for rec in &out.records {
        println!(
            "  trial {:>3}: lhs = {:.6}, printed rhs = {:.6}, margin {:+.6}",
            rec.trial_index, rec.lhs, rec.rhs, rec.margin
        );
    }
}
