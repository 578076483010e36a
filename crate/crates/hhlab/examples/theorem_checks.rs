//! One pass over the named inequality checks, including the cases where the
//! printed form and the reconstructed form disagree.
//!
//! The power-sum bound (z4) ships in two variants: the `paper` coefficient
//! (r/(r+1))^(1/r) and the `corrected` coefficient r/(r+1) that its own
//! Minkowski derivation yields. On the tight family at r = 1/2 the paper
//! variant fails by a margin of -4/3 while the corrected one holds; at
//! r >= 1 both hold.
//!
//! Run with: cargo run --example theorem_checks

use hhlab::path::{make_segment, FuncSpec, SegMode};
use hhlab::theorems::{
    check_16, check_160, check_corollary, check_z3, check_z4, CheckConfig, Corollary, Z4Variant,
};
use std::f64::consts::FRAC_PI_3;

fn main() {
    let cfg = CheckConfig::default();
    let seg01 = make_segment(0.0, 1.0, 0.0, SegMode::RealProjection).unwrap();

    println!("two-sided bound along an angled path (z3):");
    let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
    let seg = make_segment(0.0, 2.0, FRAC_PI_3, SegMode::RealProjection).unwrap();
    for v in check_z3(&f, &seg, &cfg).unwrap() {
        println!(
            "  {}: {} lhs = {:.9}, rhs = {:.9}",
            v.check_id,
            v.status.as_str(),
            v.lhs,
            v.rhs
        );
    }

    println!();
    println!("power-sum bound (z4), paper vs corrected coefficient:");
    for r in [0.5, 1.0, 2.0] {
        let f = FuncSpec::tight(1.0, 2.0, r).unwrap();
        let paper = check_z4(&f, &seg01, r, Z4Variant::Paper, &cfg).unwrap();
        let corrected = check_z4(&f, &seg01, r, Z4Variant::Corrected, &cfg).unwrap();
        println!(
            "  r = {r:<4} lhs = {:.6}  paper rhs = {:.6} ({})  corrected rhs = {:.6} ({})",
            paper.lhs,
            paper.rhs,
            paper.status.as_str(),
            corrected.rhs,
            corrected.status.as_str()
        );
    }

    println!();
    println!("product bounds (t16 sum form, t160 product form):");
    let f = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
    let v16 = check_16(&f, &f, &seg01, 2.0, 2.0, &cfg).unwrap();
    let v160 = check_160(&f, &f, &seg01, 2.0, 2.0, &cfg).unwrap();
    println!(
        "  t16 at the equality point: lhs = {:.9}, rhs = {:.9} ({})",
        v16.lhs,
        v16.rhs,
        v16.status.as_str()
    );
    println!(
        "  t160 on the same pair:    lhs = {:.9}, rhs = {:.9} ({})",
        v160.lhs,
        v160.rhs,
        v160.status.as_str()
    );

    println!();
    println!("the printed first corollary drops two squares; constants expose it:");
    let one = FuncSpec::parse("expr:1").unwrap();
    for which in [Corollary::C2FirstPrinted, Corollary::C2FirstReconstructed] {
        let v = check_corollary(which, &one, Some(&one), &seg01, None, &cfg).unwrap();
        println!(
            "  {:<24} lhs = {:.6}, rhs = {:.6} -> {}",
            v.check_id,
            v.lhs,
            v.rhs,
            v.status.as_str()
        );
    }
    println!("  (the g = 1 remark inherits the same defect:)");
    for which in [Corollary::RemarkFirstPrinted, Corollary::RemarkSecond] {
        let v = check_corollary(which, &one, None, &seg01, None, &cfg).unwrap();
        println!(
            "  {:<24} lhs = {:.6}, rhs = {:.6} -> {}",
            v.check_id,
            v.lhs,
            v.rhs,
            v.status.as_str()
        );
    }
}
