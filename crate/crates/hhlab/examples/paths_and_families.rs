//! The angled-path model and the positive function families evaluated
//! along it.
//!
//! A path from a toward b at angle phi sweeps [a, a + d] with effective
//! displacement d = cos(phi)(b - a) in real-projection mode (d = 1 in
//! parameter mode). Endpoint bounds always read f at the original a and b.
//!
//! Run with: cargo run --example paths_and_families

use hhlab::means::{power_mean, PowerParam};
use hhlab::path::{make_segment, FuncSpec, SegMode};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

fn main() {
    println!("displacement shrinks with the angle (a = 0, b = 2):");
    for phi in [0.0, FRAC_PI_6, FRAC_PI_3] {
        let seg = make_segment(0.0, 2.0, phi, SegMode::RealProjection).unwrap();
        println!(
            "  phi = {phi:.4} -> d = {:.6}, realized domain [{:.3}, {:.3}]",
            seg.d(),
            seg.domain().0,
            seg.domain().1
        );
    }
    let err = make_segment(0.0, 2.0, FRAC_PI_2, SegMode::RealProjection).unwrap_err();
    println!("  phi = pi/2 -> {err}");

    println!();
    let seg = make_segment(0.0, 2.0, FRAC_PI_3, SegMode::RealProjection).unwrap();
    let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
    let (fa, fb) = f.endpoint_values(&seg).unwrap();
    println!("{} on that path:", f.label());
    println!(
        "  integral runs over [0, 1] in t, i.e. x in [0, {:.3}]",
        seg.domain().1
    );
    println!("  but the bounds use f(a) = {fa} and f(b) = {fb} at the original endpoints");

    println!();
    println!("the tight family attains equality in the power-mean bound:");
    let tight = FuncSpec::tight(1.0, 2.0, 0.5).unwrap();
    let (ta, tb) = tight.endpoint_values(&seg).unwrap();
    println!("  {}: f(a) = {ta}, f(b) = {tb}", tight.label());
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let along = tight.path_eval(&seg, t).unwrap();
        let bound = power_mean(ta, tb, t, PowerParam::Finite(0.5)).unwrap();
        println!("  t = {t:.2}: f(path(t)) = {along:.12}, M_r bound = {bound:.12}");
    }

    println!();
    println!("all four families at the path midpoint:");
    for spec in [
        "tight:1,2,0.5",
        "expaffine:1,0",
        "poweraffine:2,1,1",
        "expr:sqrt(1+x) + 0.5",
    ] {
        let f = FuncSpec::parse(spec).unwrap();
        let v = f.path_eval(&seg, 0.5).unwrap();
        println!("  {spec:<22} -> {v:.9}");
    }
}
