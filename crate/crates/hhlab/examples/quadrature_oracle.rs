//! Adaptive Gauss-Kronrod quadrature against closed forms, including the
//! tight-family oracle every integral-mean verdict is cross-checked with.
//!
//! Run with: cargo run --example quadrature_oracle

use hhlab::path::{make_segment, FuncSpec, SegMode};
use hhlab::quad::{exact_tight_integral, integrate, mean_integral, QuadConfig};
use std::f64::consts::E;

fn main() {
    let cfg = QuadConfig::default();
    println!("tolerance {:.0e}, panel budget {}", cfg.tol, cfg.max_panels);
    println!();

    println!("analytic spot checks:");
    #[allow(clippy::type_complexity)]
    let cases: [(&str, fn(f64) -> f64, f64); 3] = [
        ("1", |_| 1.0, 1.0),
        ("exp(t)", f64::exp, E - 1.0),
        (
            "sqrt(1+t)",
            |t| (1.0 + t).sqrt(),
            2.0 / 3.0 * (2f64.powf(1.5) - 1.0),
        ),
    ];
    for (name, g, exact) in cases {
        let est = integrate(|t| Ok(g(t)), 0.0, 1.0, &cfg).unwrap();
        println!(
            "  integral of {name:<10} = {:.15}  (true err {:.1e} <= bound {:.1e}, {} panels)",
            est.value,
            (est.value - exact).abs(),
            est.error_bound,
            est.subdivisions
        );
        assert!((est.value - exact).abs() <= est.error_bound.max(1e-15));
    }

    println!();
    println!("integral mean of the tight family vs its closed form:");
    let seg = make_segment(0.0, 1.0, 0.0, SegMode::RealProjection).unwrap();
    for (a, b, r) in [
        (1.0, 2.0, 0.5),
        (1.0, 2.0, 2.0),
        (0.1, 10.0, 0.3),
        (5.0, 0.3, -2.5),
    ] {
        let f = FuncSpec::tight(a, b, r).unwrap();
        let est = mean_integral(&f, &seg, &cfg).unwrap();
        let oracle = exact_tight_integral(a, b, r).unwrap();
        println!(
            "  A = {a:<4} B = {b:<4} r = {r:<4} -> quadrature {:.15}, oracle {:.15}, diff {:.1e}",
            est.value,
            oracle,
            (est.value - oracle).abs()
        );
    }

    println!();
    println!("a sharp peak forces adaptive subdivision:");
    let est = integrate(
        |t: f64| Ok(1.0 / (1e-6 + (t - 0.3).powi(2))),
        0.0,
        1.0,
        &cfg,
    )
    .unwrap();
    println!(
        "  integral of 1/(1e-6 + (t - 0.3)^2) = {:.9e} with {} panels, bound {:.2e}",
        est.value, est.subdivisions, est.error_bound
    );
}
