//! The two-point power-mean lattice: monotonicity in the exponent, the
//! geometric / logarithmic / arithmetic chain, and the infinite-exponent
//! envelope.
//!
//! Run with: cargo run --example power_means

use hhlab::means::{geo_mean, log_mean, power_mean, PowerParam};

fn main() {
    let (x, y, t) = (1.0, 4.0, 0.5);
    println!("M_r({x}, {y}; t = {t}) is nondecreasing in r:");
    for r in [
        PowerParam::NegInf,
        PowerParam::Finite(-4.0),
        PowerParam::Finite(-1.0),
        PowerParam::Finite(0.0),
        PowerParam::Finite(0.5),
        PowerParam::Finite(1.0),
        PowerParam::Finite(2.0),
        PowerParam::Finite(4.0),
        PowerParam::PosInf,
    ] {
        let m = power_mean(x, y, t, r).unwrap();
        println!("  r = {:>5}  ->  {m:.12}", r.to_string());
    }

    println!();
    println!("special cases:");
    println!(
        "  r = -1 is the harmonic mean: {:.12}",
        power_mean(x, y, t, PowerParam::Finite(-1.0)).unwrap()
    );
    println!(
        "  r =  0 is the geometric mean: {:.12} = sqrt({x} * {y})",
        power_mean(x, y, t, PowerParam::Finite(0.0)).unwrap()
    );
    println!(
        "  r =  1 is the arithmetic mean: {:.12}",
        power_mean(x, y, t, PowerParam::Finite(1.0)).unwrap()
    );

    println!();
    println!("the classical chain G <= L <= A for a few pairs:");
    for (p, q) in [(1.0, 2.0), (0.5, 8.0), (3.0, 3.000001)] {
        let g = geo_mean(p, q).unwrap();
        let l = log_mean(p, q).unwrap();
        let a = 0.5 * (p + q);
        println!("  ({p}, {q}): G = {g:.9}, L = {l:.9}, A = {a:.9}");
        assert!(g <= l && l <= a);
    }

    println!();
    println!("log-domain evaluation keeps extreme scales finite:");
    let m = power_mean(1e300, 1e-300, 0.5, PowerParam::Finite(8.0)).unwrap();
    println!("  M_8(1e300, 1e-300; 0.5) = {m:.6e}");
}
