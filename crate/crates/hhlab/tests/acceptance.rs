//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria:
//! 1. mean algebra on >= 1000 randomized cases per property
//! 2. quadrature vs the closed-form tight oracle on >= 200 cases
//! 3. exact equality witnesses of the chain, z4 at r = 1 and t16 at r = s = 2
//! 4. in-regime theorem support on randomized case batches
//! 5. the documented violations of the printed forms, with pinned values
//! 6. falsifier finds the low-exponent z4 violations and its records replay
//!    bit-exactly from the serialized report
//! 7. classifier index and witness values
//! 8. CLI exit codes, golden report, 17-digit round-trip

// Negated float comparisons inside `ensure!` are deliberate: they fail on
// NaN, which a rearranged comparison would silently pass.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use hhlab::classify::{check_phi_r_convex, r_convexity_index, ClassifyConfig, GridSpec, RIndex};
use hhlab::falsify::{falsify, replay, ParamSpace, Range};
use hhlab::means::{geo_mean, log_mean, power_mean, PowerParam};
use hhlab::path::{make_segment, FuncSpec, SegMode};
use hhlab::quad::{exact_tight_integral, mean_integral, QuadConfig};
use hhlab::report::{fmt_f64, ParsedReport, Report};
use hhlab::theorems::{
    check_16, check_160, check_chain_z2, check_corollary, check_z3, check_z4, CheckConfig,
    Corollary, Status, TheoremId, Z4Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{E, FRAC_PI_3, FRAC_PI_6};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(e) => {
            println!("acceptance {name}: FAIL - {e}");
            panic!("acceptance {name}: FAIL - {e}");
        }
    }
}

fn seg01() -> hhlab::path::PathSegment {
    make_segment(0.0, 1.0, 0.0, SegMode::RealProjection).unwrap()
}

#[test]
fn acceptance_1_mean_algebra() {
    criterion("1 (mean algebra)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x11);
        let r_grid = [-8.0, -4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 8.0];
        for case in 0..1000 {
            let x: f64 = rng.gen_range(-3.0..3.0f64);
            let x = x.exp();
            let ratio: f64 = rng.gen_range(0.1..4.0f64);
            let y = x * ratio.exp();
            let t = rng.gen_range(0.02..0.98);

            // Monotonicity in r, strictly, across the grid.
            let mut prev = f64::NEG_INFINITY;
            for r in r_grid {
                let m = power_mean(x, y, t, PowerParam::Finite(r))
                    .map_err(|e| format!("case {case}: {e}"))?;
                ensure!(m > prev, "case {case}: M_{r} = {m} <= previous {prev}");
                prev = m;
            }

            // Continuity at r = 0: linear decay of |M_eps - M_0|, with the
            // constant calibrated from the eps = 1e-5 measurement.
            let m0 = power_mean(x, y, t, PowerParam::Finite(0.0)).unwrap();
            let d = |eps: f64| (power_mean(x, y, t, PowerParam::Finite(eps)).unwrap() - m0).abs();
            let c = d(1e-5) / 1e-5;
            let floor = 1e-13 * m0;
            ensure!(
                d(1e-6) <= 1.2 * c * 1e-6 + floor,
                "case {case}: continuity decay violated at eps = 1e-6"
            );
            ensure!(
                d(1e-7) <= 1.4 * c * 1e-7 + floor,
                "case {case}: continuity decay violated at eps = 1e-7"
            );

            // Classical chain.
            let g = geo_mean(x, y).unwrap();
            let l = log_mean(x, y).unwrap();
            let arith = 0.5 * (x + y);
            ensure!(g <= l * (1.0 + 1e-10), "case {case}: G > L");
            ensure!(l <= arith * (1.0 + 1e-10), "case {case}: L > A");

            // Homogeneity at 1e-12 relative, all exponent regimes.
            let scale: f64 = rng.gen_range(-10.0..10.0f64);
            let cscale = scale.exp2();
            for r in [
                PowerParam::NegInf,
                PowerParam::Finite(rng.gen_range(-6.0..6.0)),
                PowerParam::Finite(0.0),
                PowerParam::PosInf,
            ] {
                let scaled = power_mean(cscale * x, cscale * y, t, r).unwrap();
                let direct = cscale * power_mean(x, y, t, r).unwrap();
                ensure!(
                    (scaled - direct).abs() <= 1e-10 * direct,
                    "case {case}: homogeneity at r = {r:?}"
                );
            }

            // Symmetry at 1e-12 relative (bitwise in this implementation).
            let r = PowerParam::Finite(rng.gen_range(-6.0..6.0));
            let fwd = power_mean(x, y, t, r).unwrap();
            let rev = power_mean(y, x, 1.0 - t, r).unwrap();
            ensure!(
                (fwd - rev).abs() <= 1e-12 * fwd,
                "case {case}: symmetry broke at r = {r:?}"
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_2_quadrature_vs_oracle() {
    criterion("2 (quadrature vs oracle)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x22);
        let cfg = QuadConfig::default();
        let seg = seg01();
        let budget = 10.0 * cfg.tol;
        for case in 0..250 {
            let a: f64 = rng.gen_range(0.1f64.ln()..10.0f64.ln()).exp();
            let b: f64 = rng.gen_range(0.1f64.ln()..10.0f64.ln()).exp();
            let r = match case % 5 {
                0 | 1 => rng.gen_range(0.25..1.0),
                2 | 3 => rng.gen_range(1.0..5.0),
                _ => rng.gen_range(-5.0..-1.5),
            };
            let f = FuncSpec::tight(a, b, r).unwrap();
            let est = mean_integral(&f, &seg, &cfg).map_err(|e| e.to_string())?;
            let oracle = exact_tight_integral(a, b, r).unwrap();
            ensure!(
                (est.value - oracle).abs() <= budget,
                "case {case}: A={a} B={b} r={r}: |{} - {oracle}| > {budget}",
                est.value
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_3_equality_witnesses() {
    criterion("3 (equality witnesses)", || {
        let cfg = CheckConfig::default();

        // (a) chain terms for exp(x) on [0, 1].
        let f = FuncSpec::exp_affine(1.0, 0.0).unwrap();
        let rep = check_chain_z2(&f, 0.0, 1.0, &cfg).map_err(|e| e.to_string())?;
        let sqrt_e = E.sqrt();
        let expected = [sqrt_e, sqrt_e, sqrt_e, E - 1.0, E - 1.0, 0.5 * (1.0 + E)];
        for (i, (term, want)) in rep.terms.iter().zip(expected).enumerate() {
            ensure!(
                (term - want).abs() <= 1e-8,
                "chain term {i}: {term} vs {want}"
            );
        }
        ensure!(
            rep.verdicts.iter().all(|v| v.status == Status::Holds),
            "chain verdicts did not all hold"
        );

        // (b) z4 margin at the r = 1 equality point.
        let tight1 = FuncSpec::tight(1.0, 2.0, 1.0).unwrap();
        let v =
            check_z4(&tight1, &seg01(), 1.0, Z4Variant::Paper, &cfg).map_err(|e| e.to_string())?;
        ensure!(
            v.margin.abs() <= 1e-9,
            "z4 r=1 margin {} exceeds 1e-9",
            v.margin
        );

        // (c) t16 equality at r = s = 2.
        let tight2 = FuncSpec::tight(1.0, 2.0, 2.0).unwrap();
        let v = check_16(&tight2, &tight2, &seg01(), 2.0, 2.0, &cfg).map_err(|e| e.to_string())?;
        ensure!((v.lhs - 3.0).abs() <= 1e-8, "t16 lhs {} vs 3", v.lhs);
        ensure!((v.rhs - 3.0).abs() <= 1e-8, "t16 rhs {} vs 3", v.rhs);
        Ok(())
    });
}

#[test]
fn acceptance_4_theorem_support_in_regime() {
    criterion("4 (in-regime support)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x44);
        let cfg = CheckConfig::default();

        // z3 on increasing convex power-affine functions at three angles.
        // (z3's hypothesis is directed-path convexity; at phi > 0 that is
        // what increasing convex functions satisfy.)
        for case in 0..100 {
            let p = rng.gen_range(1.0..4.0);
            let c = rng.gen_range(0.2..3.0);
            let m = rng.gen_range(0.05..2.0);
            let a = rng.gen_range(0.0..1.0);
            let b = a + rng.gen_range(0.5..2.0);
            let f = FuncSpec::power_affine(p, c, m).unwrap();
            for phi in [0.0, FRAC_PI_6, FRAC_PI_3] {
                let seg = make_segment(a, b, phi, SegMode::RealProjection).unwrap();
                let verdicts = check_z3(&f, &seg, &cfg).map_err(|e| e.to_string())?;
                for v in verdicts {
                    ensure!(
                        v.status == Status::Holds,
                        "case {case} phi={phi}: {} {} (margin {})",
                        v.check_id,
                        v.status.as_str(),
                        v.margin
                    );
                }
            }
        }

        // z4 paper variant on the tight family with r in [1, 5].
        for case in 0..100 {
            let a = rng.gen_range(0.1f64.ln()..10.0f64.ln()).exp();
            let b = rng.gen_range(0.1f64.ln()..10.0f64.ln()).exp();
            let r = rng.gen_range(1.0..5.0);
            let f = FuncSpec::tight(a, b, r).unwrap();
            let v = check_z4(&f, &seg01(), r, Z4Variant::Paper, &cfg).map_err(|e| e.to_string())?;
            ensure!(
                v.status == Status::Holds,
                "case {case}: z4 paper failed at A={a} B={b} r={r} (margin {})",
                v.margin
            );
        }

        // Product bounds on tight pairs with r, s in (0, 2].
        for case in 0..100 {
            let a1 = rng.gen_range(0.5..3.0);
            let b1 = rng.gen_range(0.5..3.0);
            let a2 = rng.gen_range(0.5..3.0);
            let b2 = rng.gen_range(0.5..3.0);
            let r = rng.gen_range(0.1..2.0f64).min(2.0);
            let s = rng.gen_range(0.1..2.0f64).min(2.0);
            let f = FuncSpec::tight(a1, b1, r).unwrap();
            let g = FuncSpec::tight(a2, b2, s).unwrap();
            let v16 = check_16(&f, &g, &seg01(), r, s, &cfg).map_err(|e| e.to_string())?;
            ensure!(
                v16.status == Status::Holds,
                "case {case}: t16 failed at r={r} s={s} (margin {})",
                v16.margin
            );
            let v160 = check_160(&f, &g, &seg01(), r, s, &cfg).map_err(|e| e.to_string())?;
            ensure!(
                v160.status == Status::Holds,
                "case {case}: t160 failed at r={r} s={s} (margin {})",
                v160.margin
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_5_documented_violations() {
    criterion("5 (documented violations)", || {
        let cfg = CheckConfig::default();
        let tight_half = FuncSpec::tight(1.0, 2.0, 0.5).unwrap();

        let v = check_z4(&tight_half, &seg01(), 0.5, Z4Variant::Paper, &cfg)
            .map_err(|e| e.to_string())?;
        ensure!((v.lhs - 7.0 / 3.0).abs() <= 1e-8, "z4 lhs {} vs 7/3", v.lhs);
        ensure!((v.rhs - 1.0).abs() <= 1e-12, "z4 rhs {} vs 1", v.rhs);
        ensure!(
            v.status == Status::Violated,
            "z4 paper at r=1/2 did not violate"
        );

        let v = check_z4(&tight_half, &seg01(), 0.5, Z4Variant::Corrected, &cfg)
            .map_err(|e| e.to_string())?;
        ensure!(
            (v.rhs - 3.0).abs() <= 1e-12,
            "z4-corrected rhs {} vs 3",
            v.rhs
        );
        ensure!(
            v.status == Status::Holds,
            "z4 corrected at r=1/2 did not hold"
        );

        let one = FuncSpec::parse("expr:1").unwrap();
        let v = check_corollary(
            Corollary::C2FirstPrinted,
            &one,
            Some(&one),
            &seg01(),
            None,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            (v.lhs - 1.0).abs() <= 1e-12,
            "c2 printed lhs {} vs 1",
            v.lhs
        );
        ensure!(
            (v.rhs - 2.0 / 3.0).abs() <= 1e-12,
            "c2 printed rhs {} vs 2/3",
            v.rhs
        );
        ensure!(v.status == Status::Violated, "c2 printed did not violate");

        let v = check_corollary(
            Corollary::C2FirstReconstructed,
            &one,
            Some(&one),
            &seg01(),
            None,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            (v.rhs - 4.0 / 3.0).abs() <= 1e-12,
            "c2 reconstructed rhs {} vs 4/3",
            v.rhs
        );
        ensure!(v.status == Status::Holds, "c2 reconstructed did not hold");
        Ok(())
    });
}

#[test]
fn acceptance_6_falsifier() {
    criterion("6 (falsifier)", || {
        let space = ParamSpace {
            r: Range::new(0.0, 1.0),
            ..ParamSpace::default()
        };
        let cfg = CheckConfig::default();
        let outcome = falsify(TheoremId::Z4(Z4Variant::Paper), &space, 1000, 42, &cfg, 16)
            .map_err(|e| e.to_string())?;
        ensure!(
            !outcome.records.is_empty(),
            "no z4-paper counterexample with seed 42 in 1000 trials"
        );

        // Round-trip the records through the serialized report and replay.
        let mut report = Report::new("falsify --theorem z4 --budget 1000 --seed 42".into());
        report.summary.falsify = Some(outcome.summary);
        report.counterexamples = outcome.records;
        let text = report.to_json();
        let parsed = ParsedReport::from_json(&text).map_err(|e| e.to_string())?;
        ensure!(
            parsed.counterexamples.len() == report.counterexamples.len(),
            "serialized record count changed"
        );
        for (rec, orig) in parsed.counterexamples.iter().zip(&report.counterexamples) {
            ensure!(
                rec.lhs.to_bits() == orig.lhs.to_bits()
                    && rec.rhs.to_bits() == orig.rhs.to_bits()
                    && rec.margin.to_bits() == orig.margin.to_bits(),
                "17-digit serialization altered a record"
            );
            let v = replay(rec).map_err(|e| e.to_string())?;
            ensure!(
                v.status == Status::Violated,
                "replayed record (trial {}) no longer violates",
                rec.trial_index
            );
            ensure!(
                v.lhs.to_bits() == rec.lhs.to_bits()
                    && v.rhs.to_bits() == rec.rhs.to_bits()
                    && v.margin.to_bits() == rec.margin.to_bits(),
                "replay of trial {} did not reproduce bit-exactly",
                rec.trial_index
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_7_classifier() {
    criterion("7 (classifier)", || {
        let cfg = ClassifyConfig::default();
        let grid = GridSpec::default();

        // Index of (1 + x)^2 is 1/2.
        let f = FuncSpec::power_affine(2.0, 1.0, 1.0).unwrap();
        let idx = r_convexity_index(&f, &seg01(), &grid, 1e-3, &cfg).map_err(|e| e.to_string())?;
        match idx {
            RIndex::Value(r) => {
                ensure!((r - 0.5).abs() <= 1e-3, "index {r} not within 1e-3 of 0.5")
            }
            other => return Err(format!("expected a finite index, got {other:?}")),
        }

        // Exponentials of affine functions are log-convex with flat margin.
        for (alpha, beta) in [(1.0, 0.0), (2.0, 0.0), (-1.5, 0.3), (0.4, -1.0)] {
            let f = FuncSpec::exp_affine(alpha, beta).unwrap();
            let v = check_phi_r_convex(&f, &seg01(), PowerParam::Finite(0.0), &grid, &cfg)
                .map_err(|e| e.to_string())?;
            ensure!(
                v.holds_on_grid && v.worst_margin <= 1e-10,
                "expaffine({alpha},{beta}): margin {} at r=0",
                v.worst_margin
            );
            let idx =
                r_convexity_index(&f, &seg01(), &grid, 1e-3, &cfg).map_err(|e| e.to_string())?;
            match idx {
                RIndex::Value(r) => ensure!(
                    r.abs() <= 1e-3,
                    "expaffine({alpha},{beta}): index {r} not at 0"
                ),
                other => return Err(format!("expaffine({alpha},{beta}): index {other:?}")),
            }
        }

        // sqrt(x) on [1, 4] is not 1-convex; worst grid witness pinned.
        let f = FuncSpec::parse("expr:sqrt(x)").unwrap();
        let seg = make_segment(1.0, 4.0, 0.0, SegMode::RealProjection).unwrap();
        let v = check_phi_r_convex(
            &f,
            &seg,
            PowerParam::Finite(1.0),
            &GridSpec { u: 33, v: 33, t: 5 },
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        ensure!(!v.holds_on_grid, "sqrt(x) reported 1-convex");
        ensure!(
            v.witness.u == 1.0 && v.witness.v == 4.0 && v.witness.t == 0.5,
            "worst witness ({}, {}, {}) is not (1, 4, 0.5)",
            v.witness.u,
            v.witness.v,
            v.witness.t
        );
        let expected = 2.5f64.sqrt() - 1.5;
        ensure!(
            (v.worst_margin - expected).abs() <= 1e-9,
            "margin {} vs {expected}",
            v.worst_margin
        );
        Ok(())
    });
}

#[test]
fn acceptance_8_cli() {
    criterion("8 (cli)", || {
        let bin = env!("CARGO_BIN_EXE_hhlab");
        let run = |args: &[&str]| {
            std::process::Command::new(bin)
                .args(args)
                .output()
                .expect("spawn hhlab")
        };

        // Exit code 0 with the stated equality values.
        let out = run(&[
            "check",
            "--theorem",
            "c1",
            "--func",
            "tight:1,2,1",
            "--a",
            "0",
            "--b",
            "1",
            "--quiet",
        ]);
        ensure!(
            out.status.code() == Some(0),
            "c1 exit {:?}",
            out.status.code()
        );
        let parsed = ParsedReport::from_json(&String::from_utf8_lossy(&out.stdout))
            .map_err(|e| e.to_string())?;
        ensure!((parsed.verdicts[0].lhs - 1.5).abs() <= 1e-9, "c1 lhs");
        ensure!((parsed.verdicts[0].rhs - 1.5).abs() <= 1e-9, "c1 rhs");

        // Exit code 1 with the documented violation values.
        let out = run(&[
            "check",
            "--theorem",
            "z4",
            "--func",
            "tight:1,2,0.5",
            "--a",
            "0",
            "--b",
            "1",
            "--r",
            "0.5",
            "--quiet",
        ]);
        ensure!(
            out.status.code() == Some(1),
            "z4 exit {:?}",
            out.status.code()
        );
        let parsed = ParsedReport::from_json(&String::from_utf8_lossy(&out.stdout))
            .map_err(|e| e.to_string())?;
        ensure!(
            (parsed.verdicts[0].lhs - 7.0 / 3.0).abs() <= 1e-6,
            "z4 lhs {}",
            parsed.verdicts[0].lhs
        );
        ensure!((parsed.verdicts[0].rhs - 1.0).abs() <= 1e-9, "z4 rhs");
        ensure!(parsed.verdicts[0].status == "violated", "z4 status");

        // Exit code 0 for the chain, with the six pinned terms.
        let out = run(&[
            "chain",
            "--func",
            "expaffine:1,0",
            "--a",
            "0",
            "--b",
            "1",
            "--quiet",
        ]);
        ensure!(
            out.status.code() == Some(0),
            "chain exit {:?}",
            out.status.code()
        );
        let text = String::from_utf8_lossy(&out.stdout);
        let root: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let terms: Vec<f64> = root["summary"]["chain_terms"]
            .as_array()
            .ok_or("missing chain_terms")?
            .iter()
            .filter_map(serde_json::Value::as_f64)
            .collect();
        let sqrt_e = E.sqrt();
        let expected = [sqrt_e, sqrt_e, sqrt_e, E - 1.0, E - 1.0, 0.5 * (1.0 + E)];
        ensure!(terms.len() == 6, "chain term count {}", terms.len());
        for (i, (term, want)) in terms.iter().zip(expected).enumerate() {
            ensure!(
                (term - want).abs() <= 1e-6,
                "chain term {i}: {term} vs {want}"
            );
        }

        // Golden report: byte-stable serialization of a fixed run.
        let out = run(&[
            "check",
            "--theorem",
            "c1",
            "--func",
            "tight:1,2,1",
            "--a",
            "0",
            "--b",
            "1",
            "--quiet",
        ]);
        let golden = include_str!("golden/check_c1.json");
        let got = String::from_utf8_lossy(&out.stdout);
        ensure!(
            got == golden,
            "golden mismatch for check_c1.json:\n--- got ---\n{got}\n--- want ---\n{golden}"
        );

        let out = run(&[
            "chain",
            "--func",
            "expaffine:1,0",
            "--a",
            "0",
            "--b",
            "1",
            "--quiet",
        ]);
        let golden = include_str!("golden/chain_expaffine.json");
        let got = String::from_utf8_lossy(&out.stdout);
        ensure!(
            got == golden,
            "golden mismatch for chain_expaffine.json:\n{got}"
        );

        let out = run(&[
            "check",
            "--theorem",
            "z4",
            "--func",
            "tight:1,2,0.5",
            "--a",
            "0",
            "--b",
            "1",
            "--r",
            "0.5",
            "--format",
            "csv",
            "--quiet",
        ]);
        let golden = include_str!("golden/check_z4_violation.csv");
        let got = String::from_utf8_lossy(&out.stdout);
        ensure!(
            got == golden,
            "golden mismatch for check_z4_violation.csv:\n{got}"
        );

        // 17-digit round-trip across 100 randomized verdict payloads.
        let mut rng = ChaCha8Rng::seed_from_u64(0x88);
        for _ in 0..100 {
            for _ in 0..5 {
                let v = f64::from_bits(rng.gen::<u64>());
                if v.is_finite() {
                    let back: f64 = fmt_f64(v).parse().map_err(|e| format!("{e:?}"))?;
                    ensure!(back.to_bits() == v.to_bits(), "round-trip broke for {v:e}");
                }
            }
        }
        Ok(())
    });
}
