//! The little expression language behind `expr:` function specs: parsing,
//! strict evaluation, and print/parse round-tripping.
//!
//! Run with: cargo run --example expressions

use hhlab::expr::{parse, EvalError, ParseError};

fn main() {
    println!("parsing and evaluating:");
    for (src, x) in [
        ("exp(2*x)", 0.5),
        ("(1+x)^2", 0.5),
        ("sqrt(1 + x^2)", 2.0),
        ("2^-x + 1e-3", 3.0),
        ("-x^2 + 10", 2.0),
    ] {
        let ast = parse(src).unwrap();
        let value = ast.eval(x).unwrap();
        println!("  {src:<16} at x = {x:<4} -> {value:.9}");
    }

    println!();
    println!("pretty-printing re-parses to the identical tree:");
    for src in ["exp(2*x)", "1 - x / (3 + x)", "abs(-x)^3"] {
        let ast = parse(src).unwrap();
        let printed = ast.to_string();
        assert_eq!(parse(&printed).unwrap(), ast);
        println!("  {src:<20} prints as {printed}");
    }

    println!();
    println!("errors carry byte offsets:");
    for src in ["2*", "1 + tan(x)", "(1+x"] {
        match parse(src) {
            Err(ParseError::Syntax { offset, expected }) => {
                println!("  {src:<12} -> syntax error at offset {offset}: expected {expected}")
            }
            Err(ParseError::UnknownIdentifier { name, offset }) => {
                println!("  {src:<12} -> unknown identifier `{name}` at offset {offset}")
            }
            Ok(_) => unreachable!(),
        }
    }

    println!();
    println!("evaluation is strict about domains:");
    for (src, x) in [
        ("ln(x)", -1.0),
        ("sqrt(x - 2)", 0.0),
        ("1/x", 0.0),
        ("x^0.5", -2.0),
    ] {
        match parse(src).unwrap().eval(x) {
            Err(EvalError::Domain { what, x }) => {
                println!("  {src:<12} at x = {x:<4} -> domain error: {what}")
            }
            other => println!("  {src:<12} at x = {x:<4} -> {other:?}"),
        }
    }
}
