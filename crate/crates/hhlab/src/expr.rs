//! A minimal expression language for user-supplied functions of one variable.
//!
//! Grammar (standard precedence, `^` right-associative and binding tighter
//! than unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | 'x' | name '(' expr ')' | '(' expr ')'
//! name   := 'exp' | 'ln' | 'sqrt' | 'abs'
//! ```
//!
//! Numbers are decimal or scientific (`2`, `0.5`, `1e-3`). Evaluation is
//! strict about domains: `ln` of a nonpositive value, `sqrt` of a negative,
//! `0^negative`, a fractional power of a negative base, division by zero and
//! overflow to infinity are all reported as errors instead of producing NaN
//! or infinities.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl UnaryOp {
    fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Expression tree over a single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("domain error at x = {x}: {what}")]
    Domain { what: String, x: f64 },
    #[error("overflow at x = {x}: {what}")]
    Overflow { what: String, x: f64 },
}

pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        src: source.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.pos >= parser.src.len() {
        return Err(ParseError::Syntax {
            offset: 0,
            expected: "a non-empty expression".into(),
        });
    }
    let expr = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(ParseError::Syntax {
            offset: parser.pos,
            expected: "end of input or an operator".into(),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const ATOM_EXPECTED: &str = "a number, `x`, a function name, `(`, or `-`";

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        while let Some(c) = self.peek() {
            let op = match c {
                b'+' => BinOp::Add,
                b'-' => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.parse_term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        while let Some(c) = self.peek() {
            let op = match c {
                b'*' => BinOp::Mul,
                b'/' => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // Exponent re-enters at the unary level: `^` is right-associative
            // and `2^-3` is legal.
            let exponent = self.parse_unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() => self.parse_ident(),
            _ => Err(ParseError::Syntax {
                offset: self.pos,
                expected: ATOM_EXPECTED.into(),
            }),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: self.pos,
                expected: format!("`{}`", c as char),
            })
        }
    }

    fn parse_number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mut probe = self.pos + 1;
            if probe < self.src.len() && (self.src[probe] == b'+' || self.src[probe] == b'-') {
                probe += 1;
            }
            if probe < self.src.len() && self.src[probe].is_ascii_digit() {
                self.pos = probe;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii literal");
        let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
            offset: start,
            expected: "a numeric literal".into(),
        })?;
        if !value.is_finite() {
            return Err(ParseError::Syntax {
                offset: start,
                expected: "a finite numeric literal".into(),
            });
        }
        Ok(Expr::Const(value))
    }

    fn parse_ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
        if name == "x" {
            return Ok(Expr::Var);
        }
        let op = match name {
            "exp" => UnaryOp::Exp,
            "ln" => UnaryOp::Ln,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => {
                return Err(ParseError::UnknownIdentifier {
                    name: name.into(),
                    offset: start,
                })
            }
        };
        self.expect(b'(')?;
        let arg = self.parse_expr()?;
        self.expect(b')')?;
        Ok(Expr::Unary(op, Box::new(arg)))
    }
}

impl Expr {
    /// Evaluates at `x` under strict IEEE-with-errors semantics.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var => Ok(x),
            Expr::Unary(op, inner) => {
                let v = inner.eval(x)?;
                let out = match op {
                    UnaryOp::Neg => -v,
                    UnaryOp::Exp => v.exp(),
                    UnaryOp::Ln => {
                        if v <= 0.0 {
                            return Err(EvalError::Domain {
                                what: format!("ln({v})"),
                                x,
                            });
                        }
                        v.ln()
                    }
                    UnaryOp::Sqrt => {
                        if v < 0.0 {
                            return Err(EvalError::Domain {
                                what: format!("sqrt({v})"),
                                x,
                            });
                        }
                        v.sqrt()
                    }
                    UnaryOp::Abs => v.abs(),
                };
                check_finite(out, || format!("{}({v})", op.name()), x)
            }
            Expr::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x)?;
                let r = rhs.eval(x)?;
                let out = match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => {
                        if r == 0.0 {
                            return Err(EvalError::Domain {
                                what: format!("{l} / 0"),
                                x,
                            });
                        }
                        l / r
                    }
                    BinOp::Pow => {
                        let integer_exp = r.fract() == 0.0 && r.abs() < 2f64.powi(53);
                        if l < 0.0 && !integer_exp {
                            return Err(EvalError::Domain {
                                what: format!("({l})^{r} with fractional exponent"),
                                x,
                            });
                        }
                        if l == 0.0 && r < 0.0 {
                            return Err(EvalError::Domain {
                                what: format!("0^{r}"),
                                x,
                            });
                        }
                        l.powf(r)
                    }
                };
                check_finite(out, || format!("{l} {} {r}", op.symbol()), x)
            }
        }
    }
}

fn check_finite(v: f64, what: impl Fn() -> String, x: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Overflow { what: what(), x })
    }
}

impl fmt::Display for Expr {
    /// Prints a form that re-parses to a structurally identical tree.
    ///
    /// Composite nodes are fully parenthesized, so precedence can never
    /// reassociate the round trip (`(-x) ^ 2` vs `-(x ^ 2)` stay distinct).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var => write!(f, "x"),
            Expr::Unary(UnaryOp::Neg, inner) => write!(f, "(-{inner})"),
            Expr::Unary(op, inner) => write!(f, "{}({inner})", op.name()),
            Expr::Binary(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
        }
    }
}
