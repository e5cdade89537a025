//! A small text DSL defining sequences of fuzzy numbers by α-level endpoint
//! formulas in the variables `n` and `alpha`.
//!
//! Grammar (ASCII only):
//!
//! ```text
//! seq lower = <expr>; upper = <expr>;
//! [at <k>: lower = <expr>, upper = <expr>;]*
//! [start = <k>;]
//! ```
//!
//! Expressions use literals, `n`, `alpha`, the operators `+ - * / ^` and the
//! functions `pow, factorial, abs, min, max`. Precedence is
//! `^` > unary `-` > `* /` > `+ -`, every binary operator associates left
//! (including `^`, so `2^3^2 = (2^3)^2`). `^` on a negative base is defined
//! only for integer exponents.

mod eval;
mod lexer;
mod parser;

pub use eval::{eval_expr, eval_expr_exact, eval_term, eval_term_exact, EvalError};

use std::fmt;

use thiserror::Error;

/// Variables available in endpoint formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    N,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Builtin functions; `pow(a, b)` is the function form of `a ^ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Pow,
    Factorial,
    Abs,
    Min,
    Max,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Pow => "pow",
            Func::Factorial => "factorial",
            Func::Abs => "abs",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Factorial | Func::Abs => 1,
            Func::Pow | Func::Min | Func::Max => 2,
        }
    }
}

/// Expression AST for endpoint formulas.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// A parsed sequence definition: endpoint formulas, per-index overrides and
/// the starting formula index.
///
/// The sequence exposes terms for i = 0, 1, 2, …; term i evaluates the
/// formulas at n = `start_index` + i. Overrides are keyed by formula index n.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqDef {
    pub lower: Expr,
    pub upper: Expr,
    pub start_index: u64,
    pub overrides: Vec<(u64, Expr, Expr)>,
}

/// Parse failure with the character offset of the offending token.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses DSL source into a [`SeqDef`].
pub fn parse(source: &str) -> Result<SeqDef, ParseError> {
    parser::parse(source)
}

// Printer precedence levels; atoms sit above everything.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Binary(BinOp::Pow, ..) => 4,
        Expr::Number(_) | Expr::Var(_) | Expr::Call(..) => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Var(Var::N) => write!(f, "n"),
            Expr::Var(Var::Alpha) => write!(f, "alpha"),
            Expr::Neg(inner) => {
                if precedence(inner) < 3 {
                    write!(f, "-({inner})")
                } else {
                    write!(f, "-{inner}")
                }
            }
            Expr::Binary(op, l, r) => {
                let (sym, prec) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                if precedence(l) < prec {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {sym} ")?;
                if *op == BinOp::Pow {
                    // exponents reparse bare only as atoms
                    if precedence(r) == 5 {
                        write!(f, "{r}")
                    } else {
                        write!(f, "({r})")
                    }
                } else if precedence(r) <= prec {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for SeqDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seq lower = {}; upper = {};", self.lower, self.upper)?;
        for (k, lo, hi) in &self.overrides {
            write!(f, " at {k}: lower = {lo}, upper = {hi};")?;
        }
        if self.start_index != 0 {
            write!(f, " start = {};", self.start_index)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_roundtrips_nested_expressions() {
        let cases = [
            "seq lower = (-1) ^ n * n + (alpha / 2) ^ n; upper = 1;",
            "seq lower = 0; upper = 0;",
            "seq lower = 1 - 2 - 3; upper = 2 ^ 3 ^ 2;",
            "seq lower = min(n, alpha) + max(1, factorial(3)); upper = abs(-n);",
            "seq lower = -n ^ 2; upper = pow(2, -n);",
        ];
        for src in cases {
            let ast = parse(src).unwrap();
            let printed = ast.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(ast, reparsed, "roundtrip failed for {src:?} -> {printed:?}");
        }
    }
}
