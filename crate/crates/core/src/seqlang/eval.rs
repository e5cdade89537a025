//! Evaluation of DSL expressions, in f64 and in exact rational arithmetic.
//!
//! The exact path evaluates the same real-valued formula as the f64 path
//! (numeric literals denote their f64 values) and exists for transforms that
//! must sum exponentially growing terms without cancellation error. It
//! returns `Ok(None)` when a formula is not exactly evaluable (a fractional
//! exponent), in which case callers fall back to f64.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{BinOp, Expr, Func, SeqDef, Var};
use crate::bigratio::{self, ExactCuts};
use crate::fuzzy::{FuzzyError, FuzzyNumber};

/// Evaluation failure for a term of a sequence definition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// Domain error in an endpoint formula, located by (n, α).
    #[error("domain error at n = {n}, alpha = {alpha}: {message}")]
    Domain { n: u64, alpha: f64, message: String },
    /// The formulas produced endpoint arrays that are not a fuzzy number.
    #[error("term at n = {n} is not a fuzzy number: {source}")]
    Invalid {
        n: u64,
        #[source]
        source: FuzzyError,
    },
}

/// Evaluates an expression at real-valued `n` and `alpha` in f64.
pub fn eval_expr(e: &Expr, n: f64, alpha: f64) -> Result<f64, String> {
    Ok(match e {
        Expr::Number(x) => *x,
        Expr::Var(Var::N) => n,
        Expr::Var(Var::Alpha) => alpha,
        Expr::Neg(inner) => -eval_expr(inner, n, alpha)?,
        Expr::Binary(op, l, r) => {
            let a = eval_expr(l, n, alpha)?;
            let b = eval_expr(r, n, alpha)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err("division by zero".into());
                    }
                    a / b
                }
                BinOp::Pow => pow_f64(a, b)?,
            }
        }
        Expr::Call(func, args) => {
            let vals: Vec<f64> = args
                .iter()
                .map(|a| eval_expr(a, n, alpha))
                .collect::<Result<_, _>>()?;
            match func {
                Func::Pow => pow_f64(vals[0], vals[1])?,
                Func::Factorial => factorial_f64(vals[0])?,
                Func::Abs => vals[0].abs(),
                Func::Min => vals[0].min(vals[1]),
                Func::Max => vals[0].max(vals[1]),
            }
        }
    })
}

fn pow_f64(base: f64, exp: f64) -> Result<f64, String> {
    if exp.fract() == 0.0 && exp.abs() <= i32::MAX as f64 {
        if base == 0.0 && exp < 0.0 {
            return Err("zero raised to a negative power".into());
        }
        Ok(base.powi(exp as i32))
    } else if base < 0.0 {
        Err(format!(
            "negative base {base} with non-integer exponent {exp}"
        ))
    } else if base == 0.0 && exp < 0.0 {
        Err("zero raised to a negative power".into())
    } else {
        Ok(base.powf(exp))
    }
}

fn factorial_f64(x: f64) -> Result<f64, String> {
    if x.fract() != 0.0 || x < 0.0 {
        return Err(format!("factorial of non-integer or negative value {x}"));
    }
    let k = x as u64;
    if k > 170 {
        // past 170! every value exceeds the f64 range
        return Ok(f64::INFINITY);
    }
    let mut acc = 1.0f64;
    for i in 2..=k {
        acc *= i as f64;
    }
    Ok(acc)
}

/// Exact-rational evaluation. `Ok(None)` means the expression is not exactly
/// evaluable (fractional exponent); errors match the f64 path.
pub fn eval_expr_exact(
    e: &Expr,
    n: &BigRational,
    alpha: &BigRational,
) -> Result<Option<BigRational>, String> {
    Ok(Some(match e {
        Expr::Number(x) => match bigratio::from_f64(*x) {
            Some(r) => r,
            None => return Ok(None),
        },
        Expr::Var(Var::N) => n.clone(),
        Expr::Var(Var::Alpha) => alpha.clone(),
        Expr::Neg(inner) => match eval_expr_exact(inner, n, alpha)? {
            Some(v) => -v,
            None => return Ok(None),
        },
        Expr::Binary(op, l, r) => {
            let (a, b) = match (
                eval_expr_exact(l, n, alpha)?,
                eval_expr_exact(r, n, alpha)?,
            ) {
                (Some(a), Some(b)) => (a, b),
                _ => return Ok(None),
            };
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b.is_zero() {
                        return Err("division by zero".into());
                    }
                    a / b
                }
                BinOp::Pow => match pow_exact(&a, &b)? {
                    Some(v) => v,
                    None => return Ok(None),
                },
            }
        }
        Expr::Call(func, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                match eval_expr_exact(a, n, alpha)? {
                    Some(v) => vals.push(v),
                    None => return Ok(None),
                }
            }
            match func {
                Func::Pow => match pow_exact(&vals[0], &vals[1])? {
                    Some(v) => v,
                    None => return Ok(None),
                },
                Func::Factorial => factorial_exact(&vals[0])?,
                Func::Abs => vals[0].abs(),
                Func::Min => vals[0].clone().min(vals[1].clone()),
                Func::Max => vals[0].clone().max(vals[1].clone()),
            }
        }
    }))
}

fn pow_exact(base: &BigRational, exp: &BigRational) -> Result<Option<BigRational>, String> {
    if !exp.is_integer() {
        if base.is_negative() {
            return Err(format!(
                "negative base {base} with non-integer exponent {exp}"
            ));
        }
        return Ok(None);
    }
    let e = match exp.numer().to_i32() {
        Some(e) => e,
        None => return Ok(None),
    };
    if base.is_zero() && e < 0 {
        return Err("zero raised to a negative power".into());
    }
    if base.is_zero() && e == 0 {
        // match f64 semantics: 0^0 = 1
        return Ok(Some(BigRational::one()));
    }
    Ok(Some(num_traits::pow::Pow::pow(base.clone(), e)))
}

fn factorial_exact(x: &BigRational) -> Result<BigRational, String> {
    if !x.is_integer() || x.is_negative() {
        return Err(format!("factorial of non-integer or negative value {x}"));
    }
    let k = match x.numer().to_u64() {
        Some(k) if k <= 1_000_000 => k,
        _ => return Err(format!("factorial argument too large: {x}")),
    };
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    Ok(BigRational::from_integer(acc))
}

fn formulas_for(def: &SeqDef, n: u64) -> (&Expr, &Expr) {
    for (k, lo, hi) in &def.overrides {
        if *k == n {
            return (lo, hi);
        }
    }
    (&def.lower, &def.upper)
}

/// Evaluates one term at formula index `n` on the α-grid of size `levels`,
/// validating the result as a fuzzy number.
pub fn eval_term(def: &SeqDef, n: u64, levels: usize) -> Result<FuzzyNumber, EvalError> {
    let (lo_expr, hi_expr) = formulas_for(def, n);
    let nf = n as f64;
    let m = levels as f64;
    let mut lo = Vec::with_capacity(levels + 1);
    let mut hi = Vec::with_capacity(levels + 1);
    for j in 0..=levels {
        let alpha = j as f64 / m;
        let l = eval_expr(lo_expr, nf, alpha)
            .map_err(|message| EvalError::Domain { n, alpha, message })?;
        let h = eval_expr(hi_expr, nf, alpha)
            .map_err(|message| EvalError::Domain { n, alpha, message })?;
        lo.push(l);
        hi.push(h);
    }
    FuzzyNumber::from_alpha_cuts(lo, hi).map_err(|source| EvalError::Invalid { n, source })
}

/// Exact-rational variant of [`eval_term`]. `Ok(None)` when the formulas are
/// not exactly evaluable. The cut grid is validated like the f64 path.
pub fn eval_term_exact(
    def: &SeqDef,
    n: u64,
    levels: usize,
) -> Result<Option<ExactCuts>, EvalError> {
    let (lo_expr, hi_expr) = formulas_for(def, n);
    let nr = BigRational::from_integer(BigInt::from(n));
    let mut cuts = Vec::with_capacity(levels + 1);
    for j in 0..=levels {
        let alpha = bigratio::alpha_ratio(j, levels);
        let alpha_f = j as f64 / levels as f64;
        let l = match eval_expr_exact(lo_expr, &nr, &alpha).map_err(|message| {
            EvalError::Domain { n, alpha: alpha_f, message }
        })? {
            Some(v) => v,
            None => return Ok(None),
        };
        let h = match eval_expr_exact(hi_expr, &nr, &alpha).map_err(|message| {
            EvalError::Domain { n, alpha: alpha_f, message }
        })? {
            Some(v) => v,
            None => return Ok(None),
        };
        cuts.push((l, h));
    }
    validate_cuts(&cuts).map_err(|source| EvalError::Invalid { n, source })?;
    Ok(Some(cuts))
}

fn validate_cuts(cuts: &ExactCuts) -> Result<(), FuzzyError> {
    for j in 0..cuts.len() {
        let (l, h) = &cuts[j];
        if l > h {
            return Err(FuzzyError::InvalidFuzzyNumber {
                level: j,
                reason: "empty cut".into(),
            });
        }
        if j > 0 {
            if *l < cuts[j - 1].0 {
                return Err(FuzzyError::InvalidFuzzyNumber {
                    level: j,
                    reason: "lo decreases".into(),
                });
            }
            if *h > cuts[j - 1].1 {
                return Err(FuzzyError::InvalidFuzzyNumber {
                    level: j,
                    reason: "hi increases".into(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqlang::parse;

    const EXAMPLE: &str = "seq lower = (-1)^n * n + (alpha/2)^n; \
                           upper = (-1)^n * n + 2 - (alpha/2)^n; \
                           at 0: lower = 1, upper = 1;";

    #[test]
    fn example_term_at_n1() {
        // n = 1, α = 1: [−1 + 1/2, −1 + 2 − 1/2] = [−0.5, 0.5]
        let def = parse(EXAMPLE).unwrap();
        let u = eval_term(&def, 1, 4).unwrap();
        assert_eq!(u.cut(4), (-0.5, 0.5));
        // the n = 0 override makes u₀ = 1̄
        let u0 = eval_term(&def, 0, 4).unwrap();
        assert_eq!(u0, FuzzyNumber::crisp(1.0, 4).unwrap());
    }

    #[test]
    fn constant_zero_is_crisp_zero() {
        let def = parse("seq lower = 0; upper = 0;").unwrap();
        for n in [0, 3, 17] {
            assert_eq!(
                eval_term(&def, n, 8).unwrap(),
                FuzzyNumber::crisp(0.0, 8).unwrap()
            );
        }
    }

    #[test]
    fn empty_cut_is_reported() {
        let def = parse("seq lower = 1; upper = 0;").unwrap();
        let err = eval_term(&def, 5, 4).unwrap_err();
        assert!(matches!(err, EvalError::Invalid { n: 5, .. }));
    }

    #[test]
    fn domain_errors_carry_location() {
        let def = parse("seq lower = 1/(n - 2); upper = 10;").unwrap();
        let err = eval_term(&def, 2, 4).unwrap_err();
        match err {
            EvalError::Domain { n, message, .. } => {
                assert_eq!(n, 2);
                assert!(message.contains("division by zero"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let def = parse("seq lower = factorial(alpha); upper = 10;").unwrap();
        let err = eval_term(&def, 1, 4).unwrap_err();
        match err {
            EvalError::Domain { alpha, message, .. } => {
                assert_eq!(alpha, 0.25);
                assert!(message.contains("factorial of non-integer"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_base_fractional_exponent_is_domain_error() {
        let def = parse("seq lower = (-2)^0.5; upper = 10;").unwrap();
        assert!(matches!(
            eval_term(&def, 0, 2),
            Err(EvalError::Domain { .. })
        ));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial_f64(0.0).unwrap(), 1.0);
        assert_eq!(factorial_f64(5.0).unwrap(), 120.0);
        let f170 = factorial_f64(170.0).unwrap();
        assert!((f170 / 7.257415615307999e306 - 1.0).abs() < 1e-13);
        assert_eq!(factorial_f64(171.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn exact_matches_f64_on_the_example() {
        let def = parse(EXAMPLE).unwrap();
        for n in [0u64, 1, 2, 7, 20] {
            let f = eval_term(&def, n, 16).unwrap();
            let cuts = eval_term_exact(&def, n, 16).unwrap().unwrap();
            for j in 0..=16 {
                let exact_lo = crate::bigratio::to_f64_scaled(&cuts[j].0, 1.0);
                let exact_hi = crate::bigratio::to_f64_scaled(&cuts[j].1, 1.0);
                assert!((f.cut(j).0 - exact_lo).abs() < 1e-12);
                assert!((f.cut(j).1 - exact_hi).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_fractional_exponent_falls_back() {
        let def = parse("seq lower = n^0.5; upper = n + 1;").unwrap();
        assert!(eval_term_exact(&def, 4, 4).unwrap().is_none());
        // but the f64 path evaluates fine
        assert!(eval_term(&def, 4, 4).is_ok());
    }
}
