//! Recursive-descent parser for the sequence DSL.

use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, Expr, Func, ParseError, SeqDef, Var};

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

pub fn parse(source: &str) -> Result<SeqDef, ParseError> {
    let toks = tokenize(source)?;
    let mut p = Parser { toks, at: 0 };
    let def = p.seq_def()?;
    p.expect_eof()?;
    Ok(def)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.peek().pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {}", describe(&self.peek().tok)))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => self.err(format!("expected keyword `{kw}`, found {}", describe(other))),
        }
    }

    fn keyword_is(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.err(format!(
                "expected end of input, found {}",
                describe(&self.peek().tok)
            ))
        }
    }

    fn nonneg_integer(&mut self) -> Result<u64, ParseError> {
        match self.peek().tok {
            Tok::Number(x) if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => {
                self.bump();
                Ok(x as u64)
            }
            _ => self.err("expected a nonnegative integer"),
        }
    }

    fn seq_def(&mut self) -> Result<SeqDef, ParseError> {
        self.expect_keyword("seq")?;
        self.expect_keyword("lower")?;
        self.expect(Tok::Equals, "`=`")?;
        let lower = self.expr()?;
        self.expect(Tok::Semi, "`;`")?;
        self.expect_keyword("upper")?;
        self.expect(Tok::Equals, "`=`")?;
        let upper = self.expr()?;
        self.expect(Tok::Semi, "`;`")?;

        let mut overrides: Vec<(u64, Expr, Expr)> = Vec::new();
        while self.keyword_is("at") {
            let at_pos = self.peek().pos;
            self.bump();
            let k = self.nonneg_integer()?;
            if overrides.iter().any(|(j, _, _)| *j == k) {
                return Err(ParseError {
                    position: at_pos,
                    message: format!("duplicate override for index {k}"),
                });
            }
            self.expect(Tok::Colon, "`:`")?;
            self.expect_keyword("lower")?;
            self.expect(Tok::Equals, "`=`")?;
            let lo = self.expr()?;
            self.expect(Tok::Comma, "`,`")?;
            self.expect_keyword("upper")?;
            self.expect(Tok::Equals, "`=`")?;
            let hi = self.expr()?;
            self.expect(Tok::Semi, "`;`")?;
            overrides.push((k, lo, hi));
        }

        let mut start_index = 0;
        if self.keyword_is("start") {
            self.bump();
            self.expect(Tok::Equals, "`=`")?;
            start_index = self.nonneg_integer()?;
            self.expect(Tok::Semi, "`;`")?;
        }

        Ok(SeqDef {
            lower,
            upper,
            start_index,
            overrides,
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.atom()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let rhs = self.exponent()?;
            lhs = Expr::Binary(BinOp::Pow, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // An exponent is an atom, optionally negated: `x^-2` is allowed.
    fn exponent(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            Ok(Expr::Neg(Box::new(self.exponent()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok.clone() {
            Tok::Number(x) => {
                self.bump();
                Ok(Expr::Number(x))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let pos = self.peek().pos;
                self.bump();
                match name.as_str() {
                    "n" => Ok(Expr::Var(Var::N)),
                    "alpha" => Ok(Expr::Var(Var::Alpha)),
                    "pow" => self.call(Func::Pow, pos),
                    "factorial" => self.call(Func::Factorial, pos),
                    "abs" => self.call(Func::Abs, pos),
                    "min" => self.call(Func::Min, pos),
                    "max" => self.call(Func::Max, pos),
                    other => Err(ParseError {
                        position: pos,
                        message: format!("unknown identifier `{other}`"),
                    }),
                }
            }
            other => self.err(format!("expected an expression, found {}", describe(&other))),
        }
    }

    fn call(&mut self, func: Func, pos: usize) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if args.len() != func.arity() {
            return Err(ParseError {
                position: pos,
                message: format!(
                    "{} takes {} argument(s), got {}",
                    func.name(),
                    func.arity(),
                    args.len()
                ),
            });
        }
        Ok(Expr::Call(func, args))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Number(x) => format!("number {x}"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Eof => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "seq lower = (-1)^n * n + (alpha/2)^n; \
                           upper = (-1)^n * n + 2 - (alpha/2)^n; \
                           at 0: lower = 1, upper = 1;";

    #[test]
    fn parses_the_alternating_example() {
        let def = parse(EXAMPLE).unwrap();
        assert_eq!(def.start_index, 0);
        assert_eq!(def.overrides.len(), 1);
        assert_eq!(def.overrides[0].0, 0);
        assert_eq!(def.overrides[0].1, Expr::Number(1.0));
    }

    #[test]
    fn parses_constant_zero() {
        let def = parse("seq lower = 0; upper = 0;").unwrap();
        assert_eq!(def.lower, Expr::Number(0.0));
        assert_eq!(def.upper, Expr::Number(0.0));
        assert!(def.overrides.is_empty());
    }

    #[test]
    fn dangling_operator_reports_position() {
        let err = parse("seq lower = alpha +; upper = 1;").unwrap_err();
        assert_eq!(err.position, 19); // the `;` after the dangling `+`
    }

    #[test]
    fn unknown_identifier_and_arity() {
        let err = parse("seq lower = beta; upper = 1;").unwrap_err();
        assert!(err.message.contains("unknown identifier"));
        assert_eq!(err.position, 12);
        let err = parse("seq lower = min(1); upper = 1;").unwrap_err();
        assert!(err.message.contains("takes 2 argument(s)"));
    }

    #[test]
    fn duplicate_override_rejected() {
        let err = parse(
            "seq lower = 0; upper = 0; at 1: lower = 1, upper = 1; at 1: lower = 2, upper = 2;",
        )
        .unwrap_err();
        assert!(err.message.contains("duplicate override"));
    }

    #[test]
    fn precedence_shapes() {
        // ^ binds tighter than unary minus: -1^n == -(1^n)
        let def = parse("seq lower = -1^n; upper = 1;").unwrap();
        assert_eq!(
            def.lower,
            Expr::Neg(Box::new(Expr::Binary(
                BinOp::Pow,
                Box::new(Expr::Number(1.0)),
                Box::new(Expr::Var(Var::N)),
            )))
        );
        // left association: 2^3^2 = (2^3)^2
        let def = parse("seq lower = 2^3^2; upper = 100;").unwrap();
        match def.lower {
            Expr::Binary(BinOp::Pow, l, _) => {
                assert!(matches!(*l, Expr::Binary(BinOp::Pow, ..)))
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn start_clause() {
        let def = parse("seq lower = n; upper = n + 1; start = 3;").unwrap();
        assert_eq!(def.start_index, 3);
        // start must come after overrides; trailing tokens are an error
        assert!(parse("seq lower = 0; upper = 0; start = 1; at 0: lower = 0, upper = 0;").is_err());
    }
}
