use super::ast::{BinOp, Expr, Func};
use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token and the byte offset where it starts.
    fn next(&mut self) -> Result<(Tok, usize), ExprError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => {
                self.pos += 1;
                Tok::Op(c)
            }
            '(' => {
                self.pos += 1;
                Tok::LParen
            }
            ')' => {
                self.pos += 1;
                Tok::RParen
            }
            ',' => {
                self.pos += 1;
                Tok::Comma
            }
            c if c.is_ascii_digit() || c == '.' => {
                let len = number_len(rest.as_bytes());
                let text = &rest[..len];
                let v: f64 = text.parse().map_err(|_| ExprError::Syntax {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                })?;
                self.pos += len;
                Tok::Num(v)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = rest
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                self.pos += len;
                Tok::Ident(rest[..len].to_string())
            }
            other => {
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        Ok((tok, start))
    }
}

/// Length of the numeric literal at the start of `b`: digits, optional
/// fraction, optional exponent (only consumed when followed by digits).
fn number_len(b: &[u8]) -> usize {
    let digits = |from: usize| b[from..].iter().take_while(|c| c.is_ascii_digit()).count();
    let mut i = digits(0);
    if b.get(i) == Some(&b'.') {
        i += 1 + digits(i + 1);
    }
    if matches!(b.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(b.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        let d = digits(j);
        if d > 0 {
            i = j + d;
        }
    }
    i
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ExprError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, at) = lexer.next()?;
        Ok(Self { lexer, tok, at })
    }

    fn bump(&mut self) -> Result<(), ExprError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.at,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if self.tok == want {
            self.bump()
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exponent = self.factor()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Num(v))
            }
            Tok::Ident(name) => {
                let offset = self.at;
                self.bump()?;
                if name == "u" {
                    return Ok(Expr::Var);
                }
                let Some(func) = Func::from_name(&name) else {
                    return Err(ExprError::UnknownIdentifier { name, offset });
                };
                self.expect(Tok::LParen, "`(` after function name")?;
                let mut args = vec![self.expr()?];
                while self.tok == Tok::Comma {
                    self.bump()?;
                    args.push(self.expr()?);
                }
                if args.len() != func.arity() {
                    return Err(ExprError::Syntax {
                        offset,
                        message: format!(
                            "`{}` takes {} argument(s), got {}",
                            func.name(),
                            func.arity(),
                            args.len()
                        ),
                    });
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(func, args))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            other => self.error(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(text)?;
    if p.tok == Tok::End {
        return p.error("empty expression");
    }
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.error("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eval(src: &str, u: f64) -> Result<f64, ExprError> {
        parse(src)?.eval(u)
    }

    #[test]
    fn cube_is_power_node() {
        assert_eq!(
            parse("u^3").unwrap(),
            Expr::Binary(BinOp::Pow, Box::new(Expr::Var), Box::new(Expr::Num(3.0)))
        );
        assert_eq!(eval("u^3", 2.0).unwrap(), 8.0);
    }

    #[test]
    fn exp_minus_one_parses() {
        let e = parse("exp(2*u) - 1").unwrap();
        assert!(matches!(e, Expr::Binary(BinOp::Sub, _, _)));
        assert_eq!(e.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn dangling_operator_reports_offset() {
        assert_eq!(
            parse("u +"),
            Err(ExprError::Syntax {
                offset: 3,
                message: "unexpected end of input".into()
            })
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("2+3*4", 0.0).unwrap(), 14.0);
        assert_eq!(eval("2^3^2", 0.0).unwrap(), 512.0);
        assert_eq!(eval("-u^2", 3.0).unwrap(), -9.0);
        assert_eq!(eval("2^-1", 0.0).unwrap(), 0.5);
        assert_eq!(eval("exp(u)/2 + 1", 0.0).unwrap(), 1.5);
        assert_eq!(eval("pow(u, 2) - abs(-u)", 3.0).unwrap(), 6.0);
        assert_eq!(eval("1.5e1 * .5", 0.0).unwrap(), 7.5);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(eval("log(u)", -1.0), Err(ExprError::Domain(_))));
        assert!(matches!(eval("sqrt(u)", -1.0), Err(ExprError::Domain(_))));
        assert!(matches!(eval("1/u", 0.0), Err(ExprError::Domain(_))));
        assert!(matches!(eval("u^0.5", -4.0), Err(ExprError::Domain(_))));
        assert!(matches!(eval("exp(u)", 1e4), Err(ExprError::Domain(_))));
        assert_eq!(eval("u^3", -2.0).unwrap(), -8.0);
    }

    #[test]
    fn rejects_unknown_names_and_bad_arity() {
        assert_eq!(
            parse("sin(u)"),
            Err(ExprError::UnknownIdentifier {
                name: "sin".into(),
                offset: 0
            })
        );
        assert_eq!(
            parse("2 * x"),
            Err(ExprError::UnknownIdentifier {
                name: "x".into(),
                offset: 4
            })
        );
        assert!(matches!(parse("pow(u)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(
            parse(""),
            Err(ExprError::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse("(u"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("u u"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("u # 2"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![(0.0f64..1e6).prop_map(Expr::Num), Just(Expr::Var),];
        leaf.prop_recursive(4, 32, 3, |inner| {
            let op = prop_oneof![
                Just(BinOp::Add),
                Just(BinOp::Sub),
                Just(BinOp::Mul),
                Just(BinOp::Div),
                Just(BinOp::Pow),
            ];
            let unary = prop_oneof![
                Just(Func::Exp),
                Just(Func::Log),
                Just(Func::Sqrt),
                Just(Func::Abs)
            ];
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (op, inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::Binary(
                    op,
                    Box::new(l),
                    Box::new(r)
                )),
                (unary, inner.clone()).prop_map(|(f, e)| Expr::Call(f, vec![e])),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Call(Func::Pow, vec![a, b])),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse(&text).unwrap(), e);
        }
    }
}
