use std::fmt;

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Abs,
    Pow,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "pow" => Func::Pow,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Pow => "pow",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Pow => 2,
            _ => 1,
        }
    }
}

/// Parsed expression tree in the variable `u`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

fn checked(value: f64, what: &str) -> Result<f64, ExprError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ExprError::Domain(format!("{what} is not finite")))
    }
}

fn power(base: f64, exponent: f64) -> Result<f64, ExprError> {
    if base < 0.0 && exponent.fract() != 0.0 {
        return Err(ExprError::Domain(format!(
            "negative base {base} raised to non-integer power {exponent}"
        )));
    }
    if base == 0.0 && exponent < 0.0 {
        return Err(ExprError::Domain("zero raised to a negative power".into()));
    }
    checked(base.powf(exponent), "power")
}

impl Expr {
    /// Evaluates at `u`. Any undefined or non-finite intermediate is an error.
    pub fn eval(&self, u: f64) -> Result<f64, ExprError> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var => checked(u, "u"),
            Expr::Neg(e) => Ok(-e.eval(u)?),
            Expr::Binary(op, l, r) => {
                let a = l.eval(u)?;
                let b = r.eval(u)?;
                match op {
                    BinOp::Add => checked(a + b, "sum"),
                    BinOp::Sub => checked(a - b, "difference"),
                    BinOp::Mul => checked(a * b, "product"),
                    BinOp::Div if b == 0.0 => Err(ExprError::Domain("division by zero".into())),
                    BinOp::Div => checked(a / b, "quotient"),
                    BinOp::Pow => power(a, b),
                }
            }
            Expr::Call(func, args) => {
                let x = args[0].eval(u)?;
                match func {
                    Func::Exp => checked(x.exp(), "exp"),
                    Func::Log if x <= 0.0 => {
                        Err(ExprError::Domain(format!("log of non-positive {x}")))
                    }
                    Func::Log => Ok(x.ln()),
                    Func::Sqrt if x < 0.0 => {
                        Err(ExprError::Domain(format!("sqrt of negative {x}")))
                    }
                    Func::Sqrt => Ok(x.sqrt()),
                    Func::Abs => Ok(x.abs()),
                    Func::Pow => power(x, args[1].eval(u)?),
                }
            }
        }
    }
}

/// Fully parenthesised rendering that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if v.is_sign_negative() => write!(f, "(-{:?})", -v),
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("u"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
