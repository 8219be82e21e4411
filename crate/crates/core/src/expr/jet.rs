//! Second-order forward-mode differentiation of expressions.

use super::ast::{BinOp, Expr, Func};
use super::ExprError;

/// Value with first and second derivative with respect to `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    fn constant(v: f64) -> Self {
        Self {
            v,
            d1: 0.0,
            d2: 0.0,
        }
    }

    fn is_constant(&self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    /// `g(self)` given `g`, `g'`, `g''` at `self.v` (chain rule).
    fn chain(self, g: f64, g1: f64, g2: f64) -> Self {
        Self {
            v: g,
            d1: g1 * self.d1,
            d2: g2 * self.d1 * self.d1 + g1 * self.d2,
        }
    }

    fn finite(self, what: &str) -> Result<Self, ExprError> {
        if self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite() {
            Ok(self)
        } else {
            Err(ExprError::Domain(format!(
                "{what} or its derivatives are not finite"
            )))
        }
    }
}

fn pow_const(a: Jet, c: f64) -> Result<Jet, ExprError> {
    if a.v < 0.0 && c.fract() != 0.0 {
        return Err(ExprError::Domain(format!(
            "negative base {} raised to non-integer power {c}",
            a.v
        )));
    }
    if a.v == 0.0 && c < 0.0 {
        return Err(ExprError::Domain("zero raised to a negative power".into()));
    }
    let g1 = if c == 0.0 { 0.0 } else { c * a.v.powf(c - 1.0) };
    let g2 = if c == 0.0 || c == 1.0 {
        0.0
    } else {
        c * (c - 1.0) * a.v.powf(c - 2.0)
    };
    a.chain(a.v.powf(c), g1, g2).finite("power")
}

fn exp(a: Jet) -> Result<Jet, ExprError> {
    let e = a.v.exp();
    a.chain(e, e, e).finite("exp")
}

fn log(a: Jet) -> Result<Jet, ExprError> {
    if a.v <= 0.0 {
        return Err(ExprError::Domain(format!("log of non-positive {}", a.v)));
    }
    let r = a.v.recip();
    a.chain(a.v.ln(), r, -r * r).finite("log")
}

impl Expr {
    /// Value, first and second derivative at `u`. Fails wherever `eval`
    /// fails, and also where a derivative does not exist (`abs` at 0,
    /// `sqrt` at 0).
    pub fn eval_jet(&self, u: f64) -> Result<Jet, ExprError> {
        match self {
            Expr::Num(v) => Ok(Jet::constant(*v)),
            Expr::Var => Ok(Jet {
                v: u,
                d1: 1.0,
                d2: 0.0,
            }),
            Expr::Neg(e) => {
                let a = e.eval_jet(u)?;
                Ok(Jet {
                    v: -a.v,
                    d1: -a.d1,
                    d2: -a.d2,
                })
            }
            Expr::Binary(op, l, r) => {
                let a = l.eval_jet(u)?;
                let b = r.eval_jet(u)?;
                match op {
                    BinOp::Add => Jet {
                        v: a.v + b.v,
                        d1: a.d1 + b.d1,
                        d2: a.d2 + b.d2,
                    }
                    .finite("sum"),
                    BinOp::Sub => Jet {
                        v: a.v - b.v,
                        d1: a.d1 - b.d1,
                        d2: a.d2 - b.d2,
                    }
                    .finite("difference"),
                    BinOp::Mul => Jet {
                        v: a.v * b.v,
                        d1: a.d1 * b.v + a.v * b.d1,
                        d2: a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
                    }
                    .finite("product"),
                    BinOp::Div => {
                        if b.v == 0.0 {
                            return Err(ExprError::Domain("division by zero".into()));
                        }
                        let q = a.v / b.v;
                        let q1 = (a.d1 - q * b.d1) / b.v;
                        let q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
                        Jet {
                            v: q,
                            d1: q1,
                            d2: q2,
                        }
                        .finite("quotient")
                    }
                    BinOp::Pow => power(a, b),
                }
            }
            Expr::Call(func, args) => {
                let a = args[0].eval_jet(u)?;
                match func {
                    Func::Exp => exp(a),
                    Func::Log => log(a),
                    Func::Sqrt => {
                        if a.v < 0.0 {
                            return Err(ExprError::Domain(format!("sqrt of negative {}", a.v)));
                        }
                        let s = a.v.sqrt();
                        a.chain(s, 0.5 / s, -0.25 / (s * s * s)).finite("sqrt")
                    }
                    Func::Abs => {
                        if a.v == 0.0 && !a.is_constant() {
                            return Err(ExprError::Domain("abs is not differentiable at 0".into()));
                        }
                        let s = if a.v < 0.0 { -1.0 } else { 1.0 };
                        Ok(Jet {
                            v: a.v.abs(),
                            d1: s * a.d1,
                            d2: s * a.d2,
                        })
                    }
                    Func::Pow => power(a, args[1].eval_jet(u)?),
                }
            }
        }
    }
}

fn power(a: Jet, b: Jet) -> Result<Jet, ExprError> {
    if b.is_constant() {
        return pow_const(a, b.v);
    }
    // a^b = exp(b log a)
    let la = log(a)?;
    let prod = Jet {
        v: b.v * la.v,
        d1: b.d1 * la.v + b.v * la.d1,
        d2: b.d2 * la.v + 2.0 * b.d1 * la.d1 + b.v * la.d2,
    };
    exp(prod)
}
