//! A single-variable expression language for user-defined generators and
//! potentials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?
//! atom   := number | 'u' | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-u^2`
//! is `-(u^2)` and `2^3^2` is `2^9`. Functions: `exp`, `log`, `sqrt`, `abs`
//! (one argument) and `pow` (two).

mod ast;
mod jet;
mod parser;

pub use ast::{BinOp, Expr, Func};
pub use jet::Jet;
pub use parser::parse;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("domain error: {0}")]
    Domain(String),
}
