use thiserror::Error;

use crate::expr::ExprError;

/// Errors produced by mean evaluation, solving and the duality machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radical mean parameter must be positive, got {0}")]
    NonPositiveAlpha(f64),

    #[error("generator is not strictly monotone: direction changes near u = {at}")]
    NotMonotone { at: f64 },

    #[error("potential is not strictly convex near theta = {at}")]
    NotConvex { at: f64 },

    #[error("value {value} lies outside the domain ({lo}, {hi})")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    #[error("value {value} is outside the range of the generator")]
    OutOfRange { value: f64 },

    #[error("degenerate interval: need a < b, got a = {a}, b = {b}")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("target {c} is not strictly inside ({a}, {b})")]
    TargetOutOfInterval { c: f64, a: f64, b: f64 },

    #[error("no parameter with |alpha| <= {alpha_max} reaches the target; it is too close to an endpoint")]
    BracketExhausted { alpha_max: f64 },

    #[error("root finding stopped after {iterations} iterations with residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("adaptive quadrature on [{a}, {b}] exceeded the subdivision cap")]
    QuadratureFailure { a: f64, b: f64 },

    #[error("dual coordinate {0} is outside the range of the potential's derivative")]
    EtaOutOfRange(f64),

    #[error("{what} must be positive and finite, got {value}")]
    InvalidArgument { what: &'static str, value: f64 },

    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
