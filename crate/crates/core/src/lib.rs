//! Quasi-arithmetic means, the distances they are midpoints of, scales of
//! means with parameter recovery, and dual arc-length generators built from
//! convex potentials.
//!
//! The main entry points are [`Generator`] (a mean generator and its
//! distance), [`ScaleFamily`] with [`solve_parameter`], and
//! [`ConvexPotential`] with [`DualMeanPair`].

// `!(x < y)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod duality;
pub mod error;
pub mod expr;
pub mod generators;
pub mod interval;
pub mod metric;
pub mod numeric;
pub mod scales;

pub use duality::{
    chart_transport, conjugate_value, dual_arc_generator, dual_mean_check, primal_arc_generator,
    riemannian_centroid, riemannian_distance, ConvexPotential, DualMeanCheck, DualMeanPair,
    RiemannianLine,
};
pub use error::{Error, Result};
pub use expr::{parse, Expr, ExprError};
pub use generators::{
    make_custom_generator, make_exponential_generator, make_power_generator,
    make_radical_generator, qam_eval, Chart, Direction, ExpChartForm, Generator,
};
pub use interval::Interval;
pub use metric::{frechet_mean_closed, frechet_mean_numeric, is_midpoint, GeneratorDistance};
pub use scales::{
    check_scale, limit_probe, solve_parameter, ScaleDirection, ScaleFamily, ScaleReport,
    SolveReport, ALPHA_MAX,
};
