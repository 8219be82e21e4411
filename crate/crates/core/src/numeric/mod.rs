//! Scalar numerical kernels shared by the mean, metric and duality modules.

pub mod diff;
pub mod lse;
pub mod minimize;
pub mod quad;
pub mod roots;

pub use lse::lse_mean;
pub use minimize::{golden_section, grid_golden_minimize};
pub use quad::{adaptive_simpson, QuadOptions};
pub use roots::{brent_root, expand_bracket, Root, RootOptions};
