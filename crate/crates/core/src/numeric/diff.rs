//! Central finite differences.

use crate::error::Result;

/// Step for a first derivative at `x`: `eps^(1/3) * max(1, |x|)`.
pub fn first_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

/// Step for a second derivative at a point of magnitude `scale`:
/// `eps^(1/4) * scale`, which balances the `h^2` truncation term against
/// the `eps / h^2` round-off term.
pub fn second_step(scale: f64) -> f64 {
    f64::EPSILON.sqrt().sqrt() * scale
}

pub fn central_first<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (xp, xm) = (x + h, x - h);
    Ok((f(xp)? - f(xm)?) / (xp - xm))
}

pub fn central_second<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (xp, xm) = (x + h, x - h);
    let h = 0.5 * (xp - xm);
    Ok((f(xp)? - 2.0 * f(x)? + f(xm)?) / (h * h))
}
