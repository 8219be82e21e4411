//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Stopping rules for [`brent_root`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Absolute width at which the bracket counts as converged.
    pub xtol: f64,
    /// Relative width (scaled by `|x|`) at which the bracket counts as converged.
    pub rtol: f64,
    /// Stop as soon as `|f(x)| <= ftol`.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            xtol: 0.0,
            rtol: 1e-12,
            ftol: 0.0,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    /// Final bracket, ordered.
    pub bracket: (f64, f64),
}

/// Brent's method on `[a, b]`; `f(a)` and `f(b)` must not share a sign.
///
/// Combines bisection, secant and inverse quadratic steps. Returns the best
/// iterate once the bracket is narrower than the tolerance or `|f| <= ftol`.
pub fn brent_root<F>(mut f: F, a: f64, b: f64, opts: RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    brent_root_with(&mut f, a, fa, b, fb, opts)
}

/// [`brent_root`] with the endpoint values already known.
pub fn brent_root_with<F>(
    f: &mut F,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    opts: RootOptions,
) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            fx: fa,
            iterations: 0,
            bracket: (a, a),
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            fx: fb,
            iterations: 0,
            bracket: (b, b),
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoConvergence {
            iterations: 0,
            residual: fa.abs().min(fb.abs()),
        });
    }

    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=opts.max_iter {
        if (fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * opts.xtol.max(opts.rtol * b.abs());
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 || fb.abs() <= opts.ftol {
            return Ok(Root {
                x: b,
                fx: fb,
                iterations: iter,
                bracket: (b.min(c), b.max(c)),
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: fb.abs(),
    })
}

/// A sign-changing bracket `[lo, hi]` with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub f_lo: f64,
    pub hi: f64,
    pub f_hi: f64,
}

/// Grows a bracket outward from `center` until `f` changes sign.
///
/// Infinite sides of `domain` are explored at `center ± step * 2^k`; finite
/// sides are approached geometrically without ever touching the open bound.
/// Returns `Ok(None)` when no sign change is found within `max_steps`.
pub fn expand_bracket<F>(
    mut f: F,
    center: f64,
    step: f64,
    domain: Interval,
    max_steps: usize,
) -> Result<Option<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f0 = f(center)?;
    if f0 == 0.0 {
        return Ok(Some(Bracket {
            lo: center,
            f_lo: f0,
            hi: center,
            f_hi: f0,
        }));
    }
    let probe = |k: usize, upward: bool| -> f64 {
        let bound = if upward { domain.hi } else { domain.lo };
        if bound.is_finite() {
            bound + (center - bound) * 0.5f64.powi(k as i32 + 1)
        } else {
            let offset = step * 2f64.powi(k as i32);
            if upward {
                center + offset
            } else {
                center - offset
            }
        }
    };
    let (mut prev_lo, mut f_prev_lo) = (center, f0);
    let (mut prev_hi, mut f_prev_hi) = (center, f0);
    for k in 0..max_steps {
        let x_hi = probe(k, true);
        if x_hi > prev_hi && domain.contains(x_hi) {
            let fx = f(x_hi)?;
            if fx == 0.0 || fx.signum() != f_prev_hi.signum() {
                return Ok(Some(Bracket {
                    lo: prev_hi,
                    f_lo: f_prev_hi,
                    hi: x_hi,
                    f_hi: fx,
                }));
            }
            prev_hi = x_hi;
            f_prev_hi = fx;
        }
        let x_lo = probe(k, false);
        if x_lo < prev_lo && domain.contains(x_lo) {
            let fx = f(x_lo)?;
            if fx == 0.0 || fx.signum() != f_prev_lo.signum() {
                return Ok(Some(Bracket {
                    lo: x_lo,
                    f_lo: fx,
                    hi: prev_lo,
                    f_hi: f_prev_lo,
                }));
            }
            prev_lo = x_lo;
            f_prev_lo = fx;
        }
    }
    Ok(None)
}
