//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute error target for the whole integral.
    pub tol: f64,
    /// Upper bound on the number of subintervals examined.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_intervals: 1_000_000,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

const MIN_DEPTH: u32 = 3;

/// Integrates `f` over `[a, b]` (either orientation) by recursive Simpson
/// bisection with Richardson correction. Each half of a panel inherits half
/// of the parent's tolerance.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return adaptive_simpson(f, b, a, opts).map(|v| -v);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb),
        tol: opts.tol,
        depth: 0,
    }];
    let mut total = 0.0;
    let mut examined = 0usize;
    while let Some(p) = stack.pop() {
        examined += 1;
        if examined > opts.max_intervals {
            return Err(Error::QuadratureFailure { a, b });
        }
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        if !(p.a < lm && lm < m && m < rm && rm < p.b) {
            // panel narrower than floating-point resolution
            return Err(Error::QuadratureFailure { a, b });
        }
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        let right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        let delta = left + right - p.whole;
        if p.depth >= MIN_DEPTH && delta.abs() <= 15.0 * p.tol {
            total += left + right + delta / 15.0;
        } else {
            let tol = 0.5 * p.tol;
            let depth = p.depth + 1;
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                tol,
                depth,
            });
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                tol,
                depth,
            });
        }
    }
    Ok(total)
}
