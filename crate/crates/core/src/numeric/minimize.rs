//! One-dimensional minimisation for unimodal objectives.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on `[lo, hi]` until the bracket is narrower than
/// `width`. Returns the midpoint of the final bracket and its value.
pub fn golden_section<F>(mut f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            if !(x1 > lo && x1 < x2) {
                break;
            }
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            if !(x2 > x1 && x2 < hi) {
                break;
            }
            f2 = f(x2)?;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

/// Scans `grid` equally spaced points of `[lo, hi]`, then refines around the
/// best one with golden-section search. Never leaves `[lo, hi]`.
pub fn grid_golden_minimize<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    grid: usize,
    width: f64,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let node = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let mut best = (0, f64::INFINITY);
    for i in 0..n {
        let v = f(node(i))?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let a = node(best.0.saturating_sub(1));
    let b = node((best.0 + 1).min(n - 1));
    golden_section(f, a, b, width)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, _) = golden_section(|x| Ok((x - 0.3) * (x - 0.3)), -1.0, 2.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn grid_handles_minimum_at_boundary() {
        let (x, _) = grid_golden_minimize(Ok, 1.0, 3.0, 1024, 1e-10).unwrap();
        assert!((x - 1.0).abs() < 1e-9);
    }
}
