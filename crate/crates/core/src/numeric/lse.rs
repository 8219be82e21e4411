/// Parameters with magnitude below this use the second-order expansion
/// around the arithmetic mean.
pub const SMALL_RATE: f64 = 1e-8;

/// Two-point exponential mean `(1/rate) * log((e^{rate x} + e^{rate y}) / 2)`
/// evaluated through the shifted log-sum-exp identity.
///
/// The result is finite for every finite input, including `|rate * x|` far
/// beyond the range where `exp` overflows. For `|rate| < SMALL_RATE` the
/// cumulant expansion `(x + y)/2 + rate (x - y)^2 / 8` is used; the dropped
/// term is `O(rate^3 (x - y)^4)`.
pub fn lse_mean(rate: f64, x: f64, y: f64) -> f64 {
    if x == y {
        return x;
    }
    let gap = (x - y).abs();
    if rate.abs() < SMALL_RATE {
        return 0.5 * (x + y) + rate * gap * gap / 8.0;
    }
    let extreme = if rate > 0.0 { x.max(y) } else { x.min(y) };
    // log((1 + e^{-|rate| gap}) / 2), accurate for tiny and huge exponents alike
    let shift = (-(rate.abs() * gap)).exp_m1() * 0.5;
    extreme + shift.ln_1p() / rate
}
