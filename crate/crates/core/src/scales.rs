//! One-parameter scales of quasi-arithmetic means.
//!
//! Every family is addressed through a real *coordinate* with special value
//! 0: the power exponent `p`, the exponential rate `α`, and `t = ln α` for
//! radical means. Solver brackets, scans and scale checks all work in that
//! coordinate; [`ScaleFamily::to_alpha`] maps back to the family's own
//! parameter.

use std::fmt;

use crate::error::{Error, Result};
use crate::generators::Generator;
use crate::interval::Interval;
use crate::numeric::lse::SMALL_RATE;
use crate::numeric::roots::{brent_root_with, RootOptions};

/// Largest coordinate magnitude the solver will try.
pub const ALPHA_MAX: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleDirection {
    Increasing,
    Decreasing,
}

impl fmt::Display for ScaleDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleDirection::Increasing => "IncreasingScale",
            ScaleDirection::Decreasing => "DecreasingScale",
        })
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Power,
    Exponential,
    Radical,
    /// `s_α(u) = s(α u)`.
    Custom(Generator),
}

#[derive(Debug, Clone)]
pub struct ScaleFamily {
    name: String,
    kind: Kind,
    direction: Option<ScaleDirection>,
    param_domain: Interval,
}

impl ScaleFamily {
    /// Power means `m_p`, increasing on the positive reals.
    pub fn power() -> Self {
        Self {
            name: "power".into(),
            kind: Kind::Power,
            direction: Some(ScaleDirection::Increasing),
            param_domain: Interval::REAL,
        }
    }

    /// Exponential means `m_{e_α}`, increasing on the real line.
    pub fn exponential() -> Self {
        Self {
            name: "exponential".into(),
            kind: Kind::Exponential,
            direction: Some(ScaleDirection::Increasing),
            param_domain: Interval::REAL,
        }
    }

    /// Radical means `m_{k_α}`, `α > 0`, decreasing on the positive reals.
    pub fn radical() -> Self {
        Self {
            name: "radical".into(),
            kind: Kind::Radical,
            direction: Some(ScaleDirection::Decreasing),
            param_domain: Interval::POSITIVE,
        }
    }

    /// The family `u ↦ s(α u)` built from one generator `s`. The coordinate
    /// is `α` itself; near `α = 0` the arithmetic mean is used. No scale
    /// direction is declared.
    pub fn custom(base: Generator) -> Self {
        Self {
            name: "custom".into(),
            kind: Kind::Custom(base),
            direction: None,
            param_domain: Interval::REAL,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "power" => Some(Self::power()),
            "exponential" => Some(Self::exponential()),
            "radical" => Some(Self::radical()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn direction(&self) -> Option<ScaleDirection> {
        self.direction
    }

    /// Admissible values of the family's own parameter.
    pub fn param_domain(&self) -> Interval {
        self.param_domain
    }

    pub fn to_alpha(&self, coord: f64) -> f64 {
        match self.kind {
            Kind::Radical => coord.exp(),
            _ => coord,
        }
    }

    pub fn from_alpha(&self, alpha: f64) -> Result<f64> {
        match self.kind {
            Kind::Radical if !(alpha > 0.0) => Err(Error::NonPositiveAlpha(alpha)),
            Kind::Radical => Ok(alpha.ln()),
            _ => Ok(alpha),
        }
    }

    /// The generator at coordinate `coord`.
    pub fn generator(&self, coord: f64) -> Generator {
        match &self.kind {
            Kind::Power => Generator::power(coord),
            Kind::Exponential => Generator::exponential(coord),
            Kind::Radical => Generator::radical_log(coord),
            Kind::Custom(_) if coord.abs() < SMALL_RATE => Generator::exponential(0.0),
            Kind::Custom(base) => base.scaled_argument(coord),
        }
    }

    pub fn mean(&self, coord: f64, a: f64, b: f64) -> Result<f64> {
        self.generator(coord).mean(a, b)
    }
}

/// Outcome of [`check_scale`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleReport {
    /// Direction from the first to the last grid mean; `None` if they tie.
    pub observed: Option<ScaleDirection>,
    /// The first consecutive coordinate pair whose means are not strictly
    /// ordered in the expected direction.
    pub violation: Option<(f64, f64)>,
    /// Smallest and largest mean on the grid.
    pub range: (f64, f64),
    /// `(coordinate, mean)` in increasing coordinate order.
    pub samples: Vec<(f64, f64)>,
}

impl ScaleReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Symmetric log-spaced coordinates `±[1e-3, 1e3]`, `samples / 2` per side,
/// plus the special value 0.
pub fn scale_grid(samples: usize) -> Vec<f64> {
    let per_side = (samples / 2).max(2);
    let pos: Vec<f64> = (0..per_side)
        .map(|k| 10f64.powf(-3.0 + 6.0 * k as f64 / (per_side - 1) as f64))
        .collect();
    pos.iter()
        .rev()
        .map(|v| -v)
        .chain(std::iter::once(0.0))
        .chain(pos.iter().copied())
        .collect()
}

/// Samples `α ↦ m_α(a, b)` on [`scale_grid`] and checks strict monotonicity
/// in the declared direction (or, for undeclared families, the observed
/// one). A sampled certificate, not a proof.
pub fn check_scale(fam: &ScaleFamily, a: f64, b: f64, samples: usize) -> Result<ScaleReport> {
    if !(a < b) {
        return Err(Error::DegenerateInterval { a, b });
    }
    if samples < 8 {
        return Err(Error::InvalidArgument {
            what: "samples (at least 8)",
            value: samples as f64,
        });
    }
    let samples: Vec<(f64, f64)> = scale_grid(samples)
        .into_iter()
        .map(|c| fam.mean(c, a, b).map(|m| (c, m)))
        .collect::<Result<_>>()?;
    let first = samples[0].1;
    let last = samples[samples.len() - 1].1;
    let observed = if last > first {
        Some(ScaleDirection::Increasing)
    } else if last < first {
        Some(ScaleDirection::Decreasing)
    } else {
        None
    };
    let expected = fam.direction.or(observed);
    let violation = samples.windows(2).find_map(|w| {
        let (c0, m0) = w[0];
        let (c1, m1) = w[1];
        let good = match expected {
            Some(ScaleDirection::Increasing) => m1 > m0,
            Some(ScaleDirection::Decreasing) => m1 < m0,
            None => false,
        };
        (!good).then_some((c0, c1))
    });
    let range = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, m)| {
            (lo.min(m), hi.max(m))
        });
    Ok(ScaleReport {
        observed,
        violation,
        range,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    /// Solution in the family's own parameter (`α`, not `ln α`, for radical means).
    pub alpha: f64,
    /// Solution in the solver coordinate.
    pub coordinate: f64,
    pub achieved_mean: f64,
    pub residual: f64,
    /// Mean evaluations, bracket search included.
    pub iterations: usize,
    /// Final coordinate bracket.
    pub bracket: (f64, f64),
}

/// Finds the coordinate whose mean of `a < b` equals `c` to within `tol`.
///
/// Brackets by doubling `±s` from the special value up to [`ALPHA_MAX`],
/// then refines with Brent's method. The scale is strictly monotone, so the
/// solution is unique.
pub fn solve_parameter(fam: &ScaleFamily, a: f64, b: f64, c: f64, tol: f64) -> Result<SolveReport> {
    if !(a < b) {
        return Err(Error::DegenerateInterval { a, b });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument {
            what: "tolerance",
            value: tol,
        });
    }
    if !(a < c && c < b) {
        return Err(Error::TargetOutOfInterval { c, a, b });
    }
    let mut evals = 0usize;
    let mut phi = |s: f64| -> Result<f64> {
        evals += 1;
        Ok(fam.mean(s, a, b)? - c)
    };
    let done = |s: f64, f: f64, evals: usize| SolveReport {
        alpha: fam.to_alpha(s),
        coordinate: s,
        achieved_mean: f + c,
        residual: f.abs(),
        iterations: evals,
        bracket: (s, s),
    };

    let f0 = phi(0.0)?;
    if f0.abs() <= tol {
        return Ok(done(0.0, f0, 1));
    }
    let mut prev = 0.0;
    let mut s = 1.0;
    let bracket = loop {
        let fp = phi(s)?;
        if fp.abs() <= tol {
            return Ok(done(s, fp, evals));
        }
        if fp.signum() != f0.signum() {
            let f_prev = if prev == 0.0 { f0 } else { phi(prev)? };
            break (prev, f_prev, s, fp);
        }
        let fm = phi(-s)?;
        if fm.abs() <= tol {
            return Ok(done(-s, fm, evals));
        }
        if fm.signum() != f0.signum() {
            let f_prev = if prev == 0.0 { f0 } else { phi(-prev)? };
            break (-s, fm, -prev, f_prev);
        }
        if s >= ALPHA_MAX {
            return Err(Error::BracketExhausted {
                alpha_max: ALPHA_MAX,
            });
        }
        prev = s;
        s = (2.0 * s).min(ALPHA_MAX);
    };

    let opts = RootOptions {
        xtol: 0.0,
        rtol: 0.0,
        ftol: tol,
        max_iter: 200,
    };
    let (lo, flo, hi, fhi) = bracket;
    let root = brent_root_with(&mut phi, lo, flo, hi, fhi, opts)?;
    let iterations = evals;
    if root.fx.abs() > tol {
        return Err(Error::NoConvergence {
            iterations,
            residual: root.fx.abs(),
        });
    }
    Ok(SolveReport {
        alpha: fam.to_alpha(root.x),
        coordinate: root.x,
        achieved_mean: root.fx + c,
        residual: root.fx.abs(),
        iterations,
        bracket: root.bracket,
    })
}

/// Means at coordinates `-alpha_big` and `+alpha_big`.
///
/// For exponential means the gaps to `min` / `max` are `ln 2 / alpha_big`
/// up to `e^{-alpha_big |a - b|}` corrections.
pub fn limit_probe(fam: &ScaleFamily, a: f64, b: f64, alpha_big: f64) -> Result<(f64, f64)> {
    if a == b {
        return Err(Error::DegenerateInterval { a, b });
    }
    if !(alpha_big > 0.0) {
        return Err(Error::InvalidArgument {
            what: "alpha_big",
            value: alpha_big,
        });
    }
    Ok((fam.mean(-alpha_big, a, b)?, fam.mean(alpha_big, a, b)?))
}
