use std::fmt;

use crate::error::{Error, Result};

/// An open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn check(&self, x: f64) -> Result<f64> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::OutOfDomain {
                value: x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// A finite window inside the interval, used wherever sampling needs
    /// bounded ends. Infinite sides are cut `100 + |finite end|` away.
    pub fn finite_window(&self) -> (f64, f64) {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + 100.0 + self.lo.abs()),
            (false, true) => (self.hi - 100.0 - self.hi.abs(), self.hi),
            (false, false) => (-100.0, 100.0),
        }
    }

    /// A representative interior point.
    pub fn interior_point(&self) -> f64 {
        let (lo, hi) = self.finite_window();
        0.5 * (lo + hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}
