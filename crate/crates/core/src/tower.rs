//! Iterated-exponential magnitudes.
//!
//! Answers like "the partial sums first exceed 10 after 10^(10^89.8) terms"
//! do not fit in a float. A `TowerMagnitude` stores `height` applications
//! of `10^x` over a binary64 `top`, normalized so that the top is the
//! deepest iterate that still carries integer-level precision.

use serde::Serialize;

use crate::error::{Error, Result};

/// Upper edge of the canonical band: a top at or above 1e15 has exhausted
/// the 53-bit integer precision of binary64 and is pushed one level up.
const TOP_MAX: f64 = 1e15;
/// Lower edge for heights >= 1. Tops below 15 came from a value below 1e15
/// and are folded back down. The band [15, 1e15) makes the
/// height-then-top lexicographic order agree with the numeric order.
const TOP_MIN: f64 = 15.0;

const LOG10_LN10: f64 = 0.36221568869946325; // log10(ln 10)

/// `exp10` applied `height` times to `top`. Height 0 is the plain value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TowerMagnitude {
    height: u32,
    top: f64,
}

impl TowerMagnitude {
    /// A plain (height-0) value; normalizes upward if it is 1e15 or more.
    pub fn from_value(x: f64) -> Self {
        Self::from_level(0, x)
    }

    /// Build from `log10` of the value.
    pub fn from_log10(v: f64) -> Self {
        Self::from_level(1, v)
    }

    /// Build from the level-`level` base-10 iterate: the value is
    /// `exp10` applied `level` times to `value`.
    pub fn from_level(level: u32, value: f64) -> Self {
        assert!(value.is_finite(), "tower top must be finite");
        let mut h = level;
        let mut x = value;
        while x >= TOP_MAX {
            x = x.log10();
            h += 1;
        }
        while h >= 1 && x < TOP_MIN {
            // x < 15 here, so 10^x < 1e15: no overflow.
            x = 10f64.powf(x);
            h -= 1;
        }
        TowerMagnitude { height: h, top: x }
    }

    /// Build from a natural-log iterate: `lam = ln ln ... ln N` (`level`
    /// times). Converts into the base-10 tower without overflowing: once a
    /// natural iterate exceeds ~40 the remaining conversion collapses to
    /// `v = lam/ln 10 - log10(ln 10)` with error below 1e-17.
    pub fn from_ln_iterate(level: u32, lam: f64) -> Self {
        assert!(lam.is_finite());
        let mut level = level;
        let mut lam = lam;
        loop {
            if level == 0 {
                return Self::from_value(lam);
            }
            if level == 1 {
                return Self::from_log10(lam / std::f64::consts::LN_10);
            }
            if lam > 40.0 {
                return Self::from_level(level, lam / std::f64::consts::LN_10 - LOG10_LN10);
            }
            lam = lam.exp();
            level -= 1;
        }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn top(&self) -> f64 {
        self.top
    }

    /// The base-10 iterate of the value at the requested level
    /// (level 0 = the value itself, level 1 = log10 of it, ...).
    /// Errors when the requested level is too shallow to fit binary64.
    pub fn down_to(&self, level: u32) -> Result<f64> {
        if level > self.height {
            return Err(Error::Domain(format!(
                "level {level} above tower height {}",
                self.height
            )));
        }
        let mut v = self.top;
        for _ in level..self.height {
            if v > 308.25 {
                return Err(Error::Domain(format!(
                    "level {level} of {self} does not fit binary64"
                )));
            }
            v = 10f64.powf(v);
        }
        Ok(v)
    }

    /// Plain value when it fits, i.e. `down_to(0)`.
    pub fn to_value(&self) -> Result<f64> {
        self.down_to(0)
    }
}

impl PartialOrd for TowerMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        // Valid because normalized tops live in [15, 1e15): every height
        // h+1 magnitude exceeds 10^15 at level h, beyond any height-h top.
        match self.height.cmp(&other.height) {
            std::cmp::Ordering::Equal => self.top.partial_cmp(&other.top),
            ord => Some(ord),
        }
    }
}

impl std::fmt::Display for TowerMagnitude {
    /// Serializes as `10^^h@top`, e.g. `10^^2@86.50` for 10^(10^86.50).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "10^^{}@{}", self.height, self.top)
    }
}
