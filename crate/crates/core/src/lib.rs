//! A numerical laboratory for the convergence of positive series.
//!
//! The crate has four layers:
//!
//! * [`series`] — series families as deterministic term streams, with
//!   partial sums, Cesàro means, and stream transforms (running-sum
//!   normalization, restriction, block permutation).
//! * [`density`] / [`density_limits`] — index sets, the natural /
//!   harmonic / weighted density notions, exceptional sets, and
//!   convergence-in-density diagnostics.
//! * [`tail`] / [`tower`] — closed-form integral machinery for the
//!   iterated-logarithm scale: certified sum brackets, generalized Euler
//!   constants, and tower-magnitude answers for term counts.
//! * [`classical`] / [`primes`] / [`progressions`] — executable forms of
//!   the classical convergence tests, prime-count bound scans, and
//!   progression structure of index sets.

pub mod classical;
pub mod density;
pub mod density_limits;
pub mod error;
pub mod expr;
pub mod parse;
pub mod primes;
pub mod progressions;
pub mod series;
pub mod sum;
pub mod tail;
pub mod tower;
pub mod trend;

pub use error::{Error, Result};

/// The default checkpoint schedule: three points per decade from `lo` to
/// `hi` (both inclusive), as rounded integers.
pub fn default_checkpoints(lo: u64, hi: u64) -> Vec<u64> {
    assert!(lo >= 1 && lo < hi);
    let mut out = Vec::new();
    let mut exp = (lo as f64).log10();
    let top = (hi as f64).log10();
    while exp < top - 1e-9 {
        let v = 10f64.powf(exp).round() as u64;
        if out.last() != Some(&v) {
            out.push(v);
        }
        exp += 1.0 / 3.0;
    }
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn default_schedule_three_per_decade() {
        let cps = super::default_checkpoints(100, 1_000_000);
        assert_eq!(cps[0], 100);
        assert_eq!(*cps.last().unwrap(), 1_000_000);
        assert_eq!(cps.len(), 13);
        assert!(cps.windows(2).all(|w| w[0] < w[1]));
    }
}
