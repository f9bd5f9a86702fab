//! Sieve, prime counting, and the two classical bound scans.
//!
//! The table keeps one bit per odd number plus prefix counts at block
//! boundaries, so `pi(n)` is a popcount over at most one block. Scans
//! check the `7/8 < pi(n)/(n/ln n) < 9/8` window and the kth-prime
//! bounds `k(ln k + ln ln k - 1) <= p_k <= k(ln k + ln ln k)` (valid for
//! `k >= 6`), and compare the divergence speed of `sum 1/p` against
//! `sum 1/(k(ln k + ln ln k))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Hard cap on the sieve size; one bit per odd number keeps this at
/// ~6 MB of memory.
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// Numbers per popcount block of the prefix-count index.
const BLOCK_SPAN: u64 = 8192;

/// Exact primality over `[2, limit]` with O(1)-ish counting.
pub struct PrimeTable {
    limit: u64,
    /// bit i of word i/64 set iff `2i+1` is prime (index 0, value 1, unset).
    bits: Vec<u64>,
    /// `pi(b * BLOCK_SPAN)` for each block b.
    block_counts: Vec<u64>,
}

impl PrimeTable {
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Precondition(format!("sieve limit {limit} below 2")));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::LimitExceeded(format!(
                "sieve limit {limit} above maximum {MAX_SIEVE_LIMIT}"
            )));
        }
        let odd_count = (limit as usize + 1) / 2;
        let mut bits = vec![u64::MAX; odd_count.div_ceil(64)];
        // clear 1, keep 3, 5, ... candidates
        bits[0] &= !1u64;
        // mask the tail beyond limit
        let valid_tail = odd_count % 64;
        if valid_tail != 0 {
            let last = bits.len() - 1;
            bits[last] &= (1u64 << valid_tail) - 1;
        }
        let mut p = 3u64;
        while p * p <= limit {
            if bits[(p / 2 / 64) as usize] >> (p / 2 % 64) & 1 == 1 {
                let mut m = p * p;
                while m <= limit {
                    bits[(m / 2 / 64) as usize] &= !(1u64 << (m / 2 % 64));
                    m += 2 * p;
                }
            }
            p += 2;
        }
        let mut table = PrimeTable {
            limit,
            bits,
            block_counts: Vec::new(),
        };
        let blocks = limit / BLOCK_SPAN + 1;
        let mut counts = Vec::with_capacity(blocks as usize);
        let mut running = 0u64;
        for b in 1..=blocks {
            let lo = (b - 1) * BLOCK_SPAN + 1;
            let hi = (b * BLOCK_SPAN).min(limit);
            running += table.count_by_scan(lo, hi);
            counts.push(running);
        }
        table.block_counts = counts;
        // self-checks
        if limit >= 13 {
            debug_checks(&table)?;
        }
        Ok(table)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "primality query {n} beyond sieve limit");
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        self.bits[(n / 2 / 64) as usize] >> (n / 2 % 64) & 1 == 1
    }

    fn count_by_scan(&self, lo: u64, hi: u64) -> u64 {
        let mut c = 0;
        if lo <= 2 && 2 <= hi {
            c += 1;
        }
        let mut n = lo.max(3) | 1;
        while n <= hi {
            if self.is_prime(n) {
                c += 1;
            }
            n += 2;
        }
        c
    }

    /// `pi(n)`: number of primes up to `n`.
    pub fn pi(&self, n: u64) -> u64 {
        assert!(n <= self.limit, "pi({n}) beyond sieve limit {}", self.limit);
        if n < 2 {
            return 0;
        }
        let block = n / BLOCK_SPAN;
        let mut count = if block == 0 {
            0
        } else {
            self.block_counts[block as usize - 1]
        };
        count += self.count_by_scan(block * BLOCK_SPAN + 1, n);
        count
    }

    /// The k-th prime (1-based: `p_1 = 2`).
    pub fn kth_prime(&self, k: u64) -> Result<u64> {
        if k == 0 {
            return Err(Error::Precondition("prime index is 1-based".into()));
        }
        // jump to the right block via the prefix counts, then scan
        let block = self.block_counts.partition_point(|&c| c < k);
        if block >= self.block_counts.len() {
            return Err(Error::TableTooSmall(format!(
                "table up to {} holds {} primes, p_{k} requested",
                self.limit,
                self.block_counts.last().copied().unwrap_or(0)
            )));
        }
        let mut count = if block == 0 {
            0
        } else {
            self.block_counts[block - 1]
        };
        let lo = block as u64 * BLOCK_SPAN + 1;
        let hi = ((block as u64 + 1) * BLOCK_SPAN).min(self.limit);
        if lo <= 2 && 2 <= hi {
            count += 1;
            if count == k {
                return Ok(2);
            }
        }
        let mut n = lo.max(3) | 1;
        while n <= hi {
            if self.is_prime(n) {
                count += 1;
                if count == k {
                    return Ok(n);
                }
            }
            n += 2;
        }
        Err(Error::TableTooSmall(format!("p_{k} not found below {hi}")))
    }

    /// Smallest prime strictly greater than `n`, if within the table.
    pub fn next_prime_after(&self, n: u64) -> Option<u64> {
        if n < 2 {
            return Some(2);
        }
        let mut m = (n + 1) | 1;
        while m <= self.limit {
            if self.is_prime(m) {
                return Some(m);
            }
            m += 2;
        }
        None
    }

    /// All primes up to `n`.
    pub fn primes_upto(&self, n: u64) -> Vec<u64> {
        assert!(n <= self.limit);
        let mut v = Vec::with_capacity(self.pi(n) as usize);
        if n >= 2 {
            v.push(2);
        }
        let mut m = 3u64;
        while m <= n {
            if self.is_prime(m) {
                v.push(m);
            }
            m += 2;
        }
        v
    }
}

fn debug_checks(t: &PrimeTable) -> Result<()> {
    let ok = t.pi(10) == 4
        && (t.limit < 100 || t.pi(100) == 25)
        && t.kth_prime(1)? == 2
        && t.kth_prime(6)? == 13;
    if !ok {
        return Err(Error::Precondition(
            "sieve self-check failed (pi(10), pi(100), p_1, p_6)".into(),
        ));
    }
    Ok(())
}

/// Outcome of scanning the prime-counting ratio window.
#[derive(Debug, Clone, Serialize)]
pub struct ChebyshevScan {
    pub n_min: u64,
    pub n_max: u64,
    /// Every `n` in range with `pi(n)/(n/ln n)` outside `(7/8, 9/8)`.
    pub violations: Vec<u64>,
    /// `(n, ratio)` at the requested sample points.
    pub ratio_samples: Vec<(u64, f64)>,
}

/// Scan `[n_min, n_max]` for violations of `7/8 < pi(n)/(n/ln n) < 9/8`,
/// recording the ratio at each of `sample_points`.
pub fn chebyshev_scan(
    table: &PrimeTable,
    n_min: u64,
    n_max: u64,
    sample_points: &[u64],
) -> Result<ChebyshevScan> {
    if !(2 <= n_min && n_min < n_max && n_max <= table.limit()) {
        return Err(Error::Precondition(format!(
            "scan range [{n_min}, {n_max}] outside [2, {}]",
            table.limit()
        )));
    }
    let mut violations = Vec::new();
    let mut samples = Vec::new();
    let mut sample_iter = sample_points.iter().copied().peekable();
    let mut pi = table.pi(n_min - 1);
    for n in n_min..=n_max {
        if table.is_prime(n) {
            pi += 1;
        }
        let x = n as f64;
        let ratio = pi as f64 * x.ln() / x;
        if !(ratio > 7.0 / 8.0 && ratio < 9.0 / 8.0) {
            violations.push(n);
        }
        while sample_iter.peek() == Some(&n) {
            samples.push((n, ratio));
            sample_iter.next();
        }
    }
    Ok(ChebyshevScan {
        n_min,
        n_max,
        violations,
        ratio_samples: samples,
    })
}

/// One kth-prime bound check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DusartRow {
    pub k: u64,
    pub p_k: u64,
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of the kth-prime bound scan.
#[derive(Debug, Clone, Serialize)]
pub struct DusartScan {
    pub k_min: u64,
    pub k_max: u64,
    /// `k` values where a bound failed.
    pub violations: Vec<u64>,
    /// Sampled rows (first, last, and decades in between).
    pub spot_rows: Vec<DusartRow>,
}

/// Check `k(ln k + ln ln k - 1) <= p_k <= k(ln k + ln ln k)` for every
/// `k` in `[k_min, k_max]`; `k_min` is clamped up to 6 where the upper
/// bound starts to hold.
pub fn dusart_scan(table: &PrimeTable, k_min: u64, k_max: u64) -> Result<DusartScan> {
    let k_min = k_min.max(6);
    if k_max < k_min {
        return Err(Error::Precondition(format!(
            "empty scan range [{k_min}, {k_max}]"
        )));
    }
    // ensure the table holds p_(k_max); error early with the right type
    let _ = table.kth_prime(k_max)?;
    let mut violations = Vec::new();
    let mut spot_rows = Vec::new();
    let mut k = 0u64;
    if table.limit() >= 2 {
        let mut m = 2u64;
        while m <= table.limit() {
            if table.is_prime(m) {
                k += 1;
                if k >= k_min && k <= k_max {
                    let x = k as f64;
                    let base = x.ln() + x.ln().ln();
                    let lower = x * (base - 1.0);
                    let upper = x * base;
                    let p = m as f64;
                    if !(lower <= p && p <= upper) {
                        violations.push(k);
                    }
                    if k == k_min || k == k_max || k.is_power_of_two() {
                        spot_rows.push(DusartRow {
                            k,
                            p_k: m,
                            lower,
                            upper,
                        });
                    }
                }
                if k > k_max {
                    break;
                }
            }
            m = if m == 2 { 3 } else { m + 2 };
        }
    }
    Ok(DusartScan {
        k_min,
        k_max,
        violations,
        spot_rows,
    })
}

/// Paired traces of `sum_(p <= N) 1/p` and the comparison series
/// `sum_(k=6)^(pi(N)) 1/(k(ln k + ln ln k))`.
#[derive(Debug, Clone, Serialize)]
pub struct RecipComparison {
    pub checkpoints: Vec<u64>,
    pub prime_recip: Vec<f64>,
    pub comparison: Vec<f64>,
    pub difference: Vec<f64>,
}

pub fn prime_reciprocal_comparison(
    table: &PrimeTable,
    checkpoints: &[u64],
) -> Result<RecipComparison> {
    if checkpoints.iter().any(|&n| n > table.limit()) {
        return Err(Error::TableTooSmall(format!(
            "checkpoint beyond sieve limit {}",
            table.limit()
        )));
    }
    let mut prime_recip = Vec::with_capacity(checkpoints.len());
    let mut comparison = Vec::with_capacity(checkpoints.len());
    let mut acc = CompensatedSum::new();
    let mut comp = CompensatedSum::new();
    let mut k = 0u64; // prime counter
    let mut ci = 0usize;
    let mut m = 2u64;
    while ci < checkpoints.len() {
        while ci < checkpoints.len() && checkpoints[ci] < m {
            prime_recip.push(acc.value());
            comparison.push(comp.value());
            ci += 1;
        }
        if ci >= checkpoints.len() || m > table.limit() {
            break;
        }
        if table.is_prime(m) {
            k += 1;
            acc.add(1.0 / m as f64);
            if k >= 6 {
                let x = k as f64;
                comp.add(1.0 / (x * (x.ln() + x.ln().ln())));
            }
        }
        m = if m == 2 { 3 } else { m + 2 };
    }
    while ci < checkpoints.len() {
        prime_recip.push(acc.value());
        comparison.push(comp.value());
        ci += 1;
    }
    let difference = prime_recip
        .iter()
        .zip(&comparison)
        .map(|(a, b)| a - b)
        .collect();
    Ok(RecipComparison {
        checkpoints: checkpoints.to_vec(),
        prime_recip,
        comparison,
        difference,
    })
}
