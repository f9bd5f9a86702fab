//! Arithmetic-progression structure of integer sets and near-progressions
//! in real sequences.
//!
//! Exact search is dynamic programming over pairs; the relaxed search
//! accepts a string `c_1..c_L` whenever some line `a + k r` stays within
//! `epsilon` of every element, with the minimax line computed exactly via
//! the critical-triple characterization of best uniform linear fits.

use serde::Serialize;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// A (near-)progression found in the input: element `k` (1-based) sits
/// within `max_residual` of `base + k * difference`.
#[derive(Debug, Clone, Serialize)]
pub struct APWitness {
    pub length: usize,
    pub base: f64,
    pub difference: f64,
    /// positions in the input slice, strictly increasing
    pub indices: Vec<usize>,
    /// zero for exact progressions
    pub max_residual: f64,
}

const LONGEST_AP_GUARD: usize = 5000;
const COUNT_3AP_GUARD: usize = 20_000;

fn validate_sorted_distinct(values: &[i64]) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "input must be sorted and distinct".into(),
        ));
    }
    Ok(())
}

/// Longest arithmetic progression contained in a sorted set of integers.
/// O(n^2) time and memory over element pairs.
pub fn longest_ap(values: &[i64]) -> Result<APWitness> {
    validate_sorted_distinct(values)?;
    let n = values.len();
    if n > LONGEST_AP_GUARD {
        return Err(Error::InputTooLarge(format!(
            "{n} elements exceed the {LONGEST_AP_GUARD} guard"
        )));
    }
    if n <= 2 {
        let indices: Vec<usize> = (0..n).collect();
        let difference = if n == 2 { (values[1] - values[0]) as f64 } else { 0.0 };
        let base = values.first().map_or(0.0, |&v| v as f64 - difference);
        return Ok(APWitness {
            length: n,
            base,
            difference,
            indices,
            max_residual: 0.0,
        });
    }
    // dp[i][j] = length of the longest AP ending with (values[i], values[j])
    let mut dp = vec![2u16; n * n];
    let mut best = (0usize, 1usize, 2u16);
    for j in 2..n {
        for i in 0..j {
            let prev = 2 * values[i] - values[j];
            let len = match values[..i].binary_search(&prev) {
                Ok(k) => dp[k * n + i] + 1,
                Err(_) => 2,
            };
            dp[i * n + j] = len;
            if len > best.2 {
                best = (i, j, len);
            }
        }
    }
    let (mut i, mut j, len) = best;
    let mut indices = vec![j, i];
    while dp[i * n + j] > 2 {
        let prev = 2 * values[i] - values[j];
        let k = values[..i].binary_search(&prev).unwrap();
        indices.push(k);
        j = i;
        i = k;
    }
    indices.reverse();
    let difference = (values[indices[1]] - values[indices[0]]) as f64;
    let base = values[indices[0]] as f64 - difference;
    Ok(APWitness {
        length: len as usize,
        base,
        difference,
        indices,
        max_residual: 0.0,
    })
}

/// Exact count of triples `x < y < z` in the set with `y - x = z - y`.
pub fn count_3aps(values: &[i64]) -> Result<u64> {
    validate_sorted_distinct(values)?;
    if values.len() > COUNT_3AP_GUARD {
        return Err(Error::InputTooLarge(format!(
            "{} elements exceed the {COUNT_3AP_GUARD} guard",
            values.len()
        )));
    }
    let members: HashSet<i64> = values.iter().copied().collect();
    let mut count = 0u64;
    for (yi, &y) in values.iter().enumerate() {
        for &z in &values[yi + 1..] {
            if members.contains(&(2 * y - z)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Best uniform linear fit to points `(k_i, y_i)`: minimizes
/// `max_i |y_i - (a + r k_i)|`. The optimum of the linear minimax
/// problem is attained on a critical triple, so triples are enumerated
/// exactly (O(L^3), deterministic).
pub fn minimax_line(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let l = points.len();
    match l {
        0 => return (0.0, 0.0, 0.0),
        1 => return (points[0].1, 0.0, 0.0),
        2 => {
            let r = (points[1].1 - points[0].1) / (points[1].0 - points[0].0);
            let a = points[0].1 - r * points[0].0;
            return (a, r, 0.0);
        }
        _ => {}
    }
    let mut best = (0.0f64, 0.0f64, -1.0f64);
    for i in 0..l {
        for j in (i + 1)..l {
            for m in (j + 1)..l {
                let (k1, y1) = points[i];
                let (k2, y2) = points[j];
                let (k3, y3) = points[m];
                let r = (y3 - y1) / (k3 - k1);
                let e = ((y1 - y2) - r * (k1 - k2)) / 2.0;
                if e.abs() > best.2 {
                    let a = y1 - r * k1 - e;
                    best = (a, r, e.abs());
                }
            }
        }
    }
    let (a, r, _) = best;
    // recompute the achieved deviation over all points
    let achieved = points
        .iter()
        .map(|&(k, y)| (y - a - r * k).abs())
        .fold(0.0f64, f64::max);
    (a, r, achieved)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsMode {
    /// contiguous runs of the sequence
    Window,
    /// arbitrary index subsequences, bounded span
    Subsequence,
}

const SUBSEQ_LEN_GUARD: usize = 200;
/// Maximum index span `i_L - i_1` explored in subsequence mode.
pub const SUBSEQ_SPAN_CAP: usize = 50;

/// Find a length-`len` epsilon-progression in `seq`: a string whose
/// elements stay strictly within `epsilon` of some line `a + k r`.
/// Window mode scans contiguous runs; subsequence mode backtracks over
/// index choices with the partial fit as the pruning bound.
pub fn find_eps_progression(
    seq: &[f64],
    len: usize,
    epsilon: f64,
    mode: EpsMode,
) -> Result<Option<APWitness>> {
    if len < 3 {
        return Err(Error::Precondition("progression length must be >= 3".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    if seq.len() < len {
        return Ok(None);
    }
    match mode {
        EpsMode::Window => {
            for w in 0..=(seq.len() - len) {
                let points: Vec<(f64, f64)> = (0..len)
                    .map(|k| ((k + 1) as f64, seq[w + k]))
                    .collect();
                let (a, r, e) = minimax_line(&points);
                if e < epsilon {
                    return Ok(Some(APWitness {
                        length: len,
                        base: a,
                        difference: r,
                        indices: (w..w + len).collect(),
                        max_residual: e,
                    }));
                }
            }
            Ok(None)
        }
        EpsMode::Subsequence => {
            if seq.len() > SUBSEQ_LEN_GUARD {
                return Err(Error::GuardExceeded(format!(
                    "subsequence mode is guarded to {SUBSEQ_LEN_GUARD} elements"
                )));
            }
            let mut chosen: Vec<usize> = Vec::with_capacity(len);
            let found = subseq_search(seq, len, epsilon, &mut chosen);
            Ok(found.map(|indices| {
                let points: Vec<(f64, f64)> = indices
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| ((k + 1) as f64, seq[i]))
                    .collect();
                let (a, r, e) = minimax_line(&points);
                APWitness {
                    length: len,
                    base: a,
                    difference: r,
                    indices,
                    max_residual: e,
                }
            }))
        }
    }
}

fn subseq_search(
    seq: &[f64],
    len: usize,
    epsilon: f64,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == len {
        return Some(chosen.clone());
    }
    let next_min = chosen.last().map_or(0, |&i| i + 1);
    for i in next_min..seq.len() {
        if let Some(&first) = chosen.first() {
            if i - first > SUBSEQ_SPAN_CAP {
                break;
            }
        }
        chosen.push(i);
        // prune: the partial string must itself admit a fit under epsilon
        let points: Vec<(f64, f64)> = chosen
            .iter()
            .enumerate()
            .map(|(k, &idx)| ((k + 1) as f64, seq[idx]))
            .collect();
        let (_, _, e) = minimax_line(&points);
        if e < epsilon {
            if let Some(hit) = subseq_search(seq, len, epsilon, chosen) {
                return Some(hit);
            }
        }
        chosen.pop();
    }
    None
}

/// Structure report for the block set `{10^b + 1 .. 10^b + b}`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockStructureReport {
    pub n_max: u32,
    /// every block is an exact difference-1 progression of its length
    pub per_block_exact: bool,
    pub longest: APWitness,
    /// largest common difference over all 3-term progressions in the set
    pub max_3ap_difference: u64,
    /// 3-term progressions spanning more than one block (expected none)
    pub cross_block_3aps: u64,
    /// partial sum of the reciprocals over the materialized blocks
    pub partial_sum: f64,
    /// partial sum plus the exact geometric tail bound: a certified upper
    /// bound for the full series
    pub sum_upper_bound: f64,
}

const BLOCK_GUARD: u32 = 14;

/// Verify the advertised structure of the block set: each block is an
/// exact progression of difference 1, every 3-term progression lives
/// inside one block, and the reciprocal series is certifiably summable.
pub fn block_structure_check(n_max: u32) -> Result<BlockStructureReport> {
    if n_max < 1 || n_max > BLOCK_GUARD {
        return Err(Error::GuardExceeded(format!(
            "n_max = {n_max} outside [1, {BLOCK_GUARD}]"
        )));
    }
    let mut members: Vec<i64> = Vec::new();
    let mut per_block_exact = true;
    let mut partial = CompensatedSum::new();
    for b in 1..=n_max {
        let base = 10i64.pow(b);
        let block: Vec<i64> = (1..=b as i64).map(|j| base + j).collect();
        if b >= 3 {
            let w = longest_ap(&block)?;
            if w.length != b as usize || w.difference != 1.0 {
                per_block_exact = false;
            }
        }
        for &m in &block {
            partial.add(1.0 / m as f64);
        }
        members.extend(block);
    }
    let longest = longest_ap(&members)?;
    // enumerate 3-term progressions exactly, tracking differences and
    // block spans
    let set: HashSet<i64> = members.iter().copied().collect();
    let block_of = |v: i64| -> u32 { (v as f64).log10() as u32 };
    let mut max_diff = 0u64;
    let mut cross = 0u64;
    for (yi, &y) in members.iter().enumerate() {
        for &z in &members[yi + 1..] {
            let x = 2 * y - z;
            if set.contains(&x) {
                let d = (z - y) as u64;
                max_diff = max_diff.max(d);
                if block_of(x) != block_of(z) {
                    cross += 1;
                }
            }
        }
    }
    // tail bound: sum_(b > n_max) b/10^b = x^m (m - (m-1)x)/(1-x)^2, x = 1/10
    let m = (n_max + 1) as f64;
    let x = 0.1f64;
    let tail = x.powf(m) * (m - (m - 1.0) * x) / ((1.0 - x) * (1.0 - x));
    Ok(BlockStructureReport {
        n_max,
        per_block_exact,
        longest,
        max_3ap_difference: max_diff,
        cross_block_3aps: cross,
        partial_sum: partial.value(),
        sum_upper_bound: partial.value() + tail,
    })
}
