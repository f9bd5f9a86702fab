//! Index sets and the density notions defined on them.
//!
//! An [`IndexSet`] is a subset of the positive integers given by a
//! membership predicate, an ordered enumerator, and a counting function
//! `N -> |S intersect [1, N]|` (closed-form for the built-ins). Profiles
//! sample a density notion at increasing checkpoints:
//!
//! * natural:   `|S ∩ [1,N]| / N`
//! * harmonic:  `(1/ln N) * sum_(k in S, k<=N) 1/k`
//! * weighted:  `|S ∩ [1,N]| / phi(N)` for an increasing weight `phi`
//!
//! plus lower/upper proxies that read the tail-window inf/sup of the
//! natural ratio.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::series::is_square;
use crate::sum::CompensatedSum;
use crate::trend::{classify, Trend};

#[derive(Clone)]
enum SetKind {
    All,
    Evens,
    Squares,
    PowersOfTwo,
    /// `{10^b + j : b >= 1, 1 <= j <= b}`.
    Blocks,
    Primes(Arc<PrimeTable>),
    Sorted(Arc<Vec<u64>>),
    Pred(Arc<dyn Fn(u64) -> bool + Send + Sync>),
}

/// A set of positive integers: predicate + ordered enumerator + counting.
#[derive(Clone)]
pub struct IndexSet {
    name: String,
    kind: SetKind,
}

impl IndexSet {
    pub fn all() -> Self {
        Self { name: "all".into(), kind: SetKind::All }
    }

    pub fn evens() -> Self {
        Self { name: "evens".into(), kind: SetKind::Evens }
    }

    pub fn squares() -> Self {
        Self { name: "squares".into(), kind: SetKind::Squares }
    }

    pub fn powers_of_two() -> Self {
        Self { name: "pow2".into(), kind: SetKind::PowersOfTwo }
    }

    pub fn blocks() -> Self {
        Self { name: "blocks".into(), kind: SetKind::Blocks }
    }

    /// The primes, backed by a sieve valid up to `limit`.
    pub fn primes(limit: u64) -> Result<Self> {
        Ok(Self {
            name: "primes".into(),
            kind: SetKind::Primes(Arc::new(PrimeTable::build(limit)?)),
        })
    }

    pub fn primes_from_table(table: Arc<PrimeTable>) -> Self {
        Self { name: "primes".into(), kind: SetKind::Primes(table) }
    }

    /// A materialized finite set; input need not be sorted.
    pub fn from_sorted(name: &str, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self {
            name: name.into(),
            kind: SetKind::Sorted(Arc::new(members)),
        }
    }

    pub fn from_predicate(
        name: &str,
        pred: impl Fn(u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            kind: SetKind::Pred(Arc::new(pred)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Largest index the set can answer for, when bounded (prime sieve).
    pub fn domain_limit(&self) -> Option<u64> {
        match &self.kind {
            SetKind::Primes(t) => Some(t.limit()),
            _ => None,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match &self.kind {
            SetKind::All => true,
            SetKind::Evens => n % 2 == 0,
            SetKind::Squares => is_square(n),
            SetKind::PowersOfTwo => n.is_power_of_two(),
            SetKind::Blocks => {
                if n < 11 {
                    return false;
                }
                let b = n.ilog10() as u64;
                let base = 10u64.pow(b as u32);
                n > base && n - base <= b
            }
            SetKind::Primes(t) => t.is_prime(n),
            SetKind::Sorted(v) => v.binary_search(&n).is_ok(),
            SetKind::Pred(f) => f(n),
        }
    }

    /// Ordered enumerator of the members up to `limit` inclusive.
    pub fn iter_upto(&self, limit: u64) -> Box<dyn Iterator<Item = u64> + '_> {
        match &self.kind {
            SetKind::All => Box::new(1..=limit),
            SetKind::Evens => Box::new((1..=limit / 2).map(|i| 2 * i)),
            SetKind::Squares => Box::new((1..=limit.isqrt()).map(|i| i * i)),
            SetKind::PowersOfTwo => {
                let top = if limit == 0 { 0 } else { limit.ilog2() + 1 };
                Box::new((0..top).map(|j| 1u64 << j))
            }
            SetKind::Blocks => Box::new(
                (1u64..=19)
                    .flat_map(|b| {
                        let base = 10u64.pow(b as u32);
                        (1..=b).map(move |j| base + j)
                    })
                    .take_while(move |&m| m <= limit),
            ),
            SetKind::Primes(t) => {
                assert!(limit <= t.limit(), "prime enumeration beyond sieve");
                Box::new(
                    std::iter::successors(t.next_prime_after(1), move |&p| {
                        t.next_prime_after(p)
                    })
                    .take_while(move |&p| p <= limit),
                )
            }
            SetKind::Sorted(v) => {
                let end = v.partition_point(|&m| m <= limit);
                Box::new(v[..end].iter().copied())
            }
            SetKind::Pred(f) => Box::new((1..=limit).filter(move |&n| f(n))),
        }
    }

    /// `|S intersect [1, n]|`, closed-form where the family allows it.
    pub fn count_upto(&self, n: u64) -> u64 {
        match &self.kind {
            SetKind::All => n,
            SetKind::Evens => n / 2,
            SetKind::Squares => n.isqrt(),
            SetKind::PowersOfTwo => {
                if n == 0 {
                    0
                } else {
                    (n.ilog2() + 1) as u64
                }
            }
            SetKind::Blocks => {
                let mut c = 0u64;
                for b in 1u64..=19 {
                    let base = 10u64.pow(b as u32);
                    if base >= n {
                        break;
                    }
                    c += b.min(n - base);
                }
                c
            }
            SetKind::Primes(t) => t.pi(n),
            SetKind::Sorted(v) => v.partition_point(|&m| m <= n) as u64,
            SetKind::Pred(_) => self.iter_upto(n).count() as u64,
        }
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IndexSet({})", self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityNotion {
    Natural,
    LowerProxy,
    UpperProxy,
    Harmonic,
    Weighted,
}

/// Sampled finite-N values of one density notion, with the trend verdict
/// of the tail window.
#[derive(Debug, Clone, Serialize)]
pub struct DensityProfile {
    pub notion: DensityNotion,
    pub checkpoints: Vec<u64>,
    pub values: Vec<f64>,
    pub trend: Trend,
    pub limit_estimate: Option<f64>,
}

fn validate_checkpoints(set: &IndexSet, checkpoints: &[u64], min_first: u64) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("no checkpoints supplied".into()));
    }
    if checkpoints[0] < min_first {
        return Err(Error::Precondition(format!(
            "checkpoints must start at {min_first} or later"
        )));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    if let Some(lim) = set.domain_limit() {
        let max = *checkpoints.last().unwrap();
        if max > lim {
            return Err(Error::TableTooSmall(format!(
                "checkpoint {max} beyond the set's sieve limit {lim}"
            )));
        }
    }
    Ok(())
}

fn finish_profile(
    notion: DensityNotion,
    checkpoints: Vec<u64>,
    values: Vec<f64>,
) -> DensityProfile {
    let spans_enough = checkpoints.len() >= 4
        && *checkpoints.last().unwrap() / checkpoints[0] >= 100;
    let (mut limit_estimate, mut trend) = if spans_enough {
        classify(&checkpoints, &values)
    } else {
        (None, Trend::Inconclusive)
    };
    match notion {
        DensityNotion::LowerProxy | DensityNotion::UpperProxy => {
            // proxies report the tail-window inf/sup as the limit estimate
            let start = crate::trend::tail_window_start(&checkpoints);
            let window = &values[start..];
            let est = if notion == DensityNotion::LowerProxy {
                window.iter().cloned().fold(f64::INFINITY, f64::min)
            } else {
                window.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            };
            limit_estimate = Some(est);
            if !spans_enough {
                trend = Trend::Inconclusive;
            }
        }
        _ => {}
    }
    DensityProfile {
        notion,
        checkpoints,
        values,
        trend,
        limit_estimate,
    }
}

/// Natural-density profile: `|S ∩ [1, N]| / N` at each checkpoint.
pub fn counting_profile(set: &IndexSet, checkpoints: &[u64]) -> Result<DensityProfile> {
    counting_profile_with_notion(set, checkpoints, DensityNotion::Natural)
}

/// Same counting ratio under a lower/upper-proxy reading.
pub fn counting_profile_with_notion(
    set: &IndexSet,
    checkpoints: &[u64],
    notion: DensityNotion,
) -> Result<DensityProfile> {
    validate_checkpoints(set, checkpoints, 1)?;
    let values: Vec<f64> = checkpoints
        .iter()
        .map(|&n| set.count_upto(n) as f64 / n as f64)
        .collect();
    Ok(finish_profile(notion, checkpoints.to_vec(), values))
}

/// Harmonic-density profile: `(1/ln N) * sum_(k in S, k <= N) 1/k`.
pub fn harmonic_profile(set: &IndexSet, checkpoints: &[u64]) -> Result<DensityProfile> {
    validate_checkpoints(set, checkpoints, 2)?;
    let max = *checkpoints.last().unwrap();
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut acc = CompensatedSum::new();
    let mut ci = 0usize;
    for k in set.iter_upto(max) {
        while ci < checkpoints.len() && checkpoints[ci] < k {
            values.push(acc.value() / (checkpoints[ci] as f64).ln());
            ci += 1;
        }
        acc.add(1.0 / k as f64);
    }
    while ci < checkpoints.len() {
        values.push(acc.value() / (checkpoints[ci] as f64).ln());
        ci += 1;
    }
    Ok(finish_profile(
        DensityNotion::Harmonic,
        checkpoints.to_vec(),
        values,
    ))
}

/// Weighted counting profile `|S ∩ [1, N]| / phi(N)`; `phi` must be
/// positive and increasing over the sampled range.
pub fn weighted_counting_profile(
    set: &IndexSet,
    phi: &dyn Fn(u64) -> f64,
    checkpoints: &[u64],
) -> Result<DensityProfile> {
    validate_checkpoints(set, checkpoints, 1)?;
    let mut prev = 0.0;
    for &n in checkpoints {
        let w = phi(n);
        if !(w > 0.0) || w <= prev {
            return Err(Error::InvalidWeight(format!(
                "phi({n}) = {w} is not positive increasing over the sampled range"
            )));
        }
        prev = w;
    }
    let values: Vec<f64> = checkpoints
        .iter()
        .map(|&n| set.count_upto(n) as f64 / phi(n))
        .collect();
    Ok(finish_profile(
        DensityNotion::Weighted,
        checkpoints.to_vec(),
        values,
    ))
}

/// Extrapolated limit and trend verdict of a profile; requires at least
/// four checkpoints spanning two decades. Never a proof, only a verdict.
pub fn estimate_density_limit(profile: &DensityProfile) -> Result<(Option<f64>, Trend)> {
    if profile.checkpoints.len() < 4 {
        return Err(Error::Precondition(
            "limit estimation needs at least 4 checkpoints".into(),
        ));
    }
    let span = *profile.checkpoints.last().unwrap() / profile.checkpoints[0];
    if span < 100 {
        return Err(Error::Precondition(
            "limit estimation needs checkpoints spanning two decades".into(),
        ));
    }
    Ok(classify(&profile.checkpoints, &profile.values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cps() -> Vec<u64> {
        crate::default_checkpoints(100, 1_000_000)
    }

    #[test]
    fn evens_have_density_half() {
        let p = counting_profile(&IndexSet::evens(), &[10, 100, 1000]).unwrap();
        for v in &p.values {
            assert_eq!(*v, 0.5);
        }
    }

    #[test]
    fn squares_at_hundred() {
        let p = counting_profile(&IndexSet::squares(), &[100]).unwrap();
        assert_eq!(p.values[0], 0.1);
    }

    #[test]
    fn primes_at_a_million() {
        let set = IndexSet::primes(1_000_000).unwrap();
        let p = counting_profile(&set, &[1_000_000]).unwrap();
        assert_eq!(p.values[0], 0.078498);
    }

    #[test]
    fn harmonic_profile_squares() {
        let p = harmonic_profile(&IndexSet::squares(), &cps()).unwrap();
        let last = *p.values.last().unwrap();
        assert!((last - 0.119).abs() < 0.002, "got {last}");
        assert_eq!(p.trend, Trend::DecreasingToZero);
    }

    #[test]
    fn harmonic_profile_evens() {
        let p = harmonic_profile(&IndexSet::evens(), &cps()).unwrap();
        let last = *p.values.last().unwrap();
        assert!((0.49..=0.50).contains(&last), "got {last}");
        assert_eq!(p.trend, Trend::Stabilizing);
        assert!((p.limit_estimate.unwrap() - 0.5).abs() < 0.01);
    }

    #[test]
    fn harmonic_profile_full_set() {
        let p = harmonic_profile(&IndexSet::all(), &[1000]).unwrap();
        assert!((p.values[0] - 1.0837).abs() < 1e-3, "got {}", p.values[0]);
    }

    #[test]
    fn weighted_primes_with_li_style_weight() {
        let set = IndexSet::primes(1_000_000).unwrap();
        let phi = |n: u64| n as f64 / (n as f64).ln();
        let p = weighted_counting_profile(&set, &phi, &[1_000_000]).unwrap();
        assert!((p.values[0] - 1.0845).abs() < 5e-4, "got {}", p.values[0]);
    }

    #[test]
    fn weighted_identity_reduces_to_natural() {
        let p = weighted_counting_profile(&IndexSet::evens(), &|n| n as f64, &[10, 100])
            .unwrap();
        assert_eq!(p.values, vec![0.5, 0.5]);
    }

    #[test]
    fn weighted_squares_with_sqrt_weight() {
        let p = weighted_counting_profile(
            &IndexSet::squares(),
            &|n| (n as f64).sqrt(),
            &[100, 1000, 10_000, 1_000_000],
        )
        .unwrap();
        for v in &p.values {
            assert!((*v - 1.0).abs() < 0.05);
        }
        assert_eq!(*p.values.last().unwrap(), 1.0);
    }

    #[test]
    fn decreasing_weight_rejected() {
        let r = weighted_counting_profile(&IndexSet::evens(), &|n| 1.0 / n as f64, &[10, 100]);
        assert!(matches!(r, Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn limit_estimates_on_the_three_reference_sets() {
        let squares = counting_profile(&IndexSet::squares(), &cps()).unwrap();
        let (lim, trend) = estimate_density_limit(&squares).unwrap();
        assert_eq!((lim, trend), (Some(0.0), Trend::DecreasingToZero));

        let evens = counting_profile(&IndexSet::evens(), &cps()).unwrap();
        let (lim, trend) = estimate_density_limit(&evens).unwrap();
        assert_eq!(trend, Trend::Stabilizing);
        // odd checkpoints hold one deficit element, so the fit sits a hair
        // below one half
        assert!((lim.unwrap() - 0.5).abs() < 1e-5);

        let set = IndexSet::primes(1_000_000).unwrap();
        let primes = counting_profile(&set, &[1000, 10_000, 100_000, 1_000_000]).unwrap();
        let (lim, trend) = estimate_density_limit(&primes).unwrap();
        assert_eq!((lim, trend), (Some(0.0), Trend::DecreasingToZero));
    }

    #[test]
    fn zero_natural_trend_implies_zero_harmonic_trend() {
        // d(A) = 0 forces d_h(A) = 0; the finite-evidence analogue must
        // hold on squares, primes, and the lacunary powers of two.
        let table = std::sync::Arc::new(crate::primes::PrimeTable::build(1_000_000).unwrap());
        for set in [
            IndexSet::squares(),
            IndexSet::primes_from_table(table),
            IndexSet::powers_of_two(),
        ] {
            let nat = counting_profile(&set, &cps()).unwrap();
            assert!(
                crate::trend::fits_zero_limit(&nat.checkpoints, &nat.values),
                "{} natural",
                set.name()
            );
            let har = harmonic_profile(&set, &cps()).unwrap();
            assert!(
                crate::trend::fits_zero_limit(&har.checkpoints, &har.values),
                "{} harmonic: {:?}",
                set.name(),
                har.values
            );
        }
    }

    #[test]
    fn inclusion_is_monotone_at_every_checkpoint() {
        let squares = IndexSet::squares();
        let union = IndexSet::from_predicate("squares-or-evens", |n| {
            is_square(n) || n % 2 == 0
        });
        let a = counting_profile(&squares, &cps()).unwrap();
        let b = counting_profile(&union, &cps()).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!(x <= y);
        }
        let ah = harmonic_profile(&squares, &cps()).unwrap();
        let bh = harmonic_profile(&union, &cps()).unwrap();
        for (x, y) in ah.values.iter().zip(&bh.values) {
            assert!(x <= y);
        }
    }

    #[test]
    fn complement_counts_are_exact() {
        let evens = IndexSet::evens();
        let odds = IndexSet::from_predicate("odds", |n| n % 2 == 1);
        for &n in &cps() {
            assert_eq!(evens.count_upto(n) + odds.count_upto(n), n);
        }
        let a = counting_profile(&evens, &cps()).unwrap();
        let b = counting_profile(&odds, &cps()).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x + y - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn counting_function_agrees_with_enumerator_tally() {
        let table = std::sync::Arc::new(crate::primes::PrimeTable::build(200_000).unwrap());
        for set in [
            IndexSet::all(),
            IndexSet::evens(),
            IndexSet::squares(),
            IndexSet::powers_of_two(),
            IndexSet::blocks(),
            IndexSet::primes_from_table(table),
            IndexSet::from_sorted("finite", vec![3, 7, 9, 1000, 150_000]),
        ] {
            for &n in &[1u64, 2, 10, 11, 101, 104, 1000, 65_536, 199_999] {
                let tally = set.iter_upto(n).count() as u64;
                assert_eq!(set.count_upto(n), tally, "{} at {n}", set.name());
            }
        }
    }

    #[test]
    fn enumerator_is_strictly_increasing_and_agrees_with_predicate() {
        for set in [
            IndexSet::evens(),
            IndexSet::squares(),
            IndexSet::powers_of_two(),
            IndexSet::blocks(),
        ] {
            let mut last = 0u64;
            for m in set.iter_upto(100_000) {
                assert!(m > last, "{}", set.name());
                assert!(set.contains(m), "{} claims {m} then denies it", set.name());
                last = m;
            }
        }
    }

    #[test]
    fn blocks_membership_spot_values() {
        let b = IndexSet::blocks();
        assert!(b.contains(11));
        assert!(!b.contains(12));
        assert!(b.contains(101) && b.contains(102) && !b.contains(103));
        assert!(b.contains(1003) && !b.contains(1004));
        assert_eq!(b.count_upto(103), 3);
    }
}
