//! Convergence-in-density diagnostics.
//!
//! A sequence converges in density to `x` when every exceptional set
//! `A(eps) = {n : |x_n - x| >= eps}` has zero density (lower and harmonic
//! variants swap the density notion). A finite computation can never
//! prove such a limit, so every verdict here is phrased as
//! consistent / inconsistent / inconclusive with respect to the finite
//! evidence, and inconsistency always carries a witness.
//!
//! The averaging bridge (Cesàro mean to zero implies density limit zero,
//! and conversely for bounded sequences) is checked numerically in both
//! directions through the two inequalities its proof rests on.

use serde::Serialize;

use crate::density::{
    counting_profile_with_notion, harmonic_profile, DensityNotion, DensityProfile, IndexSet,
};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::trend::{classify, fits_zero_limit, Trend, STABILIZING_FLOOR};

/// The exceptional set of a value sequence at one tolerance, materialized
/// up to a horizon.
#[derive(Debug, Clone)]
pub struct ExceptionalSet {
    pub epsilon: f64,
    pub target: f64,
    pub horizon: u64,
    pub indices: std::sync::Arc<Vec<u64>>,
    pub carrier: IndexSet,
}

/// Materialize `{n <= horizon : |values(n) - target| >= epsilon}`.
/// Membership is decided exactly from the value sequence.
pub fn exceptional_set(
    values: &dyn Fn(u64) -> f64,
    target: f64,
    epsilon: f64,
    horizon: u64,
) -> Result<ExceptionalSet> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if horizon < 1 {
        return Err(Error::Precondition("horizon must be at least 1".into()));
    }
    let mut indices = Vec::new();
    for n in 1..=horizon {
        if (values(n) - target).abs() >= epsilon {
            indices.push(n);
        }
    }
    let indices = std::sync::Arc::new(indices);
    let carrier = IndexSet::from_sorted(
        &format!("exceptional(eps={epsilon})"),
        indices.as_ref().clone(),
    );
    Ok(ExceptionalSet {
        epsilon,
        target,
        horizon,
        indices,
        carrier,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticMode {
    Natural,
    Lower,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticVerdict {
    ConsistentWithDensityLimit,
    Inconsistent,
    Inconclusive,
}

/// Evidence for an inconsistent verdict: the profile at this epsilon
/// stayed at `value` through the recorded checkpoint.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Witness {
    pub epsilon: f64,
    pub checkpoint: u64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticReport {
    pub mode: DiagnosticMode,
    pub epsilons: Vec<f64>,
    pub profiles: Vec<DensityProfile>,
    pub verdict: DiagnosticVerdict,
    pub witness: Option<Witness>,
    /// Trend of |x_n - target| itself at the checkpoints. When the
    /// sequence already fits a zero template classically, every
    /// exceptional set is finite and the density verdict follows.
    pub classical_trend: Trend,
    /// Largest sampled |x_n - target| and where it occurred.
    pub classical_sup: f64,
    pub classical_sup_at: u64,
}

fn density_profile_for(
    mode: DiagnosticMode,
    set: &IndexSet,
    checkpoints: &[u64],
) -> Result<DensityProfile> {
    match mode {
        DiagnosticMode::Natural => {
            counting_profile_with_notion(set, checkpoints, DensityNotion::Natural)
        }
        DiagnosticMode::Lower => {
            counting_profile_with_notion(set, checkpoints, DensityNotion::LowerProxy)
        }
        DiagnosticMode::Harmonic => harmonic_profile(set, checkpoints),
    }
}

/// Does this profile support a zero limit in the given mode? Lower mode
/// only needs a subsequence of checkpoints at small values, read off as
/// the running minimum fitting a zero template.
fn profile_supports_zero(mode: DiagnosticMode, profile: &DensityProfile) -> bool {
    match mode {
        DiagnosticMode::Natural | DiagnosticMode::Harmonic => {
            fits_zero_limit(&profile.checkpoints, &profile.values)
        }
        DiagnosticMode::Lower => {
            let mut running = Vec::with_capacity(profile.values.len());
            let mut m = f64::INFINITY;
            for &v in &profile.values {
                m = m.min(v);
                running.push(m);
            }
            fits_zero_limit(&profile.checkpoints, &running)
        }
    }
}

/// Diagnose whether `values` is consistent with converging to `target`
/// in the density notion of `mode`: builds `A(eps)` per epsilon, profiles
/// it, and aggregates.
pub fn d_lim_diagnostic(
    values: &dyn Fn(u64) -> f64,
    target: f64,
    epsilons: &[f64],
    checkpoints: &[u64],
    mode: DiagnosticMode,
) -> Result<DiagnosticReport> {
    if epsilons.is_empty() || epsilons.iter().any(|&e| e <= 0.0) {
        return Err(Error::Precondition("epsilons must be positive".into()));
    }
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be nonempty and strictly increasing".into(),
        ));
    }
    let horizon = *checkpoints.last().unwrap();
    // one pass over the values: exceptional indices per epsilon, the
    // classical trend samples, and the sup
    let mut per_eps: Vec<Vec<u64>> = vec![Vec::new(); epsilons.len()];
    let mut classical_samples = Vec::with_capacity(checkpoints.len());
    let mut ci = 0usize;
    let mut sup = f64::NEG_INFINITY;
    let mut sup_at = 1u64;
    for n in 1..=horizon {
        let dev = (values(n) - target).abs();
        for (i, &eps) in epsilons.iter().enumerate() {
            if dev >= eps {
                per_eps[i].push(n);
            }
        }
        if dev > sup {
            sup = dev;
            sup_at = n;
        }
        if ci < checkpoints.len() && checkpoints[ci] == n {
            classical_samples.push(dev);
            ci += 1;
        }
    }
    let (_, classical_trend) = classify(checkpoints, &classical_samples);
    let classical_zero = fits_zero_limit(checkpoints, &classical_samples);

    let mut profiles = Vec::with_capacity(epsilons.len());
    let mut all_zero = true;
    let mut witness: Option<Witness> = None;
    for (i, &eps) in epsilons.iter().enumerate() {
        let set = IndexSet::from_sorted(
            &format!("exceptional(eps={eps})"),
            std::mem::take(&mut per_eps[i]),
        );
        let profile = density_profile_for(mode, &set, checkpoints)?;
        let zero = profile_supports_zero(mode, &profile);
        if !zero {
            all_zero = false;
            // a stabilizing-or-growing profile above the floor witnesses
            // the inconsistency
            let (level, trend) = classify(&profile.checkpoints, &profile.values);
            let last = *profile.values.last().unwrap();
            let high = match trend {
                Trend::Stabilizing => level.unwrap_or(last) > STABILIZING_FLOOR,
                Trend::Increasing => true,
                _ => false,
            };
            if high && witness.is_none() {
                witness = Some(Witness {
                    epsilon: eps,
                    checkpoint: *profile.checkpoints.last().unwrap(),
                    value: last,
                });
            }
        }
        profiles.push(profile);
    }
    let verdict = if classical_zero || all_zero {
        DiagnosticVerdict::ConsistentWithDensityLimit
    } else if witness.is_some() {
        DiagnosticVerdict::Inconsistent
    } else {
        DiagnosticVerdict::Inconclusive
    };
    Ok(DiagnosticReport {
        mode,
        epsilons: epsilons.to_vec(),
        profiles,
        verdict,
        witness,
        classical_trend,
        classical_sup: sup,
        classical_sup_at: sup_at,
    })
}

/// One row of an averaging check: both sides of the inequality at one
/// (checkpoint, epsilon) pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AveragingRow {
    pub checkpoint: u64,
    pub epsilon: f64,
    pub cesaro: f64,
    pub exceptional_ratio: f64,
    /// Right-hand side of the inequality being verified.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KvnForwardReport {
    pub rows: Vec<AveragingRow>,
    pub all_hold: bool,
}

/// Forward direction: for nonnegative values, the exceptional ratio is
/// dominated by the Cesàro mean over epsilon:
/// `|A(eps) ∩ [1,n]| / n <= (1/(eps n)) sum_(k<=n) a_k`.
pub fn kvn_forward_check(
    values: &dyn Fn(u64) -> f64,
    checkpoints: &[u64],
    epsilons: &[f64],
) -> Result<KvnForwardReport> {
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be nonempty and strictly increasing".into(),
        ));
    }
    if epsilons.iter().any(|&e| e <= 0.0) {
        return Err(Error::Precondition("epsilons must be positive".into()));
    }
    let horizon = *checkpoints.last().unwrap();
    let mut acc = CompensatedSum::new();
    let mut counts = vec![0u64; epsilons.len()];
    let mut rows = Vec::new();
    let mut ci = 0usize;
    for n in 1..=horizon {
        let v = values(n);
        if v < 0.0 {
            return Err(Error::Precondition(format!(
                "value at n={n} is negative ({v}); the forward bound needs a_n >= 0"
            )));
        }
        acc.add(v);
        for (i, &eps) in epsilons.iter().enumerate() {
            if v >= eps {
                counts[i] += 1;
            }
        }
        if ci < checkpoints.len() && checkpoints[ci] == n {
            let cesaro = acc.value() / n as f64;
            for (i, &eps) in epsilons.iter().enumerate() {
                let ratio = counts[i] as f64 / n as f64;
                let bound = cesaro / eps;
                rows.push(AveragingRow {
                    checkpoint: n,
                    epsilon: eps,
                    cesaro,
                    exceptional_ratio: ratio,
                    bound,
                    holds: ratio <= bound * (1.0 + 1e-12) + 1e-300,
                });
            }
            ci += 1;
        }
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(KvnForwardReport { rows, all_hold })
}

#[derive(Debug, Clone, Serialize)]
pub struct KvnConverseReport {
    pub rows: Vec<AveragingRow>,
    pub all_hold: bool,
    /// Trend of the Cesàro means; divergence flags a sequence whose
    /// unboundedness breaks the converse.
    pub cesaro_trend: Trend,
}

/// Converse direction for bounded sequences: the Cesàro mean is dominated
/// by `(exceptional ratio) * bound + eps` at every checkpoint. Values are
/// validated against the declared bound.
pub fn kvn_converse_check(
    values: &dyn Fn(u64) -> f64,
    bound: f64,
    checkpoints: &[u64],
    epsilons: &[f64],
) -> Result<KvnConverseReport> {
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be nonempty and strictly increasing".into(),
        ));
    }
    if epsilons.iter().any(|&e| e <= 0.0) {
        return Err(Error::Precondition("epsilons must be positive".into()));
    }
    let horizon = *checkpoints.last().unwrap();
    let mut acc = CompensatedSum::new();
    let mut counts = vec![0u64; epsilons.len()];
    let mut cesaro_series = Vec::with_capacity(checkpoints.len());
    let mut rows = Vec::new();
    let mut ci = 0usize;
    for n in 1..=horizon {
        let v = values(n);
        if v < 0.0 {
            return Err(Error::Precondition(format!(
                "value at n={n} is negative ({v})"
            )));
        }
        if v > bound {
            return Err(Error::BoundViolated {
                index: n,
                value: v,
                bound,
            });
        }
        acc.add(v);
        for (i, &eps) in epsilons.iter().enumerate() {
            if v >= eps {
                counts[i] += 1;
            }
        }
        if ci < checkpoints.len() && checkpoints[ci] == n {
            let cesaro = acc.value() / n as f64;
            cesaro_series.push(cesaro);
            for (i, &eps) in epsilons.iter().enumerate() {
                let ratio = counts[i] as f64 / n as f64;
                let rhs = ratio * bound + eps;
                rows.push(AveragingRow {
                    checkpoint: n,
                    epsilon: eps,
                    cesaro,
                    exceptional_ratio: ratio,
                    bound: rhs,
                    holds: cesaro <= rhs * (1.0 + 1e-12) + 1e-300,
                });
            }
            ci += 1;
        }
    }
    let (_, cesaro_trend) = classify(checkpoints, &cesaro_series);
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(KvnConverseReport {
        rows,
        all_hold,
        cesaro_trend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{is_square, materialize_values, SeriesSpec};

    fn cps() -> Vec<u64> {
        crate::default_checkpoints(100, 1_000_000)
    }

    #[test]
    fn olivier_exceptional_set_is_squares() {
        let xs = materialize_values(
            &SeriesSpec::OlivierCounterexample,
            |n, a| n as f64 * a,
            100,
        )
        .unwrap();
        let e = exceptional_set(&|n| xs[n as usize], 0.0, 1.0, 100).unwrap();
        let expected: Vec<u64> = (2..=10).map(|j| j * j).collect();
        assert_eq!(*e.indices, expected);
        assert_eq!(e.indices.len(), 9);
    }

    #[test]
    fn reciprocal_exceptional_set_boundary() {
        // membership uses >=, so 1/2 = 0.5 sits inside A(0.5)
        let e = exceptional_set(&|n| 1.0 / n as f64, 0.0, 0.5, 50).unwrap();
        assert_eq!(*e.indices, vec![1, 2]);
        let e = exceptional_set(&|n| 1.0 / n as f64, 0.0, 0.6, 50).unwrap();
        assert_eq!(*e.indices, vec![1]);
    }

    #[test]
    fn constant_sequence_has_empty_exceptional_set() {
        let e = exceptional_set(&|_| 0.3, 0.3, 0.01, 1000).unwrap();
        assert!(e.indices.is_empty());
    }

    #[test]
    fn olivier_diagnostic_consistent_with_witnessed_classical_failure() {
        let horizon = 1_000_000u64;
        let xs = materialize_values(
            &SeriesSpec::OlivierCounterexample,
            |n, a| n as f64 * a,
            horizon,
        )
        .unwrap();
        let report = d_lim_diagnostic(
            &|n| xs[n as usize],
            0.0,
            &[1.0],
            &cps(),
            DiagnosticMode::Natural,
        )
        .unwrap();
        assert_eq!(report.verdict, DiagnosticVerdict::ConsistentWithDensityLimit);
        let last = *report.profiles[0].values.last().unwrap();
        assert!(last <= 2e-3, "profile value {last}");
        // classical failure: the sampled sup sits at a square, at ln of it
        assert!(is_square(report.classical_sup_at));
        assert!(report.classical_sup >= (999_000f64).ln());
    }

    #[test]
    fn harmonic_series_diagnostic_is_inconsistent() {
        let report =
            d_lim_diagnostic(&|_| 1.0, 0.0, &[0.5], &cps(), DiagnosticMode::Natural).unwrap();
        assert_eq!(report.verdict, DiagnosticVerdict::Inconsistent);
        let w = report.witness.unwrap();
        assert_eq!(w.epsilon, 0.5);
        assert!((w.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classical_zero_trend_settles_the_verdict() {
        // x_n = 1/ln(n+1) decays classically although A(0.01) covers the
        // whole sampled range
        let report = d_lim_diagnostic(
            &|n| 1.0 / ((n + 1) as f64).ln(),
            0.0,
            &[1.0, 0.1, 0.01],
            &cps(),
            DiagnosticMode::Natural,
        )
        .unwrap();
        assert_eq!(report.verdict, DiagnosticVerdict::ConsistentWithDensityLimit);
        // the 0.01-profile alone could not have witnessed this
        let p = report.profiles.last().unwrap();
        assert!(*p.values.last().unwrap() > 0.9);
    }

    #[test]
    fn epsilon_monotonicity_of_exceptional_sets() {
        let horizon = 10_000u64;
        let xs = materialize_values(
            &SeriesSpec::OlivierCounterexample,
            |n, a| n as f64 * a,
            horizon,
        )
        .unwrap();
        let values = |n: u64| xs[n as usize];
        let epsilons = [0.01, 0.1, 1.0, 10.0];
        let sets: Vec<_> = epsilons
            .iter()
            .map(|&e| exceptional_set(&values, 0.0, e, horizon).unwrap())
            .collect();
        for w in sets.windows(2) {
            // larger epsilon -> subset
            for idx in w[1].indices.iter() {
                assert!(w[0].indices.binary_search(idx).is_ok());
            }
            assert!(w[1].indices.len() <= w[0].indices.len());
        }
        // profile values ordered accordingly at every checkpoint
        let cps: Vec<u64> = crate::default_checkpoints(100, horizon);
        let profiles: Vec<_> = sets
            .iter()
            .map(|e| {
                counting_profile_with_notion(&e.carrier, &cps, DensityNotion::Natural).unwrap()
            })
            .collect();
        for w in profiles.windows(2) {
            for (a, b) in w[0].values.iter().zip(&w[1].values) {
                assert!(b <= a);
            }
        }
    }

    #[test]
    fn abel_summation_identity_for_cesaro_of_n_a_n() {
        // (1/n) sum k*a_k equals S_n - (S_1 + ... + S_(n-1))/n exactly,
        // checked to 1e-10 on the convergent built-ins
        for spec in [
            SeriesSpec::Mb { k: 0, s: 2.0 },
            SeriesSpec::Mb { k: 1, s: 2.0 },
            SeriesSpec::OlivierCounterexample,
            SeriesSpec::BlockCounterexample,
        ] {
            let horizon = 10_000u64;
            let mut stream = spec.stream().unwrap();
            let mut terms = vec![0.0f64; horizon as usize + 1];
            while let Some((n, a)) = stream.next_term().unwrap() {
                if n > horizon {
                    break;
                }
                terms[n as usize] = a;
            }
            let mut ka = CompensatedSum::new();
            for n in 1..=horizon {
                ka.add(n as f64 * terms[n as usize]);
            }
            let mut s = CompensatedSum::new();
            let mut sum_s = CompensatedSum::new(); // S_1 + ... + S_(n-1)
            for n in 1..horizon {
                s.add(terms[n as usize]);
                sum_s.add(s.value());
            }
            s.add(terms[horizon as usize]);
            let lhs = ka.value() / horizon as f64;
            let rhs = s.value() - sum_s.value() / horizon as f64;
            assert!(
                (lhs - rhs).abs() < 1e-10,
                "{}: {lhs} vs {rhs}",
                spec.canonical()
            );
        }
    }

    #[test]
    fn olivier_reduction_inequality() {
        // for monotone decreasing terms, the Cesàro mean of (k a_k)
        // dominates ((n+1)/2) a_n
        for spec in [SeriesSpec::Mb { k: 0, s: 2.0 }, SeriesSpec::Mb { k: 1, s: 2.0 }] {
            let horizon = 100_000u64;
            let xs = materialize_values(&spec, |n, a| n as f64 * a, horizon).unwrap();
            let mut terms = vec![0.0f64; horizon as usize + 1];
            let mut stream = spec.stream().unwrap();
            while let Some((n, a)) = stream.next_term().unwrap() {
                if n > horizon {
                    break;
                }
                terms[n as usize] = a;
            }
            let cps = crate::default_checkpoints(100, horizon);
            let mut acc = CompensatedSum::new();
            let mut ci = 0usize;
            for n in 1..=horizon {
                acc.add(xs[n as usize]);
                if ci < cps.len() && cps[ci] == n {
                    let cesaro = acc.value() / n as f64;
                    let a_n = terms[n as usize];
                    assert!(
                        cesaro >= (n as f64 + 1.0) / 2.0 * a_n - 1e-12,
                        "{} at {n}",
                        spec.canonical()
                    );
                    ci += 1;
                }
            }
        }
    }

    #[test]
    fn permutation_stability_of_the_density_diagnostic() {
        // n * a_(phi(n)) for the growing-block reversal of a convergent
        // series stays consistent with a zero density limit
        let horizon = 100_000u64;
        let mut stream = crate::series::apply_block_permutation(
            SeriesSpec::Mb { k: 0, s: 2.0 }.stream().unwrap(),
            |b| b,
        );
        let mut xs = vec![0.0f64; horizon as usize + 1];
        while let Some((n, a)) = stream.next_term().unwrap() {
            if n > horizon {
                break;
            }
            xs[n as usize] = n as f64 * a;
        }
        let cps = crate::default_checkpoints(100, horizon);
        let report = d_lim_diagnostic(
            &|n| xs[n as usize],
            0.0,
            &[1.0, 0.1, 0.01],
            &cps,
            DiagnosticMode::Natural,
        )
        .unwrap();
        assert_eq!(report.verdict, DiagnosticVerdict::ConsistentWithDensityLimit);
    }

    #[test]
    fn forward_bound_on_squares_indicator() {
        let report = kvn_forward_check(
            &|n| if is_square(n) { 1.0 } else { 0.0 },
            &[100, 1000, 10_000],
            &[0.5],
        )
        .unwrap();
        assert!(report.all_hold);
        let row = report.rows.iter().find(|r| r.checkpoint == 10_000).unwrap();
        assert_eq!(row.cesaro, 0.01);
        assert_eq!(row.exceptional_ratio, 0.01);
        assert_eq!(row.bound, 0.02);
    }

    #[test]
    fn forward_bound_on_reciprocals() {
        let report = kvn_forward_check(&|n| 1.0 / n as f64, &[10_000], &[0.1]).unwrap();
        assert!(report.all_hold);
        let row = &report.rows[0];
        assert!((row.cesaro - 9.7876e-4).abs() < 1e-7);
    }

    #[test]
    fn forward_zero_sequence() {
        let report = kvn_forward_check(&|_| 0.0, &[100], &[0.5]).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.rows[0].cesaro, 0.0);
        assert_eq!(report.rows[0].exceptional_ratio, 0.0);
    }

    #[test]
    fn converse_on_bounded_squares_indicator() {
        let report = kvn_converse_check(
            &|n| if is_square(n) { 1.0 } else { 0.0 },
            1.0,
            &cps(),
            &[0.5, 0.1],
        )
        .unwrap();
        assert!(report.all_hold);
        assert_eq!(report.cesaro_trend, Trend::DecreasingToZero);
    }

    #[test]
    fn converse_counterexample_needs_unboundedness() {
        let values = |n: u64| if is_square(n) { n as f64 } else { 0.0 };
        // declared bound 1 is violated at n = 1 (value 1 is fine) then 4
        let err = kvn_converse_check(&values, 1.0, &[100], &[0.5]).unwrap_err();
        assert!(matches!(err, Error::BoundViolated { index: 4, .. }));
        // raising the bound to the sampled sup admits the check and
        // exposes the divergent Cesàro trend
        let cps: Vec<u64> = crate::default_checkpoints(100, 10_000);
        let report = kvn_converse_check(&values, 10_000.0, &cps, &[0.5]).unwrap();
        let last = report.rows.last().unwrap();
        assert_eq!(last.cesaro, 33.835); // (sum of j^2, j <= 100) / 10^4
        assert_eq!(report.cesaro_trend, Trend::Increasing);
        // while the natural-density diagnostic of the same values stays
        // consistent with zero
        let d = d_lim_diagnostic(&values, 0.0, &[0.5], &cps, DiagnosticMode::Natural).unwrap();
        assert_eq!(d.verdict, DiagnosticVerdict::ConsistentWithDensityLimit);
    }

    #[test]
    fn converse_constant_sequence() {
        let report = kvn_converse_check(&|_| 0.3, 1.0, &[100, 1000], &[0.5]).unwrap();
        assert!(report.all_hold);
        for r in &report.rows {
            assert_eq!(r.exceptional_ratio, 0.0);
            assert!((r.cesaro - 0.3).abs() < 1e-12);
            assert!((r.bound - 0.5).abs() < 1e-12);
        }
    }
}
