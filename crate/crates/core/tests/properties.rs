//! Property suites over the combinatorial and representation layers.

use proptest::prelude::*;

use serlab::progressions::{find_eps_progression, longest_ap, minimax_line, EpsMode};
use serlab::series::{partial_sums, SeriesSpec};
use serlab::sum::CompensatedSum;
use serlab::tower::TowerMagnitude;

proptest! {
    /// Tower normalization keeps the lexicographic order consistent with
    /// comparison at a common representable level.
    #[test]
    fn tower_order_matches_common_level(
        la in 1u32..4,
        xa in 15.0f64..250.0,
        lb in 1u32..4,
        xb in 15.0f64..250.0,
    ) {
        let a = TowerMagnitude::from_ln_iterate(la, xa);
        let b = TowerMagnitude::from_ln_iterate(lb, xb);
        // compare through a common level when both fit
        let level = a.height().max(b.height());
        if let (Ok(va), Ok(vb)) = (a.down_to(level), b.down_to(level)) {
            if va < vb {
                prop_assert!(a < b || (va - vb).abs() <= 1e-12 * vb.abs());
            } else if va > vb {
                prop_assert!(a > b || (va - vb).abs() <= 1e-12 * va.abs());
            }
        }
    }

    /// Tower round trip: value -> tower -> value.
    #[test]
    fn tower_value_round_trip(x in 1.0f64..1e14) {
        let t = TowerMagnitude::from_value(x);
        prop_assert_eq!(t.height(), 0);
        prop_assert_eq!(t.to_value().unwrap(), x);
    }

    /// The exact minimax line is never beaten by a lattice search.
    #[test]
    fn minimax_line_is_optimal(values in proptest::collection::vec(-10.0f64..10.0, 3..9)) {
        let points: Vec<(f64, f64)> = values
            .iter()
            .enumerate()
            .map(|(k, &y)| ((k + 1) as f64, y))
            .collect();
        let (_, _, e) = minimax_line(&points);
        // lattice around plausible intercepts and slopes
        let mut grid_best = f64::INFINITY;
        let mut a = -20.0;
        while a <= 20.0 {
            let mut r = -10.0;
            while r <= 10.0 {
                let dev = points
                    .iter()
                    .map(|&(k, y)| (y - a - r * k).abs())
                    .fold(0.0f64, f64::max);
                grid_best = grid_best.min(dev);
                r += 0.05;
            }
            a += 0.05;
        }
        prop_assert!(grid_best >= e - 1e-9, "grid {grid_best} beat exact {e}");
    }

    /// On integer inputs a window is an exact progression precisely when
    /// the relaxed search with vanishing tolerance accepts it.
    #[test]
    fn eps_to_zero_agrees_with_exact_detection(
        ints in proptest::collection::vec(0i64..40, 4..12),
    ) {
        let seq: Vec<f64> = ints.iter().map(|&v| v as f64).collect();
        let len = 3usize;
        let relaxed = find_eps_progression(&seq, len, 1e-9, EpsMode::Window).unwrap();
        // exact: some contiguous window of length 3 forms an AP
        let exact = seq.windows(len).any(|w| w[2] - w[1] == w[1] - w[0]);
        prop_assert_eq!(relaxed.is_some(), exact);
        if let Some(w) = relaxed {
            prop_assert_eq!(w.max_residual, 0.0);
        }
    }

    /// Longest-progression length never exceeds the input length and the
    /// witness always verifies.
    #[test]
    fn longest_ap_witness_verifies(raw in proptest::collection::vec(0i64..2000, 1..60)) {
        let mut vals = raw;
        vals.sort_unstable();
        vals.dedup();
        let w = longest_ap(&vals).unwrap();
        prop_assert!(w.length <= vals.len());
        prop_assert_eq!(w.length, w.indices.len());
        for (k, &i) in w.indices.iter().enumerate() {
            let fit = w.base + (k + 1) as f64 * w.difference;
            prop_assert_eq!(vals[i] as f64, fit);
        }
    }

    /// Compensated summation of shuffled small-magnitude terms agrees
    /// with the exact rational total far beyond plain accumulation.
    #[test]
    fn compensated_sum_matches_integer_oracle(
        nums in proptest::collection::vec(1u32..1000, 10..200),
    ) {
        // sum of k/2^10 values is exactly representable in binary
        let mut acc = CompensatedSum::new();
        let mut exact = 0u64;
        for &k in &nums {
            acc.add(k as f64 / 1024.0);
            exact += k as u64;
        }
        let expected = exact as f64 / 1024.0;
        prop_assert!((acc.value() - expected).abs() < 1e-9);
    }
}

/// Determinism across independently built streams, including transforms.
#[test]
fn transformed_streams_are_deterministic() {
    let specs = [
        SeriesSpec::AbelTransformOf(Box::new(SeriesSpec::OlivierCounterexample)),
        SeriesSpec::RestrictedTo(
            Box::new(SeriesSpec::Harmonic),
            serlab::density::IndexSet::squares(),
        ),
    ];
    for spec in specs {
        let mut a = spec.stream().unwrap();
        let mut b = spec.stream().unwrap();
        for _ in 0..2000 {
            assert_eq!(a.next_term().unwrap(), b.next_term().unwrap());
        }
    }
}

/// Partial-sum traces agree with a fold over the same stream.
#[test]
fn partial_sum_trace_matches_plain_fold() {
    let spec = SeriesSpec::OlivierCounterexample;
    let cps = [10u64, 100, 1000];
    let trace = partial_sums(spec.stream().unwrap(), &cps, None).unwrap();
    let mut stream = spec.stream().unwrap();
    let mut acc = 0.0f64;
    let mut folded = Vec::new();
    let mut ci = 0;
    while let Some((n, a)) = stream.next_term().unwrap() {
        if n > 1000 {
            break;
        }
        while ci < cps.len() && cps[ci] < n {
            folded.push(acc);
            ci += 1;
        }
        acc += a;
    }
    while ci < cps.len() {
        folded.push(acc);
        ci += 1;
    }
    for (t, f) in trace.sums.iter().zip(&folded) {
        assert!((t - f).abs() < 1e-12);
    }
}
