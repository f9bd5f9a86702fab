//! Finite-evidence trend classification.
//!
//! A profile sampled at increasing checkpoints is matched against the
//! decay templates `c`, `c/log N`, `c/sqrt(N)` and the growth template
//! `c log N` by least squares over the tail window (the shortest suffix
//! spanning at least two decades). A template is selected when its
//! relative residual is below 10%. Profiles that decay faster than every
//! template (a finite exceptional set, say) are caught by a monotone
//! clear-decay fallback. No verdict here is a proof; it is the documented,
//! reproducible reading of finite evidence.

use serde::Serialize;

/// Relative residual below which a template is accepted.
pub const FIT_THRESHOLD: f64 = 0.10;
/// A stabilizing level at or below this floor counts as "at zero".
pub const STABILIZING_FLOOR: f64 = 0.01;
/// Ceiling for the clear-decay fallback: the window must end this low.
const DECAY_CEILING: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    DecreasingToZero,
    Stabilizing,
    Increasing,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Template {
    Constant,
    InvLog,
    InvSqrt,
    Log,
}

impl Template {
    fn eval(self, n: f64) -> f64 {
        match self {
            Template::Constant => 1.0,
            Template::InvLog => 1.0 / n.ln(),
            Template::InvSqrt => 1.0 / n.sqrt(),
            Template::Log => n.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TemplateFit {
    pub template: Template,
    pub coefficient: f64,
    pub rel_residual: f64,
}

/// Least-squares multiplier for `values ~ c * template(N)` and the
/// residual relative to the RMS of the values.
pub fn fit_template(checkpoints: &[u64], values: &[f64], template: Template) -> TemplateFit {
    let mut num = 0.0;
    let mut den = 0.0;
    for (&n, &v) in checkpoints.iter().zip(values) {
        let t = template.eval(n as f64);
        num += v * t;
        den += t * t;
    }
    let c = if den > 0.0 { num / den } else { 0.0 };
    let mut ss_res = 0.0;
    let mut ss_val = 0.0;
    for (&n, &v) in checkpoints.iter().zip(values) {
        let r = v - c * template.eval(n as f64);
        ss_res += r * r;
        ss_val += v * v;
    }
    let rel = if ss_val > 0.0 {
        (ss_res / ss_val).sqrt()
    } else {
        0.0
    };
    TemplateFit {
        template,
        coefficient: c,
        rel_residual: rel,
    }
}

/// Start index of the tail window: the shortest suffix spanning at least
/// two decades, never fewer than four points (all points when the profile
/// is too short for either).
pub fn tail_window_start(checkpoints: &[u64]) -> usize {
    let len = checkpoints.len();
    if len <= 4 {
        return 0;
    }
    let last = checkpoints[len - 1] as f64;
    let mut start = 0;
    for (i, &c) in checkpoints.iter().enumerate() {
        if last / c as f64 >= 100.0 {
            start = i;
        } else {
            break;
        }
    }
    start.min(len - 4)
}

/// Classify the asymptotic behaviour of a sampled profile over its tail
/// window. Returns the extrapolated limit where one is implied.
pub fn classify(checkpoints: &[u64], values: &[f64]) -> (Option<f64>, Trend) {
    assert_eq!(checkpoints.len(), values.len());
    if values.is_empty() {
        return (None, Trend::Inconclusive);
    }
    let start = tail_window_start(checkpoints);
    let cps = &checkpoints[start..];
    let vs = &values[start..];
    if vs.iter().all(|&v| v == 0.0) {
        return (Some(0.0), Trend::DecreasingToZero);
    }
    let fits = [
        fit_template(cps, vs, Template::Constant),
        fit_template(cps, vs, Template::InvLog),
        fit_template(cps, vs, Template::InvSqrt),
        fit_template(cps, vs, Template::Log),
    ];
    let best = fits
        .iter()
        .min_by(|a, b| a.rel_residual.total_cmp(&b.rel_residual))
        .unwrap();
    if best.rel_residual < FIT_THRESHOLD {
        return match best.template {
            Template::Constant => (Some(best.coefficient), Trend::Stabilizing),
            Template::InvLog | Template::InvSqrt => (Some(0.0), Trend::DecreasingToZero),
            Template::Log => (None, Trend::Increasing),
        };
    }
    // fallback: clear decay faster than every template
    let first = vs[0];
    let last = vs[vs.len() - 1];
    let nonincreasing = vs.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    if nonincreasing && last <= first / 2.0 && last <= DECAY_CEILING {
        return (Some(0.0), Trend::DecreasingToZero);
    }
    // non-monotone but uniformly small against the head of the profile
    let head_max = values.iter().cloned().fold(f64::MIN, f64::max);
    let window_max = vs.iter().cloned().fold(f64::MIN, f64::max);
    if window_max <= STABILIZING_FLOOR && window_max <= 0.1 * head_max {
        return (Some(0.0), Trend::DecreasingToZero);
    }
    let nondecreasing = vs.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    if nondecreasing && last >= 2.0 * first.max(0.0) && last > STABILIZING_FLOOR {
        return (None, Trend::Increasing);
    }
    (None, Trend::Inconclusive)
}

/// Whether the profile is consistent with a zero limit: it decays, or it
/// stabilizes at a level below the floor.
pub fn fits_zero_limit(checkpoints: &[u64], values: &[f64]) -> bool {
    match classify(checkpoints, values) {
        (_, Trend::DecreasingToZero) => true,
        (Some(c), Trend::Stabilizing) => c.abs() <= STABILIZING_FLOOR,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_cps() -> Vec<u64> {
        crate::default_checkpoints(100, 1_000_000)
    }

    #[test]
    fn inv_sqrt_exact_fit() {
        let cps = default_cps();
        let vs: Vec<f64> = cps.iter().map(|&n| 3.0 / (n as f64).sqrt()).collect();
        let (lim, trend) = classify(&cps, &vs);
        assert_eq!(trend, Trend::DecreasingToZero);
        assert_eq!(lim, Some(0.0));
    }

    #[test]
    fn constant_profile_stabilizes() {
        let cps = default_cps();
        let vs = vec![0.5; cps.len()];
        let (lim, trend) = classify(&cps, &vs);
        assert_eq!(trend, Trend::Stabilizing);
        assert!((lim.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn log_growth_is_increasing() {
        let cps = default_cps();
        let vs: Vec<f64> = cps.iter().map(|&n| 0.3 * (n as f64).ln()).collect();
        assert_eq!(classify(&cps, &vs).1, Trend::Increasing);
    }

    #[test]
    fn fast_decay_falls_back_to_zero_verdict() {
        // ~C/N decays faster than every template
        let cps = default_cps();
        let vs: Vec<f64> = cps.iter().map(|&n| 100.0 / n as f64).collect();
        let (lim, trend) = classify(&cps, &vs);
        assert_eq!(trend, Trend::DecreasingToZero, "values {vs:?}");
        assert_eq!(lim, Some(0.0));
    }

    #[test]
    fn tail_window_spans_two_decades() {
        let cps = default_cps();
        let start = tail_window_start(&cps);
        assert!(cps[cps.len() - 1] / cps[start] >= 100);
        if start > 0 {
            assert!(cps[cps.len() - 1] / cps[start - 1] > 100);
        }
    }

    #[test]
    fn zero_profile_is_zero() {
        let cps = vec![10, 100, 1000, 10_000, 100_000];
        let vs = vec![0.0; 5];
        assert!(fits_zero_limit(&cps, &vs));
    }

    #[test]
    fn tiny_stabilization_counts_as_zero() {
        let cps = default_cps();
        let vs = vec![0.004; cps.len()];
        assert!(fits_zero_limit(&cps, &vs));
        let vs = vec![0.4; cps.len()];
        assert!(!fits_zero_limit(&cps, &vs));
    }
}
