//! Subcommand implementations: each builds a canonical config object,
//! runs the mapped library operations, and renders one deterministic
//! report artifact (JSON envelope or CSV table).

use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Value};

use serlab::classical;
use serlab::density::{self, DensityProfile};
use serlab::density_limits::{self};
use serlab::error::{Error, Result};
use serlab::parse::{parse_series, parse_set, ParseContext};
use serlab::primes::PrimeTable;
use serlab::progressions::{self, EpsMode};
use serlab::series::SeriesSpec;
use serlab::tail;

use crate::report::{dec12, Val};

/// Parse a count that may be written in scientific notation (`1e6`).
pub fn parse_count(text: &str) -> Result<u64> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    match text.parse::<f64>() {
        Ok(v) if v >= 1.0 && v <= 1e18 && v.fract() == 0.0 => Ok(v as u64),
        _ => Err(Error::Parse {
            offset: 0,
            message: format!("expected a positive integer count, got '{text}'"),
        }),
    }
}

/// Checkpoint schedules: `lo:hi` (three points per decade), `lo:hi:p`
/// (p points per decade), or an explicit comma list.
pub fn parse_checkpoints(text: &str) -> Result<Vec<u64>> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(Error::Parse {
                offset: 0,
                message: "expected 'lo:hi' or 'lo:hi:points-per-decade'".into(),
            });
        }
        let lo = parse_count(parts[0])?;
        let hi = parse_count(parts[1])?;
        if lo >= hi {
            return Err(Error::Parse {
                offset: 0,
                message: format!("empty checkpoint range {lo}:{hi}"),
            });
        }
        let ppd = if parts.len() == 3 {
            parts[2].parse::<u32>().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("invalid points-per-decade '{}'", parts[2]),
            })?
        } else {
            3
        };
        if ppd == 3 {
            return Ok(serlab::default_checkpoints(lo, hi));
        }
        let mut out = Vec::new();
        let mut exp = (lo as f64).log10();
        let top = (hi as f64).log10();
        while exp < top - 1e-9 {
            let v = 10f64.powf(exp).round() as u64;
            if out.last() != Some(&v) {
                out.push(v);
            }
            exp += 1.0 / ppd as f64;
        }
        if out.last() != Some(&hi) {
            out.push(hi);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        out.push(parse_count(part.trim())?);
    }
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse {
            offset: 0,
            message: "checkpoint list must be strictly increasing".into(),
        });
    }
    Ok(out)
}

pub fn parse_eps_list(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let v: f64 = part.trim().parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("invalid epsilon '{part}'"),
        })?;
        out.push(v);
    }
    Ok(out)
}

fn profile_json(p: &DensityProfile) -> Value {
    json!({
        "notion": p.notion,
        "trend": p.trend,
        "limit_estimate": p.limit_estimate.map(dec12),
        "rows": p.checkpoints.iter().zip(&p.values)
            .map(|(&n, &v)| json!({"n": n, "value": dec12(v)}))
            .collect::<Vec<_>>(),
    })
}

fn profile_csv(p: &DensityProfile) -> String {
    let mut out = String::from("n,value\n");
    for (&n, &v) in p.checkpoints.iter().zip(&p.values) {
        out.push_str(&format!("{n},{}\n", dec12(v)));
    }
    out
}

fn verdict_json(v: &classical::TestVerdict) -> Value {
    json!({
        "name": v.name,
        "verdict": v.verdict,
        "preconditions": v.preconditions.iter().map(|p| json!({
            "name": p.name, "passed": p.passed, "detail": p.detail,
        })).collect::<Vec<_>>(),
        "notes": v.notes,
        "evidence": {
            "columns": v.evidence.columns,
            "rows": v.evidence.rows.iter().map(|r| json!({
                "checkpoint": r.checkpoint,
                "values": r.values.iter().map(|&x| dec12(x)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        },
    })
}

fn tower_json(t: &serlab::tower::TowerMagnitude) -> Value {
    json!({
        "height": t.height(),
        "top": Val::new(t.top()),
        "rendered": t.to_string(),
    })
}

pub struct CommandOutput {
    pub config: Value,
    pub result: Value,
    /// Set when `--format csv` applies: written instead of the envelope.
    pub csv: Option<String>,
}

pub fn cmd_sum(series: &str, direct: u64, csv: bool) -> Result<CommandOutput> {
    let ctx = ParseContext::with_prime_limit(direct.max(2));
    let spec = parse_series(series, &ctx)?;
    let bracket = tail::sum_with_tail_bracket(&spec, direct)?;
    let config = json!({"series": spec.canonical(), "direct": direct});
    let result = json!({
        "lower": Val::new(bracket.lower),
        "upper": Val::new(bracket.upper),
        "width": Val::new(bracket.width()),
        "direct_terms": bracket.direct_terms,
        "note": bracket.note,
    });
    let csv_text = csv.then(|| {
        format!(
            "lower,upper,width,direct_terms\n{},{},{},{}\n",
            dec12(bracket.lower),
            dec12(bracket.upper),
            dec12(bracket.width()),
            bracket.direct_terms
        )
    });
    Ok(CommandOutput {
        config,
        result,
        csv: csv_text,
    })
}

pub fn cmd_classify(series: &str, threshold: f64) -> Result<CommandOutput> {
    let ctx = ParseContext::with_prime_limit(1_500_000);
    let spec = parse_series(series, &ctx)?;
    let config = json!({"series": spec.canonical(), "threshold": threshold});
    let result = match &spec {
        SeriesSpec::Mb { k, s } => {
            let verdict = classical::mb_classify(*k, *s)?;
            let mut out = verdict_json(&verdict);
            if *s > 1.0 {
                let b = tail::sum_with_tail_bracket(&spec, 1_000_000.max(spec.start_index()? + 1))?;
                out["bracket"] = json!({
                    "lower": Val::new(b.lower),
                    "upper": Val::new(b.upper),
                    "width": Val::new(b.width()),
                });
            } else {
                let c = tail::crossing_threshold(&spec, threshold)?;
                out["crossing"] = json!({
                    "n": tower_json(&c.n),
                    "lo": tower_json(&c.lo),
                    "hi": tower_json(&c.hi),
                    "exact": c.exact,
                    "note": c.note,
                    "literature": c.literature.as_ref().map(|l| json!({
                        "reference": l.reference,
                        "source": l.source,
                        "comment": l.comment,
                    })),
                });
            }
            out
        }
        _ => verdict_json(&classical::condensation_classify(&spec)?),
    };
    Ok(CommandOutput {
        config,
        result,
        csv: None,
    })
}

pub fn cmd_density(
    set_expr: &str,
    notion: &str,
    weight: Option<&str>,
    checkpoints: &[u64],
    csv: bool,
) -> Result<CommandOutput> {
    let max = *checkpoints.last().ok_or(Error::Precondition("no checkpoints".into()))?;
    let ctx = ParseContext::with_prime_limit(max);
    let set = parse_set(set_expr, &ctx)?;
    let profile = match notion {
        "natural" => density::counting_profile(&set, checkpoints)?,
        "lower" => density::counting_profile_with_notion(
            &set,
            checkpoints,
            density::DensityNotion::LowerProxy,
        )?,
        "upper" => density::counting_profile_with_notion(
            &set,
            checkpoints,
            density::DensityNotion::UpperProxy,
        )?,
        "harmonic" => density::harmonic_profile(&set, checkpoints)?,
        "weighted" => {
            let phi = weight_fn(weight.unwrap_or("n/ln"))?;
            density::weighted_counting_profile(&set, phi.as_ref(), checkpoints)?
        }
        other => {
            return Err(Error::Parse {
                offset: 0,
                message: format!("unknown notion '{other}'"),
            })
        }
    };
    let config = json!({
        "set": set.name(),
        "notion": notion,
        "weight": weight,
        "checkpoints": checkpoints,
    });
    let result = profile_json(&profile);
    let csv_text = csv.then(|| profile_csv(&profile));
    Ok(CommandOutput {
        config,
        result,
        csv: csv_text,
    })
}

/// Named weight functions for the weighted density: `n`, `sqrt`,
/// `n/ln`, and the deeper `n/ln:k` variants dividing by the product of
/// k iterated logarithms.
pub fn weight_fn(name: &str) -> Result<Box<dyn Fn(u64) -> f64>> {
    match name {
        "n" => Ok(Box::new(|n| n as f64)),
        "sqrt" => Ok(Box::new(|n| (n as f64).sqrt())),
        "n/ln" => Ok(Box::new(|n| n as f64 / (n as f64).ln())),
        _ => {
            if let Some(depth) = name.strip_prefix("n/ln:") {
                let k: u32 = depth.parse().map_err(|_| Error::Parse {
                    offset: 5,
                    message: format!("invalid weight depth '{depth}'"),
                })?;
                if k == 0 || k > 3 {
                    return Err(Error::Parse {
                        offset: 5,
                        message: "weight depth must be 1..=3".into(),
                    });
                }
                Ok(Box::new(move |n| {
                    let x = n as f64;
                    let mut denom = 1.0;
                    let mut l = x;
                    for _ in 0..k {
                        l = l.ln();
                        denom *= l;
                    }
                    x / denom
                }))
            } else {
                Err(Error::Parse {
                    offset: 0,
                    message: format!("unknown weight '{name}' (use n, sqrt, n/ln, n/ln:k)"),
                })
            }
        }
    }
}

/// Named value sequences for the averaging checks.
fn values_fn(name: &str) -> Result<Box<dyn Fn(u64) -> f64>> {
    match name {
        "squares-indicator" => Ok(Box::new(|n| {
            if serlab::series::is_square(n) {
                1.0
            } else {
                0.0
            }
        })),
        "reciprocal" => Ok(Box::new(|n| 1.0 / n as f64)),
        "n-on-squares" => Ok(Box::new(|n| {
            if serlab::series::is_square(n) {
                n as f64
            } else {
                0.0
            }
        })),
        _ => Err(Error::Parse {
            offset: 0,
            message: format!(
                "unknown values '{name}' (use squares-indicator, reciprocal, n-on-squares)"
            ),
        }),
    }
}

fn b_rule_fn(name: &str) -> Result<Box<dyn Fn(u64) -> f64>> {
    match name {
        "n" => Ok(Box::new(|n| n as f64)),
        "nlogn" => Ok(Box::new(|n| n as f64 * ((n + 1) as f64).ln())),
        "sqrt" => Ok(Box::new(|n| (n as f64).sqrt())),
        "n2" => Ok(Box::new(|n| (n as f64) * (n as f64))),
        _ => Err(Error::Parse {
            offset: 0,
            message: format!("unknown b-rule '{name}' (use n, nlogn, sqrt, n2)"),
        }),
    }
}

fn z_rule_fn(name: &str) -> Result<Box<dyn Fn(u64) -> Complex64>> {
    match name {
        "alternating" => Ok(Box::new(|n| {
            Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        })),
        "alt-pow-3-2" => Ok(Box::new(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * (n as f64).powf(-1.5), 0.0)
        })),
        "ones" => Ok(Box::new(|_| Complex64::new(1.0, 0.0))),
        "rotating" => Ok(Box::new(|n| {
            // unit steps around the circle: bounded partial sums
            let theta = 2.4 * n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })),
        _ => Err(Error::Parse {
            offset: 0,
            message: format!(
                "unknown z-rule '{name}' (use alternating, alt-pow-3-2, ones, rotating)"
            ),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_diagnose(
    test: &str,
    series: Option<&str>,
    b_rule: Option<&str>,
    values: Option<&str>,
    z: Option<&str>,
    bound: Option<f64>,
    m_split: Option<u64>,
    eps: &[f64],
    checkpoints: &[u64],
) -> Result<CommandOutput> {
    let max = *checkpoints.last().ok_or(Error::Precondition("no checkpoints".into()))?;
    let ctx = ParseContext::with_prime_limit(max);
    let spec = series.map(|s| parse_series(s, &ctx)).transpose()?;
    let need_spec = || {
        spec.clone()
            .ok_or_else(|| Error::Precondition(format!("--series is required for '{test}'")))
    };
    let config = json!({
        "test": test,
        "series": spec.as_ref().map(|s| s.canonical()),
        "b_rule": b_rule,
        "values": values,
        "z": z,
        "bound": bound,
        "m_split": m_split,
        "eps": eps,
        "checkpoints": checkpoints,
    });
    let result = match test {
        "condensation" => verdict_json(&classical::condensation_classify(&need_spec()?)?),
        "olivier" => verdict_json(&classical::olivier_check(&need_spec()?, checkpoints)?),
        "remark1" => verdict_json(&classical::remark1_check(&need_spec()?, checkpoints)?),
        "salat-toma" => {
            verdict_json(&classical::salat_toma_check(&need_spec()?, checkpoints, eps)?)
        }
        "stgen" => {
            let b = b_rule_fn(b_rule.unwrap_or("n"))?;
            verdict_json(&classical::stgen_check(
                &need_spec()?,
                b.as_ref(),
                checkpoints,
                eps,
            )?)
        }
        "harmonic-density" => verdict_json(&classical::harmonic_density_check(
            &need_spec()?,
            checkpoints,
            eps,
        )?),
        "kvn-forward" => {
            let v = values_fn(values.unwrap_or("squares-indicator"))?;
            let r = density_limits::kvn_forward_check(v.as_ref(), checkpoints, eps)?;
            json!({
                "all_hold": r.all_hold,
                "rows": r.rows.iter().map(averaging_row_json).collect::<Vec<_>>(),
            })
        }
        "kvn-converse" => {
            let v = values_fn(values.unwrap_or("squares-indicator"))?;
            let b = bound.ok_or(Error::Precondition(
                "--bound is required for kvn-converse".into(),
            ))?;
            let r = density_limits::kvn_converse_check(v.as_ref(), b, checkpoints, eps)?;
            json!({
                "all_hold": r.all_hold,
                "cesaro_trend": r.cesaro_trend,
                "rows": r.rows.iter().map(averaging_row_json).collect::<Vec<_>>(),
            })
        }
        "complex-abel" => {
            let zf = z_rule_fn(z.unwrap_or("alternating"))?;
            let r = classical::complex_abel_monitor(
                &need_spec()?,
                zf.as_ref(),
                max,
                m_split,
                checkpoints,
            )?;
            json!({
                "m_split": r.m_split,
                "beta": Val::new(r.beta),
                "monitor_fits_zero": r.monitor_fits_zero,
                "dominance_ok": r.dominance_ok,
                "notes": r.notes,
                "rows": r.rows.iter().map(|row| json!({
                    "checkpoint": row.checkpoint,
                    "monitor": dec12(row.monitor),
                    "bound": row.bound.map(dec12),
                })).collect::<Vec<_>>(),
            })
        }
        "floor" => {
            let v = match values.unwrap_or("linear") {
                "linear" => Box::new(|n: u64| n as f64 + 0.5) as Box<dyn Fn(u64) -> f64>,
                "quadratic" => Box::new(|n: u64| (n as f64) * (n as f64) + 0.5),
                other => {
                    return Err(Error::Parse {
                        offset: 0,
                        message: format!("unknown floor values '{other}' (linear, quadratic)"),
                    })
                }
            };
            let r = classical::floor_compare(v.as_ref(), max, checkpoints)?;
            json!({
                "termwise_violations": r.termwise_violations,
                "trend_inv": r.trend_inv,
                "trend_inv_floor": r.trend_inv_floor,
                "same_nature": r.same_nature,
                "unboundedness_observed": r.unboundedness_observed,
                "rows": r.rows.iter().map(|row| json!({
                    "checkpoint": row.checkpoint,
                    "sum_inv": dec12(row.sum_inv),
                    "sum_inv_floor": dec12(row.sum_inv_floor),
                    "sum_bridge": dec12(row.sum_bridge),
                })).collect::<Vec<_>>(),
            })
        }
        other => {
            return Err(Error::Parse {
                offset: 0,
                message: format!(
                    "unknown test '{other}' (condensation, olivier, remark1, salat-toma, \
                     stgen, harmonic-density, kvn-forward, kvn-converse, complex-abel, floor)"
                ),
            })
        }
    };
    Ok(CommandOutput {
        config,
        result,
        csv: None,
    })
}

fn averaging_row_json(r: &serlab::density_limits::AveragingRow) -> Value {
    json!({
        "checkpoint": r.checkpoint,
        "epsilon": r.epsilon,
        "cesaro": dec12(r.cesaro),
        "exceptional_ratio": dec12(r.exceptional_ratio),
        "bound": dec12(r.bound),
        "holds": r.holds,
    })
}

pub fn cmd_primes(
    scan: &str,
    limit: u64,
    from: Option<u64>,
    to: Option<u64>,
    csv: bool,
) -> Result<CommandOutput> {
    let table = PrimeTable::build(limit)?;
    let config = json!({"scan": scan, "limit": limit, "from": from, "to": to});
    let (result, csv_text) = match scan {
        "chebyshev" => {
            let lo = from.unwrap_or(2);
            let hi = to.unwrap_or(limit.min(1_000_000));
            let samples = serlab::default_checkpoints(lo.max(100), hi);
            let s = serlab::primes::chebyshev_scan(&table, lo, hi, &samples)?;
            let mut csv_out = String::from("n,value,bound_low,bound_high,violation\n");
            for &(n, ratio) in &s.ratio_samples {
                csv_out.push_str(&format!(
                    "{n},{},{},{},{}\n",
                    dec12(ratio),
                    dec12(7.0 / 8.0),
                    dec12(9.0 / 8.0),
                    !(ratio > 7.0 / 8.0 && ratio < 9.0 / 8.0)
                ));
            }
            (
                json!({
                    "violations": s.violations.len(),
                    "largest_violation": s.violations.last(),
                    "ratio_samples": s.ratio_samples.iter().map(|&(n, r)| json!({
                        "n": n, "ratio": dec12(r),
                    })).collect::<Vec<_>>(),
                }),
                csv_out,
            )
        }
        "dusart" => {
            let k_lo = from.unwrap_or(6);
            let k_hi = to.unwrap_or(100_000);
            let s = serlab::primes::dusart_scan(&table, k_lo, k_hi)?;
            let mut csv_out = String::from("n,value,bound_low,bound_high,violation\n");
            for r in &s.spot_rows {
                csv_out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.k,
                    r.p_k,
                    dec12(r.lower),
                    dec12(r.upper),
                    !(r.lower <= r.p_k as f64 && r.p_k as f64 <= r.upper)
                ));
            }
            (
                json!({
                    "violations": s.violations.len(),
                    "spot_rows": s.spot_rows.iter().map(|r| json!({
                        "k": r.k, "p_k": r.p_k,
                        "lower": dec12(r.lower), "upper": dec12(r.upper),
                    })).collect::<Vec<_>>(),
                }),
                csv_out,
            )
        }
        "recip" => {
            let hi = to.unwrap_or(limit.min(1_000_000));
            let cps = serlab::default_checkpoints(from.unwrap_or(10).max(10), hi);
            let r = serlab::primes::prime_reciprocal_comparison(&table, &cps)?;
            let mut csv_out = String::from("n,prime_recip,comparison,difference\n");
            for i in 0..r.checkpoints.len() {
                csv_out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.checkpoints[i],
                    dec12(r.prime_recip[i]),
                    dec12(r.comparison[i]),
                    dec12(r.difference[i])
                ));
            }
            (
                json!({
                    "rows": (0..r.checkpoints.len()).map(|i| json!({
                        "n": r.checkpoints[i],
                        "prime_recip": dec12(r.prime_recip[i]),
                        "comparison": dec12(r.comparison[i]),
                        "difference": dec12(r.difference[i]),
                    })).collect::<Vec<_>>(),
                }),
                csv_out,
            )
        }
        other => {
            return Err(Error::Parse {
                offset: 0,
                message: format!("unknown scan '{other}' (chebyshev, dusart, recip)"),
            })
        }
    };
    Ok(CommandOutput {
        config,
        result,
        csv: csv.then_some(csv_text),
    })
}

fn witness_json(w: &progressions::APWitness) -> Value {
    json!({
        "length": w.length,
        "base": dec12(w.base),
        "difference": dec12(w.difference),
        "indices": w.indices,
        "max_residual": dec12(w.max_residual),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_progressions(
    set_expr: Option<&str>,
    ints: Option<&str>,
    to: Option<u64>,
    longest: bool,
    count3: bool,
    block_check: Option<u32>,
    eps_prog: Option<&std::path::Path>,
    len: Option<usize>,
    eps: Option<f64>,
    mode: &str,
) -> Result<CommandOutput> {
    let config = json!({
        "set": set_expr, "ints": ints.is_some(), "to": to,
        "longest_ap": longest, "count_3ap": count3, "block_check": block_check,
        "eps_prog": eps_prog.map(|p| p.display().to_string()),
        "len": len, "eps": eps, "mode": mode,
    });
    if let Some(n_max) = block_check {
        let r = progressions::block_structure_check(n_max)?;
        let result = json!({
            "n_max": r.n_max,
            "per_block_exact": r.per_block_exact,
            "longest": witness_json(&r.longest),
            "max_3ap_difference": r.max_3ap_difference,
            "cross_block_3aps": r.cross_block_3aps,
            "partial_sum": Val::new(r.partial_sum),
            "sum_upper_bound": Val::new(r.sum_upper_bound),
        });
        return Ok(CommandOutput {
            config,
            result,
            csv: None,
        });
    }
    if let Some(path) = eps_prog {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!(
            "cannot read '{}': {e}",
            path.display()
        )))?;
        let mut seq = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.parse::<f64>().is_err()) {
                continue; // optional header
            }
            seq.push(line.parse::<f64>().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("line {}: invalid number '{line}'", i + 1),
            })?);
        }
        let len = len.ok_or(Error::Precondition("--len is required".into()))?;
        let eps = eps.ok_or(Error::Precondition("--eps is required".into()))?;
        let mode = match mode {
            "window" => EpsMode::Window,
            "subseq" | "subsequence" => EpsMode::Subsequence,
            other => {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("unknown mode '{other}' (window, subseq)"),
                })
            }
        };
        let found = progressions::find_eps_progression(&seq, len, eps, mode)?;
        let result = json!({
            "sequence_length": seq.len(),
            "found": found.as_ref().map(witness_json),
        });
        return Ok(CommandOutput {
            config,
            result,
            csv: None,
        });
    }
    // materialize an integer set from --ints or --set/--to
    let members: Vec<i64> = if let Some(list) = ints {
        let mut v = Vec::new();
        for part in list.split(',') {
            v.push(part.trim().parse::<i64>().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("invalid integer '{part}'"),
            })?);
        }
        v.sort_unstable();
        v.dedup();
        v
    } else {
        let expr = set_expr.ok_or(Error::Precondition(
            "one of --set, --ints, --block-check, --eps-prog is required".into(),
        ))?;
        let hi = to.ok_or(Error::Precondition("--to is required with --set".into()))?;
        let ctx = ParseContext {
            prime_table: Some(Arc::new(PrimeTable::build(hi.max(2))?)),
            prime_limit: hi.max(2),
        };
        let set = parse_set(expr, &ctx)?;
        set.iter_upto(hi).map(|n| n as i64).collect()
    };
    let mut result = json!({"set_size": members.len()});
    if longest {
        let w = progressions::longest_ap(&members)?;
        result["longest_ap"] = witness_json(&w);
    }
    if count3 {
        let c = progressions::count_3aps(&members)?;
        result["count_3aps"] = json!(c);
        // least-squares constant of the count against N^2 / ln^3(N),
        // reported for scans of prime-like sets
        if let (Some(&max), true) = (members.iter().max(), members.len() > 10) {
            let n = max as f64;
            let fit = c as f64 * n.ln().powi(3) / (n * n);
            result["hl_fit_constant"] = json!(dec12(fit));
        }
    }
    Ok(CommandOutput {
        config,
        result,
        csv: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_parsing() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("12345").unwrap(), 12345);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn checkpoint_parsing() {
        assert_eq!(
            parse_checkpoints("1e2:1e6").unwrap(),
            serlab::default_checkpoints(100, 1_000_000)
        );
        assert_eq!(parse_checkpoints("10,100,1000").unwrap(), vec![10, 100, 1000]);
        assert!(parse_checkpoints("100,50").is_err());
        let one_ppd = parse_checkpoints("1e2:1e4:1").unwrap();
        assert_eq!(one_ppd, vec![100, 1000, 10_000]);
    }

    #[test]
    fn sum_command_hardy() {
        let out = cmd_sum("mb:k=2,s=2", 100_000, false).unwrap();
        let lower: f64 = out.result["lower"]["dec"]
            .as_str()
            .unwrap()
            .parse()
            .unwrap();
        assert!((38.0..39.0).contains(&lower));
    }

    #[test]
    fn density_command_csv() {
        let cps = vec![100, 1000];
        let out = cmd_density("squares", "natural", None, &cps, true).unwrap();
        let csv = out.csv.unwrap();
        assert!(csv.starts_with("n,value\n"));
        assert!(csv.contains("100,1.00000000000e-1"));
    }

    #[test]
    fn diagnose_rejects_unknown_test() {
        let err = cmd_diagnose(
            "nope",
            None,
            None,
            None,
            None,
            None,
            None,
            &[1.0],
            &[100, 1000],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
