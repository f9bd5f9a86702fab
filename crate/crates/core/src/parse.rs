//! Textual grammar for series and index-set expressions.
//!
//! ```text
//! series := "harmonic" | "prime-recip" | "olivier" | "blocks"
//!         | "mb:k=<int>,s=<float>" | "sqw:p=<float>"
//!         | "abel(" series ")" | "restrict(" series "," set ")"
//! set    := "all" | "evens" | "squares" | "primes" | "pow2" | "blocks"
//!         | "pred:<predicate>"
//! ```
//!
//! Parsing is total with byte-offset errors and round-trips through the
//! canonical forms of [`SeriesSpec::canonical`] and [`IndexSet::name`].

use std::sync::Arc;

use crate::density::IndexSet;
use crate::error::{Error, Result};
use crate::expr::parse_predicate;
use crate::primes::PrimeTable;
use crate::series::SeriesSpec;

/// Context a parse may need: the sieve backing `primes` sets.
#[derive(Clone, Default)]
pub struct ParseContext {
    pub prime_table: Option<Arc<PrimeTable>>,
    /// Sieve limit to build on demand when no table was supplied.
    pub prime_limit: u64,
}

impl ParseContext {
    pub fn with_prime_limit(limit: u64) -> Self {
        Self {
            prime_table: None,
            prime_limit: limit,
        }
    }

    fn primes_set(&self) -> Result<IndexSet> {
        match &self.prime_table {
            Some(t) => Ok(IndexSet::primes_from_table(t.clone())),
            None => IndexSet::primes(if self.prime_limit >= 2 {
                self.prime_limit
            } else {
                1_500_000
            }),
        }
    }
}

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

/// Split `text` at the first top-level comma (depth 0 w.r.t.
/// parentheses).
fn split_top_comma(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

fn parse_kv_f64(body: &str, key: &str, base_offset: usize) -> Result<f64> {
    let Some(rest) = body.strip_prefix(key) else {
        return parse_err(base_offset, format!("expected '{key}'"));
    };
    let Some(value) = rest.strip_prefix('=') else {
        return parse_err(base_offset + key.len(), "expected '='");
    };
    value.parse::<f64>().map_err(|_| Error::Parse {
        offset: base_offset + key.len() + 1,
        message: format!("invalid number '{value}'"),
    })
}

/// Parse a series expression.
pub fn parse_series(text: &str, ctx: &ParseContext) -> Result<SeriesSpec> {
    parse_series_at(text.trim(), 0, ctx)
}

fn parse_series_at(text: &str, offset: usize, ctx: &ParseContext) -> Result<SeriesSpec> {
    match text {
        "harmonic" => return Ok(SeriesSpec::Harmonic),
        "prime-recip" => return Ok(SeriesSpec::PrimeReciprocal),
        "olivier" => return Ok(SeriesSpec::OlivierCounterexample),
        "blocks" => return Ok(SeriesSpec::BlockCounterexample),
        _ => {}
    }
    if let Some(body) = text.strip_prefix("mb:") {
        let Some((k_part, s_part)) = split_top_comma(body) else {
            return parse_err(offset + 3, "expected 'k=<int>,s=<float>'");
        };
        let k = parse_kv_f64(k_part, "k", offset + 3)?;
        if k < 0.0 || k.fract() != 0.0 || k > u32::MAX as f64 {
            return parse_err(offset + 3, format!("depth k must be a small nonnegative integer, got {k_part}"));
        }
        let s = parse_kv_f64(s_part, "s", offset + 3 + k_part.len() + 1)?;
        return Ok(SeriesSpec::Mb { k: k as u32, s });
    }
    if let Some(body) = text.strip_prefix("sqw:") {
        let p = parse_kv_f64(body, "p", offset + 4)?;
        return Ok(SeriesSpec::SquareWeighted { p });
    }
    if let Some(body) = text.strip_prefix("abel(") {
        let Some(inner) = body.strip_suffix(')') else {
            return parse_err(offset + text.len(), "expected ')'");
        };
        let inner_spec = parse_series_at(inner, offset + 5, ctx)?;
        return Ok(SeriesSpec::AbelTransformOf(Box::new(inner_spec)));
    }
    if let Some(body) = text.strip_prefix("restrict(") {
        let Some(args) = body.strip_suffix(')') else {
            return parse_err(offset + text.len(), "expected ')'");
        };
        let Some((series_part, set_part)) = split_top_comma(args) else {
            return parse_err(offset + 9, "expected 'restrict(<series>,<set>)'");
        };
        let inner = parse_series_at(series_part, offset + 9, ctx)?;
        let set = parse_set_at(set_part, offset + 9 + series_part.len() + 1, ctx)?;
        return Ok(SeriesSpec::RestrictedTo(Box::new(inner), set));
    }
    parse_err(offset, format!("unknown series '{text}'"))
}

/// Parse an index-set expression.
pub fn parse_set(text: &str, ctx: &ParseContext) -> Result<IndexSet> {
    parse_set_at(text.trim(), 0, ctx)
}

fn parse_set_at(text: &str, offset: usize, ctx: &ParseContext) -> Result<IndexSet> {
    match text {
        "all" => return Ok(IndexSet::all()),
        "evens" => return Ok(IndexSet::evens()),
        "squares" => return Ok(IndexSet::squares()),
        "pow2" => return Ok(IndexSet::powers_of_two()),
        "blocks" => return Ok(IndexSet::blocks()),
        "primes" => return ctx.primes_set(),
        _ => {}
    }
    if let Some(body) = text.strip_prefix("pred:") {
        let pred = parse_predicate(body).map_err(|e| match e {
            Error::Parse {
                offset: inner,
                message,
            } => Error::Parse {
                offset: offset + 5 + inner,
                message,
            },
            other => other,
        })?;
        return Ok(IndexSet::from_predicate(
            &format!("pred:{body}"),
            move |n| pred.eval(n),
        ));
    }
    parse_err(offset, format!("unknown set '{text}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ParseContext {
        ParseContext::with_prime_limit(1000)
    }

    #[test]
    fn parse_basic_series() {
        assert_eq!(
            parse_series("mb:k=2,s=2", &ctx()).unwrap(),
            SeriesSpec::Mb { k: 2, s: 2.0 }
        );
        assert_eq!(parse_series("harmonic", &ctx()).unwrap(), SeriesSpec::Harmonic);
        assert_eq!(
            parse_series("abel(harmonic)", &ctx()).unwrap(),
            SeriesSpec::AbelTransformOf(Box::new(SeriesSpec::Harmonic))
        );
    }

    #[test]
    fn parse_restrict_and_pred() {
        let spec = parse_series("restrict(harmonic,evens)", &ctx()).unwrap();
        assert_eq!(spec.canonical(), "restrict(harmonic,evens)");
        let set = parse_set("pred:n%2==0", &ctx()).unwrap();
        assert!(set.contains(4) && !set.contains(5));
        assert_eq!(set.name(), "pred:n%2==0");
    }

    #[test]
    fn canonical_round_trips() {
        for text in [
            "mb:k=0,s=2",
            "mb:k=3,s=0.5",
            "harmonic",
            "prime-recip",
            "olivier",
            "blocks",
            "sqw:p=2",
            "abel(mb:k=1,s=1)",
            "restrict(harmonic,squares)",
            "abel(restrict(harmonic,evens))",
        ] {
            let spec = parse_series(text, &ctx()).unwrap();
            assert_eq!(spec.canonical(), text);
            let again = parse_series(&spec.canonical(), &ctx()).unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn errors_have_offsets_and_no_partial_work() {
        let err = parse_series("mb:k=2,s=banana", &ctx()).unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert!(offset >= 9),
            other => panic!("{other:?}"),
        }
        assert!(parse_series("unknown-series", &ctx()).is_err());
        let err = parse_set("pred:n ==", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn nested_abel_of_restrict_streams() {
        let spec = parse_series("abel(restrict(harmonic,evens))", &ctx()).unwrap();
        let mut s = spec.stream().unwrap();
        let (n, b) = s.next_term().unwrap().unwrap();
        assert_eq!(n, 2);
        assert_eq!(b, 1.0);
    }
}
