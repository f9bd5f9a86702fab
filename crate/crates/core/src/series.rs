//! Series families, term streams, and stream transforms.
//!
//! A [`SeriesSpec`] is a symbolic description of a positive series; a
//! [`TermStream`] produces its `(index, term)` pairs in increasing index
//! order. Streams are deterministic: two streams built from the same spec
//! emit identical sequences. Transforms (running-sum normalization,
//! restriction to an index set, block permutation) are streams over
//! streams and keep the positivity contract.

use std::sync::Arc;

use crate::density::IndexSet;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sum::CompensatedSum;
use crate::tail::{mb_start_index, mb_term, MAX_MB_DEPTH};

/// Euler-Mascheroni constant (used by the harmonic-number expansion).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Whether `n` is a perfect square.
pub fn is_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// Symbolic description of a positive series family.
#[derive(Clone)]
pub enum SeriesSpec {
    /// `1/(n (ln n)(ln ln n) ... (L_k n)^s)` from the first index where all
    /// iterated logarithms are positive.
    Mb { k: u32, s: f64 },
    /// `1/n` from 1.
    Harmonic,
    /// `1/p` over the primes `p = 2, 3, 5, ...`, emitted at index `p`.
    PrimeReciprocal,
    /// `ln n / n` on squares, `1/n^2` otherwise, from `n = 2` (index 1 is a
    /// square but `ln 1 = 0` would break positivity; only the tail matters).
    OlivierCounterexample,
    /// The terms `1/(10^n+1), ..., 1/(10^n+n)` for `n = 1, 2, ...`, emitted
    /// at consecutive indices. Finite in binary64: ends when `10^n`
    /// overflows (block 309, after 47 586 terms).
    BlockCounterexample,
    /// `(ln n)^p / n` on squares, `1/n^2` otherwise, from `n = 2`.
    SquareWeighted { p: f64 },
    /// `b_n = a_n / S_n` where `S_n` is the running partial sum of the
    /// inner series including `a_n`.
    AbelTransformOf(Box<SeriesSpec>),
    /// Only the terms whose index lies in the set, original labels kept.
    RestrictedTo(Box<SeriesSpec>, IndexSet),
    /// Arbitrary term rule from index 1; positivity is checked lazily at
    /// emission so construction stays total.
    Custom {
        name: String,
        rule: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    },
}

impl SeriesSpec {
    pub fn custom(name: &str, rule: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        SeriesSpec::Custom {
            name: name.to_string(),
            rule: Arc::new(rule),
        }
    }

    /// Canonical textual form, the one the CLI parses.
    pub fn canonical(&self) -> String {
        match self {
            SeriesSpec::Mb { k, s } => format!("mb:k={k},s={s}"),
            SeriesSpec::Harmonic => "harmonic".into(),
            SeriesSpec::PrimeReciprocal => "prime-recip".into(),
            SeriesSpec::OlivierCounterexample => "olivier".into(),
            SeriesSpec::BlockCounterexample => "blocks".into(),
            SeriesSpec::SquareWeighted { p } => format!("sqw:p={p}"),
            SeriesSpec::AbelTransformOf(inner) => format!("abel({})", inner.canonical()),
            SeriesSpec::RestrictedTo(inner, set) => {
                format!("restrict({},{})", inner.canonical(), set.name())
            }
            SeriesSpec::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    /// First index at which the stream can emit.
    pub fn start_index(&self) -> Result<u64> {
        Ok(match self {
            SeriesSpec::Mb { k, .. } => mb_start_index(*k)?,
            SeriesSpec::Harmonic | SeriesSpec::BlockCounterexample => 1,
            SeriesSpec::PrimeReciprocal => 2,
            SeriesSpec::OlivierCounterexample | SeriesSpec::SquareWeighted { .. } => 2,
            SeriesSpec::AbelTransformOf(inner) | SeriesSpec::RestrictedTo(inner, _) => {
                inner.start_index()?
            }
            SeriesSpec::Custom { .. } => 1,
        })
    }

    /// Closed-form term value at emission position `m` (1-based), for the
    /// gap-free families. `None` when the family has no random access or
    /// the term has left binary64.
    pub(crate) fn emitted_term_at(&self, m: u64) -> Option<f64> {
        match self {
            SeriesSpec::Mb { k, s } => {
                let start = mb_start_index(*k).ok()?;
                mb_term(*k, *s, start + m - 1).ok()
            }
            SeriesSpec::Harmonic => Some(1.0 / m as f64),
            SeriesSpec::OlivierCounterexample => Some(olivier_term(m + 1, 1.0)),
            SeriesSpec::SquareWeighted { p } => Some(olivier_term(m + 1, *p)),
            SeriesSpec::BlockCounterexample => {
                let v = block_term(m);
                (v > 0.0).then_some(v)
            }
            _ => None,
        }
    }

    /// Build the term stream. `make_stream` in operational terms.
    pub fn stream(&self) -> Result<TermStream> {
        self.validate()?;
        let state = match self {
            SeriesSpec::Mb { .. }
            | SeriesSpec::Harmonic
            | SeriesSpec::OlivierCounterexample
            | SeriesSpec::BlockCounterexample
            | SeriesSpec::SquareWeighted { .. } => State::ClosedForm {
                next: self.start_index()?,
            },
            SeriesSpec::PrimeReciprocal => State::Primes {
                table: PrimeTable::build(1 << 20)?,
                last: 1,
            },
            SeriesSpec::AbelTransformOf(inner) => State::Abel {
                inner: Box::new(inner.stream()?),
                running: CompensatedSum::new(),
            },
            SeriesSpec::RestrictedTo(inner, set) => State::Restricted {
                inner: Box::new(inner.stream()?),
                set: set.clone(),
            },
            SeriesSpec::Custom { rule, .. } => State::Custom {
                next: 1,
                rule: rule.clone(),
            },
        };
        Ok(TermStream {
            spec: self.clone(),
            state,
        })
    }

    fn validate(&self) -> Result<()> {
        match self {
            SeriesSpec::Mb { k, s } => {
                if *k > MAX_MB_DEPTH {
                    return Err(Error::InvalidSpec(format!(
                        "depth k={k} exceeds supported maximum {MAX_MB_DEPTH}"
                    )));
                }
                if !s.is_finite() {
                    return Err(Error::InvalidSpec(format!("exponent s={s} is not finite")));
                }
            }
            SeriesSpec::SquareWeighted { p } if !p.is_finite() => {
                return Err(Error::InvalidSpec(format!("weight p={p} is not finite")));
            }
            SeriesSpec::AbelTransformOf(inner) | SeriesSpec::RestrictedTo(inner, _) => {
                inner.validate()?
            }
            _ => {}
        }
        Ok(())
    }

    fn closed_form_term(&self, n: u64) -> Result<f64> {
        match self {
            SeriesSpec::Mb { k, s } => mb_term(*k, *s, n),
            SeriesSpec::Harmonic => Ok(1.0 / n as f64),
            SeriesSpec::OlivierCounterexample => Ok(olivier_term(n, 1.0)),
            SeriesSpec::SquareWeighted { p } => Ok(olivier_term(n, *p)),
            SeriesSpec::BlockCounterexample => Ok(block_term(n)),
            _ => unreachable!("closed_form_term on a transform spec"),
        }
    }
}

impl std::fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SeriesSpec({})", self.canonical())
    }
}

impl PartialEq for SeriesSpec {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

fn olivier_term(n: u64, p: f64) -> f64 {
    let x = n as f64;
    if is_square(n) {
        x.ln().powf(p) / x
    } else {
        1.0 / (x * x)
    }
}

/// Term at emission position `m` of the block series: position `m` falls in
/// block `b` (of length `b`) at offset `j`, with value `1/(10^b + j)`.
fn block_term(m: u64) -> f64 {
    // smallest b with b(b+1)/2 >= m
    let b = (((8 * m + 1) as f64).sqrt() as u64 + 1) / 2;
    let b = if b * (b + 1) / 2 >= m && (b - 1) * b / 2 < m {
        b
    } else if b * (b + 1) / 2 < m {
        b + 1
    } else {
        b - 1
    };
    let j = m - (b - 1) * b / 2;
    let base = 10f64.powi(b as i32);
    if !base.is_finite() {
        return 0.0;
    }
    1.0 / (base + j as f64)
}

/// How many consecutive non-member indices a restricted stream will scan
/// before concluding the set is effectively exhausted.
const RESTRICT_SCAN_GUARD: u64 = 100_000_000;

enum State {
    ClosedForm {
        next: u64,
    },
    Primes {
        table: PrimeTable,
        last: u64,
    },
    Abel {
        inner: Box<TermStream>,
        running: CompensatedSum,
    },
    Restricted {
        inner: Box<TermStream>,
        set: IndexSet,
    },
    Custom {
        next: u64,
        rule: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    },
    Permuted(BlockPermutation),
}

/// Ordered producer of `(index, term)` pairs; a single-owner stateful
/// cursor. Indices strictly increase; every term is strictly positive.
pub struct TermStream {
    spec: SeriesSpec,
    state: State,
}

impl TermStream {
    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    /// Next `(index, term)` pair; `Ok(None)` when the stream is exhausted
    /// (only finite families and restrictions end).
    pub fn next_term(&mut self) -> Result<Option<(u64, f64)>> {
        match &mut self.state {
            State::ClosedForm { next } => {
                let n = *next;
                let a = self.spec.closed_form_term(n)?;
                if a <= 0.0 {
                    return Ok(None); // block family left binary64
                }
                *next = n + 1;
                Ok(Some((n, a)))
            }
            State::Primes { table, last } => {
                loop {
                    if let Some(p) = table.next_prime_after(*last) {
                        *last = p;
                        return Ok(Some((p, 1.0 / p as f64)));
                    }
                    let new_limit = table.limit() * 4;
                    *table = PrimeTable::build(new_limit)?;
                }
            }
            State::Abel { inner, running } => match inner.next_term()? {
                Some((n, a)) => {
                    running.add(a);
                    Ok(Some((n, a / running.value())))
                }
                None => Ok(None),
            },
            State::Restricted { inner, set } => {
                let mut scanned = 0u64;
                loop {
                    match inner.next_term()? {
                        Some((n, a)) => {
                            if set.contains(n) {
                                return Ok(Some((n, a)));
                            }
                            scanned += 1;
                            if scanned > RESTRICT_SCAN_GUARD {
                                return Err(Error::GuardExceeded(format!(
                                    "restriction scanned {RESTRICT_SCAN_GUARD} indices \
                                     without a member of {}",
                                    set.name()
                                )));
                            }
                        }
                        None => return Ok(None),
                    }
                }
            }
            State::Custom { next, rule } => {
                let n = *next;
                let a = rule(n);
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::InvalidSpec(format!(
                        "custom rule emitted nonpositive or non-finite value {a} at n={n}"
                    )));
                }
                *next = n + 1;
                Ok(Some((n, a)))
            }
            State::Permuted(perm) => perm.next_term(),
        }
    }

    /// Iterator adapter over the remaining terms.
    pub fn iter(&mut self) -> impl Iterator<Item = Result<(u64, f64)>> + '_ {
        std::iter::from_fn(move || self.next_term().transpose())
    }
}

/// Checkpointed partial sums with optional Cesàro means of a derived
/// value sequence.
#[derive(Debug, Clone)]
pub struct PartialSumTrace {
    pub checkpoints: Vec<u64>,
    /// `S_N = sum of terms with index <= N`, compensated accumulation.
    pub sums: Vec<f64>,
    /// `(1/N) * sum of x_k for k <= N` when a value rule was supplied.
    pub cesaro: Option<Vec<f64>>,
}

/// Walk a stream once, recording partial sums at each checkpoint.
/// `with_cesaro_of` maps `(index, term)` to the value sequence whose
/// Cesàro means are recorded alongside; absent indices contribute zero.
pub fn partial_sums(
    mut stream: TermStream,
    checkpoints: &[u64],
    with_cesaro_of: Option<&dyn Fn(u64, f64) -> f64>,
) -> Result<PartialSumTrace> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("no checkpoints supplied".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut cesaro = with_cesaro_of.map(|_| Vec::with_capacity(checkpoints.len()));
    let mut acc = CompensatedSum::new();
    let mut xacc = CompensatedSum::new();
    let mut ci = 0usize;
    loop {
        match stream.next_term()? {
            Some((n, a)) => {
                while ci < checkpoints.len() && checkpoints[ci] < n {
                    sums.push(acc.value());
                    if let Some(c) = cesaro.as_mut() {
                        c.push(xacc.value() / checkpoints[ci] as f64);
                    }
                    ci += 1;
                }
                if ci >= checkpoints.len() {
                    break;
                }
                acc.add(a);
                if let Some(rule) = with_cesaro_of {
                    xacc.add(rule(n, a));
                }
            }
            None => break,
        }
    }
    while ci < checkpoints.len() {
        sums.push(acc.value());
        if let Some(c) = cesaro.as_mut() {
            c.push(xacc.value() / checkpoints[ci] as f64);
        }
        ci += 1;
    }
    Ok(PartialSumTrace {
        checkpoints: checkpoints.to_vec(),
        sums,
        cesaro,
    })
}

/// Harmonic number `H_n` with the residual bound of the asymptotic
/// expansion. Direct compensated summation up to 10^6; beyond that the
/// expansion `ln n + gamma + 1/(2n) - 1/(12n^2)` whose error is below
/// `1/(120 n^4)`.
pub fn harmonic_number(n: u64) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::Domain("harmonic number needs n >= 1".into()));
    }
    let x = n as f64;
    let bound = 1.0 / (120.0 * x.powi(4));
    if n <= 1_000_000 {
        let mut acc = CompensatedSum::new();
        for k in 1..=n {
            acc.add(1.0 / k as f64);
        }
        Ok((acc.value(), bound))
    } else {
        Ok((
            x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x),
            bound,
        ))
    }
}

/// `b_n = a_n / S_n`: the running-sum normalization of a positive stream.
/// Every output is in `(0, 1]` and the first is exactly 1.
pub fn abel_transform(inner: TermStream) -> TermStream {
    let spec = SeriesSpec::AbelTransformOf(Box::new(inner.spec.clone()));
    TermStream {
        spec,
        state: State::Abel {
            inner: Box::new(inner),
            running: CompensatedSum::new(),
        },
    }
}

/// Keep only the terms whose index lies in `set`, preserving labels.
pub fn restrict_to(inner: TermStream, set: IndexSet) -> TermStream {
    let spec = SeriesSpec::RestrictedTo(Box::new(inner.spec.clone()), set.clone());
    TermStream {
        spec,
        state: State::Restricted {
            inner: Box::new(inner),
            set,
        },
    }
}

struct BlockPermutation {
    inner: Box<TermStream>,
    rule: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    next_block: u64,
    next_start: u64,
    inner_done: bool,
    lookahead: Option<(u64, f64)>,
    /// `(emit index, permuted value)` for the current block, ascending.
    buf: std::collections::VecDeque<(u64, f64)>,
}

impl BlockPermutation {
    fn fill_block(&mut self) -> Result<bool> {
        if self.inner_done && self.lookahead.is_none() {
            return Ok(false);
        }
        let i = self.next_block;
        let len = (self.rule)(i);
        if len == 0 {
            return Err(Error::Precondition(format!(
                "block length rule returned 0 for block {i}"
            )));
        }
        let start = self.next_start;
        let end = start + len - 1;
        self.next_block += 1;
        self.next_start = end + 1;
        let mut window: Vec<(u64, f64)> = Vec::new();
        loop {
            let term = match self.lookahead.take() {
                Some(t) => Some(t),
                None => {
                    if self.inner_done {
                        None
                    } else {
                        let t = self.inner.next_term()?;
                        if t.is_none() {
                            self.inner_done = true;
                        }
                        t
                    }
                }
            };
            match term {
                Some((n, a)) if n <= end => window.push((n, a)),
                Some(t) => {
                    self.lookahead = Some(t);
                    break;
                }
                None => break,
            }
        }
        // reflect the block: index n receives the value at start+end-n
        for n in start..=end {
            let source = start + end - n;
            if let Ok(pos) = window.binary_search_by_key(&source, |&(idx, _)| idx) {
                self.buf.push_back((n, window[pos].1));
            }
        }
        Ok(true)
    }

    fn next_term(&mut self) -> Result<Option<(u64, f64)>> {
        loop {
            if let Some(t) = self.buf.pop_front() {
                return Ok(Some(t));
            }
            if !self.fill_block()? {
                return Ok(None);
            }
        }
    }
}

/// Partition the index axis into consecutive blocks (lengths given by
/// `block_len_rule` per block number) and reverse each block. The induced
/// map is a bijection of the positive integers; the stream emits the value
/// at the reflected index under the original label. Indices whose
/// reflection precedes the series start are skipped.
pub fn apply_block_permutation(
    inner: TermStream,
    block_len_rule: impl Fn(u64) -> u64 + Send + Sync + 'static,
) -> TermStream {
    let spec = inner.spec.clone();
    TermStream {
        spec,
        state: State::Permuted(BlockPermutation {
            inner: Box::new(inner),
            rule: Arc::new(block_len_rule),
            next_block: 1,
            next_start: 1,
            inner_done: false,
            lookahead: None,
            buf: std::collections::VecDeque::new(),
        }),
    }
}

/// Materialize `x_n = rule(n, a_n)` for `n = 1..=horizon`, with zero at
/// indices the stream does not emit. The shared adapter for the density
/// diagnostics.
pub fn materialize_values(
    spec: &SeriesSpec,
    rule: impl Fn(u64, f64) -> f64,
    horizon: u64,
) -> Result<Vec<f64>> {
    let mut out = vec![0.0; horizon as usize + 1];
    let mut stream = spec.stream()?;
    while let Some((n, a)) = stream.next_term()? {
        if n > horizon {
            break;
        }
        out[n as usize] = rule(n, a);
    }
    Ok(out)
}
