//! The Knave map: each maximal run of `n` copies of bit `b` is described as
//! the base-2 numeral of `n` followed by the complement of `b`.
//!
//! `110` has runs (1,2), (0,1) and becomes `10 0 1 1`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::bitcore::{lcp, BitString, BitWriter, Run};
use crate::error::{Error, Result};

/// Default cap on the size of any single orbit term.
pub const DEFAULT_MAX_BITS: usize = 1 << 27;

/// Default cap on double steps for fixed-point iteration.
pub const DEFAULT_MAX_ITERATIONS: usize = 200;

/// Bits that may be lost when the map is applied to a truncated prefix: the
/// final run can be cut short, which garbles one numeral and its bit.
pub const CROSS_DESCRIPTION_SLACK: usize = 8;

/// Describes every run of `s` as `numeral(len) ‖ (bit ^ complement)`.
/// Returns `None` as soon as the output would exceed `max_bits`.
pub(crate) fn describe_runs(s: &BitString, complement: bool, max_bits: usize) -> Option<BitString> {
    describe_runs_observed(s, complement, max_bits, |_| ())
}

/// [`describe_runs`] that also hands every input run to `observe`. Runs are
/// observed only up to the point the cap is hit.
#[inline]
pub(crate) fn describe_runs_observed<F: FnMut(Run)>(
    s: &BitString,
    complement: bool,
    max_bits: usize,
    mut observe: F,
) -> Option<BitString> {
    let mut out = BitWriter::with_capacity((s.len() + s.len() / 4 + 2).min(max_bits));
    let mut written = 0usize;
    for run in s.runs() {
        observe(run);
        let Run { bit, len } = run;
        let n = len as u64;
        let width = 64 - n.leading_zeros();
        written += width as usize + 1;
        if written > max_bits {
            return None;
        }
        let described = (bit ^ complement) as u64;
        if width < 64 {
            out.push((n << 1) | described, width + 1);
        } else {
            out.push(n, width);
            out.push(described, 1);
        }
    }
    Some(out.finish())
}

pub fn knave_step(s: &BitString) -> Result<BitString> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(describe_runs(s, true, usize::MAX).expect("uncapped"))
}

/// [`knave_step`] that gives up once the output would exceed `max_bits`.
pub fn knave_step_capped(s: &BitString, max_bits: usize) -> Result<Option<BitString>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(describe_runs(s, true, max_bits))
}

/// Incremental form of the map. State is the current run only; there is no
/// tail handling, a run is emitted when the next symbol differs or on
/// [`finish`](KnaveStream::finish).
#[derive(Debug, Clone, Default)]
pub struct KnaveStream {
    run: Option<(bool, u64)>,
}

impl KnaveStream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds one symbol, which must be 0 or 1.
    pub fn feed<E: Extend<bool>>(&mut self, symbol: u8, out: &mut E) -> Result<()> {
        let bit = match symbol {
            0 => false,
            1 => true,
            other => return Err(Error::NonBinarySymbol(other)),
        };
        match &mut self.run {
            Some((b, n)) if *b == bit => *n += 1,
            run => {
                if let Some((b, n)) = run.take() {
                    emit(b, n, out);
                }
                *run = Some((bit, 1));
            }
        }
        Ok(())
    }

    /// End-of-stream: flushes the open run.
    pub fn finish<E: Extend<bool>>(self, out: &mut E) {
        if let Some((b, n)) = self.run {
            emit(b, n, out);
        }
    }
}

fn emit<E: Extend<bool>>(bit: bool, n: u64, out: &mut E) {
    let width = 64 - n.leading_zeros();
    out.extend((0..width).rev().map(|i| (n >> i) & 1 == 1));
    out.extend(std::iter::once(!bit));
}

/// Iterator adapter over [`KnaveStream`]; the end of `input` is the end
/// signal. Yields one error and stops on a non-binary symbol.
pub fn knave_stream<I: IntoIterator<Item = u8>>(input: I) -> KnaveIter<I::IntoIter> {
    KnaveIter {
        input: input.into_iter(),
        state: Some(KnaveStream::new()),
        pending: VecDeque::new(),
    }
}

pub struct KnaveIter<I> {
    input: I,
    state: Option<KnaveStream>,
    pending: VecDeque<bool>,
}

impl<I: Iterator<Item = u8>> Iterator for KnaveIter<I> {
    type Item = Result<bool>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(b) = self.pending.pop_front() {
                return Some(Ok(b));
            }
            let state = self.state.as_mut()?;
            match self.input.next() {
                Some(sym) => {
                    if let Err(e) = state.feed(sym, &mut self.pending) {
                        self.state = None;
                        return Some(Err(e));
                    }
                }
                None => {
                    self.state.take()?.finish(&mut self.pending);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// 1-based; the seed is term 1.
    pub n: usize,
    pub term: BitString,
    pub length: usize,
    /// `length(s_n) / length(s_{n-1})`, absent for the seed.
    pub ratio: Option<Ratio<u64>>,
}

/// Lazily generated orbit `s_1 = seed, s_{n+1} = k(s_n)`.
///
/// Stops after `steps` terms, or before the first term longer than
/// `max_bits`; [`capped_at`](OrbitIter::capped_at) then reports that index.
pub struct OrbitIter {
    next_term: Option<BitString>,
    n: usize,
    steps: usize,
    max_bits: usize,
    prev_len: Option<usize>,
    capped_at: Option<usize>,
}

impl OrbitIter {
    pub fn new(seed: &BitString, steps: usize, max_bits: usize) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut it = OrbitIter {
            next_term: None,
            n: 0,
            steps,
            max_bits,
            prev_len: None,
            capped_at: None,
        };
        if steps > 0 {
            if seed.len() > max_bits {
                it.capped_at = Some(1);
            } else {
                it.next_term = Some(seed.clone());
            }
        }
        Ok(it)
    }

    pub fn capped_at(&self) -> Option<usize> {
        self.capped_at
    }
}

impl Iterator for OrbitIter {
    type Item = OrbitRecord;

    fn next(&mut self) -> Option<OrbitRecord> {
        let term = self.next_term.take()?;
        self.n += 1;
        if self.n < self.steps {
            match describe_runs(&term, true, self.max_bits) {
                Some(next) => self.next_term = Some(next),
                None => self.capped_at = Some(self.n + 1),
            }
        }
        let length = term.len();
        let ratio = self.prev_len.map(|p| Ratio::new(length as u64, p as u64));
        self.prev_len = Some(length);
        Some(OrbitRecord {
            n: self.n,
            term,
            length,
            ratio,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub records: Vec<OrbitRecord>,
    /// Index of the first term that would have exceeded the bit cap.
    pub capped_at: Option<usize>,
}

pub fn orbit(seed: &BitString, steps: usize, max_bits: usize) -> Result<Orbit> {
    let mut it = OrbitIter::new(seed, steps, max_bits)?;
    let records = it.by_ref().collect();
    Ok(Orbit {
        records,
        capped_at: it.capped_at(),
    })
}

fn iterate(s: &BitString, times: usize, max_bits: usize) -> Result<BitString> {
    let mut x = s.clone();
    for _ in 0..times {
        x = describe_runs(&x, true, max_bits).ok_or(Error::CapExceeded { n: 0, max_bits })?;
    }
    Ok(x)
}

/// `lcp(s_m, s_{m+2})` on the orbit with `s_1 = seed`.
pub fn stable_prefix(seed: &BitString, m: usize, max_bits: usize) -> Result<usize> {
    if seed.is_empty() {
        return Err(Error::EmptyInput);
    }
    if m == 0 {
        return Err(Error::OutOfRange { position: 0, len: 0 });
    }
    let orbit = orbit(seed, m + 2, max_bits)?;
    if let Some(n) = orbit.capped_at {
        return Err(Error::CapExceeded { n, max_bits });
    }
    Ok(lcp(&orbit.records[m - 1].term, &orbit.records[m + 1].term))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `10` for the even fixed point, `1` for the odd one.
    pub fn seed(self) -> BitString {
        let mut s = BitString::new();
        s.push(true);
        if self == Parity::Even {
            s.push(false);
        }
        s
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity {other:?}, expected even or odd")),
        }
    }
}

/// A certified prefix of one of the two fixed points of `k²`.
///
/// `prefix` holds exactly the certified bits, and
/// `lcp(k^iterations(seed), k^(iterations+2)(seed)) >= certified_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointCertificate {
    pub parity: Parity,
    pub prefix: BitString,
    pub certified_bits: usize,
    /// Applications of `k` (always even).
    pub iterations: usize,
    pub seed: BitString,
}

impl FixedPointCertificate {
    /// Recomputes the orbit and checks the defining inequality.
    pub fn verify(&self, max_bits: usize) -> Result<bool> {
        let x = iterate(&self.seed, self.iterations, max_bits)?;
        let y = iterate(&x, 2, max_bits)?;
        Ok(self.certified_bits <= self.prefix.len()
            && lcp(&x, &y) >= self.certified_bits
            && x.starts_with(&self.prefix.prefix(self.certified_bits)))
    }

    /// `parity SP certified_bits SP iterations SP prefix-bits`
    pub fn to_cache_line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.parity, self.certified_bits, self.iterations, self.prefix
        )
    }

    pub fn from_cache_line(line: &str, line_no: usize) -> Result<Self> {
        let err = |reason: &str| Error::CacheParse {
            line: line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split(' ').collect();
        let [parity, certified, iterations, prefix] = fields[..] else {
            return Err(err("expected 4 space-separated fields"));
        };
        let parity: Parity = parity.parse().map_err(|e: String| err(&e))?;
        let certified_bits: usize = certified.parse().map_err(|_| err("bad certified_bits"))?;
        let iterations: usize = iterations.parse().map_err(|_| err("bad iterations"))?;
        let prefix: BitString = prefix.parse().map_err(|_| err("bad prefix bits"))?;
        if certified_bits > prefix.len() || certified_bits == 0 {
            return Err(err("certified_bits out of range for prefix"));
        }
        if !iterations.is_multiple_of(2) {
            return Err(err("iterations must be even"));
        }
        Ok(FixedPointCertificate {
            parity,
            prefix,
            certified_bits,
            iterations,
            seed: parity.seed(),
        })
    }
}

/// Parses a whole cache file; blank lines are skipped.
pub fn read_cache(text: &str) -> Result<Vec<FixedPointCertificate>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| FixedPointCertificate::from_cache_line(l, i + 1))
        .collect()
}

pub fn write_cache(certs: &[FixedPointCertificate]) -> String {
    certs.iter().map(|c| c.to_cache_line() + "\n").collect()
}

/// Iterates `k²` from the parity's seed until consecutive double-step
/// iterates agree on at least `want_bits` leading bits.
///
/// `max_iterations` bounds double steps; `max_bits` bounds term size.
pub fn fixed_point_prefix(
    parity: Parity,
    want_bits: usize,
    max_iterations: usize,
    max_bits: usize,
) -> Result<FixedPointCertificate> {
    if want_bits == 0 {
        return Err(Error::OutOfRange { position: 0, len: 0 });
    }
    let seed = parity.seed();
    let double = |s: &BitString, certified_bits| {
        describe_runs(s, true, max_bits)
            .and_then(|t| describe_runs(&t, true, max_bits))
            .ok_or(Error::MemoryCapExceeded {
                certified_bits,
                max_bits,
            })
    };
    let mut x = seed.clone();
    let mut y = double(&x, 0)?;
    let mut doubles = 0;
    loop {
        let certified_bits = lcp(&x, &y);
        if certified_bits >= want_bits {
            return Ok(FixedPointCertificate {
                parity,
                prefix: x.prefix(certified_bits),
                certified_bits,
                iterations: 2 * doubles,
                seed,
            });
        }
        if doubles >= max_iterations {
            return Err(Error::IterationCapExceeded {
                certified_bits,
                iterations: 2 * doubles,
            });
        }
        let z = double(&y, certified_bits)?;
        x = std::mem::replace(&mut y, z);
        doubles += 1;
    }
}

/// Certified prefixes of both fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    pub even: FixedPointCertificate,
    pub odd: FixedPointCertificate,
}

impl FixedPoints {
    pub fn compute(want_bits: usize) -> Result<Self> {
        Ok(FixedPoints {
            even: fixed_point_prefix(Parity::Even, want_bits, DEFAULT_MAX_ITERATIONS, DEFAULT_MAX_BITS)?,
            odd: fixed_point_prefix(Parity::Odd, want_bits, DEFAULT_MAX_ITERATIONS, DEFAULT_MAX_BITS)?,
        })
    }

    pub fn get(&self, parity: Parity) -> &FixedPointCertificate {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn certified_bits(&self) -> usize {
        self.even.certified_bits.min(self.odd.certified_bits)
    }
}

/// `lcp(k(from.prefix), to.prefix)`: how far the description of one
/// certified prefix reproduces the other.
pub fn cross_description(from: &FixedPointCertificate, to: &FixedPointCertificate) -> usize {
    let described = describe_runs(&from.prefix, true, usize::MAX).expect("uncapped");
    lcp(&described, &to.prefix)
}
