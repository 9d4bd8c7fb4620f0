//! Packed binary strings and the operations the dynamics are built from.
//!
//! A [`BitString`] stores its symbols MSB-first in 64-bit words: position 1
//! (index 0) is the top bit of the first word. Bits past `len` are always
//! zero, so derived equality and hashing only ever see the string itself.
//!
//! A nonempty finite string also stands for an infinite sequence: the string
//! followed by an endless tail of the complement of its final bit. `101`
//! denotes `101000...` and `100` denotes `100111...`. [`metric`] compares
//! strings under that reading; [`lcp`] compares finite bits only.

use std::cmp::Ordering;
use std::fmt;
use std::num::NonZeroU64;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            words: Vec::with_capacity(bits.div_ceil(WORD)),
            len: 0,
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = BitString::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 0-based `index`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "index {index} out of bounds for length {}",
            self.len
        );
        (self.words[index / WORD] >> (WORD - 1 - index % WORD)) & 1 == 1
    }

    pub fn first(&self) -> Option<bool> {
        (!self.is_empty()).then(|| self.get(0))
    }

    pub fn last(&self) -> Option<bool> {
        (!self.is_empty()).then(|| self.get(self.len - 1))
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        self.push_bits(bit as u64, 1);
    }

    /// Appends the low `count` bits of `value`, most significant first.
    #[inline]
    pub fn push_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        if count == 0 {
            return;
        }
        let v = if count == 64 {
            value
        } else {
            value & ((1u64 << count) - 1)
        };
        let offset = (self.len % WORD) as u32;
        if offset == 0 {
            self.words.push(v << (64 - count));
        } else {
            let free = 64 - offset;
            let last = self.words.last_mut().expect("offset > 0 implies a word");
            if count <= free {
                *last |= v << (free - count);
            } else {
                let spill = count - free;
                *last |= v >> spill;
                self.words.push(v << (64 - spill));
            }
        }
        self.len += count as usize;
    }

    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.words.truncate(len.div_ceil(WORD));
        self.len = len;
        self.clear_padding();
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (WORD - rem);
            }
        }
    }

    /// The first `len` bits (or the whole string if shorter).
    pub fn prefix(&self, len: usize) -> BitString {
        let len = len.min(self.len);
        let mut out = BitString {
            words: self.words[..len.div_ceil(WORD)].to_vec(),
            len,
        };
        out.clear_padding();
        out
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.len <= self.len && lcp(self, prefix) == prefix.len
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn runs(&self) -> Runs<'_> {
        Runs::new(self)
    }

    /// Run boundaries inside word `w`, masked to the string's length.
    #[inline]
    fn edges(&self, w: usize) -> u64 {
        let Some(&x) = self.words.get(w) else {
            return 0;
        };
        let carry = if w == 0 { x >> 63 } else { self.words[w - 1] & 1 };
        let edges = x ^ ((x >> 1) | (carry << 63));
        let valid = self.len - w * WORD;
        if valid >= WORD {
            edges
        } else {
            edges & (!0u64 << (WORD - valid))
        }
    }

    /// Index one past the end of the run of `bit` that starts at `start`.
    /// Returns `start` itself if the bit at `start` is not `bit`.
    pub(crate) fn run_end(&self, start: usize, bit: bool) -> usize {
        if start >= self.len {
            return self.len;
        }
        let flip = if bit { !0u64 } else { 0 };
        let mut w = start / WORD;
        let x = (self.words[w] ^ flip) << (start % WORD);
        if x != 0 {
            return (start + x.leading_zeros() as usize).min(self.len);
        }
        w += 1;
        while w < self.words.len() {
            let x = self.words[w] ^ flip;
            if x != 0 {
                return (w * WORD + x.leading_zeros() as usize).min(self.len);
            }
            w += 1;
        }
        self.len
    }

    /// Length of the longest run, and of the longest run of zeros.
    pub fn max_runs(&self) -> (usize, usize) {
        self.runs().fold((0, 0), |(all, zeros), r| {
            (all.max(r.len), if r.bit { zeros } else { zeros.max(r.len) })
        })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = String::with_capacity(self.len);
        buf.extend(self.iter().map(|b| if b { '1' } else { '0' }));
        f.write_str(&buf)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses the ASCII `0`/`1` form. Error positions are 1-based.
pub fn parse(text: &str) -> Result<BitString> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut s = BitString::with_capacity(text.len());
    for (i, c) in text.chars().enumerate() {
        match c {
            '0' => s.push(false),
            '1' => s.push(true),
            _ => return Err(Error::NonBinaryCharacter(i + 1)),
        }
    }
    Ok(s)
}

/// One maximal run of equal bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub bit: bool,
    pub len: usize,
}

impl Run {
    pub fn new(bit: bool, len: usize) -> Self {
        debug_assert!(len >= 1);
        Run { bit, len }
    }
}

/// Iterates maximal runs by scanning the run boundaries of each word.
pub struct Runs<'a> {
    s: &'a BitString,
    pos: usize,
    word: usize,
    /// Boundaries still unvisited in `word`: bit `63 - i` is set when
    /// position `64 * word + i` differs from the one before it.
    edges: u64,
    /// Bit of the run starting at `pos`; runs alternate.
    bit: bool,
}

impl<'a> Runs<'a> {
    fn new(s: &'a BitString) -> Self {
        Runs {
            s,
            pos: 0,
            word: 0,
            // No boundary before position 0.
            edges: s.edges(0) & !(1u64 << 63),
            bit: s.first().unwrap_or(false),
        }
    }
}

impl Iterator for Runs<'_> {
    type Item = Run;

    #[inline]
    fn next(&mut self) -> Option<Run> {
        if self.pos >= self.s.len {
            return None;
        }
        let bit = self.bit;
        let end = loop {
            if self.edges != 0 {
                let off = self.edges.leading_zeros();
                self.edges &= !(1u64 << (63 - off));
                break self.word * WORD + off as usize;
            }
            self.word += 1;
            if self.word >= self.s.words.len() {
                break self.s.len;
            }
            self.edges = self.s.edges(self.word);
        };
        let run = Run::new(bit, end - self.pos);
        self.pos = end;
        self.bit = !bit;
        Some(run)
    }
}

/// Append-only writer that fills a word before touching the vector.
pub(crate) struct BitWriter {
    words: Vec<u64>,
    acc: u64,
    /// Bits held in `acc`, always below 64.
    fill: u32,
}

impl BitWriter {
    pub(crate) fn with_capacity(bits: usize) -> Self {
        BitWriter {
            words: Vec::with_capacity(bits.div_ceil(WORD)),
            acc: 0,
            fill: 0,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.words.len() * WORD + self.fill as usize
    }

    /// Appends the low `count` bits of `value` (`1 <= count <= 64`), which
    /// must have no bits set above them.
    #[inline]
    pub(crate) fn push(&mut self, value: u64, count: u32) {
        debug_assert!((1..=64).contains(&count));
        debug_assert!(count == 64 || value >> count == 0);
        let free = 64 - self.fill;
        if count < free {
            self.acc |= value << (free - count);
            self.fill += count;
        } else {
            let spill = count - free;
            self.words.push(self.acc | (value >> spill));
            self.acc = if spill == 0 { 0 } else { value << (64 - spill) };
            self.fill = spill;
        }
    }

    pub(crate) fn finish(mut self) -> BitString {
        let len = self.len();
        if self.fill > 0 {
            self.words.push(self.acc);
        }
        BitString {
            words: self.words,
            len,
        }
    }
}

pub fn decompose_runs(s: &BitString) -> Result<Vec<Run>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(s.runs().collect())
}

/// Concatenation of runs; inverse of [`decompose_runs`].
pub fn concat_runs(runs: &[Run]) -> BitString {
    let mut s = BitString::with_capacity(runs.iter().map(|r| r.len).sum());
    for r in runs {
        let mut left = r.len;
        let fill = if r.bit { !0u64 } else { 0 };
        while left > 0 {
            let n = left.min(64);
            s.push_bits(fill, n as u32);
            left -= n;
        }
    }
    s
}

/// Base-2 numeral of a positive integer, MSB first, no leading zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Numeral(NonZeroU64);

impl Numeral {
    pub fn value(self) -> u64 {
        self.0.get()
    }

    /// Number of binary digits.
    #[inline]
    pub fn len(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn to_bit_string(self) -> BitString {
        let mut s = BitString::with_capacity(self.len() as usize);
        s.push_bits(self.value(), self.len());
        s
    }

    /// Reads a canonical numeral back; rejects leading zeros and values
    /// that do not fit in 64 bits.
    pub fn from_bits(bits: &BitString) -> Result<Numeral> {
        let invalid = || Error::InvalidNumeral(bits.to_string());
        if bits.first() != Some(true) || bits.len() > 64 {
            return Err(invalid());
        }
        let v = bits.iter().fold(0u64, |acc, b| (acc << 1) | b as u64);
        NonZeroU64::new(v).map(Numeral).ok_or_else(invalid)
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.value())
    }
}

pub fn numeral(n: u64) -> Result<Numeral> {
    NonZeroU64::new(n).map(Numeral).ok_or(Error::ZeroOrNegative)
}

/// Number of leading positions on which the finite bits of `a` and `b` agree.
pub fn lcp(a: &BitString, b: &BitString) -> usize {
    let n = a.len.min(b.len);
    for (i, (x, y)) in a.words.iter().zip(&b.words).enumerate() {
        let d = x ^ y;
        if d != 0 {
            return (i * WORD + d.leading_zeros() as usize).min(n);
        }
    }
    n
}

/// Distance `2^-n` between two sequences, kept as the exponent `n`.
///
/// Ordered by the distance it stands for: `Equal` is the smallest, and
/// `FirstDiffer(n)` shrinks as `n` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Equal,
    /// 1-based position of the first disagreement.
    FirstDiffer(usize),
}

impl Distance {
    pub fn exponent(self) -> Option<usize> {
        match self {
            Distance::Equal => None,
            Distance::FirstDiffer(n) => Some(n),
        }
    }

    /// Lossy; underflows to 0 for exponents past ~1074.
    pub fn to_f64(self) -> f64 {
        match self {
            Distance::Equal => 0.0,
            Distance::FirstDiffer(n) => 0.5f64.powi(n.min(i32::MAX as usize) as i32),
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Equal, Distance::Equal) => Ordering::Equal,
            (Distance::Equal, _) => Ordering::Less,
            (_, Distance::Equal) => Ordering::Greater,
            (Distance::FirstDiffer(a), Distance::FirstDiffer(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Equal => f.write_str("equal"),
            Distance::FirstDiffer(n) => write!(f, "2^-{n}"),
        }
    }
}

/// Prefix distance between the sequences `a` and `b` denote, tails included.
///
/// An empty string has no tail; it is treated as differing from any nonempty
/// string at position 1.
pub fn metric(a: &BitString, b: &BitString) -> Distance {
    let (short, long) = if a.len <= b.len { (a, b) } else { (b, a) };
    if short.is_empty() {
        return if long.is_empty() {
            Distance::Equal
        } else {
            Distance::FirstDiffer(1)
        };
    }
    let p = lcp(a, b);
    if p < short.len {
        return Distance::FirstDiffer(p + 1);
    }
    if short.len == long.len {
        return Distance::Equal;
    }
    // `long` agrees with `short` on its finite part; walk it against the
    // tail of `short`.
    let tail = !short.last().expect("nonempty");
    let end = long.run_end(short.len, tail);
    if end < long.len {
        Distance::FirstDiffer(end + 1)
    } else {
        // `long` ends in `tail`, so its own tail is the opposite bit.
        Distance::FirstDiffer(long.len + 1)
    }
}

/// First `len` bits of `s`, extended through the end of the run containing
/// position `len` (1-based).
pub fn ribbit_extend(s: &BitString, len: usize) -> Result<BitString> {
    if len == 0 || len > s.len() {
        return Err(Error::OutOfRange {
            position: len,
            len: s.len(),
        });
    }
    let end = s.run_end(len - 1, s.get(len - 1));
    Ok(s.prefix(end))
}
