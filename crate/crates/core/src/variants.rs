//! Classic Look-Say in base 10 and base 2, and growth-constant estimation
//! shared with the Knave map.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitcore::{parse, BitString};
use crate::error::{Error, Result};
use crate::knave::describe_runs;

/// Nonempty string of ASCII decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString(Vec<u8>);

impl DigitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn max_digit(&self) -> u8 {
        self.0.iter().max().map_or(0, |d| d - b'0')
    }
}

impl FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = s.bytes().position(|c| !c.is_ascii_digit()) {
            return Err(Error::NonDigit(i + 1));
        }
        Ok(DigitString(s.as_bytes().to_vec()))
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("ascii digits"))
    }
}

/// One Look-Say step: each run of `n` copies of digit `d` becomes `n d`.
/// A run of ten or more has no single-digit count and is rejected.
pub fn looksay_step_decimal(s: &DigitString) -> Result<DigitString> {
    looksay_decimal_capped(s, usize::MAX).map(|o| o.expect("uncapped"))
}

fn looksay_decimal_capped(s: &DigitString, max_len: usize) -> Result<Option<DigitString>> {
    let digits = &s.0;
    if digits.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::with_capacity(digits.len() + digits.len() / 3 + 2);
    let mut i = 0;
    while i < digits.len() {
        let d = digits[i];
        let len = digits[i..].iter().take_while(|&&c| c == d).count();
        if len >= 10 {
            return Err(Error::RunTooLong { position: i + 1, len });
        }
        if out.len() + 2 > max_len {
            return Ok(None);
        }
        out.push(b'0' + len as u8);
        out.push(d);
        i += len;
    }
    Ok(Some(DigitString(out)))
}

/// Binary Look-Say: each run `(b, n)` becomes `numeral(n) ‖ b`.
pub fn looksay_step_binary(s: &BitString) -> Result<BitString> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(describe_runs(s, false, usize::MAX).expect("uncapped"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stepper {
    Knave,
    LookSay10,
    LookSay2,
}

impl fmt::Display for Stepper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stepper::Knave => "knave",
            Stepper::LookSay10 => "looksay10",
            Stepper::LookSay2 => "looksay2",
        })
    }
}

impl FromStr for Stepper {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "knave" => Ok(Stepper::Knave),
            "looksay10" => Ok(Stepper::LookSay10),
            "looksay2" => Ok(Stepper::LookSay2),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

/// A term of any of the three systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Bits(BitString),
    Digits(DigitString),
}

impl Term {
    pub fn parse(stepper: Stepper, text: &str) -> Result<Term> {
        match stepper {
            Stepper::LookSay10 => text.parse().map(Term::Digits),
            Stepper::Knave | Stepper::LookSay2 => parse(text).map(Term::Bits),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Term::Bits(b) => b.len(),
            Term::Digits(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Next term, or `Ok(None)` once it would exceed `max_len` symbols.
    pub fn step(&self, stepper: Stepper, max_len: usize) -> Result<Option<Term>> {
        if self.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(match (stepper, self) {
            (Stepper::Knave, Term::Bits(b)) => describe_runs(b, true, max_len).map(Term::Bits),
            (Stepper::LookSay2, Term::Bits(b)) => describe_runs(b, false, max_len).map(Term::Bits),
            (Stepper::LookSay10, Term::Digits(d)) => looksay_decimal_capped(d, max_len)?.map(Term::Digits),
            (Stepper::LookSay10, Term::Bits(b)) => {
                Term::Digits(b.to_string().parse()?).step(stepper, max_len)?
            }
            (_, Term::Digits(d)) => Term::Bits(parse(&d.to_string())?).step(stepper, max_len)?,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Bits(b) => b.fmt(f),
            Term::Digits(d) => d.fmt(f),
        }
    }
}

/// Lazily generated orbit of any stepper; `n` is 1-based.
pub struct TermIter {
    stepper: Stepper,
    next: Option<Term>,
    n: usize,
    steps: usize,
    max_len: usize,
    capped_at: Option<usize>,
    error: Option<Error>,
}

impl TermIter {
    pub fn new(stepper: Stepper, seed: Term, steps: usize, max_len: usize) -> Self {
        let capped = steps > 0 && seed.len() > max_len;
        TermIter {
            stepper,
            next: (steps > 0 && !capped).then_some(seed),
            n: 0,
            steps,
            max_len,
            capped_at: capped.then_some(1),
            error: None,
        }
    }

    pub fn capped_at(&self) -> Option<usize> {
        self.capped_at
    }

    /// An error raised while producing the term after the last one yielded.
    pub fn take_error(&mut self) -> Option<Error> {
        self.error.take()
    }
}

impl Iterator for TermIter {
    type Item = (usize, Term);

    fn next(&mut self) -> Option<(usize, Term)> {
        let term = self.next.take()?;
        self.n += 1;
        if self.n < self.steps {
            match term.step(self.stepper, self.max_len) {
                Ok(Some(t)) => self.next = Some(t),
                Ok(None) => self.capped_at = Some(self.n + 1),
                Err(e) => self.error = Some(e),
            }
        }
        Some((self.n, term))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub length: usize,
    /// `length(n) / length(n-1)`; absent for the seed.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries {
    pub stepper: Stepper,
    pub points: Vec<GrowthPoint>,
    pub capped_at: Option<usize>,
}

/// Term lengths and consecutive ratios, halting at the length cap.
pub fn growth_ratios(stepper: Stepper, seed: &str, steps: usize, max_len: usize) -> Result<GrowthSeries> {
    let seed = Term::parse(stepper, seed)?;
    let mut it = TermIter::new(stepper, seed, steps, max_len);
    let mut points: Vec<GrowthPoint> = Vec::with_capacity(steps);
    for (n, term) in it.by_ref() {
        let length = term.len();
        let ratio = points.last().map(|p| length as f64 / p.length as f64);
        points.push(GrowthPoint { n, length, ratio });
    }
    if let Some(e) = it.take_error() {
        return Err(e);
    }
    Ok(GrowthSeries {
        stepper,
        points,
        capped_at: it.capped_at(),
    })
}

pub const MIN_GROWTH_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub lambda_hat: f64,
    /// Inclusive range of `n` used by the fit.
    pub window: (usize, usize),
    pub ratios: Vec<f64>,
    /// Residual sum of squares of the fit on `ln(length)`.
    pub residual: f64,
}

/// Fits `ln(length) = a + n ln(λ)` by least squares over the last half of
/// the points and reports `λ̂ = exp(slope)`.
pub fn estimate_lambda(points: &[GrowthPoint]) -> Result<GrowthEstimate> {
    if points.len() < MIN_GROWTH_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_GROWTH_POINTS,
            got: points.len(),
        });
    }
    let window = &points[points.len() / 2..];
    let xs: Vec<f64> = window.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = window.iter().map(|p| (p.length as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(GrowthEstimate {
        lambda_hat: slope.exp(),
        window: (window[0].n, window[window.len() - 1].n),
        ratios: points.iter().filter_map(|p| p.ratio).collect(),
        residual,
    })
}
