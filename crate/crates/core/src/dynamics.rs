//! Experiments on the orbits of the Knave map: run-length bounds, the
//! ribbit-pair element table, convergence to the two fixed points of `k²`,
//! and basins of attraction over all short seeds.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitcore::{lcp, metric, parse, ribbit_extend, BitString, Distance};
use crate::error::{Error, Result};
use crate::knave::{describe_runs, describe_runs_observed, knave_step, FixedPoints, OrbitIter, Parity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbitBoundReport {
    pub n_range: (usize, usize),
    pub max_ribbit: usize,
    pub max_even_ribbit: usize,
    /// First term attaining `max_ribbit`.
    pub witness_index: usize,
    /// First term attaining `max_even_ribbit`.
    pub even_witness_index: usize,
    pub capped_at: Option<usize>,
}

impl RibbitBoundReport {
    /// Longest run at most 5, longest run of zeros at most 3.
    pub fn within_bounds(&self) -> bool {
        self.max_ribbit <= 5 && self.max_even_ribbit <= 3
    }
}

/// Scans the run decomposition of every orbit term `s_1..s_steps`.
pub fn check_ribbit_bounds(seed: &BitString, steps: usize, max_bits: usize) -> Result<RibbitBoundReport> {
    if seed.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut report = RibbitBoundReport {
        n_range: (1, 0),
        max_ribbit: 0,
        max_even_ribbit: 0,
        witness_index: 0,
        even_witness_index: 0,
        capped_at: None,
    };
    if steps > 0 && seed.len() > max_bits {
        report.capped_at = Some(1);
        return Ok(report);
    }
    let mut term = seed.clone();
    for n in 1..=steps {
        // The runs of s_n are read while describing them into s_{n+1}.
        let (mut all, mut zeros) = (0, 0);
        let next = if n < steps {
            describe_runs_observed(&term, true, max_bits, |r| {
                all = all.max(r.len);
                if !r.bit {
                    zeros = zeros.max(r.len);
                }
            })
        } else {
            None
        };
        if next.is_none() {
            (all, zeros) = term.max_runs();
        }
        if all > report.max_ribbit {
            report.max_ribbit = all;
            report.witness_index = n;
        }
        if zeros > report.max_even_ribbit {
            report.max_even_ribbit = zeros;
            report.even_witness_index = n;
        }
        report.n_range.1 = n;
        match next {
            Some(t) => term = t,
            None => {
                if n < steps {
                    report.capped_at = Some(n + 1);
                }
                break;
            }
        }
    }
    Ok(report)
}

/// Every ribbit pair `r r'` that occurs inside an orbit of `1`, and its
/// image. Fragments are read as interior pieces: runs only, no tail.
pub const ELEMENT_TABLE: [(&str, &str); 16] = [
    ("1", "10"),
    ("01", "1110"),
    ("001", "10110"),
    ("0001", "11110"),
    ("011", "11100"),
    ("0011", "101100"),
    ("00011", "111100"),
    ("0111", "11110"),
    ("00111", "101110"),
    ("000111", "111110"),
    ("01111", "111000"),
    ("001111", "1011000"),
    ("0001111", "1111000"),
    ("011111", "111010"),
    ("0011111", "1011010"),
    ("00011111", "1111010"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementRow {
    pub input: String,
    pub expected: String,
    pub actual: String,
    /// `|k(r r')| >= |r r'|`
    pub no_shorter: bool,
}

impl ElementRow {
    pub fn matches(&self) -> bool {
        self.actual == self.expected
    }

    pub fn passed(&self) -> bool {
        self.matches() && self.no_shorter
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementTableReport {
    pub rows: Vec<ElementRow>,
}

impl ElementTableReport {
    /// Rows whose image is exactly the tabulated one.
    pub fn matching(&self) -> usize {
        self.rows.iter().filter(|r| r.matches()).count()
    }

    /// Rows whose image is at least as long as the fragment.
    pub fn no_shorter(&self) -> usize {
        self.rows.iter().filter(|r| r.no_shorter).count()
    }

    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }
}

pub fn check_element_table() -> ElementTableReport {
    let rows = ELEMENT_TABLE
        .iter()
        .map(|&(input, expected)| {
            let fragment = parse(input).expect("table rows are binary");
            let image = describe_runs(&fragment, true, usize::MAX).expect("uncapped");
            ElementRow {
                input: input.to_string(),
                expected: expected.to_string(),
                actual: image.to_string(),
                no_shorter: image.len() >= fragment.len(),
            }
        })
        .collect();
    ElementTableReport { rows }
}

/// Length of the leading run of ones (0 if `s` starts with 0).
pub fn leading_ones(s: &BitString) -> usize {
    match s.runs().next() {
        Some(r) if r.bit => r.len,
        _ => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Descent {
    /// Leading odd-ribbit length of `k(s)`.
    pub first: usize,
    /// Leading odd-ribbit length of `k²(s)`.
    pub second: usize,
    /// Whether `k(s)` begins with `10`.
    pub begins_10: bool,
}

impl Descent {
    /// A long leading ribbit shrinks under `k`; a unit one means `10`.
    pub fn holds(&self) -> bool {
        if self.first >= 2 {
            self.second < self.first
        } else {
            self.begins_10
        }
    }
}

pub fn leading_ribbit_descent(s: &BitString) -> Result<Descent> {
    let k1 = knave_step(s)?;
    let k2 = knave_step(&k1)?;
    Ok(Descent {
        first: leading_ones(&k1),
        second: leading_ones(&k2),
        begins_10: k1.len() >= 2 && k1.get(0) && !k1.get(1),
    })
}

/// Smallest `m <= max_m` such that `k^m(seed)` begins with `prefix`.
pub fn first_iterate_with_prefix(
    seed: &BitString,
    prefix: &BitString,
    max_m: usize,
    max_bits: usize,
) -> Result<Option<usize>> {
    let mut it = OrbitIter::new(seed, max_m + 1, max_bits)?;
    Ok(it.find(|r| r.term.starts_with(prefix)).map(|r| r.n - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixLemmaRow {
    pub index: usize,
    /// `|r_l|`: first `l` bits of `s_l`, extended through their last run.
    pub ribbit_len: usize,
    /// `lcp(s_{l+1}, s_{l+3})`
    pub lcp_shifted: usize,
    /// `lcp(s_l, s_{l+2})`
    pub lcp_aligned: usize,
}

impl PrefixLemmaRow {
    pub fn holds(&self) -> bool {
        self.lcp_shifted >= self.ribbit_len && self.lcp_aligned >= self.ribbit_len
    }
}

/// Checks, for `l = 1..=steps` on the orbit of `1`, that the iterates two
/// apart agree at least through `|r_l|`.
pub fn check_prefix_lemma(steps: usize, max_bits: usize) -> Result<Vec<PrefixLemmaRow>> {
    let seed = parse("1").expect("literal");
    let terms: Vec<BitString> = {
        let mut it = OrbitIter::new(&seed, steps + 3, max_bits)?;
        let terms: Vec<_> = it.by_ref().map(|r| r.term).collect();
        if let Some(n) = it.capped_at() {
            return Err(Error::CapExceeded { n, max_bits });
        }
        terms
    };
    (1..=steps)
        .map(|l| {
            let s = &terms[l - 1];
            Ok(PrefixLemmaRow {
                index: l,
                ribbit_len: ribbit_extend(s, l)?.len(),
                lcp_shifted: lcp(&terms[l], &terms[l + 2]),
                lcp_aligned: lcp(s, &terms[l + 1]),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Attractor {
    Even,
    Odd,
    Undecided,
}

impl From<Parity> for Attractor {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => Attractor::Even,
            Parity::Odd => Attractor::Odd,
        }
    }
}

impl fmt::Display for Attractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Attractor::Even => "even",
            Attractor::Odd => "odd",
            Attractor::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasinResult {
    pub seed: BitString,
    pub attractor: Attractor,
    /// Double steps applied.
    pub steps_used: usize,
    /// Agreement with the chosen fixed point (the better one if undecided).
    pub agreement_bits: usize,
    /// Agreement with the other fixed point at the same iterate.
    pub other_agreement_bits: usize,
}

/// Iterates `k²` from `seed` until the iterate agrees with one certified
/// fixed-point prefix on `threshold_bits` bits, or `steps` double steps or
/// the bit cap run out.
pub fn classify_seed(
    seed: &BitString,
    fixed: &FixedPoints,
    steps: usize,
    threshold_bits: usize,
    max_bits: usize,
) -> BasinResult {
    let mut x = seed.clone();
    let mut used = 0;
    loop {
        let even = lcp(&x, &fixed.even.prefix);
        let odd = lcp(&x, &fixed.odd.prefix);
        let (best, agreement, other) = if even >= odd {
            (Parity::Even, even, odd)
        } else {
            (Parity::Odd, odd, even)
        };
        let decided = agreement >= threshold_bits;
        let next = if decided || used >= steps {
            None
        } else {
            describe_runs(&x, true, max_bits).and_then(|t| describe_runs(&t, true, max_bits))
        };
        match next {
            Some(y) => {
                x = y;
                used += 1;
            }
            None => {
                return BasinResult {
                    seed: seed.clone(),
                    attractor: if decided {
                        best.into()
                    } else {
                        Attractor::Undecided
                    },
                    steps_used: used,
                    agreement_bits: agreement,
                    other_agreement_bits: other,
                }
            }
        }
    }
}

/// All nonempty binary strings of length `<= max_len`, ordered by
/// `(length, value)`.
pub fn all_seeds(max_len: usize) -> impl Iterator<Item = BitString> {
    assert!(max_len < 64, "seed enumeration is limited to lengths below 64");
    (1..=max_len).flat_map(|len| {
        (0..1u64 << len).map(move |v| {
            let mut s = BitString::with_capacity(len);
            s.push_bits(v, len as u32);
            s
        })
    })
}

/// Classifies every seed of length `<= max_len`. Output order is
/// `(length, value)` whether or not `parallel` is set.
pub fn classify_basin(
    max_len: usize,
    steps: usize,
    threshold_bits: usize,
    fixed: &FixedPoints,
    max_bits: usize,
    parallel: bool,
) -> Result<Vec<BasinResult>> {
    let available = fixed.certified_bits();
    if available < threshold_bits {
        return Err(Error::InsufficientCertificate {
            needed: threshold_bits,
            available,
        });
    }
    let seeds: Vec<BitString> = all_seeds(max_len).collect();
    let classify = |s: &BitString| classify_seed(s, fixed, steps, threshold_bits, max_bits);
    Ok(if parallel {
        seeds.par_iter().map(classify).collect()
    } else {
        seeds.iter().map(classify).collect()
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BasinSummary {
    pub even: usize,
    pub odd: usize,
    pub undecided: usize,
}

pub fn summarize(results: &[BasinResult]) -> BasinSummary {
    results.iter().fold(BasinSummary::default(), |mut acc, r| {
        match r.attractor {
            Attractor::Even => acc.even += 1,
            Attractor::Odd => acc.odd += 1,
            Attractor::Undecided => acc.undecided += 1,
        }
        acc
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub n: usize,
    /// `d(k^n(seed), k^n(1))`
    pub to_odd_orbit: Distance,
    /// `d(k^n(seed), k^n(10))`
    pub to_even_orbit: Distance,
}

/// Distances from `k^n(seed)` to `k^n(1)` and `k^n(10)` for `n = 0..=steps`.
pub fn convergence_trace(seed: &BitString, steps: usize, max_bits: usize) -> Result<Vec<TraceRow>> {
    if seed.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut x = seed.clone();
    let mut odd = Parity::Odd.seed();
    let mut even = Parity::Even.seed();
    let mut rows = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        rows.push(TraceRow {
            n,
            to_odd_orbit: metric(&x, &odd),
            to_even_orbit: metric(&x, &even),
        });
        if n == steps {
            break;
        }
        let cap =
            |s: &BitString| describe_runs(s, true, max_bits).ok_or(Error::CapExceeded { n: n + 1, max_bits });
        x = cap(&x)?;
        odd = cap(&odd)?;
        even = cap(&even)?;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knave::DEFAULT_MAX_BITS;

    fn bs(s: &str) -> BitString {
        parse(s).unwrap()
    }

    #[test]
    fn ribbit_bounds_small() {
        let r = check_ribbit_bounds(&bs("1"), 1, DEFAULT_MAX_BITS).unwrap();
        assert_eq!((r.max_ribbit, r.n_range), (1, (1, 1)));
        assert_eq!(r.max_even_ribbit, 0);

        // s_5 = 1011110101 has the run 1111.
        let r = check_ribbit_bounds(&bs("1"), 5, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(r.max_ribbit, 4);
        assert_eq!(r.witness_index, 5);
        assert_eq!(r.max_even_ribbit, 2);
        assert_eq!(r.even_witness_index, 4);
        assert!(r.within_bounds());
    }

    #[test]
    fn ribbit_bounds_other_seed_is_reported() {
        let r = check_ribbit_bounds(&bs("0000000"), 2, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(r.max_even_ribbit, 7);
        assert!(!r.within_bounds());
    }

    #[test]
    fn element_table_rows() {
        let report = check_element_table();
        for row in &report.rows {
            assert!(row.matches(), "{row:?}");
        }
        assert_eq!(report.matching(), 16);
        // 00011111 (8 bits) -> 1111010 (7 bits): the only shrinking row.
        let shrinking: Vec<_> = report.rows.iter().filter(|r| !r.no_shorter).collect();
        assert_eq!(shrinking.len(), 1);
        assert_eq!(shrinking[0].input, "00011111");
        assert!(!report.all_passed());
        let find = |i: &str| report.rows.iter().find(|r| r.input == i).unwrap().actual.clone();
        assert_eq!(find("01"), "1110");
        assert_eq!(find("00111"), "101110");
        assert_eq!(find("0011111"), "1011010");
    }

    #[test]
    fn descent_examples() {
        let d = leading_ribbit_descent(&bs("11111")).unwrap();
        assert_eq!(d.first, 1);
        assert!(d.begins_10 && d.holds());
        let d = leading_ribbit_descent(&bs("1")).unwrap();
        assert_eq!(d.first, 1);
        // k(0000000) = 1111, k(1111) = 1000
        let d = leading_ribbit_descent(&bs("0000000")).unwrap();
        assert_eq!((d.first, d.second), (4, 1));
        assert!(d.holds());
        assert_eq!(leading_ribbit_descent(&BitString::new()), Err(Error::EmptyInput));
    }

    #[test]
    fn prefix_search() {
        let m = first_iterate_with_prefix(&bs("0000000"), &bs("10"), 10, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(m, Some(2));
        let m = first_iterate_with_prefix(&bs("10"), &bs("10"), 10, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(m, Some(0));
    }

    #[test]
    fn prefix_lemma_small() {
        let rows = check_prefix_lemma(10, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(rows.len(), 10);
        // r_3 = 1011
        assert_eq!(rows[2].ribbit_len, 4);
        assert!(rows.iter().all(|r| r.holds()));
    }

    #[test]
    fn seeds_enumerate_in_order() {
        let seeds: Vec<String> = all_seeds(2).map(|s| s.to_string()).collect();
        assert_eq!(seeds, ["0", "1", "00", "01", "10", "11"]);
        assert_eq!(all_seeds(12).count(), (1 << 13) - 2);
    }

    #[test]
    fn basin_named_seeds() {
        let fixed = FixedPoints::compute(128).unwrap();
        let one = classify_seed(&bs("1"), &fixed, 100, 64, DEFAULT_MAX_BITS);
        assert_eq!(one.attractor, Attractor::Odd);
        let ten = classify_seed(&bs("10"), &fixed, 100, 64, DEFAULT_MAX_BITS);
        assert_eq!(ten.attractor, Attractor::Even);
        assert!(ten.other_agreement_bits <= 5);
        let stuck = classify_seed(&bs("1"), &fixed, 0, 64, DEFAULT_MAX_BITS);
        assert_eq!(stuck.attractor, Attractor::Undecided);
    }

    #[test]
    fn basin_requires_certificates() {
        let fixed = FixedPoints::compute(16).unwrap();
        let err = classify_basin(3, 10, 10_000, &fixed, DEFAULT_MAX_BITS, false).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientCertificate { needed: 10_000, .. }
        ));
    }

    #[test]
    fn trace_fixed_seeds() {
        let rows = convergence_trace(&bs("1"), 20, DEFAULT_MAX_BITS).unwrap();
        assert!(rows.iter().all(|r| r.to_odd_orbit == Distance::Equal));
        let rows = convergence_trace(&bs("10"), 20, DEFAULT_MAX_BITS).unwrap();
        assert!(rows.iter().all(|r| r.to_even_orbit == Distance::Equal));
        assert_eq!(rows.len(), 21);
    }
}
