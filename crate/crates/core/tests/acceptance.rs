//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{corpus_rng, naive_knave, random_bits, CORPUS_SEED, CORPUS_SIZE};
use look_knave::bitcore::concat_runs;
use look_knave::dynamics::{check_element_table, check_ribbit_bounds, classify_basin, summarize, Attractor};
use look_knave::knave::{cross_description, CROSS_DESCRIPTION_SLACK, DEFAULT_MAX_BITS};
use look_knave::variants::{estimate_lambda, growth_ratios, Stepper};
use look_knave::FixedPoints;
use look_knave::{decompose_runs, knave_step, knave_stream, metric, orbit, parse, BitString, Distance};

const TABLE_1: [&str; 10] = [
    "1",
    "10",
    "1011",
    "1011100",
    "1011110101",
    "1011100011101110",
    "10111101111101111011",
    "1011100011101011100011100",
    "1011110111110111011110111110101",
    "101110001110101111011100011101011101110",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn bs(s: &str) -> BitString {
    parse(s).unwrap()
}

fn table_1_golden() -> Outcome {
    let seed = bs("1");
    let start = Instant::now();
    let o = orbit(&seed, 10, DEFAULT_MAX_BITS).unwrap();
    let elapsed = start.elapsed();
    let got: Vec<String> = o.records.iter().map(|r| r.term.to_string()).collect();
    let exact = got == TABLE_1 && o.capped_at.is_none();
    let fast = elapsed < Duration::from_millis(1);
    outcome(
        exact && fast,
        format!("10/10 exact={exact}, runtime {elapsed:?} (< 1 ms)"),
    )
}

fn table_2_golden() -> Outcome {
    let report = check_element_table();
    let shrinking: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.no_shorter)
        .map(|r| {
            format!(
                "{} ({} bits) -> {} ({} bits)",
                r.input,
                r.input.len(),
                r.actual,
                r.actual.len()
            )
        })
        .collect();
    outcome(
        report.all_passed(),
        format!(
            "{}/16 rows reproduce, {}/16 rows satisfy |k(r r')| >= |r r'|; shrinking: [{}]",
            report.matching(),
            report.no_shorter(),
            shrinking.join(", ")
        ),
    )
}

fn ribbit_bounds() -> Outcome {
    let start = Instant::now();
    let r = check_ribbit_bounds(&bs("1"), 200, DEFAULT_MAX_BITS).unwrap();
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(10);
    outcome(
        r.within_bounds() && fast,
        format!(
            "s_1..s_{} (cap at {:?}): max ribbit {} (<= 5), max even ribbit {} (<= 3), runtime {elapsed:.2?} (< 10 s)",
            r.n_range.1, r.capped_at, r.max_ribbit, r.max_even_ribbit
        ),
    )
}

fn fixed_points() -> Outcome {
    let fixed = FixedPoints::compute(1024).unwrap();
    let n = fixed.certified_bits();
    let certified = fixed.even.certified_bits >= 1024 && fixed.odd.certified_bits >= 1024;
    let valid = fixed.even.verify(DEFAULT_MAX_BITS).unwrap() && fixed.odd.verify(DEFAULT_MAX_BITS).unwrap();
    let odd_to_even = cross_description(&fixed.odd, &fixed.even);
    let even_to_odd = cross_description(&fixed.even, &fixed.odd);
    let cross = odd_to_even + CROSS_DESCRIPTION_SLACK >= n && even_to_odd + CROSS_DESCRIPTION_SLACK >= n;
    let split = metric(&fixed.even.prefix, &fixed.odd.prefix);
    let differ_at_6 = split == Distance::FirstDiffer(6);
    outcome(
        certified && valid && cross && differ_at_6,
        format!(
            "certified even {} odd {}; lcp(k(odd), even) {odd_to_even}, lcp(k(even), odd) {even_to_odd} (>= {} - {}); first differ {split}",
            fixed.even.certified_bits, fixed.odd.certified_bits, n, CROSS_DESCRIPTION_SLACK
        ),
    )
}

fn basin_dichotomy() -> Outcome {
    let start = Instant::now();
    let fixed = FixedPoints::compute(1024).unwrap();
    let results = classify_basin(12, 100, 64, &fixed, DEFAULT_MAX_BITS, true).unwrap();
    let elapsed = start.elapsed();
    let s = summarize(&results);
    let count_ok = results.len() == (1 << 13) - 2;
    let agreement_ok = results
        .iter()
        .all(|r| r.attractor == Attractor::Undecided || r.agreement_bits >= 64);
    let never_both = results.iter().all(|r| r.other_agreement_bits <= 5);
    let named = results.iter().find(|r| r.seed == bs("1")).map(|r| r.attractor) == Some(Attractor::Odd)
        && results.iter().find(|r| r.seed == bs("10")).map(|r| r.attractor) == Some(Attractor::Even);
    let max_used = results.iter().map(|r| r.steps_used).max().unwrap_or(0);
    let fast = elapsed < Duration::from_secs(60);
    outcome(
        count_ok && s.undecided == 0 && agreement_ok && never_both && named && fast,
        format!(
            "{} seeds: even {} odd {} undecided {}; max double steps {max_used}; runtime {elapsed:.2?} (< 60 s)",
            results.len(),
            s.even,
            s.odd,
            s.undecided
        ),
    )
}

fn growth_constants() -> Outcome {
    let estimate = |stepper, steps| {
        let series = growth_ratios(stepper, "1", steps, DEFAULT_MAX_BITS).unwrap();
        let last = series.points.last().map(|p| p.n).unwrap_or(0);
        (
            estimate_lambda(&series.points).unwrap().lambda_hat,
            last,
            series.capped_at,
        )
    };
    let (knave, knave_last, knave_cap) = estimate(Stepper::Knave, 150);
    let (dec, _, _) = estimate(Stepper::LookSay10, 60);
    let (bin, _, _) = estimate(Stepper::LookSay2, 40);
    let knave_ok = (1.10..=1.14).contains(&knave);
    let dec_ok = (dec - 1.3036).abs() <= 0.01;
    let bin_ok = (bin - 1.4656).abs() <= 0.01;
    outcome(
        knave_ok && dec_ok && bin_ok,
        format!(
            "knave {knave:.5} in [1.10, 1.14]: {knave_ok} (terms to n={knave_last}, cap at {knave_cap:?}); \
             looksay10 {dec:.5} (1.3036 +- 0.01): {dec_ok}; looksay2 {bin:.5} (1.4656 +- 0.01): {bin_ok}"
        ),
    )
}

fn property_suites() -> Outcome {
    let mut rng = corpus_rng();
    let corpus: Vec<String> = (0..CORPUS_SIZE).map(|_| random_bits(&mut rng, 512)).collect();
    let parsed: Vec<BitString> = corpus.iter().map(|s| bs(s)).collect();

    let round_trip = parsed.iter().all(|b| {
        let runs = decompose_runs(b).unwrap();
        runs.windows(2).all(|w| w[0].bit != w[1].bit) && concat_runs(&runs) == *b
    });

    let ultrametric = (0..CORPUS_SIZE).all(|i| {
        let (a, b, c) = (
            &parsed[i],
            &parsed[(i * 7 + 1) % CORPUS_SIZE],
            &parsed[(i * 13 + 5) % CORPUS_SIZE],
        );
        // Shared prefixes make the strong triangle inequality non-trivial.
        let b2 = {
            let mut x = a.prefix(a.len() / 2);
            x.push(!a.get(a.len() / 2));
            x
        };
        [b, &b2].iter().all(|b| {
            metric(a, a) == Distance::Equal
                && metric(a, b) == metric(b, a)
                && metric(a, c) <= metric(a, b).max(metric(b, c))
                && (a == *b || metric(a, b) != Distance::Equal)
        })
    });

    let stream = parsed.iter().all(|b| {
        let out: Result<Vec<bool>, _> = knave_stream(b.iter().map(u8::from)).collect();
        BitString::from_bools(out.unwrap()) == knave_step(b).unwrap()
    });

    let oracle = corpus
        .iter()
        .zip(&parsed)
        .all(|(s, b)| knave_step(b).unwrap().to_string() == naive_knave(s));

    outcome(
        round_trip && ultrametric && stream && oracle,
        format!(
            "{CORPUS_SIZE} cases, seed {CORPUS_SEED:#x}: round-trip {round_trip}, ultrametric {ultrametric}, \
             batch==stream {stream}, naive oracle {oracle}"
        ),
    )
}

fn non_invertibility() -> Outcome {
    let ten = knave_step(&bs("10")).unwrap().to_string();
    let zeros = knave_step(&bs("00000")).unwrap().to_string();
    let ones = knave_step(&bs("11111")).unwrap().to_string();
    outcome(
        ten == "1011" && zeros == "1011" && ones == "1010",
        format!("k(10) = {ten}, k(00000) = {zeros}, k(11111) = {ones}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 Table 1 golden", table_1_golden),
        ("2 Table 2 golden", table_2_golden),
        ("3 ribbit bounds", ribbit_bounds),
        ("4 fixed points", fixed_points),
        ("5 basin dichotomy", basin_dichotomy),
        ("6 growth constants", growth_constants),
        ("7 property suites", property_suites),
        ("8 non-invertibility", non_invertibility),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
