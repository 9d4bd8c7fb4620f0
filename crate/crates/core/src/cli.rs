//! The `knave` command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 cap exceeded (partial output is
//! still written), 3 verification failure.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use crate::bitcore::{metric, parse, Distance};
use crate::dynamics::{
    all_seeds, check_element_table, check_prefix_lemma, check_ribbit_bounds, classify_basin,
    first_iterate_with_prefix, leading_ribbit_descent, summarize,
};
use crate::error::Error;
use crate::knave::{
    fixed_point_prefix, knave_step, read_cache, write_cache, FixedPointCertificate, FixedPoints, Parity,
    DEFAULT_MAX_BITS, DEFAULT_MAX_ITERATIONS,
};
use crate::variants::{estimate_lambda, growth_ratios, Stepper, Term, TermIter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Environment variable overriding the default fixed-point cache path.
pub const CACHE_ENV: &str = "KNAVE_CACHE";
pub const DEFAULT_CACHE: &str = ".knave/fixedpoints.txt";

#[derive(Debug, Parser)]
#[command(
    name = "knave",
    version,
    about = "Look-Knave orbits, fixed points, basins and growth constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an orbit s_1 = seed, s_{n+1} = step(s_n).
    Gen(GenArgs),
    /// Apply the Knave map once.
    Step(StepArgs),
    /// Certified prefix of a fixed point of k².
    Fixedpoint(FixedpointArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Classify every short seed by the fixed point its k²-orbit approaches.
    Basin(BasinArgs),
    /// Term lengths and a least-squares growth-constant estimate.
    Growth(GrowthArgs),
    /// Prefix distance between two strings, tails included.
    Metric(MetricArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value = "knave", value_parser = parse_stepper)]
    variant: Stepper,
    #[arg(long, default_value = "1")]
    seed: String,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
    #[arg(long, value_enum, default_value_t)]
    emit: EmitFormat,
}

#[derive(Debug, Args)]
struct StepArgs {
    #[arg(long)]
    input: String,
}

#[derive(Debug, Args)]
struct FixedpointArgs {
    #[arg(long, value_parser = parse_parity)]
    parity: Parity,
    #[arg(long)]
    bits: usize,
    /// Defaults to $KNAVE_CACHE, then .knave/fixedpoints.txt.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
    #[arg(long, value_enum, default_value_t)]
    emit: EmitFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table,
    Ribbits,
    Prefixlemma,
    Attraction,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Orbit length (ribbits: 200, prefixlemma: 60) or double steps (attraction: 100).
    #[arg(long)]
    steps: Option<usize>,
    /// Seed for the ribbits suite; bounds are only judged for seed 1.
    #[arg(long, default_value = "1")]
    seed: String,
    /// Longest seed for the attraction suite.
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 64)]
    threshold: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
}

#[derive(Debug, Args)]
struct BasinArgs {
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 64)]
    threshold: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
    #[arg(long, value_enum, default_value_t)]
    emit: EmitFormat,
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct GrowthArgs {
    #[arg(long, default_value = "knave", value_parser = parse_stepper)]
    variant: Stepper,
    #[arg(long, default_value = "1")]
    seed: String,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
    #[arg(long, value_enum, default_value_t)]
    emit: EmitFormat,
}

#[derive(Debug, Args)]
struct MetricArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, value_enum, default_value_t)]
    emit: EmitFormat,
}

fn parse_stepper(s: &str) -> Result<Stepper, String> {
    s.parse()
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse()
}

/// A failed command: exit code plus a message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. }
            | Error::IterationCapExceeded { .. }
            | Error::MemoryCapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_INVALID, e)
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line with `args` (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => cmd_gen(a, out, err),
        Command::Step(a) => cmd_step(a, out),
        Command::Fixedpoint(a) => cmd_fixedpoint(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Basin(a) => cmd_basin(a, out, err),
        Command::Growth(a) => cmd_growth(a, out, err),
        Command::Metric(a) => cmd_metric(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let seed = Term::parse(a.variant, &a.seed)?;
    let mut it = TermIter::new(a.variant, seed, a.steps, a.max_bits);
    if a.emit == EmitFormat::Csv {
        writeln!(out, "n,length,ratio,bits")?;
    }
    let mut prev: Option<usize> = None;
    for (n, term) in it.by_ref() {
        let length = term.len();
        let ratio = prev.map(|p| Ratio::new(length as u64, p as u64).to_string());
        prev = Some(length);
        match a.emit {
            EmitFormat::Text => writeln!(out, "{term}")?,
            EmitFormat::Json => writeln!(
                out,
                "{}",
                json!({"n": n, "length": length, "bits": term.to_string(), "ratio": ratio})
            )?,
            EmitFormat::Csv => writeln!(out, "{n},{length},{},{term}", ratio.unwrap_or_default())?,
        }
    }
    if let Some(e) = it.take_error() {
        return Err(e.into());
    }
    if let Some(n) = it.capped_at() {
        writeln!(err, "cap exceeded: term {n} would exceed {} symbols", a.max_bits)?;
        return Ok(EXIT_CAP);
    }
    Ok(EXIT_OK)
}

fn cmd_step(a: StepArgs, out: &mut dyn Write) -> Outcome {
    let s = parse(&a.input)?;
    writeln!(out, "{}", knave_step(&s)?)?;
    Ok(EXIT_OK)
}

fn cache_path(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

/// Loads the cache, dropping it (with a warning) when it does not parse.
fn load_cache(path: &Path, err: &mut dyn Write) -> io::Result<Vec<FixedPointCertificate>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => {
            writeln!(
                err,
                "warning: cannot read cache {}: {e}; regenerating",
                path.display()
            )?;
            return Ok(Vec::new());
        }
    };
    match read_cache(&text) {
        Ok(certs) => Ok(certs),
        Err(e) => {
            writeln!(err, "warning: {}: {e}; regenerating", path.display())?;
            Ok(Vec::new())
        }
    }
}

fn store_cache(path: &Path, certs: &[FixedPointCertificate]) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, write_cache(certs))
}

fn cmd_fixedpoint(a: FixedpointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if a.bits == 0 {
        return Err(Failure::new(EXIT_INVALID, "--bits must be at least 1"));
    }
    let path = cache_path(a.cache);
    let mut certs = load_cache(&path, err)?;
    let cached = certs
        .iter()
        .find(|c| c.parity == a.parity && c.certified_bits >= a.bits)
        .filter(|c| c.verify(a.max_bits).unwrap_or(false))
        .cloned();
    let cert = match cached {
        Some(c) => c,
        None => {
            let c = fixed_point_prefix(a.parity, a.bits, a.max_iterations, a.max_bits)?;
            certs.retain(|old| old.parity != a.parity);
            certs.push(c.clone());
            certs.sort_by_key(|c| c.parity);
            if let Err(e) = store_cache(&path, &certs) {
                writeln!(err, "warning: cannot write cache {}: {e}", path.display())?;
            }
            c
        }
    };
    match a.emit {
        EmitFormat::Text => {
            writeln!(out, "parity {}", cert.parity)?;
            writeln!(out, "seed {}", cert.seed)?;
            writeln!(out, "iterations {}", cert.iterations)?;
            writeln!(out, "certified_bits {}", cert.certified_bits)?;
            writeln!(out, "prefix {}", cert.prefix)?;
        }
        EmitFormat::Json => writeln!(
            out,
            "{}",
            json!({
                "parity": cert.parity.to_string(),
                "seed": cert.seed.to_string(),
                "iterations": cert.iterations,
                "certified_bits": cert.certified_bits,
                "prefix": cert.prefix.to_string(),
            })
        )?,
        EmitFormat::Csv => {
            writeln!(out, "parity,seed,iterations,certified_bits,prefix")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                cert.parity, cert.seed, cert.iterations, cert.certified_bits, cert.prefix
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let ok = match a.suite {
        Suite::Table => {
            let report = check_element_table();
            for row in &report.rows {
                if row.passed() {
                    writeln!(out, "PASS {} -> {}", row.input, row.actual)?;
                } else {
                    writeln!(
                        out,
                        "FAIL {}: expected {} got {} (no_shorter={})",
                        row.input, row.expected, row.actual, row.no_shorter
                    )?;
                }
            }
            let total = report.rows.len();
            writeln!(out, "{}/{total} rows reproduce the table", report.matching())?;
            writeln!(
                out,
                "{}/{total} rows satisfy |k(r r')| >= |r r'|",
                report.no_shorter()
            )?;
            writeln!(out, "{}/{total} rows pass", report.passed())?;
            report.all_passed()
        }
        Suite::Ribbits => {
            let seed = parse(&a.seed)?;
            let steps = a.steps.unwrap_or(200);
            let r = check_ribbit_bounds(&seed, steps, a.max_bits)?;
            writeln!(out, "terms s_{}..s_{}", r.n_range.0, r.n_range.1)?;
            if let Some(n) = r.capped_at {
                writeln!(
                    out,
                    "cap: s_{n} would exceed {} bits; bounds judged on computed terms",
                    a.max_bits
                )?;
            }
            writeln!(
                out,
                "max ribbit {} (first at s_{})",
                r.max_ribbit, r.witness_index
            )?;
            writeln!(
                out,
                "max even ribbit {} (first at s_{})",
                r.max_even_ribbit, r.even_witness_index
            )?;
            if a.seed == "1" {
                writeln!(
                    out,
                    "{} max ribbit <= 5, max even ribbit <= 3",
                    verdict(r.within_bounds())
                )?;
                r.within_bounds()
            } else {
                writeln!(out, "seed is not 1: reported without judgement")?;
                true
            }
        }
        Suite::Prefixlemma => {
            let rows = check_prefix_lemma(a.steps.unwrap_or(60), a.max_bits)?;
            writeln!(out, "l |r_l| lcp(s_l+1,s_l+3) lcp(s_l,s_l+2)")?;
            for r in &rows {
                writeln!(
                    out,
                    "{} {} {} {} {}",
                    verdict(r.holds()),
                    r.index,
                    r.ribbit_len,
                    r.lcp_shifted,
                    r.lcp_aligned
                )?;
            }
            let passed = rows.iter().filter(|r| r.holds()).count();
            writeln!(out, "{passed}/{} indices pass", rows.len())?;
            passed == rows.len()
        }
        Suite::Attraction => {
            let steps = a.steps.unwrap_or(100);
            let fixed = FixedPoints::compute(a.threshold.max(1))?;
            let results = classify_basin(a.max_len, steps, a.threshold, &fixed, a.max_bits, false)?;
            let s = summarize(&results);
            let both = results.iter().filter(|r| r.other_agreement_bits > 5).count();
            writeln!(
                out,
                "seeds {} even {} odd {} undecided {}",
                results.len(),
                s.even,
                s.odd,
                s.undecided
            )?;
            writeln!(out, "{} zero undecided", verdict(s.undecided == 0))?;
            writeln!(
                out,
                "{} no seed agrees with both fixed points beyond 6 bits",
                verdict(both == 0)
            )?;

            let ten = parse("10")?;
            let canonical = [parse("1011110")?, parse("101110")?];
            let mut descent_fail = 0;
            let mut prefix_fail = 0;
            for seed in all_seeds(a.max_len) {
                if !leading_ribbit_descent(&seed)?.holds() {
                    descent_fail += 1;
                }
                let reaches = |p| first_iterate_with_prefix(&seed, p, 64, a.max_bits).map(|m| m.is_some());
                if !(reaches(&ten)? && (reaches(&canonical[0])? || reaches(&canonical[1])?)) {
                    prefix_fail += 1;
                }
            }
            writeln!(
                out,
                "{} leading-ribbit descent ({descent_fail} failures)",
                verdict(descent_fail == 0)
            )?;
            writeln!(
                out,
                "{} iterates reach 10 and 1011110 or 101110 within 64 steps ({prefix_fail} failures)",
                verdict(prefix_fail == 0)
            )?;
            s.undecided == 0 && both == 0 && descent_fail == 0 && prefix_fail == 0
        }
    };
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_basin(a: BasinArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if a.max_len == 0 || a.max_len >= 64 {
        return Err(Failure::new(EXIT_INVALID, "--max-len must be in 1..=63"));
    }
    let fixed = FixedPoints::compute(a.threshold.max(1))?;
    let results = classify_basin(a.max_len, a.steps, a.threshold, &fixed, a.max_bits, a.parallel)?;
    let summary = summarize(&results);
    match a.emit {
        EmitFormat::Text => {
            for r in &results {
                writeln!(
                    out,
                    "{} {} {} {}",
                    r.seed, r.attractor, r.steps_used, r.agreement_bits
                )?;
            }
            writeln!(
                out,
                "summary even={} odd={} undecided={}",
                summary.even, summary.odd, summary.undecided
            )?;
        }
        EmitFormat::Json => {
            for r in &results {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "seed": r.seed.to_string(),
                        "attractor": r.attractor,
                        "steps_used": r.steps_used,
                        "agreement_bits": r.agreement_bits,
                    })
                )?;
            }
            writeln!(out, "{}", json!({ "summary": summary }))?;
        }
        EmitFormat::Csv => {
            writeln!(out, "seed,attractor,steps_used,agreement_bits")?;
            for r in &results {
                writeln!(
                    out,
                    "{},{},{},{}",
                    r.seed, r.attractor, r.steps_used, r.agreement_bits
                )?;
            }
            writeln!(
                err,
                "summary even={} odd={} undecided={}",
                summary.even, summary.odd, summary.undecided
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_growth(a: GrowthArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let series = growth_ratios(a.variant, &a.seed, a.steps, a.max_bits)?;
    let capped = series.capped_at.is_some();
    if let Some(n) = series.capped_at {
        writeln!(err, "cap exceeded: term {n} would exceed {} symbols", a.max_bits)?;
    }
    let estimate = estimate_lambda(&series.points);
    match a.emit {
        EmitFormat::Text => {
            for p in &series.points {
                match p.ratio {
                    Some(r) => writeln!(out, "{} {} {r:.6}", p.n, p.length)?,
                    None => writeln!(out, "{} {}", p.n, p.length)?,
                }
            }
            if let Ok(e) = &estimate {
                writeln!(
                    out,
                    "lambda_hat {:.6} window {}..{} residual {:.3e}",
                    e.lambda_hat, e.window.0, e.window.1, e.residual
                )?;
            }
        }
        EmitFormat::Json => {
            if let Ok(e) = &estimate {
                writeln!(out, "{}", serde_json::to_string(e).expect("serializable"))?;
            }
        }
        EmitFormat::Csv => {
            writeln!(out, "n,length,ratio")?;
            for p in &series.points {
                match p.ratio {
                    Some(r) => writeln!(out, "{},{},{r}", p.n, p.length)?,
                    None => writeln!(out, "{},{},", p.n, p.length)?,
                }
            }
            if let Ok(e) = &estimate {
                writeln!(
                    err,
                    "lambda_hat {:.6} window {}..{}",
                    e.lambda_hat, e.window.0, e.window.1
                )?;
            }
        }
    }
    match estimate {
        Ok(_) => Ok(if capped { EXIT_CAP } else { EXIT_OK }),
        Err(e) if capped => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_CAP)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_metric(a: MetricArgs, out: &mut dyn Write) -> Outcome {
    let d = metric(&parse(&a.a)?, &parse(&a.b)?);
    let exponent = d.exponent();
    match a.emit {
        EmitFormat::Text => match d {
            Distance::Equal => writeln!(out, "equal")?,
            Distance::FirstDiffer(n) => writeln!(out, "exponent {n}")?,
        },
        EmitFormat::Json => writeln!(
            out,
            "{}",
            json!({"equal": exponent.is_none(), "exponent": exponent})
        )?,
        EmitFormat::Csv => {
            writeln!(out, "equal,exponent")?;
            writeln!(
                out,
                "{},{}",
                exponent.is_none(),
                exponent.map(|n| n.to_string()).unwrap_or_default()
            )?;
        }
    }
    Ok(EXIT_OK)
}
