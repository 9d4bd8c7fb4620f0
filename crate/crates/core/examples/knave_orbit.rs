//! Prints the first terms of the orbit of `1` with their length ratios.
//!
//!     cargo run --example knave_orbit -- 12

use look_knave::knave::DEFAULT_MAX_BITS;
use look_knave::{orbit, parse};

fn main() -> look_knave::Result<()> {
    let steps = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let o = orbit(&parse("1")?, steps, DEFAULT_MAX_BITS)?;
    for r in &o.records {
        let ratio = r.ratio.map(|q| q.to_string()).unwrap_or_default();
        let shown = if r.length <= 64 {
            r.term.to_string()
        } else {
            format!("{}...", r.term.prefix(60))
        };
        println!("{:>3} {:>6} {:>12} {}", r.n, r.length, ratio, shown);
    }
    if let Some(n) = o.capped_at {
        println!("stopped: term {n} exceeds the length cap");
    }
    Ok(())
}
