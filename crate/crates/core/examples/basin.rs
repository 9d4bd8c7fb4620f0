//! Classifies every binary string up to a given length by the fixed point its
//! even iterates approach.

use look_knave::dynamics::{classify_basin, summarize, Attractor};
use look_knave::knave::DEFAULT_MAX_BITS;
use look_knave::FixedPoints;

fn main() -> look_knave::Result<()> {
    let max_len = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let fixed = FixedPoints::compute(1024)?;
    let results = classify_basin(max_len, 100, 64, &fixed, DEFAULT_MAX_BITS, true)?;
    for len in 1..=max_len {
        let (mut even, mut odd) = (0, 0);
        for r in results.iter().filter(|r| r.seed.len() == len) {
            match r.attractor {
                Attractor::Even => even += 1,
                Attractor::Odd => odd += 1,
                Attractor::Undecided => {}
            }
        }
        println!("length {len:>2}: even {even:>5} odd {odd:>5}");
    }
    let s = summarize(&results);
    let slowest = results.iter().max_by_key(|r| r.steps_used).unwrap();
    println!("total: even {} odd {} undecided {}", s.even, s.odd, s.undecided);
    println!(
        "slowest seed {} needed {} double steps",
        slowest.seed, slowest.steps_used
    );
    Ok(())
}
