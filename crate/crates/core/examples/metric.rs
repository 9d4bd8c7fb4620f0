//! The prefix metric, and how the orbits of two seeds approach each other.

use look_knave::dynamics::convergence_trace;
use look_knave::knave::DEFAULT_MAX_BITS;
use look_knave::{metric, parse};

fn main() -> look_knave::Result<()> {
    for (a, b) in [("10", "11111"), ("1011", "1011"), ("1", "10"), ("110", "1100")] {
        let d = metric(&parse(a)?, &parse(b)?);
        println!("d({a}, {b}) = {d} ({})", d.to_f64());
    }

    let seed = std::env::args().nth(1).unwrap_or_else(|| "0110".to_string());
    println!("orbit of {seed} against the orbits of 1 and 10:");
    for row in convergence_trace(&parse(&seed)?, 16, DEFAULT_MAX_BITS)? {
        println!(
            "{:>3} {:>14} {:>14}",
            row.n,
            row.to_odd_orbit.to_string(),
            row.to_even_orbit.to_string()
        );
    }
    Ok(())
}
