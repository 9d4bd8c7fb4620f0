//! Certifies prefixes of the two fixed points of k² and shows that the Knave
//! carries each one onto the other.

use look_knave::knave::{cross_description, read_cache, write_cache, DEFAULT_MAX_BITS};
use look_knave::{metric, FixedPoints, Parity};

fn main() -> look_knave::Result<()> {
    let bits = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(256);
    let fixed = FixedPoints::compute(bits)?;
    for parity in [Parity::Even, Parity::Odd] {
        let c = fixed.get(parity);
        println!(
            "{parity}: seed {}, {} certified bits after {} applications, verified {}",
            c.seed,
            c.certified_bits,
            c.iterations,
            c.verify(DEFAULT_MAX_BITS)?
        );
        println!("  {}", c.prefix.prefix(c.certified_bits.min(72)));
    }
    println!(
        "k(odd) agrees with even on {} bits",
        cross_description(&fixed.odd, &fixed.even)
    );
    println!(
        "k(even) agrees with odd on {} bits",
        cross_description(&fixed.even, &fixed.odd)
    );
    println!("d(even, odd) = {}", metric(&fixed.even.prefix, &fixed.odd.prefix));

    let text = write_cache(&[fixed.even.clone(), fixed.odd.clone()]);
    assert_eq!(read_cache(&text)?.len(), 2);
    println!("cache record: {}...", &text[..text.len().min(48)]);
    Ok(())
}
