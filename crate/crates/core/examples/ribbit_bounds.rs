//! Run-length bounds along the orbit of `1`, and the table of short
//! run pairs with their images.

use look_knave::dynamics::{check_element_table, check_prefix_lemma, check_ribbit_bounds};
use look_knave::knave::DEFAULT_MAX_BITS;
use look_knave::parse;

fn main() -> look_knave::Result<()> {
    let steps = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let r = check_ribbit_bounds(&parse("1")?, steps, DEFAULT_MAX_BITS)?;
    println!(
        "s_{}..s_{}: longest run {} (term {}), longest run of 0 {} (term {})",
        r.n_range.0, r.n_range.1, r.max_ribbit, r.witness_index, r.max_even_ribbit, r.even_witness_index
    );

    let table = check_element_table();
    for row in &table.rows {
        let mark = if row.passed() {
            ""
        } else {
            "  <- shorter than its input"
        };
        println!("{:>8} -> {:<10}{mark}", row.input, row.actual);
    }
    println!(
        "{}/16 rows reproduce, {}/16 keep their length",
        table.matching(),
        table.no_shorter()
    );

    let lemma = check_prefix_lemma(30, DEFAULT_MAX_BITS)?;
    println!(
        "prefix lemma holds for {}/{} indices",
        lemma.iter().filter(|r| r.holds()).count(),
        lemma.len()
    );
    Ok(())
}
