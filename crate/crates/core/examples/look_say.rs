//! Decimal and binary Look-Say next to the Knave.

use look_knave::variants::{DigitString, Term};
use look_knave::{knave_step, looksay_step_binary, looksay_step_decimal, parse, Stepper};

fn main() -> look_knave::Result<()> {
    let mut d: DigitString = "1".parse()?;
    for _ in 0..8 {
        print!("{d} ");
        d = looksay_step_decimal(&d)?;
    }
    println!();

    let (mut say, mut knave) = (parse("1")?, parse("1")?);
    for n in 1..=6 {
        println!("{n}: look-say {say:<24} knave {knave}");
        say = looksay_step_binary(&say)?;
        knave = knave_step(&knave)?;
    }

    // Ten equal digits cannot be described with one-digit counts.
    let long = Term::parse(Stepper::LookSay10, "1111111111")?;
    println!("{}", long.step(Stepper::LookSay10, usize::MAX).unwrap_err());
    Ok(())
}
