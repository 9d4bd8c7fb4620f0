//! Estimates the growth constant of each stepper from the lengths of its
//! terms.

use look_knave::knave::DEFAULT_MAX_BITS;
use look_knave::{estimate_lambda, growth_ratios, Stepper};

fn main() -> look_knave::Result<()> {
    for (stepper, steps) in [
        (Stepper::Knave, 150),
        (Stepper::LookSay10, 60),
        (Stepper::LookSay2, 40),
    ] {
        let series = growth_ratios(stepper, "1", steps, DEFAULT_MAX_BITS)?;
        let e = estimate_lambda(&series.points)?;
        let last = series.points.last().unwrap();
        print!(
            "{:<9} lambda_hat {:.5}  window {:?}  residual {:.2e}  last term n={} length {}",
            stepper.to_string(),
            e.lambda_hat,
            e.window,
            e.residual,
            last.n,
            last.length
        );
        match series.capped_at {
            Some(n) => println!("  (stopped before term {n})"),
            None => println!(),
        }
    }
    Ok(())
}
