//! The Look-Knave map and its relatives.
//!
//! The Knave reads a binary string run by run and reports each run of `n`
//! equal bits as the base-2 numeral of `n` followed by the bit it is *not*.
//! Iterating from `1` gives `1, 10, 1011, 1011100, ...`; the even and odd
//! terms converge, in the prefix metric, to the two fixed points of `k²`.
//!
//! - [`bitcore`]: packed bit strings, runs, numerals, the prefix metric.
//! - [`knave`]: the map, its streaming form, orbits, fixed-point certificates.
//! - [`dynamics`]: run-length bounds, the element table, basins of attraction.
//! - [`variants`]: decimal and binary Look-Say, growth-constant estimation.
//! - [`cli`]: the `knave` command line.

pub mod bitcore;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod knave;
pub mod variants;

pub use bitcore::{
    decompose_runs, lcp, metric, numeral, parse, ribbit_extend, BitString, Distance, Numeral, Run,
};
pub use error::{Error, Result};
pub use knave::{
    fixed_point_prefix, knave_step, knave_stream, orbit, stable_prefix, FixedPointCertificate, FixedPoints,
    KnaveStream, Orbit, OrbitRecord, Parity,
};
pub use variants::{
    estimate_lambda, growth_ratios, looksay_step_binary, looksay_step_decimal, GrowthEstimate, Stepper,
};
