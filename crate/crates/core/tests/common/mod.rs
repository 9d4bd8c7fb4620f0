#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for every randomized corpus in the integration tests.
pub const CORPUS_SEED: u64 = 0x4b4e_4156_4520_2024;
pub const CORPUS_SIZE: usize = 10_000;

/// Reference Knave step on `0`/`1` text: counts runs character by
/// character and formats each count by repeated division by two.
pub fn naive_knave(s: &str) -> String {
    naive_describe(s, true)
}

/// Reference binary Look-Say step.
pub fn naive_looksay2(s: &str) -> String {
    naive_describe(s, false)
}

fn naive_describe(s: &str, complement: bool) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let mut count = 0u64;
        while i < chars.len() && chars[i] == c {
            count += 1;
            i += 1;
        }
        let mut digits = Vec::new();
        let mut n = count;
        while n > 0 {
            digits.push(if n % 2 == 1 { '1' } else { '0' });
            n /= 2;
        }
        out.extend(digits.iter().rev());
        out.push(match (c, complement) {
            ('0', true) | ('1', false) => '1',
            _ => '0',
        });
    }
    out
}

pub fn corpus_rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(CORPUS_SEED)
}

/// Random `0`/`1` string with length in `1..=max_len`, biased towards long
/// runs half of the time so multi-digit numerals show up.
pub fn random_bits(rng: &mut impl Rng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    let sticky = rng.gen_bool(0.5);
    let mut s = String::with_capacity(len);
    let mut bit = rng.gen_bool(0.5);
    for _ in 0..len {
        let flip = if sticky {
            rng.gen_bool(0.1)
        } else {
            rng.gen_bool(0.5)
        };
        if flip {
            bit = !bit;
        }
        s.push(if bit { '1' } else { '0' });
    }
    s
}

/// Tail-aware distance exponent computed by expanding both strings far
/// enough to settle the comparison. `None` means equal sequences.
pub fn naive_metric(a: &str, b: &str) -> Option<usize> {
    let expand = |s: &str, len: usize| -> Vec<char> {
        let tail = if s.ends_with('0') { '1' } else { '0' };
        s.chars().chain(std::iter::repeat(tail)).take(len).collect()
    };
    let horizon = a.len().max(b.len()) + 2;
    let (x, y) = (expand(a, horizon), expand(b, horizon));
    x.iter().zip(&y).position(|(p, q)| p != q).map(|i| i + 1)
}
