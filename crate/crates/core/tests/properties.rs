mod common;

use common::{naive_knave, naive_looksay2, naive_metric};
use look_knave::bitcore::concat_runs;
use look_knave::dynamics::leading_ribbit_descent;
use look_knave::{
    decompose_runs, knave_step, knave_stream, lcp, looksay_step_binary, metric, numeral, parse,
};
use look_knave::{ribbit_extend, BitString, Distance, Numeral};
use proptest::prelude::*;

fn bits(max_len: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('0'), Just('1')], 1..=max_len)
        .prop_map(|v| v.into_iter().collect())
}

/// Strings built from runs, so long runs and wide numerals are common.
fn run_heavy(max_runs: usize) -> impl Strategy<Value = String> {
    (
        any::<bool>(),
        proptest::collection::vec(1usize..300, 1..=max_runs),
    )
        .prop_map(|(first, lens)| {
            let mut s = String::new();
            let mut bit = first;
            for n in lens {
                s.extend(std::iter::repeat_n(if bit { '1' } else { '0' }, n));
                bit = !bit;
            }
            s
        })
}

proptest! {
    #[test]
    fn runs_round_trip(s in prop_oneof![bits(512), run_heavy(20)]) {
        let b = parse(&s).unwrap();
        let runs = decompose_runs(&b).unwrap();
        prop_assert!(runs.iter().all(|r| r.len >= 1));
        prop_assert!(runs.windows(2).all(|w| w[0].bit != w[1].bit));
        prop_assert_eq!(concat_runs(&runs), b);
    }

    #[test]
    fn text_round_trip(s in bits(512)) {
        prop_assert_eq!(parse(&s).unwrap().to_string(), s);
    }

    #[test]
    fn numeral_round_trip(n in 1u64..=1_000_000) {
        let num = numeral(n).unwrap();
        prop_assert_eq!(num.to_string(), format!("{n:b}"));
        prop_assert_eq!(Numeral::from_bits(&num.to_bit_string()).unwrap().value(), n);
    }

    #[test]
    fn lcp_matches_char_scan(a in bits(300), b in bits(300)) {
        let expect = a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count();
        prop_assert_eq!(lcp(&parse(&a).unwrap(), &parse(&b).unwrap()), expect);
    }

    #[test]
    fn metric_matches_expansion(a in bits(200), b in bits(200)) {
        let d = metric(&parse(&a).unwrap(), &parse(&b).unwrap());
        prop_assert_eq!(d.exponent(), naive_metric(&a, &b));
    }

    #[test]
    fn metric_is_an_ultrametric(a in bits(100), b in bits(100), c in bits(100)) {
        let (a, b, c) = (parse(&a).unwrap(), parse(&b).unwrap(), parse(&c).unwrap());
        prop_assert_eq!(metric(&a, &a), Distance::Equal);
        prop_assert_eq!(metric(&a, &b), metric(&b, &a));
        prop_assert!(metric(&a, &c) <= metric(&a, &b).max(metric(&b, &c)));
        if a != b {
            prop_assert!(metric(&a, &b) != Distance::Equal);
        }
    }

    #[test]
    fn ribbit_extend_completes_a_run(s in bits(200), frac in 0.0f64..1.0) {
        let b = parse(&s).unwrap();
        let l = 1 + ((b.len() - 1) as f64 * frac) as usize;
        let r = ribbit_extend(&b, l).unwrap();
        prop_assert!(r.len() >= l);
        prop_assert!(b.starts_with(&r));
        prop_assert!(r.len() == b.len() || b.get(r.len()) != b.get(r.len() - 1));
    }

    #[test]
    fn knave_matches_naive(s in prop_oneof![bits(512), run_heavy(20)]) {
        prop_assert_eq!(knave_step(&parse(&s).unwrap()).unwrap().to_string(), naive_knave(&s));
    }

    #[test]
    fn knave_starts_with_one_and_flips_last_bit(s in bits(512)) {
        let b = parse(&s).unwrap();
        let k = knave_step(&b).unwrap();
        prop_assert_eq!(k.first(), Some(true));
        prop_assert_eq!(k.last(), b.last().map(|x| !x));
    }

    #[test]
    fn stream_equals_batch(s in prop_oneof![bits(512), run_heavy(10)]) {
        let b = parse(&s).unwrap();
        let streamed: Result<Vec<bool>, _> = knave_stream(b.iter().map(u8::from)).collect();
        prop_assert_eq!(BitString::from_bools(streamed.unwrap()), knave_step(&b).unwrap());
    }

    #[test]
    fn looksay2_matches_naive(s in bits(256)) {
        prop_assert_eq!(looksay_step_binary(&parse(&s).unwrap()).unwrap().to_string(), naive_looksay2(&s));
    }

    #[test]
    fn single_run_descriptions_differ_in_the_last_bit(bit in any::<bool>(), n in 1usize..5000) {
        let run = BitString::from_bools(std::iter::repeat_n(bit, n));
        let say = looksay_step_binary(&run).unwrap();
        let knave = knave_step(&run).unwrap();
        prop_assert_eq!(say.len(), knave.len());
        prop_assert_eq!(say.prefix(say.len() - 1), knave.prefix(knave.len() - 1));
        prop_assert_eq!(say.last(), Some(bit));
        prop_assert_eq!(knave.last(), Some(!bit));
    }

    #[test]
    fn leading_ribbit_descends(s in bits(256)) {
        prop_assert!(leading_ribbit_descent(&parse(&s).unwrap()).unwrap().holds());
    }
}
