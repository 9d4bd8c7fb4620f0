//! Feeds bits one at a time through the streaming Knave and compares the
//! result with the batch map.

use look_knave::knave::KnaveStream;
use look_knave::{knave_step, parse, BitString};

fn main() -> look_knave::Result<()> {
    let input = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "0001111100100".to_string());
    let bits = parse(&input)?;

    let mut stream = KnaveStream::new();
    let mut out = Vec::new();
    for b in bits.iter() {
        let before = out.len();
        stream.feed(u8::from(b), &mut out)?;
        if out.len() > before {
            let emitted: String = out[before..].iter().map(|&x| if x { '1' } else { '0' }).collect();
            println!("after bit {}: emitted {emitted}", u8::from(b));
        }
    }
    stream.finish(&mut out);

    let streamed = BitString::from_bools(out);
    let batch = knave_step(&bits)?;
    println!("stream {streamed}");
    println!("batch  {batch}");
    assert_eq!(streamed, batch);
    Ok(())
}
