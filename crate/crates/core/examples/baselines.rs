//! The comparison generators and their known answers.

use xorgensgp::baselines::{Mt19937, RawXorgens, Xorwow};
use xorgensgp::parallel::mt_parallel_bound;
use xorgensgp::{Xorgens, XORGENS_GP_32};

fn main() {
    let mut mt = Mt19937::new(5489);
    let first = mt.next_u32();
    let last = (1..10_000).map(|_| mt.next_u32()).last().unwrap();
    println!("MT19937(5489): first {first}, 10000th {last}");
    println!(
        "MT19937 state {} words, period {}, {} elements computable at once",
        Mt19937::STATE_WORDS,
        Mt19937::PERIOD,
        mt_parallel_bound(Mt19937::N, Mt19937::M).unwrap()
    );

    let mut xw = Xorwow::marsaglia();
    let head: Vec<u32> = (0..4).map(|_| xw.next_u32()).collect();
    println!(
        "XORWOW (Marsaglia's initial values): {head:?}, state {} words, period {}",
        Xorwow::STATE_WORDS,
        Xorwow::PERIOD
    );

    // Same buffer, with and without the Weyl stage.
    let mut full = Xorgens::seed(XORGENS_GP_32, 1).unwrap();
    let mut raw = RawXorgens::from_state(full.clone());
    for _ in 0..4 {
        let x = raw.next_raw();
        let y = full.next_word();
        println!(
            "x_k {x:08x}  output {y:08x}  difference {:08x}",
            y.wrapping_sub(x) & 0xFFFF_FFFF
        );
    }
}
