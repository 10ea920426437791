//! Exhaustive periods for the small parameter sets: the linear part cycles
//! through all 2^(rw) - 1 nonzero buffers, and the Weyl stage multiplies the
//! output period by 2^w.
//!
//!     cargo run --release --example tiny_period

use xorgensgp::period::{is_least_output_period, linear_period, prime_factors, state_period};
use xorgensgp::{Xorgens, TINY_SETS};

fn main() {
    for set in TINY_SETS {
        let p = set.params;
        let rw = p.r as u32 * p.w;
        if rw > 24 {
            println!("{:<6} rw = {rw}: too large to iterate here", set.name);
            continue;
        }
        let gen = Xorgens::seed(p, 0).unwrap();
        let linear = linear_period(&gen, 1 << (rw + 1)).expect("period within bound");
        println!(
            "{:<6} linear period {linear} (2^{rw} - 1 = {})",
            set.name,
            (1u64 << rw) - 1
        );
        if rw + p.w <= 24 {
            let full = state_period(&gen, linear << p.w).expect("state repeats");
            let least = is_least_output_period(&gen, full);
            println!(
                "       output period {full} = {linear} * 2^{}, least: {least}, prime factors {:?}",
                p.w,
                prime_factors(full)
            );
        }
    }
}
