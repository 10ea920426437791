//! Seed xorgensGP-32 and print its first outputs, from both the runtime
//! generator and the const-generic one.
//!
//!     cargo run --example serial_stream -- 42

use xorgensgp::{Xorgens, XorgensGp32, XORGENS_GP_32};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(0, |s| s.parse().expect("seed"));
    let mut runtime = Xorgens::seed(XORGENS_GP_32, seed).unwrap();
    let mut fixed = XorgensGp32::seed(seed);

    println!("{XORGENS_GP_32}");
    for i in 0..8 {
        let a = runtime.next_word();
        let b = fixed.next_u32();
        assert_eq!(a, b as u64);
        println!("{i:>2}  {a:08x}");
    }

    // A uniform double from two words.
    let hi = runtime.next_word() >> 5;
    let lo = runtime.next_word() >> 6;
    let u = (hi as f64 * 67108864.0 + lo as f64) / 9007199254740992.0;
    println!("uniform in [0,1): {u}");
}
