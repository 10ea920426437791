//! Berlekamp-Massey on the least significant bit.
//!
//! Bit 0 of the linear recurrence is an LFSR sequence of degree at most r*w.
//! Integer addition of the Weyl term leaves bit 0 as a plain XOR, but the
//! term (w ^ (w >> gamma)) brings in bit gamma of the Weyl sequence, whose
//! complexity is about 2^gamma.

use xorgensgp::stattests::berlekamp_massey;
use xorgensgp::{tiny_set, GeneratorParams, Xorgens, XORGENS_GP_32};

fn report(name: &str, p: GeneratorParams) {
    let rw = p.r * p.w as usize;
    let n = 4 * rw;
    let mut g = Xorgens::seed(p, 5).unwrap();
    let raw: Vec<bool> = (0..n).map(|_| g.step_linear() & 1 == 1).collect();
    let mut g = Xorgens::seed(p, 5).unwrap();
    let out: Vec<bool> = (0..n).map(|_| g.next_word() & 1 == 1).collect();
    println!(
        "{name:<12} rw = {rw:<5} over {n} bits: linear part {:<5} output {}",
        berlekamp_massey(&raw),
        berlekamp_massey(&out)
    );
}

fn main() {
    for name in ["r2w8", "r3w8", "r4w16"] {
        report(name, tiny_set(name).unwrap().params);
    }
    report("xorgensgp32", XORGENS_GP_32);
}
