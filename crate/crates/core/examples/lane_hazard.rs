//! Why a batch may hold at most min(s, r - s) terms.
//!
//! Term k of a batch starting at x_i reads x_{i+k-r} and x_{i+k-s} and
//! overwrites the slot of x_{i+k-r}. With more than s lanes some term needs
//! an x_{i+k-s} that is produced in the same batch. With more than r - s
//! lanes, lane k + (r - s) overwrites the slot holding x_{i+k-s} before lane
//! k has read it. For (128, 65) the second limit is 63.

use xorgensgp::parallel::in_place_terms;
use xorgensgp::{Xorgens, XORGENS_GP_32};

fn mismatches(lanes: usize) -> Vec<usize> {
    let start = Xorgens::seed(XORGENS_GP_32, 1).unwrap();
    let mut serial = start.clone();
    let want: Vec<u64> = (0..lanes).map(|_| serial.step_linear()).collect();
    // the worst schedule for an unsynchronised batch: highest lane first
    let order: Vec<usize> = (0..lanes).rev().collect();
    let got = in_place_terms(&mut start.clone(), &order);
    (0..lanes).filter(|&k| got[k] != want[k]).collect()
}

fn main() {
    let p = XORGENS_GP_32;
    println!(
        "r = {}, s = {}, lane bound = min(s, r - s) = {}",
        p.r,
        p.s,
        p.lane_bound()
    );
    for lanes in [32, 62, 63, 64, 65, 80] {
        let bad = mismatches(lanes);
        if bad.is_empty() {
            println!("{lanes:>3} lanes: matches serial");
        } else {
            println!("{lanes:>3} lanes: wrong terms at lanes {bad:?}");
        }
    }
}
