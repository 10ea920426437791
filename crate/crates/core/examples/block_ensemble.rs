//! Two-level parallelism: p independent blocks, each evaluating up to
//! min(s, r-s) = 63 terms per batch. The output is checked against serial
//! generators seeded base, base+1, ...
//!
//!     cargo run --release --example block_ensemble -- 64 63

use std::time::Instant;
use xorgensgp::parallel::BlockEnsemble;
use xorgensgp::{Xorgens, XORGENS_GP_32};

fn main() {
    let mut args = std::env::args().skip(1);
    let blocks: usize = args.next().map_or(64, |s| s.parse().unwrap());
    let lanes: usize = args.next().map_or(63, |s| s.parse().unwrap());
    let per_block = 1 << 16;
    let base_seed = 2026;

    let mut ensemble = match BlockEnsemble::new(XORGENS_GP_32, base_seed, blocks, lanes) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let mut out = vec![0u64; blocks * per_block];
    let start = Instant::now();
    ensemble.generate_into(&mut out).unwrap();
    let secs = start.elapsed().as_secs_f64();
    println!(
        "{blocks} blocks x {per_block} words, {lanes} lanes: {:.3e} RN/s on {} threads",
        out.len() as f64 / secs,
        rayon::current_num_threads()
    );

    for (i, chunk) in out.chunks(per_block).enumerate() {
        let mut serial = Xorgens::seed(XORGENS_GP_32, base_seed + i as u64).unwrap();
        assert!(chunk.iter().all(|&v| v == serial.next_word()), "block {i}");
    }
    println!("every block matches its serial stream");
}
