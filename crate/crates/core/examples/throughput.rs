//! Throughput in RN/s for the registered generators, printed as a table.
//!
//!     cargo run --release --example throughput -- 100000000

use xorgensgp::baselines::{Mt19937, Xorwow};
use xorgensgp::bench::{
    compare, measure_ensemble_throughput, measure_throughput, GeneratorSummary,
};
use xorgensgp::{WordSource, XorgensGp32, XORGENS_GP_32};

fn main() {
    let count: usize = std::env::args()
        .nth(1)
        .map_or(20_000_000, |s| s.parse().unwrap());
    let rows: Vec<(&str, usize, String, Box<dyn WordSource>)> = vec![
        (
            "xorgensGP",
            XORGENS_GP_32.state_words(),
            XORGENS_GP_32.period().display,
            Box::new(XorgensGp32::seed(0)),
        ),
        (
            "XORWOW",
            Xorwow::STATE_WORDS,
            Xorwow::PERIOD.into(),
            Box::new(Xorwow::seed(0)),
        ),
        (
            "MT19937",
            Mt19937::STATE_WORDS,
            Mt19937::PERIOD.into(),
            Box::new(Mt19937::new(5489)),
        ),
    ];
    let mut summary = Vec::new();
    for (name, state_words, period, mut gen) in rows {
        let r = measure_throughput(name, &mut gen, count, 5).unwrap();
        println!(
            "{name}: cv {:.1}%, checksum {:#x}",
            100.0 * r.cv,
            r.checksum
        );
        summary.push(GeneratorSummary {
            generator: name.into(),
            state_words,
            period,
            rn_per_sec: Some(r.mean),
        });
    }
    println!("\n{}", compare(&summary));

    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    for blocks in [1, 4, cores] {
        let r = measure_ensemble_throughput(XORGENS_GP_32, 0, blocks, 63, count, 3).unwrap();
        println!("{}: {:.3e} RN/s", r.generator, r.mean);
    }
}
