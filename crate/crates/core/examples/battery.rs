//! Run the statistical battery on several generators and print a verdict
//! table. The optional argument is the bit budget per test (default 10^7).
//!
//!     cargo run --release --example battery -- 100000000

use xorgensgp::baselines::{Mt19937, RawXorgens, Xorwow};
use xorgensgp::stattests::{run_battery, BatteryConfig, GeneratorInfo};
use xorgensgp::{tiny_set, WordStream, XorgensGp32, XORGENS_GP_32};

fn main() {
    let budget: usize = std::env::args()
        .nth(1)
        .map_or(10_000_000, |s| s.parse().unwrap());
    let config = BatteryConfig::with_budget(budget);
    let r2w8 = tiny_set("r2w8").unwrap().params;
    let r2w16 = tiny_set("r2w16").unwrap().params;

    let mut sources: Vec<(&str, Box<dyn WordStream>)> = vec![
        ("xorgensgp32", Box::new(XorgensGp32::seed(0))),
        ("xorwow", Box::new(Xorwow::seed(0))),
        ("mt19937", Box::new(Mt19937::new(5489))),
        (
            "xorgens-raw",
            Box::new(RawXorgens::seed(XORGENS_GP_32, 0).unwrap()),
        ),
        (
            "tiny:r2w8-raw",
            Box::new(RawXorgens::seed(r2w8, 0).unwrap()),
        ),
        (
            "tiny:r2w16-raw",
            Box::new(RawXorgens::seed(r2w16, 0).unwrap()),
        ),
    ];

    println!("{} bits per test\n", budget);
    for (name, source) in &mut sources {
        let info = GeneratorInfo {
            generator: name.to_string(),
            params: None,
            seed: Some(0),
        };
        let report = run_battery(source.as_mut(), info, &config).unwrap();
        println!("{name}: {}", report.overall.as_str());
        for t in &report.tests {
            let p = t.p_value.map_or("-".to_string(), |p| format!("{p:.3e}"));
            println!("    {:<28} p = {:<10} {}", t.name, p, t.verdict.as_str());
        }
    }
}
