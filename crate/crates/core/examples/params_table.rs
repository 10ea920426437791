//! Parameter sets, their lane bounds, footprints and nominal periods.

use xorgensgp::{GeneratorParams, ParamError, TINY_SETS, XORGENS_GP_32};

fn row(name: &str, p: &GeneratorParams, verified: Option<u64>) {
    println!(
        "{name:<12} ({:>3},{:>2},{:>2},{:>2},{:>2},{:>2}) w={:<2} gamma={:<2} omega={:<#10x} lanes={:<2} state={:<3} period={:<10} {}",
        p.r, p.s, p.a, p.b, p.c, p.d, p.w, p.gamma, p.omega,
        p.lane_bound(),
        p.state_words(),
        p.period().display,
        verified.map_or(String::new(), |l| format!("linear period verified: {l}"))
    );
}

fn main() {
    row("xorgensgp32", &XORGENS_GP_32, None);
    for set in TINY_SETS {
        row(set.name, &set.params, set.linear_period);
    }

    // rejected sets
    for (r, s) in [(128, 64), (5, 5), (6, 4)] {
        let err: ParamError = GeneratorParams::new(r, s, [1, 1, 1, 1], 32).unwrap_err();
        println!("(r, s) = ({r}, {s}): {err}");
    }
}
