//! Exhaustive period measurement for parameter sets small enough to iterate.

use crate::xorgens::Xorgens;

fn matches_history(gen: &Xorgens, start: &[u64]) -> bool {
    let x = gen.buffer();
    let r = x.len();
    let idx = gen.index();
    x[idx] == start[0] && (1..r).all(|j| x[(idx + j) % r] == start[j])
}

/// Number of `step_linear` calls until the buffer contents (oldest to
/// newest) first repeat, or `None` if that takes more than `limit` steps.
pub fn linear_period(start: &Xorgens, limit: u64) -> Option<u64> {
    let history = start.history();
    let mut gen = start.clone();
    (1..=limit).find(|_| {
        gen.step_linear();
        matches_history(&gen, &history)
    })
}

/// Number of `next_word` calls until buffer and Weyl accumulator both repeat.
pub fn state_period(start: &Xorgens, limit: u64) -> Option<u64> {
    let history = start.history();
    let weyl = start.weyl();
    let mut gen = start.clone();
    (1..=limit).find(|_| {
        gen.next_word();
        gen.weyl() == weyl && matches_history(&gen, &history)
    })
}

/// Distinct prime factors of `n`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `period` is the least period of the output stream of `start`,
/// given that the state (and hence the output) repeats after `period` steps.
///
/// The least period divides `period`, so it suffices that no `period / q`
/// is a period for each prime `q` dividing it. Stores one full period of
/// outputs; only meant for `w <= 32` and periods of a few million.
pub fn is_least_output_period(start: &Xorgens, period: u64) -> bool {
    assert!(start.params().w <= 32, "outputs are stored as u32");
    let n = usize::try_from(period).expect("period fits in memory");
    let mut gen = start.clone();
    let out: Vec<u32> = (0..n).map(|_| gen.next_word() as u32).collect();
    prime_factors(period).into_iter().all(|q| {
        let shift = n / q as usize;
        (0..n).any(|k| out[k] != out[(k + shift) % n])
    })
}
