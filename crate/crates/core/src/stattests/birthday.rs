use super::bits::BitSeq;
use super::{TestError, TestResult};
use statrs::function::gamma::{gamma_lr, ln_gamma};

/// `P(Y >= y)` for `Y ~ Poisson(lambda)`.
pub fn poisson_upper_tail(y: u64, lambda: f64) -> f64 {
    if y == 0 {
        return 1.0;
    }
    // P(Y >= y) equals the regularized lower incomplete gamma P(y, lambda)
    gamma_lr(y as f64, lambda).clamp(0.0, 1.0)
}

fn poisson_pmf(y: u64, lambda: f64) -> f64 {
    (y as f64 * lambda.ln() - lambda - ln_gamma(y as f64 + 1.0)).exp()
}

/// Expected duplicate spacings per sample: `n^3 / 2^(t + 2)`.
pub fn birthday_lambda(n_draws: usize, t_bits: u32) -> f64 {
    (n_draws as f64).powi(3) / 2f64.powi(t_bits as i32 + 2)
}

/// Birthday spacings test.
///
/// Each sample draws `n_draws` values of `t_bits` bits, sorts them and forms
/// the `n_draws` spacings between neighbours (including the wrap-around one).
/// `Y` counts spacings equal to an earlier spacing. Summed over `samples`,
/// `Y` is approximately Poisson with mean `samples * lambda`. The p-value is
/// the mid-p upper tail `P(Y > y) + P(Y = y) / 2`, so an ordinary count near
/// the mean never lands on exactly 0 or 1.
pub fn birthday_spacings(
    bits: &BitSeq,
    n_draws: usize,
    t_bits: u32,
    samples: usize,
) -> Result<TestResult, TestError> {
    if !(1..=63).contains(&t_bits) || n_draws < 2 || samples == 0 {
        return Err(TestError::InvalidParameter(format!(
            "birthday spacings with n = {n_draws}, t = {t_bits}, samples = {samples}"
        )));
    }
    let lambda = birthday_lambda(n_draws, t_bits);
    if !(1.0..=16.0).contains(&lambda) {
        return Err(TestError::InvalidParameter(format!(
            "lambda = n^3 / 2^(t+2) = {lambda} outside [1, 16]"
        )));
    }
    let per_sample = n_draws * t_bits as usize;
    let needed = per_sample * samples;
    if bits.len() < needed {
        return Err(TestError::InsufficientInput {
            test: "birthday-spacings",
            needed: needed as u64,
            got: bits.len() as u64,
            unit: "bits",
        });
    }
    let range = 1u64 << t_bits;
    let mut values = vec![0u64; n_draws];
    let mut spacings = vec![0u64; n_draws];
    let mut total = 0u64;
    for s in 0..samples {
        let base = s * per_sample;
        for (i, v) in values.iter_mut().enumerate() {
            *v = bits.bits_at(base + i * t_bits as usize, t_bits);
        }
        values.sort_unstable();
        for i in 0..n_draws - 1 {
            spacings[i] = values[i + 1] - values[i];
        }
        spacings[n_draws - 1] = range - values[n_draws - 1] + values[0];
        spacings.sort_unstable();
        total += spacings.windows(2).filter(|p| p[0] == p[1]).count() as u64;
    }
    let mean = lambda * samples as f64;
    let p = poisson_upper_tail(total, mean) - 0.5 * poisson_pmf(total, mean);
    Ok(TestResult::new(
        format!("birthday-spacings-n{n_draws}-t{t_bits}"),
        needed as u64,
        total as f64,
        p,
    ))
}
