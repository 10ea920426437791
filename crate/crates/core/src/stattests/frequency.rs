use super::bits::BitSeq;
use super::pvalue::normal_pvalue;
use super::{TestError, TestResult};

const MIN_BITS: usize = 100;

fn check_len(test: &'static str, bits: &BitSeq) -> Result<(), TestError> {
    if bits.len() < MIN_BITS {
        return Err(TestError::InsufficientInput {
            test,
            needed: MIN_BITS as u64,
            got: bits.len() as u64,
            unit: "bits",
        });
    }
    Ok(())
}

/// Frequency test. With `S = sum(2 b_i - 1)`, the statistic is `|S| / sqrt n`
/// and `p = erfc(|S| / sqrt(2n))`.
pub fn monobit(bits: &BitSeq) -> Result<TestResult, TestError> {
    check_len("monobit", bits)?;
    let n = bits.len() as f64;
    let ones = bits.count_ones() as f64;
    let s = 2.0 * ones - n;
    let stat = s.abs() / n.sqrt();
    Ok(TestResult::new(
        "monobit",
        bits.len() as u64,
        stat,
        normal_pvalue(stat),
    ))
}

/// Runs test. Not applicable when the proportion of ones is at least
/// `2 / sqrt n` away from one half, since the monobit test already fails.
pub fn runs_test(bits: &BitSeq) -> Result<TestResult, TestError> {
    check_len("runs", bits)?;
    let n = bits.len() as f64;
    let pi = bits.count_ones() as f64 / n;
    let runs = bits.transitions() as f64 + 1.0;
    if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
        return Ok(TestResult::not_applicable("runs", bits.len() as u64, runs));
    }
    let spread = pi * (1.0 - pi);
    let z = (runs - 2.0 * n * spread) / (2.0 * n.sqrt() * spread);
    Ok(TestResult::new(
        "runs",
        bits.len() as u64,
        runs,
        normal_pvalue(z),
    ))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::stattests::Verdict;

    fn alternating(n: usize) -> BitSeq {
        BitSeq::from_bools(&(0..n).map(|i| i % 2 == 1).collect::<Vec<_>>())
    }

    /// 1000 bits, MSB first per hex digit. Reference values from a
    /// 25-digit evaluation: S = 20, V = 507.
    const COMMITTED: &str = "2457edff6295553c6d8991467f866827788a56d5572a71b60565396b9c7d42786d7b078da53421d850bfcfc6b404bf910d421d97596bea9a5f603fdace207daf11afca2f0044f24eef29a66925e24927835bb7b910791ec4a7438b1bf4c1052f06db1ff97de93b6c5e78d8af6d5562998243affd905bc2286a0962537c";

    #[test]
    fn committed_vector() {
        let bits = BitSeq::from_hex(COMMITTED).unwrap();
        assert_eq!(bits.len(), 1000);
        let m = monobit(&bits).unwrap();
        assert!((m.statistic - 20.0 / 1000f64.sqrt()).abs() < 1e-12);
        assert!((m.p_value.unwrap() - 0.527_089_256_865_538_085_1).abs() < 1e-12);
        let r = runs_test(&bits).unwrap();
        assert_eq!(r.statistic, 507.0);
        assert!((r.p_value.unwrap() - 0.648_713_458_838_867_634_2).abs() < 1e-12);
    }

    #[test]
    fn balanced_sequence() {
        let r = monobit(&alternating(10_000)).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, Some(1.0));
    }

    #[test]
    fn all_ones() {
        let r = monobit(&BitSeq::from_bools(&[true; 100])).unwrap();
        assert!(r.p_value.unwrap() < 1e-20);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            monobit(&BitSeq::from_bools(&[true; 99])),
            Err(TestError::InsufficientInput { .. })
        ));
        assert!(runs_test(&BitSeq::from_bools(&[true; 10])).is_err());
    }

    #[test]
    fn runs_on_alternating_bits() {
        let r = runs_test(&alternating(10_000)).unwrap();
        assert_eq!(r.statistic, 10_000.0);
        assert!(r.p_value.unwrap() < 1e-100);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn runs_on_constant_bits() {
        let r = runs_test(&BitSeq::from_bools(&[false; 1000])).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.p_value, None);
    }
}
