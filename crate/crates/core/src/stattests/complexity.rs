use super::bits::BitSeq;
use super::pvalue::chi_square_pvalue;
use super::{TestError, TestResult};

/// Length of the shortest LFSR that generates `bits` (its linear complexity
/// over GF(2)).
pub fn berlekamp_massey(bits: &[bool]) -> usize {
    let n = bits.len();
    let mut c = vec![false; n + 1];
    let mut b = vec![false; n + 1];
    c[0] = true;
    b[0] = true;
    let mut l = 0usize;
    let mut shift = 1usize;
    for i in 0..n {
        let mut d = bits[i];
        for j in 1..=l {
            d ^= c[j] & bits[i - j];
        }
        if !d {
            shift += 1;
            continue;
        }
        let prev = c.clone();
        for j in 0..=n - shift {
            c[j + shift] ^= b[j];
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    l
}

/// Berlekamp-Massey on `bits[start..start + len]` with connection polynomials
/// packed 64 coefficients to a word.
pub fn linear_complexity(bits: &BitSeq, start: usize, len: usize) -> usize {
    assert!(start + len <= bits.len());
    let nw = len / 64 + 2;
    // rev bit j = s[len - 1 - j], LSB-first within words
    let mut rev = vec![0u64; nw + 1];
    for j in 0..len {
        if bits.get(start + len - 1 - j) {
            rev[j / 64] |= 1 << (j % 64);
        }
    }
    let window = |off: usize, k: usize| -> u64 {
        let q = off / 64 + k;
        let sh = off % 64;
        if sh == 0 {
            rev[q]
        } else {
            (rev[q] >> sh) | (rev[q + 1] << (64 - sh))
        }
    };

    let mut c = vec![0u64; nw];
    let mut b = vec![0u64; nw];
    let mut t = vec![0u64; nw];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    for i in 0..len {
        // d = sum_{j=0..=l} c_j s_{i-j}, and s_{i-j} = rev bit (len-1-i+j)
        let off = len - 1 - i;
        let mut acc = 0u64;
        for (k, &ck) in c[..=l / 64].iter().enumerate() {
            acc ^= ck & window(off, k);
        }
        if acc.count_ones() & 1 == 0 {
            shift += 1;
            continue;
        }
        let update_len = 2 * l <= i;
        if update_len {
            t.copy_from_slice(&c);
        }
        let (ws, bs) = (shift / 64, shift % 64);
        for k in (ws..nw).rev() {
            let lo = b[k - ws] << bs;
            let hi = if bs != 0 && k > ws {
                b[k - ws - 1] >> (64 - bs)
            } else {
                0
            };
            c[k] ^= lo | hi;
        }
        if update_len {
            l = i + 1 - l;
            std::mem::swap(&mut b, &mut t);
            shift = 1;
        } else {
            shift += 1;
        }
    }
    l
}

/// Asymptotic probabilities of the seven bins of `T = (-1)^K (L - mu) + 2/9`:
/// `T <= -2.5`, then unit-width bins up to `T > 2.5`.
const BIN_PROBS: [f64; 7] = [
    1.0 / 96.0,
    1.0 / 32.0,
    1.0 / 8.0,
    1.0 / 2.0,
    1.0 / 4.0,
    1.0 / 16.0,
    1.0 / 48.0,
];

pub const MIN_BLOCKS: usize = 38;

/// Expected linear complexity of a random `k`-bit block.
fn expected_complexity(k: usize) -> f64 {
    let kf = k as f64;
    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 }; // (-1)^(k+1)
    kf / 2.0 + (9.0 + sign) / 36.0 - (kf / 3.0 + 2.0 / 9.0) / 2f64.powi(k.min(1000) as i32)
}

/// Linear complexity test over `num_blocks` consecutive blocks of
/// `block_len` bits; chi-square with six degrees of freedom.
pub fn linear_complexity_test(
    bits: &BitSeq,
    block_len: usize,
    num_blocks: usize,
) -> Result<TestResult, TestError> {
    if block_len < 2 {
        return Err(TestError::InvalidParameter(format!(
            "block length {block_len} too short"
        )));
    }
    if num_blocks < MIN_BLOCKS {
        return Err(TestError::InsufficientInput {
            test: "linear-complexity",
            needed: MIN_BLOCKS as u64,
            got: num_blocks as u64,
            unit: "blocks",
        });
    }
    let needed = block_len * num_blocks;
    if bits.len() < needed {
        return Err(TestError::InsufficientInput {
            test: "linear-complexity",
            needed: needed as u64,
            got: bits.len() as u64,
            unit: "bits",
        });
    }
    let mu = expected_complexity(block_len);
    let parity = if block_len.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let mut counts = [0u64; 7];
    for blk in 0..num_blocks {
        let l = linear_complexity(bits, blk * block_len, block_len) as f64;
        let t = parity * (l - mu) + 2.0 / 9.0;
        let bin = if t <= -2.5 {
            0
        } else if t > 2.5 {
            6
        } else {
            // bins (-2.5,-1.5], ..., (1.5,2.5]
            ((t + 2.5).ceil() as usize).clamp(1, 5)
        };
        counts[bin] += 1;
    }
    let n = num_blocks as f64;
    let chi2: f64 = counts
        .iter()
        .zip(BIN_PROBS)
        .map(|(&obs, p)| (obs as f64 - n * p).powi(2) / (n * p))
        .sum();
    let p = chi_square_pvalue(chi2, 6)?;
    Ok(TestResult::new(
        format!("linear-complexity-{block_len}"),
        needed as u64,
        chi2,
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stattests::Verdict;
    use proptest::prelude::*;

    /// Shortest LFSR by trying every connection polynomial of each length.
    fn brute_force(bits: &[bool]) -> usize {
        let n = bits.len();
        for l in 0..n {
            for taps in 0u32..(1 << l) {
                let ok = (l..n).all(|i| {
                    let mut v = false;
                    for j in 1..=l {
                        if taps >> (j - 1) & 1 == 1 {
                            v ^= bits[i - j];
                        }
                    }
                    v == bits[i]
                });
                if ok {
                    return l;
                }
            }
        }
        n
    }

    fn parse(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(berlekamp_massey(&[false; 20]), 0);
        assert_eq!(berlekamp_massey(&[]), 0);
        for n in 1..=12 {
            let mut impulse = vec![false; n];
            impulse[0] = true;
            assert_eq!(berlekamp_massey(&impulse), brute_force(&impulse));
            assert_eq!(berlekamp_massey(&impulse), 1);
            let mut late = vec![false; n];
            late[n - 1] = true;
            assert_eq!(berlekamp_massey(&late), n);
        }
        let v = parse("11010001");
        assert_eq!(berlekamp_massey(&v), brute_force(&v));
    }

    #[test]
    fn block_bins() {
        // bins must partition the line at the half-integers
        let bin = |t: f64| -> usize {
            if t <= -2.5 {
                0
            } else if t > 2.5 {
                6
            } else {
                ((t + 2.5).ceil() as usize).clamp(1, 5)
            }
        };
        assert_eq!(bin(-2.5), 0);
        assert_eq!(bin(-2.4), 1);
        assert_eq!(bin(-1.5), 1);
        assert_eq!(bin(-0.5), 2);
        assert_eq!(bin(0.0), 3);
        assert_eq!(bin(0.5), 3);
        assert_eq!(bin(1.5), 4);
        assert_eq!(bin(2.5), 5);
        assert_eq!(bin(2.6), 6);
        assert!((BIN_PROBS.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_zero_stream_fails() {
        let bits = BitSeq::from_bools(&vec![false; 500 * 40]);
        let r = linear_complexity_test(&bits, 500, 40).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn rejects_short_input() {
        let bits = BitSeq::from_bools(&vec![false; 1000]);
        assert!(linear_complexity_test(&bits, 500, 38).is_err());
        assert!(linear_complexity_test(&bits, 10, 37).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(bits in proptest::collection::vec(any::<bool>(), 0..=16)) {
            prop_assert_eq!(berlekamp_massey(&bits), brute_force(&bits));
        }

        #[test]
        fn packed_matches_plain(bits in proptest::collection::vec(any::<bool>(), 1..300),
                                skip in 0usize..70) {
            let skip = skip.min(bits.len() - 1);
            let seq = BitSeq::from_bools(&bits);
            prop_assert_eq!(
                linear_complexity(&seq, skip, bits.len() - skip),
                berlekamp_massey(&bits[skip..])
            );
        }

        #[test]
        fn sparse_sequences(ones in proptest::collection::vec(0usize..200, 0..4)) {
            let mut bits = vec![false; 200];
            for i in ones { bits[i] = true; }
            let seq = BitSeq::from_bools(&bits);
            prop_assert_eq!(linear_complexity(&seq, 0, 200), berlekamp_massey(&bits));
        }
    }
}
