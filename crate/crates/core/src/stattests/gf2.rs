use super::bits::BitSeq;
use super::pvalue::chi_square_pvalue;
use super::{TestError, TestResult};

/// A dense matrix over GF(2) with at most 64 columns. Column `j` of a row is
/// bit `cols - 1 - j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(rows: Vec<u64>, cols: usize) -> Self {
        assert!((1..=64).contains(&cols), "1..=64 columns supported");
        let mask = u64::MAX >> (64 - cols);
        assert!(
            rows.iter().all(|r| r & !mask == 0),
            "row wider than {cols} columns"
        );
        Self { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| 1u64 << (n - 1 - i)).collect(), n)
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        gf2_rank(self)
    }
}

/// Rank over GF(2) by Gaussian elimination.
pub fn gf2_rank(m: &BitMatrix) -> usize {
    eliminate(&mut m.rows.clone(), m.cols)
}

/// Reduces `rows` in place and returns the rank.
fn eliminate(rows: &mut [u64], cols: usize) -> usize {
    let mut rank = 0;
    for col in (0..cols).rev() {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & bit != 0 {
                *row ^= p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Probabilities that a uniformly random `m x m` matrix over GF(2) has rank
/// `m`, `m - 1`, and at most `m - 2`.
pub fn rank_probabilities(m: usize) -> [f64; 3] {
    let p = |r: usize| -> f64 {
        let mut prob = 2f64.powi((r * (2 * m - r)) as i32 - (m * m) as i32);
        for i in 0..r {
            let num = 1.0 - 2f64.powi(i as i32 - m as i32);
            let den = 1.0 - 2f64.powi(i as i32 - r as i32);
            prob *= num * num / den;
        }
        prob
    };
    let full = p(m);
    let deficient = if m >= 1 { p(m - 1) } else { 0.0 };
    [full, deficient, 1.0 - full - deficient]
}

pub const MIN_MATRICES: usize = 38;

/// Binary matrix rank test. Consecutive `m`-bit runs of the stream form the
/// rows of `num_matrices` square matrices; their ranks are binned into
/// `{m, m-1, <= m-2}` and compared with [`rank_probabilities`] by chi-square
/// with two degrees of freedom.
pub fn matrix_rank_test(
    bits: &BitSeq,
    num_matrices: usize,
    m: usize,
) -> Result<TestResult, TestError> {
    if !(2..=64).contains(&m) {
        return Err(TestError::InvalidParameter(format!(
            "matrix size {m} outside 2..=64"
        )));
    }
    if num_matrices < MIN_MATRICES {
        return Err(TestError::InsufficientInput {
            test: "matrix-rank",
            needed: MIN_MATRICES as u64,
            got: num_matrices as u64,
            unit: "matrices",
        });
    }
    let needed = num_matrices * m * m;
    if bits.len() < needed {
        return Err(TestError::InsufficientInput {
            test: "matrix-rank",
            needed: needed as u64,
            got: bits.len() as u64,
            unit: "bits",
        });
    }
    let mut counts = [0u64; 3];
    let mut rows = [0u64; 64];
    for k in 0..num_matrices {
        let base = k * m * m;
        for (i, row) in rows[..m].iter_mut().enumerate() {
            *row = bits.bits_at(base + i * m, m as u32);
        }
        let rank = eliminate(&mut rows[..m], m);
        let bin = (m - rank).min(2);
        counts[bin] += 1;
    }
    let probs = rank_probabilities(m);
    let n = num_matrices as f64;
    let chi2: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&observed, p)| {
            let expected = p * n;
            (observed as f64 - expected).powi(2) / expected
        })
        .sum();
    let p = chi_square_pvalue(chi2, 2)?;
    Ok(TestResult::new(
        format!("matrix-rank-{m}x{m}"),
        needed as u64,
        chi2,
        p,
    ))
}
