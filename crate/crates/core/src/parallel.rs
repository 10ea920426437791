//! Two-level parallel decomposition of xorgens.
//!
//! Coarse level: `p` blocks, each an independent [`Xorgens`] seeded with
//! `base_seed + i`, generated concurrently. Fine level: inside one block, up
//! to `min(s, r - s)` consecutive recurrence terms (lanes) depend only on
//! buffer entries that already exist, so a batch of lanes can be evaluated
//! together. Both levels reproduce the serial stream bit for bit.

use crate::params::{GeneratorParams, ParamError};
use crate::xorgens::Xorgens;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParallelError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("{lanes} lanes requested, must be in 1..={bound} (min(s, r - s))")]
    LanesOutOfRange { lanes: usize, bound: usize },
    #[error("an ensemble needs at least one block")]
    NoBlocks,
    #[error("output length {len} is not a multiple of the block count {blocks}")]
    UnevenOutput { len: usize, blocks: usize },
    #[error("Mersenne Twister offsets need 0 < m < n, got n = {n}, m = {m}")]
    TwisterOffsets { n: usize, m: usize },
}

fn check_lanes(params: &GeneratorParams, lanes: usize) -> Result<(), ParallelError> {
    let bound = params.lane_bound();
    if lanes == 0 || lanes > bound {
        return Err(ParallelError::LanesOutOfRange { lanes, bound });
    }
    Ok(())
}

/// Produces the next `lanes` outputs of `state` as one batch.
pub fn batch_step(state: &mut Xorgens, lanes: usize) -> Result<Vec<u64>, ParallelError> {
    let mut out = vec![0; lanes];
    batch_step_into(state, &mut out)?;
    Ok(out)
}

/// Like [`batch_step`], with `out.len()` lanes.
pub fn batch_step_into(state: &mut Xorgens, out: &mut [u64]) -> Result<(), ParallelError> {
    check_lanes(state.params(), out.len())?;
    state.lane_batch(out);
    Ok(())
}

/// Fills `out` from `state` in successive batches of at most `lanes` outputs.
pub fn fill_batched(
    state: &mut Xorgens,
    lanes: usize,
    out: &mut [u64],
) -> Result<(), ParallelError> {
    check_lanes(state.params(), lanes)?;
    for chunk in out.chunks_mut(lanes) {
        state.lane_batch(chunk);
    }
    Ok(())
}

/// Evaluates `schedule.len()` recurrence terms in place, one lane at a time in
/// the order `schedule` lists them, without the read-everything-first barrier
/// that [`batch_step`] uses. Returns the linear terms (no Weyl stage) by lane.
///
/// This exists to show where the lane bound comes from. Past `s` lanes a term
/// reads an element no lane has produced yet; past `r - s` lanes a later lane
/// overwrites a slot an earlier lane still has to read. Either hazard shows up
/// as a mismatch against [`Xorgens::step_linear`] for some schedule.
///
/// # Panics
/// If `schedule` is not a permutation of `0..schedule.len()` or is longer than `r`.
pub fn in_place_terms(state: &mut Xorgens, schedule: &[usize]) -> Vec<u64> {
    let n = schedule.len();
    assert!(n <= state.params().r, "at most r terms per batch");
    let mut seen = vec![false; n];
    for &lane in schedule {
        assert!(lane < n && !seen[lane], "schedule must be a permutation");
        seen[lane] = true;
    }
    state.in_place_terms(schedule)
}

/// `n - m`: how many Mersenne Twister elements can be produced concurrently.
pub fn mt_parallel_bound(n: usize, m: usize) -> Result<usize, ParallelError> {
    if m == 0 || m >= n {
        return Err(ParallelError::TwisterOffsets { n, m });
    }
    Ok(n - m)
}

/// `p` generators sharing one parameter set, block `i` seeded with
/// `base_seed + i` (wrapping).
#[derive(Debug, Clone)]
pub struct BlockEnsemble {
    params: GeneratorParams,
    base_seed: u64,
    lanes: usize,
    blocks: Vec<Xorgens>,
}

impl BlockEnsemble {
    pub fn new(
        params: GeneratorParams,
        base_seed: u64,
        num_blocks: usize,
        lanes: usize,
    ) -> Result<Self, ParallelError> {
        let params = params.validate()?;
        check_lanes(&params, lanes)?;
        if num_blocks == 0 {
            return Err(ParallelError::NoBlocks);
        }
        let blocks = (0..num_blocks as u64)
            .into_par_iter()
            .map(|i| Xorgens::seed(params, base_seed.wrapping_add(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            params,
            base_seed,
            lanes,
            blocks,
        })
    }

    pub fn params(&self) -> &GeneratorParams {
        &self.params
    }

    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    pub fn lanes(&self) -> usize {
        self.lanes
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Xorgens] {
        &self.blocks
    }

    pub fn block_mut(&mut self, i: usize) -> &mut Xorgens {
        &mut self.blocks[i]
    }

    /// Next `per_block` outputs of every block, block-major.
    pub fn generate(&mut self, per_block: usize) -> Vec<Vec<u64>> {
        let lanes = self.lanes;
        self.blocks
            .par_iter_mut()
            .map(|block| {
                let mut out = vec![0; per_block];
                for chunk in out.chunks_mut(lanes) {
                    block.lane_batch(chunk);
                }
                out
            })
            .collect()
    }

    /// Writes `out.len() / p` outputs per block into consecutive slices of `out`.
    pub fn generate_into(&mut self, out: &mut [u64]) -> Result<(), ParallelError> {
        let blocks = self.blocks.len();
        if !out.len().is_multiple_of(blocks) {
            return Err(ParallelError::UnevenOutput {
                len: out.len(),
                blocks,
            });
        }
        let per_block = out.len() / blocks;
        if per_block == 0 {
            return Ok(());
        }
        let lanes = self.lanes;
        self.blocks
            .par_iter_mut()
            .zip(out.par_chunks_mut(per_block))
            .for_each(|(block, dst)| {
                for chunk in dst.chunks_mut(lanes) {
                    block.lane_batch(chunk);
                }
            });
        Ok(())
    }
}
