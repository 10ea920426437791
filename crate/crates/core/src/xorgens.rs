//! The xorgens generator: an xorshift recurrence over a circular buffer of
//! `r` words, combined with a Weyl sequence.
//!
//! The linear part computes
//!
//! ```text
//! x_i = T(a,b)(x_{i-r}) ^ T(c,d)(x_{i-s}),   T(p,q)(x) = t ^ (t >> q) with t = x ^ (x << p)
//! ```
//!
//! and every output adds the shifted Weyl term `(w_k ^ (w_k >> gamma))` to
//! `x_i` modulo `2^w`. The addition is ordinary integer addition, which is
//! what breaks linearity over GF(2).

use crate::params::{GeneratorParams, ParamError};
use crate::source::{SplitMix64, WordSource};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("buffer holds {got} words, parameters need r = {expected}")]
    BufferLength { expected: usize, got: usize },
    #[error("word {index} = {value:#x} does not fit in {w} bits")]
    WordTooWide { index: usize, value: u64, w: u32 },
    #[error("circular index {idx} outside 0..{r}")]
    Index { idx: usize, r: usize },
    #[error("an all-zero buffer never leaves zero")]
    AllZero,
}

/// Value written to `x[0]` when seed expansion produces an all-zero buffer.
const NONZERO_FILL: u64 = 1;

/// `t = x ^ (x << left)`, then `t ^ (t >> right)`, on `w`-bit words.
#[inline(always)]
pub fn xorshift_transform(x: u64, left: u32, right: u32, w: u32) -> u64 {
    let mask = u64::MAX >> (64 - w);
    let t = x ^ ((x << left) & mask);
    t ^ (t >> right)
}

#[inline(always)]
pub(crate) fn weyl_output(weyl: u64, gamma: u32, x: u64, mask: u64) -> u64 {
    (weyl ^ (weyl >> gamma)).wrapping_add(x) & mask
}

/// One serial xorgens stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorgens {
    params: GeneratorParams,
    x: Vec<u64>,
    /// Slot of the oldest element `x_{i-r}`; the next output overwrites it.
    idx: usize,
    weyl: u64,
}

impl Xorgens {
    /// Seeds a generator from a 64-bit value.
    ///
    /// The seed is expanded with SplitMix64 into the `r` buffer words and the
    /// Weyl accumulator (each truncated to `w` bits). An all-zero buffer gets
    /// `x[0] = 1`. Then `4r` outputs are discarded so every state word has
    /// influenced every other one. Every seed, including 0, is legal.
    pub fn seed(params: GeneratorParams, seed: u64) -> Result<Self, ParamError> {
        let params = params.validate()?;
        let mask = params.mask();
        let mut mixer = SplitMix64::new(seed);
        let mut x: Vec<u64> = (0..params.r).map(|_| mixer.next_u64() & mask).collect();
        if x.iter().all(|&v| v == 0) {
            x[0] = NONZERO_FILL;
        }
        let weyl = mixer.next_u64() & mask;
        let mut gen = Self {
            params,
            x,
            idx: 0,
            weyl,
        };
        for _ in 0..4 * params.r {
            gen.next_word();
        }
        Ok(gen)
    }

    /// Restores a generator from explicit state. `buffer[idx]` is the oldest
    /// element.
    pub fn from_parts(
        params: GeneratorParams,
        buffer: Vec<u64>,
        idx: usize,
        weyl: u64,
    ) -> Result<Self, StateError> {
        let params = params.validate()?;
        if buffer.len() != params.r {
            return Err(StateError::BufferLength {
                expected: params.r,
                got: buffer.len(),
            });
        }
        if idx >= params.r {
            return Err(StateError::Index { idx, r: params.r });
        }
        let mask = params.mask();
        if let Some((index, &value)) = buffer.iter().enumerate().find(|(_, &v)| v & !mask != 0) {
            return Err(StateError::WordTooWide {
                index,
                value,
                w: params.w,
            });
        }
        if weyl & !mask != 0 {
            return Err(StateError::WordTooWide {
                index: params.r,
                value: weyl,
                w: params.w,
            });
        }
        if buffer.iter().all(|&v| v == 0) {
            return Err(StateError::AllZero);
        }
        Ok(Self {
            params,
            x: buffer,
            idx,
            weyl,
        })
    }

    pub fn params(&self) -> &GeneratorParams {
        &self.params
    }

    /// The raw circular buffer; `buffer()[index()]` is the oldest element.
    pub fn buffer(&self) -> &[u64] {
        &self.x
    }

    pub fn index(&self) -> usize {
        self.idx
    }

    pub fn weyl(&self) -> u64 {
        self.weyl
    }

    /// Buffer contents from oldest to newest.
    pub fn history(&self) -> Vec<u64> {
        let (newer, older) = self.x.split_at(self.idx);
        older.iter().chain(newer).copied().collect()
    }

    /// Advances the linear recurrence only and returns the new element `x_i`.
    /// The Weyl accumulator is left alone.
    #[inline]
    pub fn step_linear(&mut self) -> u64 {
        let p = &self.params;
        let r = p.r;
        let oldest = self.x[self.idx];
        let mut tap = self.idx + r - p.s;
        if tap >= r {
            tap -= r;
        }
        let v = xorshift_transform(oldest, p.a, p.b, p.w)
            ^ xorshift_transform(self.x[tap], p.c, p.d, p.w);
        self.x[self.idx] = v;
        self.idx += 1;
        if self.idx == r {
            self.idx = 0;
        }
        v
    }

    /// `weyl <- weyl + omega (mod 2^w)`; returns the new value.
    #[inline]
    pub fn weyl_next(&mut self) -> u64 {
        self.weyl = self.weyl.wrapping_add(self.params.omega) & self.params.mask();
        self.weyl
    }

    /// Next output: `((w_k ^ (w_k >> gamma)) + x_k) mod 2^w`.
    #[inline]
    pub fn next_word(&mut self) -> u64 {
        let x = self.step_linear();
        let w = self.weyl_next();
        weyl_output(w, self.params.gamma, x, self.params.mask())
    }

    /// Computes the next `out.len()` outputs with every recurrence term read
    /// from the buffer before any is written back. Callers must keep
    /// `out.len() <= lane_bound`.
    pub(crate) fn lane_batch(&mut self, out: &mut [u64]) {
        let lanes = out.len();
        debug_assert!(lanes <= self.params.lane_bound());
        let p = self.params;
        let r = p.r;
        let mask = p.mask();
        let base = self.idx;
        let tap = r - p.s;

        for (lane, slot) in out.iter_mut().enumerate() {
            let old = self.x[(base + lane) % r];
            let other = self.x[(base + lane + tap) % r];
            *slot =
                xorshift_transform(old, p.a, p.b, p.w) ^ xorshift_transform(other, p.c, p.d, p.w);
        }
        let weyl0 = self.weyl;
        for (lane, slot) in out.iter_mut().enumerate() {
            self.x[(base + lane) % r] = *slot;
            let w = weyl0.wrapping_add(p.omega.wrapping_mul(lane as u64 + 1)) & mask;
            *slot = weyl_output(w, p.gamma, *slot, mask);
        }
        self.idx = (base + lanes) % r;
        self.weyl = weyl0.wrapping_add(p.omega.wrapping_mul(lanes as u64)) & mask;
    }

    /// Evaluates one recurrence term per lane directly in the buffer, in the
    /// order given by `schedule`. Each lane reads its two inputs and writes its
    /// result back before the next lane runs, as unsynchronised threads
    /// sharing one buffer might. Returns the linear terms indexed by lane and
    /// leaves the Weyl accumulator untouched.
    pub(crate) fn in_place_terms(&mut self, schedule: &[usize]) -> Vec<u64> {
        let lanes = schedule.len();
        let p = self.params;
        let r = p.r;
        let base = self.idx;
        let mut terms = vec![0; lanes];
        for &lane in schedule {
            let slot = (base + lane) % r;
            let v = xorshift_transform(self.x[slot], p.a, p.b, p.w)
                ^ xorshift_transform(self.x[(slot + r - p.s) % r], p.c, p.d, p.w);
            self.x[slot] = v;
            terms[lane] = v;
        }
        self.idx = (base + lanes) % r;
        terms
    }
}

impl WordSource for Xorgens {
    fn word_bits(&self) -> u32 {
        self.params.w
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        Xorgens::next_word(self)
    }
}
