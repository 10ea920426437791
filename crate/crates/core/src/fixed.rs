//! xorgens with the parameter set fixed at compile time.
//!
//! The shifts and taps are const generics, so the compiler can fold them into
//! immediates. Streams are bit-identical to [`Xorgens`] with the same
//! parameters and seed.

use crate::params::{gcd, GeneratorParams};
use crate::source::WordSource;
use crate::xorgens::Xorgens;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedXorgens32<
    const R: usize,
    const S: usize,
    const A: u32,
    const B: u32,
    const C: u32,
    const D: u32,
> {
    x: [u32; R],
    idx: usize,
    weyl: u32,
}

/// The `(128,65,15,14,12,17)` generator with 32-bit words.
pub type XorgensGp32 = FixedXorgens32<128, 65, 15, 14, 12, 17>;

#[inline(always)]
const fn transform(x: u32, left: u32, right: u32) -> u32 {
    let t = x ^ (x << left);
    t ^ (t >> right)
}

impl<const R: usize, const S: usize, const A: u32, const B: u32, const C: u32, const D: u32>
    FixedXorgens32<R, S, A, B, C, D>
{
    pub const OMEGA: u32 = 0x9E37_79B9;
    pub const GAMMA: u32 = 16;
    pub const LANES: usize = if S < R - S { S } else { R - S };

    const VALID: () = {
        assert!(S > 0 && S < R, "need 0 < s < r");
        assert!(gcd(R, S) == 1, "need gcd(r, s) = 1");
        assert!(A > 0 && A < 32 && B > 0 && B < 32, "shift out of range");
        assert!(C > 0 && C < 32 && D > 0 && D < 32, "shift out of range");
    };

    pub fn params() -> GeneratorParams {
        GeneratorParams {
            r: R,
            s: S,
            a: A,
            b: B,
            c: C,
            d: D,
            w: 32,
            omega: Self::OMEGA as u64,
            gamma: Self::GAMMA,
        }
    }

    pub fn seed(seed: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        let gen = Xorgens::seed(Self::params(), seed).expect("parameters checked at compile time");
        Self::from_runtime(&gen).expect("same parameters")
    }

    /// Copies the state of a runtime generator with identical parameters.
    pub fn from_runtime(gen: &Xorgens) -> Option<Self> {
        if *gen.params() != Self::params() {
            return None;
        }
        let mut x = [0u32; R];
        for (dst, &src) in x.iter_mut().zip(gen.buffer()) {
            *dst = src as u32;
        }
        Some(Self {
            x,
            idx: gen.index(),
            weyl: gen.weyl() as u32,
        })
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let i = self.idx;
        let v = transform(self.x[i], A, B) ^ transform(self.x[(i + R - S) % R], C, D);
        self.x[i] = v;
        self.idx = if i + 1 == R { 0 } else { i + 1 };
        self.weyl = self.weyl.wrapping_add(Self::OMEGA);
        (self.weyl ^ (self.weyl >> Self::GAMMA)).wrapping_add(v)
    }

    /// Fills `out` in batches of [`Self::LANES`] terms, each batch computed
    /// from the buffer before any of its results are written back.
    pub fn fill_lanes(&mut self, out: &mut [u32]) {
        let mut terms = [0u32; R];
        for chunk in out.chunks_mut(Self::LANES) {
            let lanes = chunk.len();
            let base = self.idx;
            for (lane, t) in terms[..lanes].iter_mut().enumerate() {
                let slot = (base + lane) % R;
                *t = transform(self.x[slot], A, B) ^ transform(self.x[(slot + R - S) % R], C, D);
            }
            let mut weyl = self.weyl;
            for (lane, (dst, &t)) in chunk.iter_mut().zip(&terms[..lanes]).enumerate() {
                self.x[(base + lane) % R] = t;
                weyl = weyl.wrapping_add(Self::OMEGA);
                *dst = (weyl ^ (weyl >> Self::GAMMA)).wrapping_add(t);
            }
            self.weyl = weyl;
            self.idx = (base + lanes) % R;
        }
    }
}

impl<const R: usize, const S: usize, const A: u32, const B: u32, const C: u32, const D: u32>
    WordSource for FixedXorgens32<R, S, A, B, C, D>
{
    fn word_bits(&self) -> u32 {
        32
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.next_u32() as u64
    }

    fn fill(&mut self, out: &mut [u64]) {
        let mut buf = [0u32; 512];
        for chunk in out.chunks_mut(buf.len()) {
            let part = &mut buf[..chunk.len()];
            self.fill_lanes(part);
            for (dst, &src) in chunk.iter_mut().zip(part.iter()) {
                *dst = src as u64;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::XORGENS_GP_32;

    #[test]
    fn matches_runtime_generator() {
        assert_eq!(XorgensGp32::params(), XORGENS_GP_32);
        assert_eq!(XorgensGp32::LANES, 63);
        let mut fixed = XorgensGp32::seed(9);
        let mut runtime = Xorgens::seed(XORGENS_GP_32, 9).unwrap();
        for _ in 0..100_000 {
            assert_eq!(fixed.next_u32() as u64, runtime.next_word());
        }
    }

    #[test]
    fn lane_fill_matches_serial() {
        let mut serial = XorgensGp32::seed(5);
        let mut batched = serial.clone();
        let mut out = vec![0u32; 10_007];
        batched.fill_lanes(&mut out);
        for &v in &out {
            assert_eq!(v, serial.next_u32());
        }
        assert_eq!(serial, batched);

        let mut wide = vec![0u64; 3001];
        batched.fill(&mut wide);
        for &v in &wide {
            assert_eq!(v, serial.next_u32() as u64);
        }
    }

    #[test]
    fn rejects_other_parameters() {
        let other = Xorgens::seed(
            GeneratorParams {
                s: 63,
                ..XORGENS_GP_32
            },
            1,
        )
        .unwrap();
        assert!(XorgensGp32::from_runtime(&other).is_none());
    }
}
