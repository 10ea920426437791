use crate::source::{SplitMix64, WordSource};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the five xorshift words are all zero")]
pub struct ZeroStateError;

/// XORWOW: a five-word xorshift generator plus an additive counter
/// (Marsaglia, 2003). Period `2^192 - 2^32`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorwow {
    xs: [u32; 5],
    counter: u32,
}

impl Xorwow {
    pub const COUNTER_STEP: u32 = 362_437;
    pub const STATE_WORDS: usize = 6;
    pub const PERIOD: &'static str = "2^{192}−2^{32}";

    /// The initial values from Marsaglia's published routine.
    pub fn marsaglia() -> Self {
        Self {
            xs: [123_456_789, 362_436_069, 521_288_629, 88_675_123, 5_783_321],
            counter: 6_615_241,
        }
    }

    pub fn from_words(xs: [u32; 5], counter: u32) -> Result<Self, ZeroStateError> {
        if xs == [0; 5] {
            return Err(ZeroStateError);
        }
        Ok(Self { xs, counter })
    }

    /// Expands `seed` with SplitMix64. Any seed is legal.
    pub fn seed(seed: u64) -> Self {
        let mut mixer = SplitMix64::new(seed);
        let a = mixer.next_u64();
        let b = mixer.next_u64();
        let c = mixer.next_u64();
        let mut xs = [
            a as u32,
            (a >> 32) as u32,
            b as u32,
            (b >> 32) as u32,
            c as u32,
        ];
        if xs == [0; 5] {
            xs[0] = 1;
        }
        Self {
            xs,
            counter: (c >> 32) as u32,
        }
    }

    pub fn counter(&self) -> u32 {
        self.counter
    }

    pub fn words(&self) -> [u32; 5] {
        self.xs
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let [x, y, z, u, v] = self.xs;
        let t = x ^ (x >> 2);
        let v_new = (v ^ (v << 4)) ^ (t ^ (t << 1));
        self.xs = [y, z, u, v, v_new];
        self.counter = self.counter.wrapping_add(Self::COUNTER_STEP);
        self.counter.wrapping_add(v_new)
    }
}

impl WordSource for Xorwow {
    fn word_bits(&self) -> u32 {
        32
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.next_u32() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_rejected() {
        assert_eq!(Xorwow::from_words([0; 5], 7), Err(ZeroStateError));
        assert!(Xorwow::from_words([0, 0, 0, 0, 1], 0).is_ok());
    }

    #[test]
    fn seeding() {
        assert_eq!(Xorwow::seed(42), Xorwow::seed(42));
        assert_ne!(Xorwow::seed(0).words(), [0; 5]);
        let mut states: Vec<_> = (0..256).map(|s| Xorwow::seed(s).words()).collect();
        states.sort();
        states.dedup();
        assert_eq!(states.len(), 256);
    }

    #[test]
    fn counter_offset_carries_through() {
        let delta = 0xDEAD_BEEF;
        let mut a = Xorwow::from_words([1, 2, 3, 4, 5], 10).unwrap();
        let mut b = Xorwow::from_words([1, 2, 3, 4, 5], 10u32.wrapping_add(delta)).unwrap();
        for _ in 0..1000 {
            assert_eq!(b.next_u32().wrapping_sub(a.next_u32()), delta);
        }
    }
}
