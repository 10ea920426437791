use super::TestError;
use crate::source::WordStream;

/// A packed bit sequence. Bit `i` lives at bit `63 - i % 64` of word `i / 64`,
/// so reading a word MSB-first preserves stream order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitSeq {
    words: Vec<u64>,
    len: usize,
}

impl BitSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut seq = Self::with_capacity(bits.len());
        for &b in bits {
            seq.push_bits(b as u64, 1);
        }
        seq
    }

    /// Parses hex digits, four bits each, most significant first.
    pub fn from_hex(hex: &str) -> Option<Self> {
        let mut seq = Self::new();
        for c in hex.chars().filter(|c| !c.is_whitespace()) {
            seq.push_bits(c.to_digit(16)? as u64, 4);
        }
        Some(seq)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Appends the low `count` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        if count == 0 {
            return;
        }
        let value = if count == 64 {
            value
        } else {
            value & ((1u64 << count) - 1)
        };
        let used = (self.len % 64) as u32;
        if used == 0 {
            self.words.push(value << (64 - count));
        } else {
            let free = 64 - used;
            let last = self.words.last_mut().unwrap();
            if count <= free {
                *last |= value << (free - count);
            } else {
                *last |= value >> (count - free);
                self.words.push(value << (64 - (count - free)));
            }
        }
        self.len += count as usize;
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index out of range");
        (self.words[i / 64] >> (63 - i % 64)) & 1 == 1
    }

    /// Bits `start..start + count` as an integer, first bit most significant.
    pub fn bits_at(&self, start: usize, count: u32) -> u64 {
        assert!(count <= 64 && start + count as usize <= self.len);
        if count == 0 {
            return 0;
        }
        let word = start / 64;
        let offset = (start % 64) as u32;
        let hi = self.words[word] << offset;
        let joined = if offset == 0 || offset + count <= 64 {
            hi
        } else {
            hi | (self.words[word + 1] >> (64 - offset))
        };
        joined >> (64 - count)
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of adjacent positions whose bits differ.
    pub(crate) fn transitions(&self) -> u64 {
        if self.len < 2 {
            return 0;
        }
        let mut total = 0u64;
        for (k, &w) in self.words.iter().enumerate() {
            // compare each bit with its successor
            let next_first = self.words.get(k + 1).map_or(0, |n| n >> 63);
            let shifted = (w << 1) | next_first;
            let mut diff = w ^ shifted;
            let valid_here = (self.len - k * 64).min(64);
            // pairs (j, j+1) with j+1 < len
            let pairs = if k * 64 + valid_here == self.len {
                valid_here - 1
            } else {
                valid_here
            };
            if pairs < 64 {
                diff &= !(u64::MAX >> pairs);
            }
            total += diff.count_ones() as u64;
        }
        total
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// Reads `n` bits from `source`, word by word, most significant bit first.
/// The unused tail of the last word is discarded.
pub fn read_bits<S: WordStream + ?Sized>(source: &mut S, n: usize) -> Result<BitSeq, TestError> {
    let w = source.word_bits();
    let mut seq = BitSeq::with_capacity(n);
    while seq.len() < n {
        let word = source.read_word().ok_or(TestError::StreamExhausted {
            needed: n as u64,
            got: seq.len() as u64,
        })?;
        let take = w.min((n - seq.len()) as u32);
        seq.push_bits(word >> (w - take), take);
    }
    Ok(seq)
}
