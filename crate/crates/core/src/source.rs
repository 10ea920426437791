//! Word-level stream abstractions shared by every generator, the battery and
//! the benchmark harness.

use std::io::{self, BufReader, Read};

/// An infinite stream of `word_bits()`-wide unsigned words.
///
/// Words are returned in the low bits of a `u64`; the high bits are always zero.
pub trait WordSource {
    fn word_bits(&self) -> u32;

    fn next_word(&mut self) -> u64;

    fn fill(&mut self, out: &mut [u64]) {
        for slot in out {
            *slot = self.next_word();
        }
    }
}

impl<T: WordSource + ?Sized> WordSource for &mut T {
    fn word_bits(&self) -> u32 {
        (**self).word_bits()
    }
    fn next_word(&mut self) -> u64 {
        (**self).next_word()
    }
    fn fill(&mut self, out: &mut [u64]) {
        (**self).fill(out)
    }
}

impl<T: WordSource + ?Sized> WordSource for Box<T> {
    fn word_bits(&self) -> u32 {
        (**self).word_bits()
    }
    fn next_word(&mut self) -> u64 {
        (**self).next_word()
    }
    fn fill(&mut self, out: &mut [u64]) {
        (**self).fill(out)
    }
}

/// A possibly finite stream of words. Generators are infinite streams; file
/// sources end.
pub trait WordStream {
    fn word_bits(&self) -> u32;

    /// `None` once the stream is exhausted.
    fn read_word(&mut self) -> Option<u64>;
}

impl<T: WordSource + ?Sized> WordStream for T {
    fn word_bits(&self) -> u32 {
        WordSource::word_bits(self)
    }
    fn read_word(&mut self) -> Option<u64> {
        Some(self.next_word())
    }
}

/// Reads `raw-le` data: `word_bits`-wide little-endian words with no header.
/// A trailing partial word is ignored.
pub struct RawLeReader<R> {
    reader: BufReader<R>,
    word_bits: u32,
    error: Option<io::Error>,
}

impl<R: Read> RawLeReader<R> {
    pub fn new(reader: R, word_bits: u32) -> Self {
        assert!(
            matches!(word_bits, 8 | 16 | 32 | 64),
            "raw-le word size must be 8, 16, 32 or 64 bits"
        );
        Self {
            reader: BufReader::new(reader),
            word_bits,
            error: None,
        }
    }

    /// The I/O error that ended the stream early, if any.
    pub fn take_error(&mut self) -> Option<io::Error> {
        self.error.take()
    }
}

impl<R: Read> WordStream for RawLeReader<R> {
    fn word_bits(&self) -> u32 {
        self.word_bits
    }

    fn read_word(&mut self) -> Option<u64> {
        let width = (self.word_bits / 8) as usize;
        let mut buf = [0u8; 8];
        match self.reader.read_exact(&mut buf[..width]) {
            Ok(()) => Some(u64::from_le_bytes(buf)),
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => None,
            Err(e) => {
                self.error = Some(e);
                None
            }
        }
    }
}

/// SplitMix64, used to expand a 64-bit seed into generator state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_vector() {
        // Published first outputs for seed 1234567.
        let mut sm = SplitMix64::new(1_234_567);
        assert_eq!(sm.next_u64(), 6_457_827_717_110_365_317);
        assert_eq!(sm.next_u64(), 3_203_168_211_198_807_973);
        assert_eq!(sm.next_u64(), 9_817_491_932_198_370_423);
    }

    #[test]
    fn raw_le_reader_stops_at_partial_word() {
        let bytes = [0x01, 0x02, 0x03, 0x04, 0xAA, 0xBB];
        let mut rd = RawLeReader::new(&bytes[..], 16);
        assert_eq!(rd.read_word(), Some(0x0201));
        assert_eq!(rd.read_word(), Some(0x0403));
        assert_eq!(rd.read_word(), Some(0xBBAA));
        assert_eq!(rd.read_word(), None);

        let mut rd = RawLeReader::new(&bytes[..], 32);
        assert_eq!(rd.read_word(), Some(0x0403_0201));
        assert_eq!(rd.read_word(), None);
        assert!(rd.take_error().is_none());
    }
}
