use crate::params::{GeneratorParams, ParamError};
use crate::source::WordSource;
use crate::xorgens::Xorgens;

/// xorgens without its Weyl stage: the stream of
/// [`Xorgens::step_linear`], which is linear over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawXorgens(Xorgens);

impl RawXorgens {
    /// Same state as [`Xorgens::seed`]; only the output stage differs.
    pub fn seed(params: GeneratorParams, seed: u64) -> Result<Self, ParamError> {
        Xorgens::seed(params, seed).map(Self)
    }

    pub fn from_state(state: Xorgens) -> Self {
        Self(state)
    }

    pub fn state(&self) -> &Xorgens {
        &self.0
    }

    #[inline]
    pub fn next_raw(&mut self) -> u64 {
        self.0.step_linear()
    }
}

impl WordSource for RawXorgens {
    fn word_bits(&self) -> u32 {
        self.0.params().w
    }

    #[inline]
    fn next_word(&mut self) -> u64 {
        self.next_raw()
    }
}
