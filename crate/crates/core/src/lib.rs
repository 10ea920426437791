//! xorgens and the block/lane-parallel xorgensGP generator.
//!
//! * [`Xorgens`] is the serial reference: an xorshift recurrence over `r`
//!   words plus a Weyl sequence, for any validated [`GeneratorParams`].
//! * [`parallel`] reproduces the same stream with independent blocks and with
//!   up to `min(s, r - s)` terms evaluated per batch inside a block.
//! * [`baselines`] holds XORWOW, MT19937 and xorgens without its Weyl stage.
//! * [`stattests`] is a small battery whose matrix-rank and linear-complexity
//!   tests expose generators that are linear over GF(2).
//! * [`bench`] measures throughput in random numbers per second.
//!
//! ```
//! use xorgensgp::{Xorgens, XORGENS_GP_32};
//!
//! let mut gen = Xorgens::seed(XORGENS_GP_32, 42).unwrap();
//! let word = gen.next_word();
//! assert!(word <= u32::MAX as u64);
//! ```

pub mod baselines;
pub mod bench;
pub mod cli;
mod fixed;
pub mod parallel;
mod params;
pub mod period;
mod source;
pub mod stattests;
mod xorgens;

pub use fixed::{FixedXorgens32, XorgensGp32};
pub use params::{
    default_omega, tiny_set, GeneratorParams, ParamError, ParamSet, PeriodDescription, TINY_SETS,
    XORGENS_GP_32,
};
pub use source::{RawLeReader, SplitMix64, WordSource, WordStream};
pub use xorgens::{xorshift_transform, StateError, Xorgens};
