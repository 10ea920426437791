//! Comparison generators sharing the [`WordSource`](crate::source::WordSource)
//! interface: Marsaglia's XORWOW, MT19937, and xorgens with its Weyl stage
//! removed.

mod mt19937;
mod raw;
mod xorwow;

pub use mt19937::Mt19937;
pub use raw::RawXorgens;
pub use xorwow::{Xorwow, ZeroStateError};
