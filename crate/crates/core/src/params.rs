//! Parameter sets for the xorgens family.
//!
//! A generator is fixed by the recurrence degree `r`, the second tap `s`,
//! the four shift amounts `a, b, c, d`, the word size `w`, and the Weyl
//! stage constants `omega` (increment) and `gamma` (output shift).

use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("unsupported word size {0}; expected 8, 16, 32 or 64")]
    WordSize(u32),
    #[error("second tap s = {s} must satisfy 0 < s < r = {r}")]
    TapOutOfRange { r: usize, s: usize },
    #[error("gcd(r, s) = gcd({r}, {s}) = {gcd}, must be 1")]
    NotCoprime { r: usize, s: usize, gcd: usize },
    #[error("shift {name} = {value} outside the open interval (0, {w})")]
    ShiftOutOfRange {
        name: &'static str,
        value: u32,
        w: u32,
    },
    #[error("Weyl increment {0:#x} is even")]
    EvenOmega(u64),
    #[error("Weyl increment {omega:#x} does not fit in {w} bits")]
    OmegaTooWide { omega: u64, w: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorParams {
    pub r: usize,
    pub s: usize,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub w: u32,
    pub omega: u64,
    pub gamma: u32,
}

/// The set used for the xorgensGP-32 generator: `(r,s,a,b,c,d) = (128,65,15,14,12,17)`, `w = 32`.
pub const XORGENS_GP_32: GeneratorParams = GeneratorParams {
    r: 128,
    s: 65,
    a: 15,
    b: 14,
    c: 12,
    d: 17,
    w: 32,
    omega: 0x9E37_79B9,
    gamma: 16,
};

/// Odd integer nearest `2^(w-1) * (sqrt(5) - 1)`.
pub const fn default_omega(w: u32) -> Option<u64> {
    match w {
        8 => Some(0x9F),
        16 => Some(0x9E37),
        32 => Some(0x9E37_79B9),
        64 => Some(0x9E37_79B9_7F4A_7C15),
        _ => None,
    }
}

pub(crate) const fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl GeneratorParams {
    /// Builds a parameter set with the default Weyl constants for `w`
    /// (`gamma = w/2`, `omega` from [`default_omega`]) and validates it.
    pub fn new(r: usize, s: usize, shifts: [u32; 4], w: u32) -> Result<Self, ParamError> {
        let omega = default_omega(w).ok_or(ParamError::WordSize(w))?;
        let [a, b, c, d] = shifts;
        GeneratorParams {
            r,
            s,
            a,
            b,
            c,
            d,
            w,
            omega,
            gamma: w / 2,
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self, ParamError> {
        let w = self.w;
        if !matches!(w, 8 | 16 | 32 | 64) {
            return Err(ParamError::WordSize(w));
        }
        if self.s == 0 || self.s >= self.r {
            return Err(ParamError::TapOutOfRange {
                r: self.r,
                s: self.s,
            });
        }
        let g = gcd(self.r, self.s);
        if g != 1 {
            return Err(ParamError::NotCoprime {
                r: self.r,
                s: self.s,
                gcd: g,
            });
        }
        for (name, value) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("gamma", self.gamma),
        ] {
            if value == 0 || value >= w {
                return Err(ParamError::ShiftOutOfRange { name, value, w });
            }
        }
        if self.omega & !self.mask() != 0 {
            return Err(ParamError::OmegaTooWide {
                omega: self.omega,
                w,
            });
        }
        if self.omega & 1 == 0 {
            return Err(ParamError::EvenOmega(self.omega));
        }
        Ok(self)
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        u64::MAX >> (64 - self.w)
    }

    /// Number of recurrence terms that can be evaluated concurrently from one
    /// buffer: `min(s, r - s)`.
    pub fn lane_bound(&self) -> usize {
        self.s.min(self.r - self.s)
    }

    /// Words of state: the `r`-word buffer plus the Weyl accumulator. The
    /// circular index is not counted.
    pub fn state_words(&self) -> usize {
        self.r + 1
    }

    pub fn period(&self) -> PeriodDescription {
        PeriodDescription::new(self.r as u64 * self.w as u64, self.w as u64)
    }
}

impl fmt::Display for GeneratorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(r,s,a,b,c,d)=({},{},{},{},{},{}) w={} omega={:#x} gamma={}",
            self.r, self.s, self.a, self.b, self.c, self.d, self.w, self.omega, self.gamma
        )
    }
}

/// Nominal period `(2^(r*w) - 1) * 2^w`. Maximality is not checked here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodDescription {
    pub linear_exponent: u64,
    pub weyl_factor_exponent: u64,
    pub display: String,
}

impl PeriodDescription {
    fn new(linear_exponent: u64, weyl_factor_exponent: u64) -> Self {
        Self {
            linear_exponent,
            weyl_factor_exponent,
            display: format!("≈2^{{{}}}", linear_exponent + weyl_factor_exponent),
        }
    }
}

/// A named parameter set shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSet {
    pub name: &'static str,
    pub params: GeneratorParams,
    /// Exact period of the linear part when it has been confirmed by
    /// iterating the recurrence until the starting buffer reappears.
    pub linear_period: Option<u64>,
}

const fn tiny(r: usize, s: usize, shifts: [u32; 4], w: u32, omega: u64) -> GeneratorParams {
    GeneratorParams {
        r,
        s,
        a: shifts[0],
        b: shifts[1],
        c: shifts[2],
        d: shifts[3],
        w,
        omega,
        gamma: w / 2,
    }
}

/// Small parameter sets whose state spaces are small enough to enumerate.
/// Their shifts were found by a period search; they carry no claim of quality.
pub const TINY_SETS: [ParamSet; 5] = [
    ParamSet {
        name: "r2w8",
        params: tiny(2, 1, [5, 3, 3, 5], 8, 0x9F),
        linear_period: Some((1 << 16) - 1),
    },
    ParamSet {
        name: "r3w8",
        params: tiny(3, 1, [5, 3, 3, 5], 8, 0x9F),
        linear_period: Some((1 << 24) - 1),
    },
    ParamSet {
        name: "r2w16",
        params: tiny(2, 1, [14, 5, 9, 2], 16, 0x9E37),
        linear_period: Some((1 << 32) - 1),
    },
    ParamSet {
        name: "r4w8",
        params: tiny(4, 3, [6, 1, 5, 7], 8, 0x9F),
        linear_period: Some((1 << 32) - 1),
    },
    ParamSet {
        name: "r4w16",
        params: tiny(4, 3, [12, 13, 8, 3], 16, 0x9E37),
        linear_period: None,
    },
];

pub fn tiny_set(name: &str) -> Option<&'static ParamSet> {
    TINY_SETS.iter().find(|set| set.name == name)
}
