//! Exact dyadic rationals `i / 2^L` on the circle `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest level for which all operations stay exact in `u64`.
pub const MAX_LEVEL: u32 = 62;

/// A point `numerator / 2^level` of `[0, 1)`.
///
/// The representation is not required to be reduced; equality and ordering
/// compare values.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DyadicRational {
    numerator: u64,
    level: u32,
}

impl DyadicRational {
    pub const ZERO: DyadicRational = DyadicRational { numerator: 0, level: 0 };
    pub const HALF: DyadicRational = DyadicRational { numerator: 1, level: 1 };

    pub fn new(numerator: u64, level: u32) -> Result<Self, Error> {
        if level > MAX_LEVEL {
            return Err(Error::InvalidDyadic(format!("level {level} exceeds {MAX_LEVEL}")));
        }
        if numerator >= 1u64 << level {
            return Err(Error::InvalidDyadic(format!(
                "{numerator}/2^{level} is not in [0, 1)"
            )));
        }
        Ok(Self { numerator, level })
    }

    /// Parses `NUM/DEN` where `DEN` is a power of two, reducing `NUM` mod `DEN`.
    pub fn from_fraction(numerator: u64, denominator: u64) -> Result<Self, Error> {
        if denominator == 0 || !denominator.is_power_of_two() {
            return Err(Error::InvalidDyadic(format!(
                "denominator {denominator} is not a power of two"
            )));
        }
        let level = denominator.trailing_zeros();
        Self::new(numerator % denominator, level)
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn denominator(&self) -> u64 {
        1u64 << self.level
    }

    /// Lowest-terms form; zero has level 0.
    pub fn reduced(&self) -> Self {
        if self.numerator == 0 {
            return Self::ZERO;
        }
        let shift = self.numerator.trailing_zeros().min(self.level);
        Self {
            numerator: self.numerator >> shift,
            level: self.level - shift,
        }
    }

    /// Same value expressed at a finer level.
    pub fn at_level(&self, level: u32) -> Option<Self> {
        let r = self.reduced();
        if level < r.level || level > MAX_LEVEL {
            return None;
        }
        Some(Self {
            numerator: r.numerator << (level - r.level),
            level,
        })
    }

    fn common(a: &Self, b: &Self) -> (u64, u64, u32) {
        let (a, b) = (a.reduced(), b.reduced());
        let level = a.level.max(b.level);
        (
            a.numerator << (level - a.level),
            b.numerator << (level - b.level),
            level,
        )
    }

    /// `(self + other) mod 1`.
    pub fn add_mod1(&self, other: &Self) -> Self {
        let (a, b, level) = Self::common(self, other);
        let mask = (1u64 << level) - 1;
        Self {
            numerator: (a + b) & mask,
            level,
        }
        .reduced()
    }

    /// `(self - other) mod 1`.
    pub fn sub_mod1(&self, other: &Self) -> Self {
        let (a, b, level) = Self::common(self, other);
        let modulus = 1u64 << level;
        Self {
            numerator: (a + modulus - b) % modulus,
            level,
        }
        .reduced()
    }

    /// Doubling map `x -> 2x mod 1`.
    pub fn double_mod1(&self) -> Self {
        let r = self.reduced();
        if r.level == 0 {
            return Self::ZERO;
        }
        Self {
            numerator: r.numerator & ((1u64 << (r.level - 1)) - 1),
            level: r.level - 1,
        }
        .reduced()
    }

    /// Midpoint of `self` and `other` (as reals in `[0, 1)`).
    pub fn midpoint(&self, other: &Self) -> Option<Self> {
        let (a, b, level) = Self::common(self, other);
        if level >= MAX_LEVEL {
            return None;
        }
        Some(
            Self {
                numerator: a + b,
                level: level + 1,
            }
            .reduced(),
        )
    }

    /// `1 - x mod 1`, the mirror image under `x -> -x` on the circle.
    pub fn mirror(&self) -> Self {
        Self::ZERO.sub_mod1(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator() as f64
    }
}

impl PartialEq for DyadicRational {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Self::common(self, other);
        a == b
    }
}

impl Eq for DyadicRational {}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::common(self, other);
        a.cmp(&b)
    }
}

impl std::hash::Hash for DyadicRational {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.numerator.hash(state);
        r.level.hash(state);
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidDyadic(format!("expected NUM/DEN, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidDyadic(format!("{t:?}: {e}")))
        };
        Self::from_fraction(parse(num)?, parse(den)?)
    }
}
