//! Finite binary words, read most-significant symbol first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const MAX_WORD_LEN: u32 = 62;

/// An `n`-bit word `w_1 ... w_n`; `bits` holds `int(w)` with `w_1` as the
/// most significant bit, so the cylinder `[w]` is
/// `[int(w) / 2^n, (int(w) + 1) / 2^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryWord {
    bits: u64,
    len: u32,
}

impl BinaryWord {
    pub fn new(bits: u64, len: u32) -> Result<Self, Error> {
        if len > MAX_WORD_LEN {
            return Err(Error::InvalidArgument(format!("word length {len} exceeds {MAX_WORD_LEN}")));
        }
        if bits >> len != 0 {
            return Err(Error::InvalidArgument(format!("{bits} does not fit in {len} bits")));
        }
        Ok(Self { bits, len })
    }

    pub fn empty() -> Self {
        Self { bits: 0, len: 0 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn mask(len: u32) -> u64 {
        if len == 0 {
            0
        } else {
            u64::MAX >> (64 - len)
        }
    }

    /// Symbol `i` (0-based from the left).
    pub fn symbol(&self, i: u32) -> u8 {
        assert!(i < self.len, "symbol index out of range");
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    pub fn last(&self) -> u8 {
        assert!(self.len > 0, "empty word has no last symbol");
        (self.bits & 1) as u8
    }

    /// First `n` symbols.
    pub fn prefix(&self, n: u32) -> Self {
        assert!(n <= self.len);
        Self {
            bits: self.bits >> (self.len - n),
            len: n,
        }
    }

    /// Last `n` symbols.
    pub fn suffix(&self, n: u32) -> Self {
        assert!(n <= self.len);
        Self {
            bits: self.bits & Self::mask(n),
            len: n,
        }
    }

    /// Appends one symbol on the right.
    pub fn push(&self, symbol: u8) -> Self {
        assert!(self.len < MAX_WORD_LEN);
        Self {
            bits: (self.bits << 1) | u64::from(symbol & 1),
            len: self.len + 1,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: !self.bits & Self::mask(self.len),
            len: self.len,
        }
    }

    pub fn reversed(&self) -> Self {
        if self.len == 0 {
            return *self;
        }
        Self {
            bits: self.bits.reverse_bits() >> (64 - self.len),
            len: self.len,
        }
    }

    /// Left rotation by `k` symbols.
    pub fn rotate_left(&self, k: u32) -> Self {
        if self.len == 0 {
            return *self;
        }
        let k = k % self.len;
        if k == 0 {
            return *self;
        }
        let mask = Self::mask(self.len);
        Self {
            bits: ((self.bits << k) | (self.bits >> (self.len - k))) & mask,
            len: self.len,
        }
    }

    /// Lexicographically least rotation (equal-length words compare as integers).
    pub fn least_rotation(&self) -> Self {
        (0..self.len.max(1))
            .map(|k| self.rotate_left(k))
            .min()
            .unwrap_or(*self)
    }

    /// Left endpoint of the cylinder as `(numerator, level)`.
    pub fn cylinder_start(&self) -> (u64, u32) {
        (self.bits, self.len)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.symbol(i))?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut word = Self::empty();
        for ch in s.chars() {
            let symbol = match ch {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::InvalidArgument(format!("bad symbol {ch:?} in word {s:?}"))),
            };
            if word.len == MAX_WORD_LEN {
                return Err(Error::InvalidArgument(format!("word {s:?} too long")));
            }
            word = word.push(symbol);
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn prefix_suffix() {
        let x = w("0110");
        assert_eq!(x.bits(), 6);
        assert_eq!(x.prefix(3), w("011"));
        assert_eq!(x.suffix(3), w("110"));
        assert_eq!(x.last(), 0);
        assert_eq!(x.symbol(1), 1);
    }

    #[test]
    fn rotations() {
        assert_eq!(w("100").least_rotation(), w("001"));
        assert_eq!(w("1101").least_rotation(), w("0111"));
        assert_eq!(w("10").least_rotation(), w("01"));
        assert_eq!(w("0111").complement().reversed(), w("0001"));
        assert_eq!(w("0").least_rotation(), w("0"));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["", "0", "1", "0101", "111000111"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("012".parse::<BinaryWord>().is_err());
    }
}
