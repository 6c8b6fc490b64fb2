//! The max-plus semiring `R ∪ {-∞}` with `a ⊕ b = max(a, b)`, `a ⊗ b = a + b`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A real number or the bottom element `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    /// The semiring zero (`-∞`).
    pub const BOTTOM: ExtendedReal = ExtendedReal(f64::NEG_INFINITY);
    /// The semiring unit (`0`).
    pub const UNIT: ExtendedReal = ExtendedReal(0.0);

    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "finite extended real expected, got {value}");
        Self(value)
    }

    pub fn is_bottom(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn value(&self) -> Option<f64> {
        (!self.is_bottom()).then_some(self.0)
    }

    /// Raw value with `-∞` for bottom.
    pub fn as_f64(&self) -> f64 {
        self.0
    }

    pub fn oplus(self, other: Self) -> Self {
        Self(self.0.max(other.0))
    }

    pub fn otimes(self, other: Self) -> Self {
        if self.is_bottom() || other.is_bottom() {
            Self::BOTTOM
        } else {
            Self(self.0 + other.0)
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(value: f64) -> Self {
        if value == f64::NEG_INFINITY {
            Self::BOTTOM
        } else {
            Self::finite(value)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "-inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semiring_laws() {
        let a = ExtendedReal::finite(-1.5);
        assert_eq!(a.oplus(ExtendedReal::BOTTOM), a);
        assert_eq!(a.otimes(ExtendedReal::UNIT), a);
        assert!(a.otimes(ExtendedReal::BOTTOM).is_bottom());
        assert_eq!(a.oplus(ExtendedReal::finite(2.0)).value(), Some(2.0));
        assert_eq!(a.otimes(ExtendedReal::finite(2.0)).value(), Some(0.5));
    }
}
