//! Certified Gelfond exponents of weighted Thue-Morse sequences via max-plus
//! policy iteration on de Bruijn graphs.

pub mod debruijn;
pub mod dyadic;
pub mod error;
pub mod maxplus;
pub mod potential;
pub mod semiring;
pub mod sequence;
pub mod verify;
pub mod word;

pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use verify::{certify, Status, TripleRange, VerificationRecord, VerifyConfig};
pub use word::BinaryWord;
