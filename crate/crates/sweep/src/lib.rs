//! Sweeps of the certification over dyadic grids, persistence of the
//! resulting records, and the period statistics computed from them.

pub mod analysis;
pub mod config;
pub mod error;
pub mod grid;
pub mod record;
pub mod run;
pub mod selftest;

pub use analysis::{analyze, AnalysisReport};
pub use config::{SweepConfig, ZoomWindow};
pub use error::{Result, SweepError};
pub use record::SweepRow;
pub use run::run_sweep;
