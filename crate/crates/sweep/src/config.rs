use gelfond_core::{DyadicRational, TripleRange, VerifyConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, SweepError};
use crate::grid::{self, MAX_GRID_LEVEL};

/// Environment variable read for the worker count.
pub const WORKERS_ENV: &str = "GELFOND_WORKERS";

/// A refinement window `[a, b]` evaluated on `Λ_level`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoomWindow {
    pub a: f64,
    pub b: f64,
    pub level: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Grid level `L` of `Λ_L`.
    pub level: u32,
    pub range: TripleRange,
    pub verify: VerifyConfig,
    pub zoom: Option<ZoomWindow>,
    /// `None` uses every available core.
    pub workers: Option<usize>,
    /// Write measured runtimes instead of `0`.
    pub record_runtime: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            level: 10,
            range: TripleRange::default(),
            verify: VerifyConfig::default(),
            zoom: None,
            workers: None,
            record_runtime: false,
        }
    }
}

#[derive(Serialize)]
struct Fingerprint<'a> {
    level: u32,
    range: &'a TripleRange,
    verify: &'a VerifyConfig,
    zoom: &'a Option<ZoomWindow>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.level > MAX_GRID_LEVEL {
            return Err(SweepError::InvalidConfig(format!("L = {} exceeds {MAX_GRID_LEVEL}", self.level)));
        }
        if let Some(zoom) = &self.zoom {
            if zoom.level <= self.level {
                return Err(SweepError::InvalidConfig(format!(
                    "zoom level {} must exceed L = {}",
                    zoom.level, self.level
                )));
            }
        }
        if self.workers == Some(0) {
            return Err(SweepError::InvalidConfig("worker count must be positive".into()));
        }
        self.range.validate()?;
        Ok(())
    }

    /// The parameters to certify: the zoom window if set, else all of `Λ_L`.
    pub fn points(&self) -> Result<Vec<DyadicRational>> {
        match &self.zoom {
            Some(z) => grid::window(z.a, z.b, z.level),
            None => grid::lambda(self.level),
        }
    }

    /// SHA-256 over the settings that determine the records (not workers or
    /// runtime recording).
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&Fingerprint {
            level: self.level,
            range: &self.range,
            verify: &self.verify,
            zoom: &self.zoom,
        })
        .expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Worker count from the config, else from `GELFOND_WORKERS`.
    pub fn resolved_workers(&self) -> Option<usize> {
        self.workers
            .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()))
            .filter(|&n| n > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fingerprint_ignores_workers() {
        let a = SweepConfig::default();
        let b = SweepConfig {
            workers: Some(3),
            record_runtime: true,
            ..SweepConfig::default()
        };
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
        let c = SweepConfig { level: 9, ..a.clone() };
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn zoom_level_must_refine() {
        let mut config = SweepConfig::default();
        config.zoom = Some(ZoomWindow { a: 0.38, b: 0.3815, level: 10 });
        assert!(config.validate().is_err());
        config.zoom = Some(ZoomWindow { a: 0.38, b: 0.3815, level: 12 });
        config.validate().unwrap();
        assert_eq!(config.points().unwrap().len(), 6);
    }
}
