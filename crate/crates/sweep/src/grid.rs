//! Parameter grids and the closed-form helpers that accompany a sweep.

use gelfond_core::DyadicRational;

use crate::error::{Result, SweepError};

pub const MAX_GRID_LEVEL: u32 = 20;

/// `Λ_L = { i / 2^L : 0 ≤ i < 2^L }` in increasing order.
pub fn lambda(level: u32) -> Result<Vec<DyadicRational>> {
    if level > MAX_GRID_LEVEL {
        return Err(SweepError::InvalidConfig(format!("L = {level} exceeds {MAX_GRID_LEVEL}")));
    }
    (0..1u64 << level)
        .map(|i| DyadicRational::new(i, level).map_err(Into::into))
        .collect()
}

/// Points of `Λ_L` inside the closed window `[a, b]`.
pub fn window(a: f64, b: f64, level: u32) -> Result<Vec<DyadicRational>> {
    if !(0.0..1.0).contains(&a) || b < a || b >= 1.0 {
        return Err(SweepError::InvalidConfig(format!("window [{a}, {b}] not inside [0, 1)")));
    }
    Ok(lambda(level)?
        .into_iter()
        .filter(|c| (a..=b).contains(&c.to_f64()))
        .collect())
}

/// Euler's totient by trial division.
pub fn totient(p: u64) -> u64 {
    assert!(p >= 1, "totient needs p >= 1");
    let mut n = p;
    let mut phi = p;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The Mauduit-Rivat-Sárközy bound `1 - π²/(20 log 2) ‖c‖²`.
pub fn mrs_bound(c: DyadicRational) -> f64 {
    let x = c.to_f64();
    let dist = x.min(1.0 - x);
    1.0 - std::f64::consts::PI.powi(2) / (20.0 * std::f64::consts::LN_2) * dist * dist
}
