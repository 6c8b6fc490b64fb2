//! Weighted Thue-Morse sequences `t^(c)(n) = e^{2πi c s(n)}` by direct
//! evaluation, used to cross-check certified exponents.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Largest period whose orbit points are added to the search grid.
pub const ORBIT_GRID_PERIOD: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSequenceSpec {
    pub c: DyadicRational,
}

impl WeightedSequenceSpec {
    pub fn new(c: DyadicRational) -> Self {
        Self { c }
    }
}

/// Binary digit sum `s(n)`.
pub fn digit_sum(n: u64) -> u32 {
    n.count_ones()
}

/// `e^{2πi θ}` for `θ` given modulo 1.
fn unit(theta: f64) -> Complex64 {
    let angle = 2.0 * PI * theta;
    Complex64::new(angle.cos(), angle.sin())
}

/// `c · s(n) mod 1`, exact.
fn weight_phase(c: DyadicRational, n: u64) -> f64 {
    let c = c.reduced();
    let modulus = c.denominator() as u128;
    let num = (c.numerator() as u128 * digit_sum(n) as u128) % modulus;
    num as f64 / modulus as f64
}

/// `n · x mod 1` with the rounding error of the product recovered by an FMA.
fn frequency_phase(n: u64, x: f64) -> f64 {
    let nf = n as f64;
    let p = nf * x;
    let err = nf.mul_add(x, -p);
    let frac = p - p.floor();
    (frac + err).rem_euclid(1.0)
}

/// `t^(c)(n) = e^{2πi c s(n)}`.
pub fn weight(spec: &WeightedSequenceSpec, n: u64) -> Complex64 {
    unit(weight_phase(spec.c, n))
}

fn pairwise(terms: &mut dyn Iterator<Item = Complex64>, len: usize) -> Complex64 {
    if len <= 64 {
        terms.take(len).sum()
    } else {
        let half = len / 2;
        let left = pairwise(terms, half);
        left + pairwise(terms, len - half)
    }
}

/// `S_N(x) = Σ_{n<N} t^(c)(n) e^{2πi n x}` by direct (pairwise) summation.
pub fn partial_sum(spec: &WeightedSequenceSpec, len: u64, x: f64) -> Result<Complex64> {
    if len == 0 {
        return Err(Error::InvalidArgument("partial sum needs N >= 1".into()));
    }
    let mut terms = (0..len).map(|n| unit((weight_phase(spec.c, n) + frequency_phase(n, x)).fract()));
    Ok(pairwise(&mut terms, len as usize))
}

/// `2^m ∏_{j<m} |cos π(c + 2^j x)|`.
pub fn product_magnitude(spec: &WeightedSequenceSpec, m: u32, x: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("product needs m >= 1".into()));
    }
    let c = spec.c.to_f64();
    let mut y = x.rem_euclid(1.0);
    let mut product = 1.0;
    for _ in 0..m {
        let u = (y + c).rem_euclid(1.0);
        product *= 2.0 * (PI * (0.5 - u).abs()).sin();
        y = (2.0 * y).fract();
    }
    Ok(product)
}

/// `Σ_{j<m} log|cos π(c + 2^j x)|` at the rational `x = num / den`, with the
/// doubling orbit and the distance to the pole computed exactly.
fn log_product_rational(c: DyadicRational, num: u64, den: u64, m: u32) -> f64 {
    let c = c.reduced();
    let q = den as u128;
    let scale = 2u128 << c.level();
    let full = q * scale;
    let half = full / 2;
    let shift = 2 * c.numerator() as u128 * q;
    let mut y = num as u128 % q;
    let mut total = 0.0;
    for _ in 0..m {
        let u = (y * scale + shift) % full;
        let delta = half.abs_diff(u);
        if delta == 0 {
            return f64::NEG_INFINITY;
        }
        total += (PI * (delta as f64 / full as f64)).sin().ln();
        y = (2 * y) % q;
    }
    total
}

/// Candidate points: the uniform grid `k / grid_size` and every periodic
/// point `k / (2^p - 1)` with `p ≤ 12`.
fn candidate_points(grid_size: u64) -> Vec<(u64, u64)> {
    let mut points: Vec<(u64, u64)> = (0..grid_size).map(|k| (k, grid_size)).collect();
    for p in 1..=ORBIT_GRID_PERIOD {
        let q = (1u64 << p) - 1;
        points.extend((0..q).map(|k| (k, q)));
    }
    points
}

/// `1 + max_x Σ_{j<m} log|cos π(c + 2^j x)| / (m log 2)` over the candidate
/// grid: a lower estimate of the Gelfond exponent.
pub fn empirical_exponent(spec: &WeightedSequenceSpec, m: u32, grid_size: u64) -> Result<f64> {
    if m < 4 {
        return Err(Error::InvalidArgument("empirical exponent needs m >= 4".into()));
    }
    if grid_size == 0 {
        return Err(Error::InvalidArgument("grid must be nonempty".into()));
    }
    let best = candidate_points(grid_size)
        .par_iter()
        .with_min_len(1024)
        .map(|&(num, den)| log_product_rational(spec.c, num, den, m))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(1.0 + best / (m as f64 * std::f64::consts::LN_2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> WeightedSequenceSpec {
        WeightedSequenceSpec::new(s.parse().unwrap())
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(0), 0);
        assert_eq!(digit_sum(3), 2);
        for k in 0..63 {
            assert_eq!(digit_sum(1 << k), 1);
        }
    }

    #[test]
    fn weights() {
        assert!((weight(&spec("1/2"), 3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((weight(&spec("1/2"), 1) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((weight(&spec("0/1"), 12345) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((weight(&spec("1/4"), 1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        for n in 0..100 {
            assert!((weight(&spec("3/8"), n).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn short_sums() {
        let s = spec("3/8");
        assert!((partial_sum(&s, 1, 0.3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let x: f64 = 0.2;
        let expected = Complex64::new(1.0, 0.0) + unit(0.375 + x);
        assert!((partial_sum(&s, 2, x).unwrap() - expected).norm() < 1e-15);
        assert!(partial_sum(&spec("1/2"), 4, 0.0).unwrap().norm() < 1e-15);
        assert!(partial_sum(&s, 0, 0.0).is_err());
    }

    #[test]
    fn products() {
        assert!(product_magnitude(&spec("1/2"), 1, 0.0).unwrap().abs() < 1e-15);
        let v = product_magnitude(&spec("1/2"), 2, 1.0 / 3.0).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
        let direct = partial_sum(&spec("1/2"), 4, 1.0 / 3.0).unwrap().norm();
        assert!((direct - 3.0).abs() < 1e-14);
    }

    #[test]
    fn exponent_at_zero_is_at_most_one() {
        let v = empirical_exponent(&spec("0/1"), 8, 256).unwrap();
        assert!(v <= 1.0);
        // x = 0 gives the maximal product 1
        assert_eq!(v, 1.0);
    }

    #[test]
    fn refinement_is_monotone() {
        let s = spec("3/8");
        let coarse = empirical_exponent(&s, 10, 1 << 10).unwrap();
        let fine = empirical_exponent(&s, 10, 1 << 11).unwrap();
        assert!(fine >= coarse);
    }
}
