//! The potential family `g^(c)(x) = log|cos π(x + c)|`, its floored and
//! tail-reflected truncations, rectangle-rule cylinder integrals with explicit
//! error bounds, and the level-`N` Haar averages used as graph weights.
//!
//! `|cos π u| = sin(π δ)` with `δ = |1/2 - (u mod 1)| ∈ [0, 1/2]`, and every
//! member of the family is a non-decreasing function of `δ`. For dyadic `c`
//! and dyadic `x` the distance `δ` is exact, which keeps floor activation and
//! the tail condition free of rounding.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::semiring::ExtendedReal;
use crate::word::BinaryWord;

/// Unit roundoff of binary64 arithmetic as used in all error budgets (`2^-52`).
pub const MACHINE_EPSILON: f64 = f64::EPSILON;

/// Resolution of the rectangle rule: subintervals of length `2^-26`.
pub const DEFAULT_BASE_LEVEL: u32 = 26;

/// Largest table level materialized in memory.
pub const MAX_TABLE_LEVEL: u32 = 24;

/// Constant in front of `π cot(π/2^d) 2^-N` in the Haar tail bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailConstant {
    /// `5/2`.
    #[default]
    Standard,
    /// `4`, the exact value of `Σ_{k≥N} (k-N+1) 2^-k · 2^N`.
    Strict,
}

impl TailConstant {
    pub fn value(&self) -> f64 {
        match self {
            TailConstant::Standard => 2.5,
            TailConstant::Strict => 4.0,
        }
    }

    pub fn from_value(value: f64) -> Option<Self> {
        if value == 2.5 {
            Some(TailConstant::Standard)
        } else if value == 4.0 {
            Some(TailConstant::Strict)
        } else {
            None
        }
    }
}

/// `constant · π · cot(π/2^d) · 2^-N`.
pub fn tail_bound(d: u32, n: u32, constant: f64) -> f64 {
    let angle = PI / 2f64.powi(d as i32);
    constant * PI / angle.tan() * 2f64.powi(-(n as i32))
}

/// Plateau value `log sin(π/2^d)` of the floored potential.
pub fn floor_level(d: u32) -> f64 {
    (PI / 2f64.powi(d as i32)).sin().ln()
}

/// Distance from `(x + c) mod 1` to `1/2`.
fn half_distance(c: DyadicRational, x: f64) -> f64 {
    let u = (x + c.to_f64()).rem_euclid(1.0);
    (0.5 - u).abs()
}

/// `g^(c)(x) = log|cos π(x + c)|`; `-∞` exactly at `x + c ≡ 1/2`.
pub fn eval_g(c: DyadicRational, x: f64) -> ExtendedReal {
    let delta = half_distance(c, x);
    if delta == 0.0 {
        ExtendedReal::BOTTOM
    } else {
        ExtendedReal::finite((PI * delta).sin().ln())
    }
}

/// Exact `δ = |1/2 - (x + c mod 1)|` for dyadic `x`.
fn half_distance_exact(c: DyadicRational, x: DyadicRational) -> DyadicRational {
    let u = x.add_mod1(&c);
    if u >= DyadicRational::HALF {
        u.sub_mod1(&DyadicRational::HALF)
    } else {
        DyadicRational::HALF.sub_mod1(&u)
    }
}

/// The parameters `(c, d, d')` of `g_{d,d'}^(c)` together with the outcome of
/// the tail condition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub c: DyadicRational,
    pub d: u32,
    pub dprime: u32,
    tail_ok: bool,
}

impl PotentialSpec {
    pub fn new(c: DyadicRational, d: u32, dprime: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidSpec(format!("d = {d} must be at least 2")));
        }
        if dprime < d {
            return Err(Error::InvalidSpec(format!("d' = {dprime} must be at least d = {d}")));
        }
        if d > 50 || dprime > 50 {
            return Err(Error::InvalidSpec(format!("(d, d') = ({d}, {dprime}) out of range")));
        }
        let mut spec = Self { c, d, dprime, tail_ok: false };
        spec.tail_ok = check_tail_condition(&spec);
        Ok(spec)
    }

    /// Whether `g_{d,d'}^(c)` is well defined (the tail condition holds).
    pub fn is_valid(&self) -> bool {
        self.tail_ok
    }

    /// Same `(d, d')` for the mirrored parameter `1 - c`.
    pub fn mirrored(&self) -> Self {
        Self::new(self.c.mirror(), self.d, self.dprime).expect("mirroring keeps (d, d') valid")
    }

    pub fn floor(&self) -> f64 {
        floor_level(self.d)
    }

    /// Left end `1 - 2^-d'` of the reflected tail.
    pub fn tail_start(&self) -> f64 {
        1.0 - 2f64.powi(-(self.dprime as i32))
    }

    fn require_valid(&self) -> Result<()> {
        if self.tail_ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "tail condition fails for c = {}, d = {}, d' = {}",
                self.c, self.d, self.dprime
            )))
        }
    }
}

/// `g_d^(c)(x) = max{g^(c)(x), log sin(π/2^d)}`.
pub fn eval_g_d(spec: &PotentialSpec, x: f64) -> f64 {
    let delta = half_distance(spec.c, x);
    if delta < 2f64.powi(-(spec.d as i32)) {
        spec.floor()
    } else {
        (PI * delta).sin().ln()
    }
}

/// `g_{d,d'}^(c)`: `g_d^(c)` on `[0, 1 - 2^-d')`, mirrored as `g_d^(c)(1 - x)`
/// on the tail `[1 - 2^-d', 1)`.
pub fn eval_g_dd(spec: &PotentialSpec, x: f64) -> Result<f64> {
    spec.require_valid()?;
    if x < spec.tail_start() {
        Ok(eval_g_d(spec, x))
    } else {
        Ok(eval_g_d(spec, 1.0 - x))
    }
}

/// Range of `δ` over the closed arc `[start, start + 2^-dprime]`.
fn delta_range(c: DyadicRational, start: DyadicRational, dprime: u32) -> (DyadicRational, DyadicRational) {
    let width = DyadicRational::new(1, dprime).expect("dprime within range");
    let end = start.add_mod1(&width);
    let mut lo = half_distance_exact(c, start).min(half_distance_exact(c, end));
    let mut hi = half_distance_exact(c, start).max(half_distance_exact(c, end));
    // δ = 0 at the pole x ≡ 1/2 - c, δ = 1/2 at the peak x ≡ -c.
    let offset = |p: DyadicRational| p.sub_mod1(&start);
    let inside = |p: DyadicRational| offset(p) <= width;
    if inside(DyadicRational::HALF.sub_mod1(&c)) {
        lo = DyadicRational::ZERO;
    }
    if inside(c.mirror()) {
        hi = DyadicRational::HALF;
    }
    (lo, hi)
}

/// `inf g_d^(c)|[0, 2^-d') ≥ sup g_d^(c)|[1 - 2^-d', 1)`, decided exactly.
///
/// `g_d` is a non-decreasing function of `max(δ, 2^-d)`, so the infimum and
/// supremum reduce to the extreme values of `δ` on each closed arc: arc
/// endpoints, plus the pole and peak when they fall inside.
pub fn check_tail_condition(spec: &PotentialSpec) -> bool {
    let floor_delta = DyadicRational::new(1, spec.d).expect("d within range");
    let head_start = DyadicRational::ZERO;
    let tail_start = DyadicRational::ZERO.sub_mod1(&DyadicRational::new(1, spec.dprime).expect("d' within range"));
    let (head_min, _) = delta_range(spec.c, head_start, spec.dprime);
    let (_, tail_max) = delta_range(spec.c, tail_start, spec.dprime);
    head_min.max(floor_delta) >= tail_max.max(floor_delta)
}

/// Rectangle-rule integral of the potential over one cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralValue {
    /// Left-endpoint sum `I_L`.
    pub lower_sum: f64,
    /// Right-endpoint sum `I_R`.
    pub upper_sum: f64,
    /// Reported value (`I_L`).
    pub value: f64,
    /// Bound on `|value - exact|`.
    pub epsilon: f64,
}

impl IntegralValue {
    pub fn new(lower_sum: f64, upper_sum: f64, epsilon: f64) -> Self {
        Self {
            lower_sum,
            upper_sum,
            value: lower_sum,
            epsilon,
        }
    }
}

/// Evaluates `g_d` at the grid points `j / 2^base_level` with exact `δ`.
struct GridPotential {
    base_level: u32,
    mask: u64,
    c_shift: u64,
    half: u64,
    floor_radius: u64,
    floor: f64,
    scale: f64,
    tail_index: u64,
}

impl GridPotential {
    /// Grid for `g_{d,d'}`, or for `g_d` on the whole circle when `dprime` is `None`.
    fn new(c: DyadicRational, d: u32, dprime: Option<u32>, base_level: u32) -> Result<Self> {
        let c = c.reduced();
        let required = c.level().max(d).max(dprime.unwrap_or(0)).max(1);
        if base_level < required {
            return Err(Error::InvalidArgument(format!(
                "base level {base_level} too coarse: breakpoints need level {required}"
            )));
        }
        if base_level > 40 {
            return Err(Error::InvalidArgument(format!("base level {base_level} too fine")));
        }
        let size = 1u64 << base_level;
        Ok(Self {
            base_level,
            mask: size - 1,
            c_shift: c.numerator() << (base_level - c.level()),
            half: size / 2,
            floor_radius: 1u64 << (base_level - d),
            floor: floor_level(d),
            scale: PI / size as f64,
            tail_index: dprime.map_or(size, |dp| size - (1u64 << (base_level - dp))),
        })
    }

    #[inline]
    fn g_d(&self, j: u64) -> f64 {
        let u = (j.wrapping_add(self.c_shift)) & self.mask;
        let delta = self.half.abs_diff(u);
        if delta < self.floor_radius {
            self.floor
        } else {
            (self.scale * delta as f64).sin().ln()
        }
    }

    /// Endpoint values of subinterval `[j, j + 1]`, one-sided at the
    /// reflection discontinuity.
    #[inline]
    fn endpoints(&self, j: u64) -> (f64, f64) {
        if j >= self.tail_index {
            let size = self.mask + 1;
            (self.g_d(size - j), self.g_d(size - j - 1))
        } else {
            (self.g_d(j), self.g_d(j + 1))
        }
    }

    #[inline]
    fn right_endpoint(&self, j: u64) -> f64 {
        if j >= self.tail_index {
            self.g_d(self.mask - j)
        } else {
            self.g_d(j + 1)
        }
    }

    /// Sums over subintervals `first .. first + count`.
    fn integrate_range(&self, first: u64, count: u64) -> (f64, f64, f64, f64) {
        let mut lower = 0.0;
        let mut upper = 0.0;
        let mut variation = 0.0;
        let mut magnitude = 0.0;
        let mut carry: Option<f64> = None;
        for j in first..first + count {
            let (left, right) = match carry {
                Some(left) if j != self.tail_index => (left, self.right_endpoint(j)),
                _ => self.endpoints(j),
            };
            lower += left;
            upper += right;
            variation += (left - right).abs();
            magnitude += left.abs().max(right.abs());
            carry = Some(right);
        }
        (lower, upper, variation, magnitude)
    }
}

/// Cell integrals `∫_[ω] g_{d,d'}^(c) dx` for all words `ω` of length `level`,
/// each computed by the rectangle rule on subintervals of length
/// `2^-base_level`.
#[derive(Clone, Debug)]
pub struct CellTable {
    level: u32,
    base_level: u32,
    lower: Vec<f64>,
    upper: Vec<f64>,
    eps: Vec<f64>,
}

impl CellTable {
    /// Wraps externally computed cell integrals (`cells.len()` must be `2^level`).
    pub fn from_cells(level: u32, base_level: u32, cells: &[IntegralValue]) -> Result<Self> {
        if cells.len() as u64 != 1u64 << level {
            return Err(Error::InvalidArgument(format!(
                "{} cells given for level {level}",
                cells.len()
            )));
        }
        Ok(Self {
            level,
            base_level,
            lower: cells.iter().map(|c| c.lower_sum).collect(),
            upper: cells.iter().map(|c| c.upper_sum).collect(),
            eps: cells.iter().map(|c| c.epsilon).collect(),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base_level(&self) -> u32 {
        self.base_level
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn cell(&self, index: usize) -> IntegralValue {
        IntegralValue::new(self.lower[index], self.upper[index], self.eps[index])
    }

    pub fn cells(&self) -> impl Iterator<Item = IntegralValue> + '_ {
        (0..self.len()).map(|i| self.cell(i))
    }

    /// `∫_[ω] φ dx` from the left sums, for `|ω| ≤ level`.
    pub fn cylinder_integral(&self, word: BinaryWord) -> Result<f64> {
        if word.len() > self.level {
            return Err(Error::InvalidArgument(format!(
                "word length {} exceeds table level {}",
                word.len(),
                self.level
            )));
        }
        let span = 1usize << (self.level - word.len());
        let start = word.bits() as usize * span;
        Ok(pairwise_sum(&self.lower[start..start + span]))
    }

    /// Cells of `φ(1 - x)`; turns the `g_d^(c)` table into the `g_d^(1-c)` one.
    pub fn mirrored(&self) -> CellTable {
        let mut table = self.clone();
        let n = self.len();
        for i in 0..n {
            table.lower[i] = self.upper[n - 1 - i];
            table.upper[i] = self.lower[n - 1 - i];
            table.eps[i] = self.eps[n - 1 - i];
        }
        table
    }

    /// Given the cells of `g_d^(c)`, the cells of `g_{d,d'}^(c)` for a valid
    /// `spec`: each tail cell is the mirror image of a head cell, with left and
    /// right sums exchanged.
    pub fn with_reflected_tail(&self, spec: &PotentialSpec) -> Result<CellTable> {
        spec.require_valid()?;
        if spec.dprime > self.level {
            return Err(Error::InvalidArgument(format!(
                "d' = {} exceeds table level {}",
                spec.dprime, self.level
            )));
        }
        let mut table = self.clone();
        let n = self.len();
        for i in n - (n >> spec.dprime)..n {
            let k = n - 1 - i;
            table.lower[i] = self.upper[k];
            table.upper[i] = self.lower[k];
            table.eps[i] = self.eps[k];
        }
        Ok(table)
    }
}

fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        values.iter().sum()
    } else {
        let (a, b) = values.split_at(values.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Integrates `g_{d,d'}^(c)` on every cell of level `table_level` with
/// subintervals of length `2^-base_level`.
///
/// Every breakpoint of the integrand (pole, peak, floor activation and the
/// reflection point, plus their mirror images) is dyadic of level at most
/// `max(level(c), d, d')`, so each subinterval is monotone and
/// `|I_L - I_R|` per subinterval bounds both one-sided errors.
pub fn integrate_cells(spec: &PotentialSpec, base_level: u32, table_level: u32) -> Result<CellTable> {
    spec.require_valid()?;
    let grid = GridPotential::new(spec.c, spec.d, Some(spec.dprime), base_level)?;
    integrate_grid(&grid, table_level)
}

/// Cell integrals of the floored potential `g_d^(c)` over the whole circle.
/// [`CellTable::with_reflected_tail`] turns them into those of `g_{d,d'}^(c)`.
pub fn integrate_floored_cells(c: DyadicRational, d: u32, base_level: u32, table_level: u32) -> Result<CellTable> {
    if d < 2 {
        return Err(Error::InvalidSpec(format!("d = {d} must be at least 2")));
    }
    let grid = GridPotential::new(c, d, None, base_level)?;
    integrate_grid(&grid, table_level)
}

fn integrate_grid(grid: &GridPotential, table_level: u32) -> Result<CellTable> {
    let base_level = grid.base_level;
    if table_level > base_level {
        return Err(Error::InvalidArgument(format!(
            "table level {table_level} exceeds base level {base_level}"
        )));
    }
    if table_level > MAX_TABLE_LEVEL {
        return Err(Error::InvalidArgument(format!(
            "table level {table_level} exceeds {MAX_TABLE_LEVEL}"
        )));
    }
    let cells = 1usize << table_level;
    let per_cell = 1u64 << (base_level - table_level);
    let dx = 2f64.powi(-(base_level as i32));
    let mut lower = vec![0.0; cells];
    let mut upper = vec![0.0; cells];
    let mut eps = vec![0.0; cells];
    lower
        .par_iter_mut()
        .zip(upper.par_iter_mut())
        .zip(eps.par_iter_mut())
        .enumerate()
        .with_min_len(256)
        .for_each(|(i, ((lo, up), ep))| {
            let (l, u, variation, magnitude) = grid.integrate_range(i as u64 * per_cell, per_cell);
            *lo = l * dx;
            *up = u * dx;
            *ep = variation * dx * (1.0 + MACHINE_EPSILON)
                + per_cell as f64 * MACHINE_EPSILON * magnitude * dx;
        });
    Ok(CellTable {
        level: table_level,
        base_level,
        lower,
        upper,
        eps,
    })
}

/// One integral per base-level cell (a single rectangle each).
pub fn integrate_base_cells(spec: &PotentialSpec, base_level: u32) -> Result<Vec<IntegralValue>> {
    Ok(integrate_cells(spec, base_level, base_level)?.cells().collect())
}

/// The Haar truncation `A_N` on every level-`N` cylinder: averages
/// `2^N ∫_[ω] φ dx` with aggregated error bounds.
#[derive(Clone, Debug)]
pub struct HaarAverages {
    level: u32,
    value: Vec<f64>,
    upper: Vec<f64>,
    eps: Vec<f64>,
}

impl HaarAverages {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }

    pub fn get(&self, word: BinaryWord) -> IntegralValue {
        assert_eq!(word.len(), self.level, "word length must match the averaging level");
        self.at(word.bits() as usize)
    }

    pub fn at(&self, index: usize) -> IntegralValue {
        IntegralValue::new(self.value[index], self.upper[index], self.eps[index])
    }

    /// Weights indexed by `int(ω)`.
    pub fn values(&self) -> &[f64] {
        &self.value
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.eps
    }

    /// Uniform error bound `max_ω ε_ω`.
    pub fn max_epsilon(&self) -> f64 {
        self.eps.iter().copied().fold(0.0, f64::max)
    }

    /// Builds averages directly from values (synthetic weights in tests and tools).
    pub fn from_values(level: u32, values: Vec<f64>, eps: Vec<f64>) -> Result<Self> {
        if values.len() as u64 != 1u64 << level || eps.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "expected 2^{level} weights and error bounds"
            )));
        }
        Ok(Self {
            level,
            upper: values.clone(),
            value: values,
            eps,
        })
    }
}

/// `A_N(φ)|_[ω] = 2^N ∫_[ω] φ dx` for all `|ω| = N`.
pub fn haar_average(cells: &CellTable, n: u32) -> Result<HaarAverages> {
    if n > cells.level {
        return Err(Error::InvalidArgument(format!(
            "averaging level {n} exceeds table level {}",
            cells.level
        )));
    }
    let span = 1usize << (cells.level - n);
    let scale = 2f64.powi(n as i32);
    let words = 1usize << n;
    let summed: Vec<(f64, f64, f64)> = (0..words)
        .into_par_iter()
        .with_min_len(64)
        .map(|w| {
            let range = w * span..(w + 1) * span;
            let lower = pairwise_sum(&cells.lower[range.clone()]);
            let upper = pairwise_sum(&cells.upper[range.clone()]);
            let eps: f64 = cells.eps[range.clone()].iter().sum();
            let magnitude: f64 = cells.lower[range].iter().map(|v| v.abs()).sum();
            let rounding = (span as f64).log2().ceil().max(1.0) * MACHINE_EPSILON * magnitude;
            (lower * scale, upper * scale, (eps + rounding) * scale * (1.0 + MACHINE_EPSILON))
        })
        .collect();
    let mut value = Vec::with_capacity(words);
    let mut upper = Vec::with_capacity(words);
    let mut eps = Vec::with_capacity(words);
    for (v, u, e) in summed {
        value.push(v);
        upper.push(u);
        eps.push(e);
    }
    Ok(HaarAverages {
        level: n,
        value,
        upper,
        eps,
    })
}

/// `c_ω(φ) = 2^{|ω|+1} (∫_[ω0] φ - ∫_[ω1] φ)`.
pub fn haar_coefficient(cells: &CellTable, word: BinaryWord) -> Result<f64> {
    if word.len() + 1 > cells.level {
        return Err(Error::InvalidArgument(format!(
            "|ω| + 1 = {} exceeds table level {}",
            word.len() + 1,
            cells.level
        )));
    }
    let left = cells.cylinder_integral(word.push(0))?;
    let right = cells.cylinder_integral(word.push(1))?;
    Ok(2f64.powi(word.len() as i32 + 1) * (left - right))
}
