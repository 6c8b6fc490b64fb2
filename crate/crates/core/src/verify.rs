//! Certification of the Gelfond exponent for one dyadic parameter `c`.
//!
//! For each triple `(d, d', N)` in enumeration order the level-`N` averages of
//! `g_{d,d'}^(c)` weight the quotient graph `G_N`; the triple passes when the
//! numerically computed gap beats the Haar tail bound together with twice the
//! integration error and the forward rounding term. The first passing triple
//! whose critical orbit avoids the floor and the reflected tail certifies
//! `Δ^(c) = 1 + β^(c) / log 2`, `β^(c)` being the orbit average of `g^(c)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::debruijn::{build_graph, code_to_orbit, cycle_to_code, OrbitPoint, WeightedDigraph};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::maxplus::{mcm2_bounded, policy_iteration, CycleResult};
use crate::potential::{
    haar_average, integrate_cells, integrate_floored_cells, tail_bound, CellTable, PotentialSpec, TailConstant, DEFAULT_BASE_LEVEL,
    MACHINE_EPSILON, MAX_TABLE_LEVEL,
};
use crate::word::BinaryWord;

/// The search box for `(d, d', N)`: `d ∈ [d_min, d_max]`, `d' ∈ [d, dprime_max]`,
/// `N ∈ [d', n_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRange {
    pub d_min: u32,
    pub d_max: u32,
    pub dprime_max: u32,
    pub n_max: u32,
}

impl Default for TripleRange {
    fn default() -> Self {
        Self {
            d_min: 3,
            d_max: 15,
            dprime_max: 22,
            n_max: 22,
        }
    }
}

impl TripleRange {
    pub fn validate(&self) -> Result<()> {
        if self.d_min < 2 {
            return Err(Error::InvalidArgument(format!("d_min = {} must be at least 2", self.d_min)));
        }
        if self.n_max > MAX_TABLE_LEVEL {
            return Err(Error::InvalidArgument(format!(
                "N_max = {} exceeds {MAX_TABLE_LEVEL}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// All triples in enumeration order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        (self.d_min..=self.d_max).flat_map(move |d| {
            (d..=self.dprime_max).flat_map(move |dprime| (dprime..=self.n_max).map(move |n| Triple { d, dprime, n }))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub d: u32,
    pub dprime: u32,
    pub n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub tail_constant: TailConstant,
    pub base_level: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tail_constant: TailConstant::Standard,
            base_level: DEFAULT_BASE_LEVEL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A triple passed the gap inequality and the coincidence check.
    Certified,
    /// No triple in the search range passed.
    Untestable,
    /// Settled without the graph search (`c = 0`: `g ≤ 0 = g(0)`, so `δ_0` maximizes).
    Analytic,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Untestable => "untestable",
            Status::Analytic => "analytic",
        }
    }
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certified" => Ok(Status::Certified),
            "untestable" => Ok(Status::Untestable),
            "analytic" => Ok(Status::Analytic),
            _ => Err(Error::InvalidArgument(format!("unknown status {s:?}"))),
        }
    }
}

/// Per-`c` outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub c: DyadicRational,
    pub status: Status,
    pub triple: Option<Triple>,
    pub cycle_code: Option<BinaryWord>,
    /// `ψ(c)`: the length of the certified cycle, `0` when untestable.
    pub period: usize,
    pub gap_value: Option<f64>,
    pub threshold: Option<f64>,
    pub epsilon: Option<f64>,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    /// The triple was evaluated on `1 - c` and mapped back.
    pub mirrored: bool,
    pub iterations: usize,
    pub runtime_ms: u64,
    /// Triples whose gap passed but whose orbit failed the coincidence check.
    pub coincidence_rejections: Vec<Triple>,
}

impl VerificationRecord {
    pub fn orbit(&self) -> Option<Vec<OrbitPoint>> {
        self.cycle_code.and_then(|code| code_to_orbit(code).ok())
    }
}

/// Everything computed for one triple.
#[derive(Clone, Debug)]
pub struct TripleCheck {
    pub triple: Triple,
    pub passed: bool,
    pub lambda1: f64,
    /// Best mean seen over the deletion runs; `λ₂` when `complete`.
    pub lambda2: f64,
    pub gap: f64,
    pub threshold: f64,
    pub epsilon: f64,
    /// Whether all deletion runs were performed (a failing triple may stop early).
    pub complete: bool,
    pub gamma1: CycleResult,
    pub code: BinaryWord,
    pub iterations: usize,
}

/// `gap > T + 2ε + (T + gap) ε_m`.
pub fn gap_inequality(gap: f64, threshold: f64, epsilon: f64) -> bool {
    gap > threshold + 2.0 * epsilon + (threshold + gap) * MACHINE_EPSILON
}

/// Chooses the orientation in which `g_{d,d'}` is defined: `c` itself, or
/// `1 - c` (the potential conjugated by `x -> 1 - x`, which commutes with doubling).
pub fn orient(c: DyadicRational, d: u32, dprime: u32) -> Result<(PotentialSpec, bool)> {
    let spec = PotentialSpec::new(c, d, dprime)?;
    if spec.is_valid() {
        return Ok((spec, false));
    }
    let mirrored = spec.mirrored();
    if mirrored.is_valid() {
        return Ok((mirrored, true));
    }
    Err(Error::InapplicableTriple { d, dprime })
}

/// Runs the gap test for `(spec.d, spec.dprime, n)` on a precomputed cell table.
pub fn check_triple_with_cells(
    spec: &PotentialSpec,
    cells: &CellTable,
    n: u32,
    tail_constant: TailConstant,
) -> Result<TripleCheck> {
    let averages = haar_average(cells, n)?;
    let graph = build_graph(&averages)?;
    check_graph(spec, &graph, tail_constant)
}

/// Gap test on an already weighted `G_N`.
pub fn check_graph(spec: &PotentialSpec, graph: &WeightedDigraph, tail_constant: TailConstant) -> Result<TripleCheck> {
    let n = graph.order();
    let triple = Triple {
        d: spec.d,
        dprime: spec.dprime,
        n,
    };
    let epsilon = graph.max_epsilon();
    let threshold = tail_bound(spec.d, n, tail_constant.value());
    let view = graph.view();
    let first = policy_iteration(&view, None)?;
    let lambda1 = first.cycle.mean;
    // Any deletion run reaching λ₁ - required already decides a failure.
    let required = (threshold * (1.0 + MACHINE_EPSILON) + 2.0 * epsilon) / (1.0 - MACHINE_EPSILON);
    let (second, complete) = mcm2_bounded(&view, &first.cycle, Some(&first.policy), lambda1 - required)?;
    let gap = (lambda1 - second.mean).max(0.0);
    let passed = complete && gap_inequality(gap, threshold, epsilon);
    let code = cycle_to_code(&graph.labels(&first.cycle))?;
    Ok(TripleCheck {
        triple,
        passed,
        lambda1,
        lambda2: second.mean,
        gap,
        threshold,
        epsilon,
        complete,
        gamma1: first.cycle,
        code,
        iterations: first.iterations,
    })
}

/// Gap test for one triple, integrating the potential from scratch.
///
/// Fails with [`Error::InapplicableTriple`] when the tail condition holds in
/// neither orientation. The returned code refers to the orientation used.
pub fn check_triple(c: DyadicRational, d: u32, dprime: u32, n: u32, config: &VerifyConfig) -> Result<(TripleCheck, bool)> {
    if !(d <= dprime && dprime <= n) {
        return Err(Error::InvalidArgument(format!("need d <= d' <= N, got ({d}, {dprime}, {n})")));
    }
    let (spec, mirrored) = orient(c, d, dprime)?;
    let cells = integrate_cells(&spec, config.base_level, n)?;
    Ok((check_triple_with_cells(&spec, &cells, n, config.tail_constant)?, mirrored))
}

/// Whether every orbit point sees the untruncated potential: off the floor
/// (`|cos π(p + c)| > sin(π/2^d)`) and left of the reflected tail
/// (`p < 1 - 2^-d'`). Both comparisons are exact.
pub fn coincidence_check(c: DyadicRational, d: u32, dprime: u32, orbit: &[OrbitPoint]) -> bool {
    let tail_start = DyadicRational::ZERO.sub_mod1(&DyadicRational::new(1, dprime).expect("d' within range"));
    orbit.iter().all(|p| {
        let (num, den) = p.half_distance(c);
        let off_floor = num << d > den;
        off_floor && p.lt_dyadic(tail_start)
    })
}

/// `β = (1/|orbit|) Σ g^(c)(p_i)` and `Δ = 1 + β / log 2`.
pub fn exponent_from_orbit(c: DyadicRational, orbit: &[OrbitPoint]) -> Result<(f64, f64)> {
    if orbit.is_empty() {
        return Err(Error::InvalidArgument("empty orbit".into()));
    }
    let mut total = 0.0;
    for p in orbit {
        let modulus = p.cos_modulus(c);
        if modulus == 0.0 {
            return Err(Error::PoleOnOrbit(p.to_string()));
        }
        total += modulus.ln();
    }
    let beta = total / orbit.len() as f64;
    Ok((beta, 1.0 + beta / std::f64::consts::LN_2))
}

fn analytic_zero(c: DyadicRational, started: Instant) -> VerificationRecord {
    let code: BinaryWord = "0".parse().expect("literal word");
    VerificationRecord {
        c,
        status: Status::Analytic,
        triple: None,
        cycle_code: Some(code),
        period: 1,
        gap_value: None,
        threshold: None,
        epsilon: None,
        beta: Some(0.0),
        delta: Some(1.0),
        mirrored: false,
        iterations: 0,
        runtime_ms: started.elapsed().as_millis() as u64,
        coincidence_rejections: Vec::new(),
    }
}

/// Enumerates triples in order and certifies `Δ^(c)` at the first triple that
/// passes both the gap inequality and the coincidence check.
pub fn certify(c: DyadicRational, range: &TripleRange, config: &VerifyConfig) -> Result<VerificationRecord> {
    range.validate()?;
    let started = Instant::now();
    if c == DyadicRational::ZERO {
        return Ok(analytic_zero(c, started));
    }
    let mut iterations = 0;
    let mut rejections = Vec::new();
    let base_level = config.base_level.max(range.n_max);
    for d in range.d_min..=range.d_max {
        let mut floored: Option<CellTable> = None;
        let mut floored_mirror: Option<CellTable> = None;
        for dprime in d..=range.dprime_max.min(range.n_max) {
            let (spec, mirrored) = match orient(c, d, dprime) {
                Ok(oriented) => oriented,
                Err(Error::InapplicableTriple { .. }) => continue,
                Err(e) => return Err(e),
            };
            if floored.is_none() {
                floored = Some(integrate_floored_cells(c, d, base_level, range.n_max)?);
            }
            let base = floored.as_ref().expect("just computed");
            let table = if mirrored {
                floored_mirror.get_or_insert_with(|| base.mirrored())
            } else {
                base
            };
            let cells = table.with_reflected_tail(&spec)?;
            for n in dprime.max(2)..=range.n_max {
                let check = check_triple_with_cells(&spec, &cells, n, config.tail_constant)?;
                iterations += check.iterations;
                if !check.passed {
                    continue;
                }
                let orbit = code_to_orbit(check.code)?;
                if !coincidence_check(spec.c, d, dprime, &orbit) {
                    rejections.push(check.triple);
                    continue;
                }
                let (orbit, code) = if mirrored {
                    (
                        orbit.iter().map(OrbitPoint::mirror).collect::<Vec<_>>(),
                        check.code.complement().least_rotation(),
                    )
                } else {
                    (orbit, check.code)
                };
                let (beta, delta) = exponent_from_orbit(c, &orbit)?;
                return Ok(VerificationRecord {
                    c,
                    status: Status::Certified,
                    triple: Some(check.triple),
                    cycle_code: Some(code),
                    period: check.gamma1.period,
                    gap_value: Some(check.gap),
                    threshold: Some(check.threshold),
                    epsilon: Some(check.epsilon),
                    beta: Some(beta),
                    delta: Some(delta),
                    mirrored,
                    iterations,
                    runtime_ms: started.elapsed().as_millis() as u64,
                    coincidence_rejections: rejections,
                });
            }
        }
    }
    Ok(VerificationRecord {
        c,
        status: Status::Untestable,
        triple: None,
        cycle_code: None,
        period: 0,
        gap_value: None,
        threshold: None,
        epsilon: None,
        beta: None,
        delta: None,
        mirrored: false,
        iterations,
        runtime_ms: started.elapsed().as_millis() as u64,
        coincidence_rejections: rejections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn orbit(code: &str) -> Vec<OrbitPoint> {
        code_to_orbit(code.parse().unwrap()).unwrap()
    }

    #[test]
    fn triple_order() {
        let range = TripleRange {
            d_min: 3,
            d_max: 4,
            dprime_max: 5,
            n_max: 5,
        };
        let triples: Vec<(u32, u32, u32)> = range.triples().map(|t| (t.d, t.dprime, t.n)).collect();
        assert_eq!(triples[..4], [(3, 3, 3), (3, 3, 4), (3, 3, 5), (3, 4, 4)]);
        assert_eq!(triples.last(), Some(&(4, 5, 5)));
        assert_eq!(triples.len(), 6 + 3);
    }

    #[test]
    fn coincidence() {
        assert!(coincidence_check(dy("1/2"), 3, 3, &orbit("01")));
        // The pole of g^(1/2) is the fixed point 0.
        assert!(!coincidence_check(dy("1/2"), 3, 3, &orbit("0")));
        // 6/7 < 1 - 1/8 and |cos π(6/7 + 1/2)| = sin(π/7) > sin(π/8)
        assert!(coincidence_check(dy("1/2"), 3, 3, &orbit("011")));
        assert!(!coincidence_check(dy("1/2"), 3, 2, &orbit("011")));
        // 14/15 ≥ 1 - 1/8
        assert!(!coincidence_check(dy("1/4"), 3, 3, &orbit("0111")));
    }

    #[test]
    fn exponents() {
        let (beta, delta) = exponent_from_orbit(dy("1/2"), &orbit("01")).unwrap();
        assert!((beta - (3f64.sqrt() / 2.0).ln()).abs() < 1e-15);
        assert!((delta - 3f64.ln() / 4f64.ln()).abs() < 1e-15);
        let (beta, delta) = exponent_from_orbit(dy("0/1"), &orbit("0")).unwrap();
        assert_eq!((beta, delta), (0.0, 1.0));
        assert!(matches!(
            exponent_from_orbit(dy("1/2"), &orbit("0")),
            Err(Error::PoleOnOrbit(_))
        ));
    }

    #[test]
    fn synthetic_flat_weights_fail() {
        let spec = PotentialSpec::new(dy("1/2"), 3, 3).unwrap();
        let n = 5;
        let values = vec![-0.3; 1 << n];
        let g = crate::debruijn::build_graph_from_values(n, &values, &vec![0.0; 1 << n]).unwrap();
        let check = check_graph(&spec, &g, TailConstant::Standard).unwrap();
        assert!(!check.passed);
        assert_eq!(check.gap, 0.0);
    }

    #[test]
    fn zero_is_analytic() {
        let record = certify(DyadicRational::ZERO, &TripleRange::default(), &VerifyConfig::default()).unwrap();
        assert_eq!(record.status, Status::Analytic);
        assert_eq!(record.delta, Some(1.0));
        assert_eq!(record.period, 1);
    }

    #[test]
    fn inapplicable_pair() {
        assert!(matches!(orient(dy("0/1"), 3, 3), Err(Error::InapplicableTriple { .. })));
        let (spec, mirrored) = orient(dy("1/4"), 3, 3).unwrap();
        assert!(mirrored);
        assert_eq!(spec.c, dy("3/4"));
        let (_, mirrored) = orient(dy("1/2"), 3, 3).unwrap();
        assert!(!mirrored);
    }
}
