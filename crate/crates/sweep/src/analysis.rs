//! Period statistics of a completed sweep: the length function `h`, the
//! frequencies `ρ(p)`, maximal constant-period intervals and the exponential
//! fit of `ρ(p) / (p Φ(p))`.

use std::collections::BTreeMap;

use gelfond_core::{DyadicRational, Status};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SweepError};
use crate::grid::totient;
use crate::record::SweepRow;

/// A maximal run of consecutive grid points sharing the period `period`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaInterval {
    pub a: DyadicRational,
    pub b: DyadicRational,
    pub period: usize,
}

/// Least-squares line `y = slope · p + intercept`, `y = log(ρ(p) / (p Φ(p)))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// The periods that entered the regression.
    pub periods: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub points: usize,
    /// `h(c)`: the period, `0` for untestable `c`.
    pub h: Vec<(DyadicRational, usize)>,
    pub untestable: Vec<DyadicRational>,
    pub rho: BTreeMap<usize, f64>,
    pub gamma_intervals: Vec<GammaInterval>,
    pub fit: Option<Fit>,
    /// Certified points with `Δ ≥` the MRS bound.
    pub mrs_violations: Vec<DyadicRational>,
}

impl AnalysisReport {
    /// `Σ_p ρ(p) + |untestable| / points`; exactly representable counts make this `1`.
    pub fn total_mass(&self) -> f64 {
        self.rho.values().sum::<f64>() + self.untestable.len() as f64 / self.points as f64
    }
}

/// Ordinary least squares of `y` on `x` with the coefficient of determination.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some((slope, intercept, r_squared))
}

/// `rows` must cover a whole grid; they are sorted by `c` internally.
pub fn analyze(rows: &[SweepRow]) -> Result<AnalysisReport> {
    if rows.is_empty() {
        return Err(SweepError::EmptyInput);
    }
    let mut sorted: Vec<&SweepRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.c.cmp(&b.c));
    let points = sorted.len();

    let h: Vec<(DyadicRational, usize)> = sorted
        .iter()
        .map(|r| (r.c, if r.is_tested() { r.period } else { 0 }))
        .collect();
    let untestable: Vec<DyadicRational> = sorted.iter().filter(|r| !r.is_tested()).map(|r| r.c).collect();

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, p) in h.iter().filter(|(_, p)| *p > 0) {
        *counts.entry(p).or_default() += 1;
    }
    let rho: BTreeMap<usize, f64> = counts
        .iter()
        .map(|(&p, &k)| (p, k as f64 / points as f64))
        .collect();

    let mut gamma_intervals: Vec<GammaInterval> = Vec::new();
    let mut open: Option<GammaInterval> = None;
    for &(c, p) in &h {
        match open.as_mut() {
            Some(run) if p != 0 && run.period == p => run.b = c,
            _ => {
                gamma_intervals.extend(open.take());
                if p != 0 {
                    open = Some(GammaInterval { a: c, b: c, period: p });
                }
            }
        }
    }
    gamma_intervals.extend(open);

    let (xs, ys): (Vec<f64>, Vec<f64>) = rho
        .iter()
        .map(|(&p, &r)| (p as f64, (r / (p as f64 * totient(p as u64) as f64)).ln()))
        .unzip();
    let fit = linear_fit(&xs, &ys).map(|(slope, intercept, r_squared)| Fit {
        slope,
        intercept,
        r_squared,
        periods: rho.keys().copied().collect(),
    });

    let mrs_violations = sorted
        .iter()
        .filter(|r| r.status == Status::Certified && r.delta.is_some_and(|d| d >= r.mrs_bound))
        .map(|r| r.c)
        .collect();

    Ok(AnalysisReport {
        points,
        h,
        untestable,
        rho,
        gamma_intervals,
        fit,
        mrs_violations,
    })
}

/// The report together with the settings it came from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub config_sha256: String,
    pub config: Option<crate::config::SweepConfig>,
    pub report: AnalysisReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::lambda;

    fn row(c: DyadicRational, period: usize) -> SweepRow {
        SweepRow {
            c,
            status: if period == 0 { Status::Untestable } else { Status::Certified },
            triple: None,
            cycle_code: None,
            period,
            beta: None,
            delta: (period > 0).then_some(0.7),
            gap: None,
            threshold: None,
            epsilon: None,
            mrs_bound: 0.9,
            runtime_ms: 0,
        }
    }

    #[test]
    fn constant_periods() {
        let rows: Vec<SweepRow> = lambda(4).unwrap().into_iter().map(|c| row(c, 3)).collect();
        let report = analyze(&rows).unwrap();
        assert_eq!(report.gamma_intervals.len(), 1);
        assert_eq!(report.gamma_intervals[0].a, DyadicRational::ZERO);
        assert_eq!(report.gamma_intervals[0].b.to_string(), "15/16");
        assert_eq!(report.rho.len(), 1);
        assert_eq!(report.rho[&3], 1.0);
        assert!(report.fit.is_none());
        assert_eq!(report.total_mass(), 1.0);
    }

    #[test]
    fn untestable_points_break_intervals() {
        let grid = lambda(3).unwrap();
        let periods = [1, 2, 2, 0, 2, 3, 3, 2];
        let rows: Vec<SweepRow> = grid.iter().zip(periods).map(|(&c, p)| row(c, p)).collect();
        let report = analyze(&rows).unwrap();
        let spans: Vec<(String, String, usize)> = report
            .gamma_intervals
            .iter()
            .map(|g| (g.a.to_string(), g.b.to_string(), g.period))
            .collect();
        assert_eq!(
            spans,
            [
                ("0/8".into(), "0/8".into(), 1),
                ("1/8".into(), "2/8".into(), 2),
                ("4/8".into(), "4/8".into(), 2),
                ("5/8".into(), "6/8".into(), 3),
                ("7/8".into(), "7/8".into(), 2),
            ]
        );
        assert_eq!(report.untestable.len(), 1);
        assert_eq!(report.total_mass(), 1.0);
        let fit = report.fit.unwrap();
        assert_eq!(fit.periods, vec![1, 2, 3]);
    }

    #[test]
    fn exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| -0.78 * v + 0.5).collect();
        let (slope, intercept, r2) = linear_fit(&x, &y).unwrap();
        assert!((slope + 0.78).abs() < 1e-12);
        assert!((intercept - 0.5).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_input() {
        assert!(matches!(analyze(&[]), Err(SweepError::EmptyInput)));
    }
}
