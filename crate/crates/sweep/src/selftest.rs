//! Quick consistency checks runnable from the command line: the product
//! identity for exponential sums and Howard's iteration against Karp's
//! algorithm on small quotient de Bruijn graphs.

use gelfond_core::debruijn::{build_graph, build_graph_from_values};
use gelfond_core::maxplus::{mcm1, Digraph};
use gelfond_core::potential::{haar_average, integrate_cells, PotentialSpec};
use gelfond_core::sequence::{partial_sum, product_magnitude, WeightedSequenceSpec};
use gelfond_core::DyadicRational;
use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
}

/// Maximum cycle mean by Karp's recurrence over walks of fixed length.
pub fn karp(graph: &Digraph) -> Option<f64> {
    let n = graph.vertex_count();
    let mut table = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    table[0].fill(0.0);
    for k in 1..=n {
        for e in 0..graph.edge_count() {
            let (s, t) = (graph.source(e), graph.target(e));
            let cand = table[k - 1][s] + graph.weight(e);
            if cand > table[k][t] {
                table[k][t] = cand;
            }
        }
    }
    (0..n)
        .filter(|&v| table[n][v].is_finite())
        .map(|v| {
            (0..n)
                .filter(|&k| table[k][v].is_finite())
                .map(|k| (table[n][v] - table[k][v]) / (n - k) as f64)
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(f64::max)
}

/// Golden-ratio sequence in `[0, 1)`.
fn kronecker(i: usize) -> f64 {
    (i as f64 * 0.618_033_988_749_894_8).fract()
}

pub fn product_identity(samples: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for c in ["1/2", "1/4", "3/8", "192/1024"] {
        let spec = WeightedSequenceSpec::new(c.parse()?);
        for m in 1..=12 {
            for i in 0..samples {
                let x = kronecker(i + 1);
                let direct = partial_sum(&spec, 1 << m, x)?.norm();
                let product = product_magnitude(&spec, m, x)?;
                let scale = product.max(1.0);
                worst = worst.max((direct - product).abs() / scale);
            }
        }
    }
    let tolerance = 1e-9;
    Ok(Check {
        name: "product identity".into(),
        passed: worst <= tolerance,
        worst,
        tolerance,
    })
}

pub fn howard_vs_karp() -> Result<Check> {
    let c: DyadicRational = "1/2".parse()?;
    let spec = PotentialSpec::new(c, 3, 3)?;
    let cells = integrate_cells(&spec, 16, 8)?;
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let g = build_graph(&haar_average(&cells, n)?)?;
        worst = worst.max(compare(g.graph())?);
        for shift in 0..4 {
            let values: Vec<f64> = (0..1usize << n).map(|i| kronecker(i * 7 + shift * 131 + 1) - 0.5).collect();
            let mut values = values;
            values[(1 << n) - 1] = values[0];
            let g = build_graph_from_values(n, &values, &vec![0.0; 1 << n])?;
            worst = worst.max(compare(g.graph())?);
        }
    }
    let tolerance = 1e-12;
    Ok(Check {
        name: "howard vs karp".into(),
        passed: worst <= tolerance,
        worst,
        tolerance,
    })
}

fn compare(graph: &Digraph) -> Result<f64> {
    let howard = mcm1(&graph.view())?.mean;
    let karp = karp(graph).unwrap_or(f64::NEG_INFINITY);
    Ok((howard - karp).abs())
}

pub fn run_all() -> Result<Vec<Check>> {
    Ok(vec![product_identity(200)?, howard_vs_karp()?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn karp_two_loops() {
        let g = Digraph::new(2, &[(0, 0, 1.0), (0, 1, 5.0), (1, 0, -1.0), (1, 1, 3.0)]).unwrap();
        assert_eq!(karp(&g), Some(3.0));
    }

    #[test]
    fn checks_pass() {
        for check in run_all().unwrap() {
            assert!(check.passed, "{check:?}");
        }
    }
}
