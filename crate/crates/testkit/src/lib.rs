//! Slow, obviously-correct reference implementations for cross-checking the
//! max-plus solver: exhaustive simple-cycle enumeration and Karp's algorithm.

use gelfond_core::maxplus::Digraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every simple cycle as a list of edge ids, each listed once, starting at
/// its smallest vertex.
pub fn simple_cycles(graph: &Digraph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        on_path[start] = true;
        extend(graph, start, start, &mut on_path, &mut path, &mut out);
        on_path[start] = false;
    }
    out
}

fn extend(
    graph: &Digraph,
    start: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for e in graph.out_edges(at) {
        let t = graph.target(e);
        if t == start {
            path.push(e);
            out.push(path.clone());
            path.pop();
        } else if t > start && !on_path[t] {
            on_path[t] = true;
            path.push(e);
            extend(graph, start, t, on_path, path, out);
            path.pop();
            on_path[t] = false;
        }
    }
}

pub fn mean(weights: &[f64], cycle: &[usize]) -> f64 {
    cycle.iter().map(|&e| weights[e]).sum::<f64>() / cycle.len() as f64
}

/// Best cycle avoiding `excluded`, as `(mean, index into cycles)`.
pub fn best_cycle(cycles: &[Vec<usize>], weights: &[f64], excluded: Option<usize>) -> Option<(f64, usize)> {
    cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| excluded.map_or(true, |x| !c.contains(&x)))
        .map(|(i, c)| (mean(weights, c), i))
        .max_by(|a, b| a.0.total_cmp(&b.0))
}

/// `(λ₁, Γ₁ index, λ₂, Γ₂ index)` with `λ₂ = max_{e ∈ Γ₁} λ₁(G \ e)`.
pub fn top_two(cycles: &[Vec<usize>], weights: &[f64]) -> Option<(f64, usize, f64, usize)> {
    let (l1, i1) = best_cycle(cycles, weights, None)?;
    let (l2, i2) = cycles[i1]
        .iter()
        .filter_map(|&e| best_cycle(cycles, weights, Some(e)))
        .max_by(|a, b| a.0.total_cmp(&b.0))?;
    Some((l1, i1, l2, i2))
}

/// Karp's `max_v min_k (D_n(v) - D_k(v)) / (n - k)`.
pub fn karp(graph: &Digraph) -> Option<f64> {
    let n = graph.vertex_count();
    let mut d = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    d[0].fill(0.0);
    for k in 1..=n {
        for e in 0..graph.edge_count() {
            let v = d[k - 1][graph.source(e)] + graph.weight(e);
            let t = graph.target(e);
            if v > d[k][t] {
                d[k][t] = v;
            }
        }
    }
    (0..n)
        .filter(|&v| d[n][v] > f64::NEG_INFINITY)
        .map(|v| {
            (0..n)
                .filter(|&k| d[k][v] > f64::NEG_INFINITY)
                .map(|k| (d[n][v] - d[k][v]) / (n - k) as f64)
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(f64::max)
}

/// A random strongly connected digraph: a Hamiltonian cycle through a random
/// permutation plus `extra` random edges, weights uniform in `[-1, 1)`.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize, f64)> = (0..n)
        .map(|i| (order[i], order[(i + 1) % n], rng.gen_range(-1.0..1.0)))
        .collect();
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(-1.0..1.0)));
    }
    Digraph::new(n, &edges).expect("valid edge list")
}

/// Same multiset of edges, irrespective of rotation.
pub fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_complete_graph() {
        // K3 with loops: 3 loops, 3 two-cycles, 2 three-cycles.
        let mut edges = Vec::new();
        for s in 0..3 {
            for t in 0..3 {
                edges.push((s, t, 0.0));
            }
        }
        let g = Digraph::new(3, &edges).unwrap();
        assert_eq!(simple_cycles(&g).len(), 8);
    }

    #[test]
    fn karp_matches_enumeration() {
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let g = random_strongly_connected(&mut rng, 6, 8);
            let cycles = simple_cycles(&g);
            let (best, _) = best_cycle(&cycles, g.weights(), None).unwrap();
            assert!((karp(&g).unwrap() - best).abs() < 1e-12);
        }
    }
}
