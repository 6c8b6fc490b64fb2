//! Maximum cycle mean by Howard's policy iteration in the max-plus semiring.
//!
//! A policy picks one out-edge per vertex. Value determination computes, for
//! the functional graph of a policy, the mean `η` of the cycle each vertex
//! drains into and a bias `x` with `x_i = w(π(i)) - η_i + x_{Out(π(i))}`.
//! Policy improvement first raises `η` (the set `J`) and, once `η` is stable,
//! the bias (the set `I`). At the fixed point `max_i η_i` is the maximum cycle
//! mean over every cycle of the graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on the improvement tests.
pub const IMPROVEMENT_TOLERANCE: f64 = 1.0 / (1u64 << 48) as f64;

const NONE: u32 = u32::MAX;

/// A directed multigraph with real edge weights, stored as out-edge lists.
#[derive(Clone, Debug)]
pub struct Digraph {
    vertex_count: usize,
    source: Vec<u32>,
    target: Vec<u32>,
    weight: Vec<f64>,
    out_offsets: Vec<usize>,
    out_edges: Vec<u32>,
}

impl Digraph {
    /// Builds a graph from `(source, target, weight)` triples; edge ids follow
    /// the input order.
    pub fn new(vertex_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut source = Vec::with_capacity(edges.len());
        let mut target = Vec::with_capacity(edges.len());
        let mut weight = Vec::with_capacity(edges.len());
        for &(s, t, w) in edges {
            source.push(s as u32);
            target.push(t as u32);
            weight.push(w);
        }
        Self::from_parts(vertex_count, source, target, weight)
    }

    pub fn from_parts(vertex_count: usize, source: Vec<u32>, target: Vec<u32>, weight: Vec<f64>) -> Result<Self> {
        if source.len() != target.len() || source.len() != weight.len() {
            return Err(Error::InvalidArgument("edge arrays differ in length".into()));
        }
        if source.len() >= NONE as usize || vertex_count >= NONE as usize {
            return Err(Error::InvalidArgument("graph too large".into()));
        }
        if let Some(bad) = source.iter().chain(&target).find(|&&v| v as usize >= vertex_count) {
            return Err(Error::InvalidArgument(format!("vertex {bad} out of range")));
        }
        if let Some(w) = weight.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("edge weight {w} is not finite")));
        }
        let mut out_offsets = vec![0usize; vertex_count + 1];
        for &s in &source {
            out_offsets[s as usize + 1] += 1;
        }
        for v in 0..vertex_count {
            out_offsets[v + 1] += out_offsets[v];
        }
        let mut fill = out_offsets.clone();
        let mut out_edges = vec![0u32; source.len()];
        for (e, &s) in source.iter().enumerate() {
            out_edges[fill[s as usize]] = e as u32;
            fill[s as usize] += 1;
        }
        Ok(Self {
            vertex_count,
            source,
            target,
            weight,
            out_offsets,
            out_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, edge: usize) -> usize {
        self.source[edge] as usize
    }

    pub fn target(&self, edge: usize) -> usize {
        self.target[edge] as usize
    }

    pub fn weight(&self, edge: usize) -> f64 {
        self.weight[edge]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    /// Out-edges of `vertex` in increasing id order.
    pub fn out_edges(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_edges[self.out_offsets[vertex]..self.out_offsets[vertex + 1]]
            .iter()
            .map(|&e| e as usize)
    }

    /// Same topology with new edge weights.
    pub fn with_weights(&self, weight: Vec<f64>) -> Result<Self> {
        if weight.len() != self.edge_count() {
            return Err(Error::InvalidArgument("weight vector has wrong length".into()));
        }
        if let Some(w) = weight.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("edge weight {w} is not finite")));
        }
        Ok(Self { weight, ..self.clone() })
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            removed: Vec::new(),
        }
    }
}

/// A graph with some edges masked out; shares the base graph read-only.
#[derive(Clone, Debug)]
pub struct GraphView<'a> {
    graph: &'a Digraph,
    removed: Vec<usize>,
}

impl<'a> GraphView<'a> {
    pub fn graph(&self) -> &'a Digraph {
        self.graph
    }

    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    /// Same vertices, one more edge masked.
    pub fn without_edge(&self, edge: usize) -> Self {
        let mut removed = self.removed.clone();
        if !removed.contains(&edge) {
            removed.push(edge);
            removed.sort_unstable();
        }
        Self {
            graph: self.graph,
            removed,
        }
    }

    pub fn is_active(&self, edge: usize) -> bool {
        self.removed.binary_search(&edge).is_err()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count() - self.removed.len()
    }

    pub fn active_out_edges(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.out_edges(vertex).filter(move |&e| self.is_active(e))
    }

    /// Vertices that can reach a cycle: repeatedly strips vertices without an
    /// out-edge into the remaining set.
    fn live_vertices(&self) -> Vec<bool> {
        let g = self.graph;
        let n = g.vertex_count();
        let mut degree: Vec<u32> = (0..n).map(|v| self.active_out_edges(v).count() as u32).collect();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] == 0).collect();
        if stack.is_empty() {
            return alive;
        }
        let mut in_offsets = vec![0usize; n + 1];
        for e in 0..g.edge_count() {
            if self.is_active(e) {
                in_offsets[g.target(e) + 1] += 1;
            }
        }
        for v in 0..n {
            in_offsets[v + 1] += in_offsets[v];
        }
        let mut fill = in_offsets.clone();
        let mut in_edges = vec![0u32; in_offsets[n]];
        for e in 0..g.edge_count() {
            if self.is_active(e) {
                let t = g.target(e);
                in_edges[fill[t]] = e as u32;
                fill[t] += 1;
            }
        }
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &e in &in_edges[in_offsets[v]..in_offsets[v + 1]] {
                let s = g.source(e as usize);
                if alive[s] {
                    degree[s] -= 1;
                    if degree[s] == 0 {
                        stack.push(s);
                    }
                }
            }
        }
        alive
    }
}

/// One chosen out-edge per vertex (`None` for vertices that cannot reach a cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    choice: Vec<u32>,
}

impl Policy {
    pub fn edge(&self, vertex: usize) -> Option<usize> {
        let e = self.choice[vertex];
        (e != NONE).then_some(e as usize)
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// Each live vertex takes its heaviest out-edge (lowest id on ties).
    pub fn greedy(view: &GraphView<'_>) -> Self {
        let alive = view.live_vertices();
        Self::greedy_on(view, &alive)
    }

    fn greedy_on(view: &GraphView<'_>, alive: &[bool]) -> Self {
        let g = view.graph();
        let choice = (0..g.vertex_count())
            .map(|v| {
                if !alive[v] {
                    return NONE;
                }
                let mut best = NONE;
                let mut best_w = f64::NEG_INFINITY;
                for e in view.active_out_edges(v) {
                    if alive[g.target(e)] && g.weight(e) > best_w {
                        best = e as u32;
                        best_w = g.weight(e);
                    }
                }
                best
            })
            .collect();
        Self { choice }
    }

    /// Checks that every live vertex picks one of its own active out-edges
    /// leading to a live vertex.
    fn is_valid_on(&self, view: &GraphView<'_>, alive: &[bool]) -> bool {
        let g = view.graph();
        self.choice.len() == g.vertex_count()
            && (0..g.vertex_count()).all(|v| {
                let e = self.choice[v];
                if !alive[v] {
                    return e == NONE;
                }
                e != NONE
                    && (e as usize) < g.edge_count()
                    && g.source(e as usize) == v
                    && view.is_active(e as usize)
                    && alive[g.target(e as usize)]
            })
    }

    /// Adapts a policy to `view`: keeps valid choices and re-picks the rest greedily.
    pub fn repaired(&self, view: &GraphView<'_>) -> Self {
        let alive = view.live_vertices();
        self.repaired_on(view, &alive)
    }

    fn repaired_on(&self, view: &GraphView<'_>, alive: &[bool]) -> Self {
        let g = view.graph();
        let greedy = Self::greedy_on(view, alive);
        let choice = (0..g.vertex_count())
            .map(|v| {
                let e = self.choice.get(v).copied().unwrap_or(NONE);
                let keep = alive[v]
                    && e != NONE
                    && (e as usize) < g.edge_count()
                    && g.source(e as usize) == v
                    && view.is_active(e as usize)
                    && alive[g.target(e as usize)];
                if keep {
                    e
                } else {
                    greedy.choice[v]
                }
            })
            .collect();
        Self { choice }
    }

    pub fn from_edges(view: &GraphView<'_>, edges: &[Option<usize>]) -> Result<Self> {
        let policy = Self {
            choice: edges.iter().map(|e| e.map_or(NONE, |e| e as u32)).collect(),
        };
        let alive = view.live_vertices();
        if policy.is_valid_on(view, &alive) {
            Ok(policy)
        } else {
            Err(Error::InvalidArgument("policy does not match the graph".into()))
        }
    }
}

/// Per-vertex cycle mean `η` and bias `x` of a policy.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenmode {
    pub eta: Vec<f64>,
    pub x: Vec<f64>,
}

impl Eigenmode {
    /// `max_i η_i` over vertices that carry a policy.
    pub fn lambda(&self) -> f64 {
        self.eta
            .iter()
            .copied()
            .filter(|v| !v.is_nan())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A simple cycle with its mean weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleResult {
    pub mean: f64,
    /// Edge ids in traversal order.
    pub edges: Vec<usize>,
    pub period: usize,
}

impl CycleResult {
    pub fn from_edges(graph: &Digraph, edges: Vec<usize>) -> Self {
        let total: f64 = edges.iter().map(|&e| graph.weight(e)).sum();
        Self {
            mean: total / edges.len() as f64,
            period: edges.len(),
            edges,
        }
    }

    pub fn total_weight(&self, graph: &Digraph) -> f64 {
        self.edges.iter().map(|&e| graph.weight(e)).sum()
    }
}

/// Value determination for `policy`: `η` and `x` on every policy cycle and
/// its basin. Vertices without a policy get `η = x = NaN`.
pub fn value_determination(view: &GraphView<'_>, policy: &Policy) -> Eigenmode {
    let g = view.graph();
    let n = g.vertex_count();
    let mut eta = vec![f64::NAN; n];
    let mut x = vec![f64::NAN; n];
    // 0 = unvisited, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; n];
    let mut walk: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 || policy.edge(start).is_none() {
            continue;
        }
        walk.clear();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            v = g.target(policy.edge(v).expect("live vertices have a policy"));
        }
        let mut tail_len = walk.len();
        if state[v] == 1 {
            // New cycle: walk[pos..] in forward order.
            let pos = walk.iter().position(|&u| u == v).expect("cycle vertex is on the walk");
            let cycle = &walk[pos..];
            let k = cycle.len();
            let total: f64 = cycle.iter().map(|&u| g.weight(policy.edge(u).unwrap())).sum();
            let mean = total / k as f64;
            let anchor = (0..k).min_by_key(|&i| cycle[i]).unwrap();
            eta[cycle[anchor]] = mean;
            x[cycle[anchor]] = 0.0;
            for t in 1..k {
                let i = (anchor + k - t) % k;
                let u = cycle[i];
                let next = cycle[(i + 1) % k];
                eta[u] = mean;
                x[u] = g.weight(policy.edge(u).unwrap()) - mean + x[next];
            }
            for &u in cycle {
                state[u] = 2;
            }
            tail_len = pos;
        }
        for &u in walk[..tail_len].iter().rev() {
            let e = policy.edge(u).unwrap();
            let next = g.target(e);
            eta[u] = eta[next];
            x[u] = g.weight(e) - eta[u] + x[next];
            state[u] = 2;
        }
    }
    Eigenmode { eta, x }
}

/// Outcome of one policy-improvement step.
#[derive(Clone, Debug, PartialEq)]
pub enum Improvement {
    Converged,
    Improved(Policy),
}

fn tolerance(a: f64, b: f64) -> f64 {
    IMPROVEMENT_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// One step of policy improvement: changes the policy on `J` (vertices that
/// can reach a larger `η`) if nonempty, otherwise on `I` (vertices whose bias
/// can increase).
pub fn policy_improvement(view: &GraphView<'_>, policy: &Policy, mode: &Eigenmode) -> Improvement {
    let g = view.graph();
    let n = g.vertex_count();
    // Per vertex: (in J, K choice, in I, L choice)
    let decisions: Vec<(bool, u32, bool, u32)> = (0..n)
        .into_par_iter()
        .with_min_len(4096)
        .map(|i| {
            if policy.edge(i).is_none() {
                return (false, NONE, false, NONE);
            }
            let mut max_eta = f64::NEG_INFINITY;
            for e in view.active_out_edges(i) {
                let t = g.target(e);
                if !mode.eta[t].is_nan() && mode.eta[t] > max_eta {
                    max_eta = mode.eta[t];
                }
            }
            let eta_tol = tolerance(max_eta, mode.eta[i]);
            let mut k_choice = NONE;
            let mut l_choice = NONE;
            let mut best = f64::NEG_INFINITY;
            for e in view.active_out_edges(i) {
                let t = g.target(e);
                if mode.eta[t].is_nan() || mode.eta[t] < max_eta - eta_tol {
                    continue;
                }
                if k_choice == NONE {
                    k_choice = e as u32;
                }
                let value = g.weight(e) - mode.eta[t] + mode.x[t];
                if value > best {
                    best = value;
                    l_choice = e as u32;
                }
            }
            let in_j = max_eta > mode.eta[i] + eta_tol;
            let in_i = best > mode.x[i] + tolerance(best, mode.x[i]);
            (in_j, k_choice, in_i, l_choice)
        })
        .collect();
    let any_j = decisions.iter().any(|d| d.0);
    let any_i = decisions.iter().any(|d| d.2);
    if !any_j && !any_i {
        return Improvement::Converged;
    }
    let choice = decisions
        .iter()
        .zip(&policy.choice)
        .map(|(&(in_j, k, in_i, l), &old)| {
            if any_j {
                if in_j {
                    k
                } else {
                    old
                }
            } else if in_i {
                l
            } else {
                old
            }
        })
        .collect();
    Improvement::Improved(Policy { choice })
}

/// Result of a full policy iteration.
#[derive(Clone, Debug)]
pub struct HowardSolution {
    pub cycle: CycleResult,
    pub policy: Policy,
    pub mode: Eigenmode,
    pub iterations: usize,
}

impl HowardSolution {
    pub fn lambda(&self) -> f64 {
        self.cycle.mean
    }
}

/// Iteration cap; far above anything observed (iterations stay in the tens).
fn iteration_limit(view: &GraphView<'_>) -> usize {
    10_000 + 4 * view.graph().vertex_count()
}

/// Howard's policy iteration from a given (or greedy) starting policy.
pub fn policy_iteration(view: &GraphView<'_>, initial: Option<&Policy>) -> Result<HowardSolution> {
    let alive = view.live_vertices();
    if !alive.iter().any(|&a| a) {
        return Err(Error::NoCycle);
    }
    let mut policy = match initial {
        Some(p) => p.repaired_on(view, &alive),
        None => Policy::greedy_on(view, &alive),
    };
    let mut mode = value_determination(view, &policy);
    let limit = iteration_limit(view);
    let mut iterations = 0;
    loop {
        match policy_improvement(view, &policy, &mode) {
            Improvement::Converged => break,
            Improvement::Improved(next) => {
                policy = next;
                mode = value_determination(view, &policy);
                iterations += 1;
                if iterations > limit {
                    return Err(Error::NoConvergence(limit));
                }
            }
        }
    }
    let cycle = critical_cycle(view.graph(), &policy, &mode);
    Ok(HowardSolution {
        cycle,
        policy,
        mode,
        iterations,
    })
}

/// Follows the policy from the first vertex of maximal `η` until it repeats.
fn critical_cycle(g: &Digraph, policy: &Policy, mode: &Eigenmode) -> CycleResult {
    let lambda = mode.lambda();
    let start = mode.eta.iter().position(|&v| v == lambda).expect("some vertex attains the maximum");
    let mut seen = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut v = start;
    while !index.contains_key(&v) {
        index.insert(v, seen.len());
        seen.push(v);
        v = g.target(policy.edge(v).unwrap());
    }
    let from = index[&v];
    let edges = seen[from..].iter().map(|&u| policy.edge(u).unwrap()).collect();
    CycleResult::from_edges(g, edges)
}

/// Maximum cycle mean over all cycles and one attaining simple cycle.
pub fn mcm1(view: &GraphView<'_>) -> Result<CycleResult> {
    Ok(policy_iteration(view, None)?.cycle)
}

/// Deletion run for one edge of `Γ`, warm-started from `hint`.
fn deletion_run(view: &GraphView<'_>, edge: usize, hint: Option<&Policy>) -> Result<CycleResult> {
    let reduced = view.without_edge(edge);
    Ok(policy_iteration(&reduced, hint)?.cycle)
}

/// `λ₂ = max_{e ∈ Γ} MCM₁(G \ e)` with the attaining cycle.
pub fn mcm2(view: &GraphView<'_>, gamma1: &CycleResult) -> Result<CycleResult> {
    mcm2_with_hint(view, gamma1, None)
}

/// [`mcm2`] with every deletion run warm-started from `hint`.
pub fn mcm2_with_hint(view: &GraphView<'_>, gamma1: &CycleResult, hint: Option<&Policy>) -> Result<CycleResult> {
    let runs: Vec<Result<CycleResult>> = gamma1
        .edges
        .par_iter()
        .map(|&e| deletion_run(view, e, hint))
        .collect();
    let mut best: Option<CycleResult> = None;
    for run in runs {
        match run {
            Ok(c) => {
                if best.as_ref().map_or(true, |b| c.mean > b.mean) {
                    best = Some(c);
                }
            }
            Err(Error::NoCycle) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::NoCycle)
}

/// Deletion runs in `Γ` order, stopping at the first whose mean reaches
/// `stop_at`. Returns the best cycle seen and whether the scan completed.
pub fn mcm2_bounded(
    view: &GraphView<'_>,
    gamma1: &CycleResult,
    hint: Option<&Policy>,
    stop_at: f64,
) -> Result<(CycleResult, bool)> {
    let mut best: Option<CycleResult> = None;
    for &e in &gamma1.edges {
        match deletion_run(view, e, hint) {
            Ok(c) => {
                let stop = c.mean >= stop_at;
                if best.as_ref().map_or(true, |b| c.mean > b.mean) {
                    best = Some(c);
                }
                if stop {
                    return Ok((best.unwrap(), false));
                }
            }
            Err(Error::NoCycle) => {}
            Err(err) => return Err(err),
        }
    }
    best.map(|b| (b, true)).ok_or(Error::NoCycle)
}

/// `λ₁`, `λ₂`, their difference and both cycles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapResult {
    pub lambda1: f64,
    pub lambda2: f64,
    pub gap: f64,
    pub gamma1: CycleResult,
    pub gamma2: CycleResult,
}

pub fn gap(view: &GraphView<'_>) -> Result<GapResult> {
    let first = policy_iteration(view, None)?;
    let second = mcm2_with_hint(view, &first.cycle, Some(&first.policy))?;
    let lambda1 = first.cycle.mean;
    let lambda2 = second.mean;
    let gap = if lambda1 - lambda2 <= tolerance(lambda1, lambda2) {
        0.0
    } else {
        lambda1 - lambda2
    };
    Ok(GapResult {
        lambda1,
        lambda2,
        gap,
        gamma1: first.cycle,
        gamma2: second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> Digraph {
        Digraph::new(n, edges).unwrap()
    }

    #[test]
    fn single_vertex_loop() {
        let g = graph(1, &[(0, 0, 2.5)]);
        let policy = Policy::greedy(&g.view());
        let mode = value_determination(&g.view(), &policy);
        assert_eq!(mode.eta, vec![2.5]);
        assert_eq!(mode.x, vec![0.0]);
    }

    #[test]
    fn two_cycle_mean() {
        let g = graph(2, &[(0, 1, 1.0), (1, 0, 4.0)]);
        let policy = Policy::greedy(&g.view());
        let mode = value_determination(&g.view(), &policy);
        assert_eq!(mode.eta, vec![2.5, 2.5]);
        // x_1 = w(1 -> 0) - η + x_0 = 1.5
        assert_eq!(mode.x, vec![0.0, 1.5]);
    }

    #[test]
    fn improvement_switches_loop() {
        let g = graph(1, &[(0, 0, 1.0), (0, 0, 3.0)]);
        let view = g.view();
        let policy = Policy::from_edges(&view, &[Some(0)]).unwrap();
        let mode = value_determination(&view, &policy);
        match policy_improvement(&view, &policy, &mode) {
            Improvement::Improved(p) => assert_eq!(p.edge(0), Some(1)),
            Improvement::Converged => panic!("expected an improvement"),
        }
        let best = Policy::from_edges(&view, &[Some(1)]).unwrap();
        let mode = value_determination(&view, &best);
        assert_eq!(policy_improvement(&view, &best, &mode), Improvement::Converged);
    }

    #[test]
    fn loops_three_and_one() {
        let g = graph(1, &[(0, 0, 3.0), (0, 0, 1.0)]);
        let result = gap(&g.view()).unwrap();
        assert_eq!(result.lambda1, 3.0);
        assert_eq!(result.gamma1.period, 1);
        assert_eq!(result.lambda2, 1.0);
        assert_eq!(result.gap, 2.0);
    }

    #[test]
    fn triangle_beats_loop() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0), (0, 0, 1.9)]);
        let c = mcm1(&g.view()).unwrap();
        assert_eq!(c.mean, 2.0);
        assert_eq!(c.period, 3);
        let mut edges = c.edges.clone();
        edges.sort();
        assert_eq!(edges, vec![0, 1, 2]);
    }

    #[test]
    fn equal_weights_have_no_gap() {
        let g = graph(3, &[(0, 1, 0.5), (1, 2, 0.5), (2, 0, 0.5), (0, 0, 0.5), (1, 0, 0.5)]);
        assert_eq!(gap(&g.view()).unwrap().gap, 0.0);
    }

    #[test]
    fn acyclic_after_deletion() {
        let g = graph(2, &[(0, 1, 1.0), (1, 0, 1.0)]);
        let view = g.view().without_edge(0);
        assert_eq!(mcm1(&view), Err(Error::NoCycle));
        assert_eq!(mcm2(&g.view(), &mcm1(&g.view()).unwrap()), Err(Error::NoCycle));
    }

    #[test]
    fn dead_ends_are_pruned() {
        // 0 -> 1 -> 2 (dead end), 0 -> 0
        let g = graph(3, &[(0, 1, 10.0), (1, 2, 10.0), (0, 0, -1.0)]);
        let c = mcm1(&g.view()).unwrap();
        assert_eq!(c.mean, -1.0);
        assert_eq!(c.edges, vec![2]);
    }

    #[test]
    fn disconnected_components() {
        let g = graph(4, &[(0, 1, 1.0), (1, 0, 1.0), (2, 3, 5.0), (3, 2, -1.0), (2, 2, 1.5)]);
        let c = mcm1(&g.view()).unwrap();
        assert_eq!(c.mean, 2.0);
    }
}
