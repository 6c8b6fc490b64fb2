//! Quotient de Bruijn graphs `G_N` and the cycle ↔ periodic-orbit dictionary.
//!
//! Vertices are words of length `N - 1` with `0^{N-1}` and `1^{N-1}` glued;
//! the edge labelled `ω` runs from `[prefix(ω)]` to `[suffix(ω)]` and carries
//! the weight `A_N(φ)|_[ω]`. The two constant self-loops merge into one edge,
//! so `G_N` has `2^{N-1} - 1` vertices and `2^N - 1` edges.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::maxplus::{CycleResult, Digraph, GraphView};
use crate::potential::HaarAverages;
use crate::word::BinaryWord;

pub const MIN_ORDER: u32 = 2;
pub const MAX_ORDER: u32 = 24;

/// `G_N` with per-edge weights and error bounds.
#[derive(Clone, Debug)]
pub struct WeightedDigraph {
    order: u32,
    graph: Digraph,
    epsilon: Vec<f64>,
}

impl WeightedDigraph {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn view(&self) -> GraphView<'_> {
        self.graph.view()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Label of an edge; the merged loop reports `0^N`.
    pub fn label(&self, edge: usize) -> BinaryWord {
        BinaryWord::new(edge as u64, self.order).expect("edge ids are N-bit words")
    }

    /// Edge carrying `word` (both constant words map to the merged loop).
    pub fn edge_for_label(&self, word: BinaryWord) -> Result<usize> {
        if word.len() != self.order {
            return Err(Error::InvalidArgument(format!(
                "label {word} has length {}, expected {}",
                word.len(),
                self.order
            )));
        }
        let all_ones = (1u64 << self.order) - 1;
        Ok(if word.bits() == all_ones { 0 } else { word.bits() as usize })
    }

    /// Representative `(N-1)`-word of a vertex (the glued vertex reports `0^{N-1}`).
    pub fn vertex_word(&self, vertex: usize) -> BinaryWord {
        BinaryWord::new(vertex as u64, self.order - 1).expect("vertex ids are (N-1)-bit words")
    }

    pub fn vertex_of(&self, word: BinaryWord) -> usize {
        vertex_id(word.bits(), self.order)
    }

    pub fn epsilon(&self, edge: usize) -> f64 {
        self.epsilon[edge]
    }

    pub fn max_epsilon(&self) -> f64 {
        self.epsilon.iter().copied().fold(0.0, f64::max)
    }

    pub fn labels(&self, cycle: &CycleResult) -> Vec<BinaryWord> {
        cycle.edges.iter().map(|&e| self.label(e)).collect()
    }

    /// Writes one edge per line: `label source target weight`.
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in 0..self.edge_count() {
            writeln!(
                out,
                "{} {} {} {:.17e}",
                self.label(e),
                self.vertex_word(self.graph.source(e)),
                self.vertex_word(self.graph.target(e)),
                self.graph.weight(e)
            )?;
        }
        Ok(())
    }
}

fn vertex_id(word: u64, order: u32) -> usize {
    let mask = (1u64 << (order - 1)) - 1;
    let v = word & mask;
    if v == mask {
        0
    } else {
        v as usize
    }
}

/// Builds `G_N` from level-`N` averages.
pub fn build_graph(weights: &HaarAverages) -> Result<WeightedDigraph> {
    build_graph_from_values(weights.level(), weights.values(), weights.epsilons())
}

/// Builds `G_N` from a weight and an error bound per `N`-bit word (indexed by `int(ω)`).
pub fn build_graph_from_values(order: u32, values: &[f64], epsilons: &[f64]) -> Result<WeightedDigraph> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "order {order} outside [{MIN_ORDER}, {MAX_ORDER}]"
        )));
    }
    let words = 1usize << order;
    if values.len() != words || epsilons.len() != words {
        return Err(Error::InvalidArgument(format!("expected 2^{order} weights")));
    }
    let (zeros, ones) = (values[0], values[words - 1]);
    let difference = (zeros - ones).abs();
    let tolerance = epsilons[0] + epsilons[words - 1];
    if difference > tolerance {
        return Err(Error::WeightMismatch { difference, tolerance });
    }
    let edges = words - 1;
    let mut source = Vec::with_capacity(edges);
    let mut target = Vec::with_capacity(edges);
    let mut weight = values[..edges].to_vec();
    let mut epsilon = epsilons[..edges].to_vec();
    weight[0] = 0.5 * (zeros + ones);
    epsilon[0] = epsilons[0].max(epsilons[words - 1]) + 0.5 * difference;
    for label in 0..edges as u64 {
        source.push(vertex_id(label >> 1, order) as u32);
        target.push(vertex_id(label, order) as u32);
    }
    let vertices = (1usize << (order - 1)) - 1;
    let graph = Digraph::from_parts(vertices, source, target, weight)?;
    Ok(WeightedDigraph { order, graph, epsilon })
}

/// Masked view of `g` without `edge`; vertices are kept.
pub fn remove_edge(g: &WeightedDigraph, edge: usize) -> Result<GraphView<'_>> {
    if edge >= g.edge_count() {
        return Err(Error::InvalidArgument(format!("edge {edge} out of range")));
    }
    Ok(g.view().without_edge(edge))
}

/// The repeating block of the periodic word traced by a closed walk (last
/// symbol of each label), normalized to its least rotation.
pub fn cycle_to_code(labels: &[BinaryWord]) -> Result<BinaryWord> {
    let first = labels.first().ok_or_else(|| Error::NotACycle("empty walk".into()))?;
    let order = first.len();
    if order < MIN_ORDER {
        return Err(Error::NotACycle(format!("labels of length {order} are too short")));
    }
    if labels.len() as u32 > crate::word::MAX_WORD_LEN {
        return Err(Error::NotACycle(format!("walk of length {} too long", labels.len())));
    }
    for (i, label) in labels.iter().enumerate() {
        let next = &labels[(i + 1) % labels.len()];
        if label.len() != order || next.len() != order {
            return Err(Error::NotACycle("labels differ in length".into()));
        }
        let head = vertex_id(label.bits(), order);
        let tail = vertex_id(next.bits() >> 1, order);
        if head != tail {
            return Err(Error::NotACycle(format!("{label} does not continue into {next}")));
        }
    }
    let code = labels
        .iter()
        .fold(BinaryWord::empty(), |code, label| code.push(label.last()));
    Ok(code.least_rotation())
}

/// A rational `k / (2^p - 1)` on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitPoint {
    numerator: u64,
    denominator: u64,
}

impl OrbitPoint {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator >= denominator {
            return Err(Error::InvalidArgument(format!(
                "{numerator}/{denominator} is not in [0, 1)"
            )));
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// `2p mod 1`.
    pub fn double(&self) -> Self {
        Self {
            numerator: ((2 * self.numerator as u128) % self.denominator as u128) as u64,
            denominator: self.denominator,
        }
    }

    /// `1 - p mod 1`.
    pub fn mirror(&self) -> Self {
        Self {
            numerator: (self.denominator - self.numerator) % self.denominator,
            denominator: self.denominator,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Exact `δ = |1/2 - ((p + c) mod 1)|` as `(numerator, denominator)`.
    pub fn half_distance(&self, c: DyadicRational) -> (u128, u128) {
        let c = c.reduced();
        let q = self.denominator as u128;
        let scale = 2u128 << c.level();
        let den = q * scale;
        // (p + c) mod 1 with denominator q * 2^(L+1)
        let u = (self.numerator as u128 * scale + 2 * c.numerator() as u128 * q) % den;
        let half = den / 2;
        (half.abs_diff(u), den)
    }

    /// `|cos π(p + c)|` computed from the exact distance to the pole.
    pub fn cos_modulus(&self, c: DyadicRational) -> f64 {
        let (num, den) = self.half_distance(c);
        (std::f64::consts::PI * ratio(num, den)).sin()
    }

    /// Exact `p < x`.
    pub fn lt_dyadic(&self, x: DyadicRational) -> bool {
        let x = x.reduced();
        (self.numerator as u128) << x.level() < x.numerator() as u128 * self.denominator as u128
    }
}

/// `num / den` in binary64 without intermediate overflow of the `f64` range.
fn ratio(num: u128, den: u128) -> f64 {
    let g = num_integer::gcd(num, den).max(1);
    let (num, den) = (num / g, den / g);
    if den < 1u128 << 100 {
        num as f64 / den as f64
    } else {
        let shift = 128 - den.leading_zeros() - 100;
        (num >> shift) as f64 / (den >> shift) as f64
    }
}

impl PartialOrd for OrbitPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrbitPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = self.numerator as u128 * other.denominator as u128;
        let b = other.numerator as u128 * self.denominator as u128;
        a.cmp(&b).then(self.denominator.cmp(&other.denominator))
    }
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// The periodic orbit `{int(rot_j(code)) / (2^p - 1)}` of the doubling map.
pub fn code_to_orbit(code: BinaryWord) -> Result<Vec<OrbitPoint>> {
    let p = code.len();
    if p == 0 {
        return Err(Error::InvalidArgument("empty cycle code".into()));
    }
    let q = (1u64 << p) - 1;
    let points: BTreeSet<OrbitPoint> = (0..p)
        .map(|j| OrbitPoint {
            numerator: code.rotate_left(j).bits() % q,
            denominator: q,
        })
        .collect();
    Ok(points.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn flat(order: u32) -> WeightedDigraph {
        let n = 1usize << order;
        build_graph_from_values(order, &vec![0.0; n], &vec![0.0; n]).unwrap()
    }

    #[test]
    fn order_two() {
        let g = flat(2);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.label(0), w("00"));
        assert_eq!(g.edge_for_label(w("11")).unwrap(), 0);
        for e in 0..3 {
            assert_eq!(g.graph().source(e), 0);
            assert_eq!(g.graph().target(e), 0);
        }
    }

    #[test]
    fn order_three() {
        let g = flat(3);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 7);
        // 011: [01] -> [11] = [00]
        let e = g.edge_for_label(w("011")).unwrap();
        assert_eq!(g.graph().source(e), 1);
        assert_eq!(g.graph().target(e), 0);
    }

    #[test]
    fn mismatched_glued_weights() {
        let mut values = vec![0.0; 8];
        values[7] = 1.0;
        let err = build_graph_from_values(3, &values, &[0.1; 8]).unwrap_err();
        assert!(matches!(err, Error::WeightMismatch { .. }));
        values[7] = 0.1;
        let g = build_graph_from_values(3, &values, &[0.1; 8]).unwrap();
        assert!((g.graph().weight(0) - 0.05).abs() < 1e-17);
        assert!((g.epsilon(0) - 0.15).abs() < 1e-15);
    }

    #[test]
    fn codes() {
        assert_eq!(cycle_to_code(&[w("00")]).unwrap(), w("0"));
        assert_eq!(cycle_to_code(&[w("01"), w("10")]).unwrap(), w("01"));
        assert_eq!(cycle_to_code(&[w("010"), w("100"), w("001")]).unwrap(), w("001"));
        assert!(matches!(
            cycle_to_code(&[w("010"), w("010")]),
            Err(Error::NotACycle(_))
        ));
        assert!(cycle_to_code(&[]).is_err());
    }

    #[test]
    fn orbits() {
        let o = code_to_orbit(w("01")).unwrap();
        assert_eq!(o, vec![OrbitPoint::new(1, 3).unwrap(), OrbitPoint::new(2, 3).unwrap()]);
        let o = code_to_orbit(w("001")).unwrap();
        let nums: Vec<u64> = o.iter().map(|p| p.numerator()).collect();
        assert_eq!(nums, vec![1, 2, 4]);
        assert_eq!(code_to_orbit(w("0")).unwrap(), vec![OrbitPoint::new(0, 1).unwrap()]);
        let o = code_to_orbit(w("0111")).unwrap();
        let nums: Vec<u64> = o.iter().map(|p| p.numerator()).collect();
        assert_eq!(nums, vec![7, 11, 13, 14]);
    }

    #[test]
    fn orbit_point_arithmetic() {
        let p = OrbitPoint::new(1, 3).unwrap();
        assert_eq!(p.double(), OrbitPoint::new(2, 3).unwrap());
        assert_eq!(p.mirror(), OrbitPoint::new(2, 3).unwrap());
        let half = DyadicRational::HALF;
        // |cos π(1/3 + 1/2)| = √3/2
        assert!((p.cos_modulus(half) - 3f64.sqrt() / 2.0).abs() < 1e-16);
        assert!(p.lt_dyadic(half));
        assert!(!OrbitPoint::new(2, 3).unwrap().lt_dyadic(half));
        let (num, _) = OrbitPoint::new(0, 1).unwrap().half_distance(half);
        assert_eq!(num, 0);
    }

    #[test]
    fn remove_keeps_vertices() {
        let g = flat(2);
        let view = remove_edge(&g, 0).unwrap();
        assert_eq!(view.graph().vertex_count(), 1);
        assert_eq!(view.edge_count(), 2);
        assert!(remove_edge(&g, 3).is_err());
    }

    #[test]
    fn dump_format() {
        let g = flat(2);
        let mut out = Vec::new();
        g.dump(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("01 0 0 "));
    }
}
