//! Complex amplitude vectors on chains and graphs.
//!
//! Inner products follow the convention `<ψ|φ> = Σ ψ(x) conj(φ(x)) w(x)`,
//! with unit weights on chains and layer weights `μ` on graphs.

use std::ops::Index;

use num_complex::Complex64;

use crate::graph::LayeredGraph;

/// A state on the chain sites `0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState(Vec<Complex64>);

impl ChainState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        ChainState(amplitudes)
    }

    pub fn from_real(values: &[f64]) -> Self {
        ChainState(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(sites: usize) -> Self {
        ChainState(vec![Complex64::new(0.0, 0.0); sites])
    }

    /// The one-excitation state `|n>`.
    pub fn basis(sites: usize, n: usize) -> Self {
        let mut s = Self::zeros(sites);
        s.0[n] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn inner(&self, other: &ChainState) -> Complex64 {
        assert_eq!(self.len(), other.len(), "chain state lengths");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ChainState) -> f64 {
        assert_eq!(self.len(), other.len(), "chain state lengths");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for ChainState {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// A state on the nodes of a layered graph, indexed in the graph's node order.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphState(Vec<Complex64>);

impl GraphState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        GraphState(amplitudes)
    }

    pub fn from_real(values: &[f64]) -> Self {
        GraphState(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(g: &LayeredGraph) -> Self {
        GraphState(vec![Complex64::new(0.0, 0.0); g.node_count()])
    }

    /// The one-excitation state `|x>`.
    pub fn basis(g: &LayeredGraph, node: usize) -> Self {
        let mut s = Self::zeros(g);
        s.0[node] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn weighted_inner(&self, other: &GraphState, g: &LayeredGraph) -> Complex64 {
        assert_eq!(self.len(), g.node_count(), "graph state length");
        assert_eq!(other.len(), g.node_count(), "graph state length");
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(x, (a, b))| a * b.conj() * g.weight(x))
            .sum()
    }

    pub fn weighted_norm(&self, g: &LayeredGraph) -> f64 {
        self.weighted_inner(self, g).re.max(0.0).sqrt()
    }

    pub fn max_abs_diff(&self, other: &GraphState) -> f64 {
        assert_eq!(self.len(), other.len(), "graph state lengths");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for GraphState {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}
