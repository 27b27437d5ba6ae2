//! Time evolution on layered graphs.
//!
//! `H` is self-adjoint only in the weighted inner product, so it is
//! diagonalized through the similar symmetric matrix
//! `S = D^{1/2} H D^{-1/2}` with `D = diag(μ)`. Then
//! `e^{itH} = D^{-1/2} e^{itS} D^{1/2}`.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::chain::ChainPropagator;
use crate::error::{Error, Result};
use crate::graph::LayeredGraph;
use crate::layered::{apply_p, apply_p_star, compress, LayeredHamiltonian};
use crate::state::{ChainState, GraphState};

/// Relative weighted self-adjointness defect accepted before diagonalizing.
pub const SELF_ADJOINT_TOL: f64 = 1e-12;

/// Golden-section refinement stops once the bracket is this narrow.
pub const REFINE_TOL: f64 = 1e-10;

/// Anything with an end-to-end transfer amplitude `<end| e^{itH} |start>`.
pub trait TransferAmplitude {
    fn transfer_amplitude(&self, t: f64) -> Complex64;

    fn fidelity(&self, t: f64) -> f64 {
        self.transfer_amplitude(t).norm()
    }
}

impl TransferAmplitude for ChainPropagator {
    fn transfer_amplitude(&self, t: f64) -> Complex64 {
        self.amplitude(self.sites() - 1, 0, t)
    }
}

/// Spectral decomposition of a graph Hamiltonian, computed once.
#[derive(Debug, Clone)]
pub struct GraphPropagator {
    graph: Arc<LayeredGraph>,
    sqrt_weights: Vec<f64>,
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl GraphPropagator {
    pub fn new(h: &LayeredHamiltonian) -> Result<Self> {
        let g = h.graph();
        let scale = h.entries().fold(1.0f64, |m, (_, _, v)| m.max(v.abs()));
        if let (defect, Some((x, y))) = h.self_adjoint_defect() {
            if defect > SELF_ADJOINT_TOL * scale {
                return Err(Error::NotSelfAdjoint {
                    x: g.id(x).clone(),
                    y: g.id(y).clone(),
                    defect,
                });
            }
        }
        let sqrt_weights: Vec<f64> = h.weights().iter().map(|w| w.sqrt()).collect();
        let n = g.node_count();
        let mut s = DMatrix::<f64>::zeros(n, n);
        for (x, y, v) in h.entries() {
            s[(x, y)] += 0.5 * sqrt_weights[x] * v / sqrt_weights[y];
            s[(y, x)] += 0.5 * sqrt_weights[x] * v / sqrt_weights[y];
        }
        let eig = SymmetricEigen::try_new(s, f64::EPSILON, 0).ok_or(Error::NoConvergence {
            index: 0,
            iterations: 0,
        })?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, col| eig.eigenvectors[(i, order[col])]);
        Ok(GraphPropagator {
            graph: h.graph_arc().clone(),
            sqrt_weights,
            values,
            vectors,
        })
    }

    pub fn graph(&self) -> &LayeredGraph {
        &self.graph
    }

    /// Eigenvalues of `H` (equivalently of `S`), ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// `e^{itH} ψ`.
    pub fn evolve(&self, psi: &GraphState, t: f64) -> GraphState {
        let n = self.graph.node_count();
        assert_eq!(psi.len(), n, "graph state length");
        let v = &self.vectors;
        let scaled: Vec<Complex64> = (0..n).map(|x| psi[x] * self.sqrt_weights[x]).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let overlap: Complex64 = (0..n).map(|x| scaled[x] * v[(x, k)]).sum();
            if overlap == Complex64::new(0.0, 0.0) {
                continue;
            }
            let c = overlap * Complex64::from_polar(1.0, t * self.values[k]);
            for (x, o) in out.iter_mut().enumerate() {
                *o += c * v[(x, k)];
            }
        }
        for (o, w) in out.iter_mut().zip(&self.sqrt_weights) {
            *o /= *w;
        }
        GraphState::new(out)
    }

    /// `(e^{itH})(to, from)`.
    pub fn amplitude(&self, to: usize, from: usize, t: f64) -> Complex64 {
        let v = &self.vectors;
        let ratio = self.sqrt_weights[from] / self.sqrt_weights[to];
        self.values
            .iter()
            .enumerate()
            .map(|(k, &lambda)| Complex64::from_polar(ratio * v[(to, k)] * v[(from, k)], t * lambda))
            .sum()
    }

    /// `<x_L| e^{itH} |x_R>`, the amplitude of the reverse transfer.
    pub fn return_amplitude(&self, t: f64) -> Complex64 {
        self.amplitude(self.graph.left(), self.graph.right(), t)
    }
}

impl TransferAmplitude for GraphPropagator {
    fn transfer_amplitude(&self, t: f64) -> Complex64 {
        self.amplitude(self.graph.right(), self.graph.left(), t)
    }
}

/// `e^{itH} ψ0`.
pub fn evolve_graph(h: &LayeredHamiltonian, psi0: &GraphState, t: f64) -> Result<GraphState> {
    Ok(GraphPropagator::new(h)?.evolve(psi0, t))
}

/// `|<x_R| e^{itH} |x_L>|`. Both end layers are singletons, so the weighted
/// and unweighted amplitudes agree.
pub fn fidelity_graph(h: &LayeredHamiltonian, t: f64) -> Result<f64> {
    Ok(GraphPropagator::new(h)?.fidelity(t))
}

/// `max_n ‖P e^{itH} P*|n> - e^{itJ}|n>‖` with `J = compress(h)`.
///
/// The chain side runs through the tridiagonal eigensolver and the graph side
/// through the dense symmetric one.
pub fn oracle_deviation(h: &LayeredHamiltonian, t: f64) -> Result<f64> {
    let chain = compress(h)?;
    let graph = GraphPropagator::new(h)?;
    let chain_prop = ChainPropagator::new(&chain)?;
    Ok(oracle_deviation_with(&graph, &chain_prop, t))
}

pub(crate) fn oracle_deviation_with(
    graph: &GraphPropagator,
    chain: &ChainPropagator,
    t: f64,
) -> f64 {
    let g = graph.graph();
    let sites = g.n() + 1;
    (0..sites)
        .map(|n| {
            let basis = ChainState::basis(sites, n);
            let lhs = apply_p(g, &graph.evolve(&apply_p_star(g, &basis), t));
            let rhs = chain.evolve(&basis, t);
            let diff: Vec<Complex64> = lhs
                .amplitudes()
                .iter()
                .zip(rhs.amplitudes())
                .map(|(a, b)| a - b)
                .collect();
            ChainState::new(diff).norm()
        })
        .fold(0.0, f64::max)
}

/// Whether graph and chain dynamics agree through `P`/`P*` to `tol`.
pub fn oracle_equivalence(h: &LayeredHamiltonian, t: f64, tol: f64) -> Result<bool> {
    Ok(oracle_deviation(h, t)? <= tol)
}

/// Every eigenvalue of `compress(h)` lies within `tol` of one of `H`.
pub fn spectrum_containment(h: &LayeredHamiltonian, tol: f64) -> Result<bool> {
    let chain = compress(h)?;
    let chain_values = chain.eigensystem()?.values;
    let graph = GraphPropagator::new(h)?;
    Ok(chain_values.iter().all(|&l| {
        graph
            .eigenvalues()
            .iter()
            .any(|&m| (m - l).abs() <= tol)
    }))
}

/// Fidelity samples on a uniform grid plus a refined maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTrace {
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
    pub argmax_time: f64,
    pub argmax_fidelity: f64,
    /// Fidelity evaluations spent refining the grid maximum; these points are
    /// not part of `times`.
    pub refinement_evaluations: usize,
}

/// Samples the transfer fidelity at `samples` uniform times on `[0, t_max]`,
/// then refines the best grid point by golden-section search over its two
/// neighbouring intervals to a bracket of [`REFINE_TOL`].
pub fn scan_transfer<P>(target: &P, t_max: f64, samples: usize) -> Result<FidelityTrace>
where
    P: TransferAmplitude + Sync,
{
    if t_max <= 0.0 || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!("t_max must be positive, got {t_max}")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let step = t_max / (samples - 1) as f64;
    let times: Vec<f64> = (0..samples)
        .map(|i| if i + 1 == samples { t_max } else { i as f64 * step })
        .collect();
    let fidelities: Vec<f64> = times.par_iter().map(|&t| target.fidelity(t)).collect();

    let best = fidelities
        .iter()
        .enumerate()
        .fold(0, |b, (i, &f)| if f > fidelities[b] { i } else { b });
    let lo = times[best.saturating_sub(1)];
    let hi = times[(best + 1).min(samples - 1)];
    let (t_ref, f_ref, evaluations) = golden_max(|t| target.fidelity(t), lo, hi, REFINE_TOL);

    let (argmax_time, argmax_fidelity) = if f_ref > fidelities[best] {
        (t_ref, f_ref)
    } else {
        (times[best], fidelities[best])
    };
    Ok(FidelityTrace {
        times,
        fidelities,
        argmax_time,
        argmax_fidelity,
        refinement_evaluations: evaluations,
    })
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut evaluations = 2;
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let t = 0.5 * (a + b);
    (t, f(t), evaluations + 1)
}
