//! Hamiltonians on layered graphs and their relation to Jacobi chains.
//!
//! Graph states live in `L²(G)` with the layer-weighted inner product
//! (`μ(x) = 1 / |layer of x|`); chain states use the unweighted one. The
//! averaging map `P` and its adjoint `P*` (constant extension over layers)
//! connect the two, and `J = P H P*` compresses a graph Hamiltonian to a
//! chain. [`lift`] inverts that compression for nearest-neighbour,
//! layer-compatible couplings.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chain::JacobiChain;
use crate::error::{Error, Result};
use crate::graph::LayeredGraph;
use crate::state::{ChainState, GraphState};

/// Action matrix of a real Hamiltonian on a layered graph:
/// `(Hψ)(x) = Σ_y H(x, y) ψ(y)`.
///
/// The matrix is generally not symmetric; self-adjointness holds in the
/// weighted inner product, `μ(x) H(x, y) = μ(y) H(y, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredHamiltonian {
    graph: Arc<LayeredGraph>,
    entries: BTreeMap<(usize, usize), f64>,
    weights: Vec<f64>,
}

/// Which structural assumptions a Hamiltonian satisfies, with the size of
/// each violation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub nearest_neighbor: bool,
    /// Largest spread of `H(x,x)`, `deg+(x) H(x,y)` or `deg-(y) H(y,x)` within
    /// a layer (pair).
    pub layer_constancy_defect: f64,
    /// Largest `|μ(x) H(x,y) - μ(y) H(y,x)|`.
    pub self_adjoint_defect: f64,
}

impl LayeredHamiltonian {
    /// Builds a Hamiltonian from `(x, y, H(x, y))` triples over node indices.
    /// Zero entries are dropped. Structural assumptions are not enforced here;
    /// see [`LayeredHamiltonian::invariants`].
    pub fn from_entries(
        graph: Arc<LayeredGraph>,
        entries: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let nodes = graph.node_count();
        let mut map = BTreeMap::new();
        for (x, y, value) in entries {
            for index in [x, y] {
                if index >= nodes {
                    return Err(Error::IndexOutOfRange { index, nodes });
                }
            }
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    what: "hamiltonian entry",
                    value,
                });
            }
            if map.insert((x, y), value).is_some() {
                return Err(Error::DuplicateEntry(graph.id(x).clone(), graph.id(y).clone()));
            }
        }
        map.retain(|_, v| *v != 0.0);
        let weights = (0..nodes).map(|x| graph.weight(x)).collect();
        Ok(LayeredHamiltonian {
            graph,
            entries: map,
            weights,
        })
    }

    pub fn graph(&self) -> &LayeredGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<LayeredGraph> {
        &self.graph
    }

    /// Nonzero entries in `(x, y)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(x, y), &v)| (x, y, v))
    }

    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.entries.get(&(x, y)).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn apply(&self, psi: &GraphState) -> GraphState {
        assert_eq!(psi.len(), self.graph.node_count(), "graph state length");
        let mut out = GraphState::zeros(&self.graph);
        let amps = out.amplitudes_mut();
        for (&(x, y), &h) in &self.entries {
            amps[x] += psi[y] * h;
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.graph.node_count();
        let mut m = DMatrix::zeros(n, n);
        for (&(x, y), &h) in &self.entries {
            m[(x, y)] = h;
        }
        m
    }

    /// Largest `|μ(x) H(x,y) - μ(y) H(y,x)|` and the pair attaining it.
    pub fn self_adjoint_defect(&self) -> (f64, Option<(usize, usize)>) {
        let mut worst = (0.0, None);
        for (&(x, y), &h) in &self.entries {
            let d = (self.weights[x] * h - self.weights[y] * self.entry(y, x)).abs();
            if d > worst.0 {
                worst = (d, Some((x, y)));
            }
        }
        for (&(y, x), &h) in &self.entries {
            // entries whose transpose is missing
            if !self.entries.contains_key(&(x, y)) {
                let d = (self.weights[y] * h).abs();
                if d > worst.0 {
                    worst = (d, Some((x, y)));
                }
            }
        }
        worst
    }

    pub fn invariants(&self) -> InvariantReport {
        let g = &*self.graph;
        let nearest_neighbor = self.entries.keys().all(|&(x, y)| x == y || g.is_edge(x, y));

        let mut defect = 0.0f64;
        let mut spread = |values: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
            if lo.is_finite() {
                defect = defect.max(hi - lo);
            }
        };
        for n in 0..=g.n() {
            spread(&mut g.layer_nodes(n).map(|x| self.entry(x, x)));
            if n < g.n() {
                spread(&mut g.layer_nodes(n).flat_map(|x| {
                    g.up(x)
                        .iter()
                        .map(move |&y| g.deg_plus(x) as f64 * self.entry(x, y))
                }));
                spread(&mut g.layer_nodes(n).flat_map(|x| {
                    g.up(x)
                        .iter()
                        .map(move |&y| g.deg_minus(y) as f64 * self.entry(y, x))
                }));
            }
        }

        InvariantReport {
            nearest_neighbor,
            layer_constancy_defect: defect,
            self_adjoint_defect: self.self_adjoint_defect().0,
        }
    }

    /// Returns a copy with the coupling on edge `(x, y)` shifted by `delta`:
    /// `H(x,y) += delta` and `H(y,x) += delta μ(x) / μ(y)`, which preserves
    /// weighted self-adjointness.
    pub fn with_perturbed_coupling(&self, x: usize, y: usize, delta: f64) -> Result<Self> {
        let nodes = self.graph.node_count();
        for index in [x, y] {
            if index >= nodes {
                return Err(Error::IndexOutOfRange { index, nodes });
            }
        }
        if !self.graph.is_edge(x, y) {
            return Err(Error::NotAnEdge {
                x: self.graph.id(x).clone(),
                y: self.graph.id(y).clone(),
            });
        }
        let mut out = self.clone();
        *out.entries.entry((x, y)).or_insert(0.0) += delta;
        *out.entries.entry((y, x)).or_insert(0.0) += delta * self.weights[x] / self.weights[y];
        Ok(out)
    }
}

/// Lifts a chain onto a layered graph:
/// `H(x,x) = B_{Π(x)}`, and for an edge `x → y` with `Π(y) = Π(x) + 1`,
/// `H(x,y) = J_{Π(x)+1} / deg+(x)` and `H(y,x) = J_{Π(x)+1} / deg-(y)`.
pub fn lift(chain: &JacobiChain, graph: &Arc<LayeredGraph>) -> Result<LayeredHamiltonian> {
    let g = &**graph;
    if chain.sites() != g.n() + 1 {
        return Err(Error::SizeMismatch {
            chain_sites: chain.sites(),
            graph_sites: g.n() + 1,
        });
    }
    for x in 0..g.node_count() {
        let layer = g.layer(x);
        let missing = if layer < g.n() && g.deg_plus(x) == 0 {
            Some("no edge to the next layer")
        } else if layer > 0 && g.deg_minus(x) == 0 {
            Some("no edge to the previous layer")
        } else {
            None
        };
        if let Some(detail) = missing {
            return Err(Error::MalformedGraph {
                node: g.id(x).clone(),
                detail: detail.to_owned(),
            });
        }
    }

    let b = chain.diagonal();
    let j = chain.couplings();
    let mut entries = Vec::with_capacity(g.node_count() + 2 * g.edge_count());
    for x in 0..g.node_count() {
        entries.push((x, x, b[g.layer(x)]));
    }
    for &(x, y) in g.edges() {
        let coupling = j[g.layer(x)];
        entries.push((x, y, coupling / g.deg_plus(x) as f64));
        entries.push((y, x, coupling / g.deg_minus(y) as f64));
    }
    LayeredHamiltonian::from_entries(graph.clone(), entries)
}

/// Compresses a graph Hamiltonian to the chain `P H P*`.
///
/// Entry `(n, m)` of `P H P*` is the layer-`n` average of `Σ_{y ∈ layer m}
/// H(x, y)`. The result must be tridiagonal, symmetric (to a relative
/// `1e-12`) and have positive couplings.
pub fn compress(h: &LayeredHamiltonian) -> Result<JacobiChain> {
    let g = h.graph();
    let sites = g.n() + 1;
    let mut m = DMatrix::<f64>::zeros(sites, sites);
    for (x, y, value) in h.entries() {
        m[(g.layer(x), g.layer(y))] += value;
    }
    for n in 0..sites {
        let size = g.layer_size(n) as f64;
        for k in 0..sites {
            m[(n, k)] /= size;
        }
    }
    for n in 0..sites {
        for k in 0..sites {
            if n.abs_diff(k) > 1 && m[(n, k)] != 0.0 {
                return Err(Error::NonTridiagonal {
                    row: n,
                    col: k,
                    value: m[(n, k)],
                });
            }
        }
    }
    let scale = m.amax().max(1.0);
    let mut couplings = Vec::with_capacity(sites - 1);
    for n in 0..sites - 1 {
        let (upper, lower) = (m[(n, n + 1)], m[(n + 1, n)]);
        if (upper - lower).abs() > 1e-12 * scale {
            return Err(Error::AsymmetricCompression {
                row: n,
                col: n + 1,
                upper,
                lower,
            });
        }
        couplings.push(upper);
    }
    let diagonal = (0..sites).map(|n| m[(n, n)]).collect();
    JacobiChain::new(diagonal, couplings)
}

/// `P ψ`: the average of `ψ` over each layer.
pub fn apply_p(g: &LayeredGraph, psi: &GraphState) -> ChainState {
    assert_eq!(psi.len(), g.node_count(), "graph state length");
    let out = (0..=g.n())
        .map(|n| {
            let sum: Complex64 = g.layer_nodes(n).map(|x| psi[x]).sum();
            sum / g.layer_size(n) as f64
        })
        .collect();
    ChainState::new(out)
}

/// `P* φ`: the layer-constant extension `(P*φ)(x) = φ(Π(x))`.
pub fn apply_p_star(g: &LayeredGraph, phi: &ChainState) -> GraphState {
    assert_eq!(phi.len(), g.n() + 1, "chain state length");
    GraphState::new((0..g.node_count()).map(|x| phi[g.layer(x)]).collect())
}

/// `P* P ψ`, the orthogonal projection onto layer-constant states.
pub fn proj_sym(g: &LayeredGraph, psi: &GraphState) -> GraphState {
    apply_p_star(g, &apply_p(g, psi))
}

/// Largest weighted norm of `(I - P*P) H P*|n>` over the layer indicators.
pub fn sym_leakage(h: &LayeredHamiltonian) -> f64 {
    let g = h.graph();
    (0..=g.n())
        .map(|n| {
            let indicator = apply_p_star(g, &ChainState::basis(g.n() + 1, n));
            let image = h.apply(&indicator);
            let sym = proj_sym(g, &image);
            let leak: Vec<Complex64> = image
                .amplitudes()
                .iter()
                .zip(sym.amplitudes())
                .map(|(a, b)| a - b)
                .collect();
            GraphState::new(leak).weighted_norm(g)
        })
        .fold(0.0, f64::max)
}

/// Whether the layer-constant subspace is invariant under `H` to `tol`.
pub fn check_sym_invariant(h: &LayeredHamiltonian, tol: f64) -> bool {
    sym_leakage(h) <= tol
}
