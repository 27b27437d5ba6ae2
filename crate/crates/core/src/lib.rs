//! Perfect quantum state transfer on diamond fractal graphs.
//!
//! A one-excitation spin chain is a Jacobi matrix `J`. Lifting `J` onto a
//! layered graph (nodes grouped by distance from a left end) produces a
//! nearest-neighbour Hamiltonian `H` with `P H P* = J`, where `P` averages
//! over layers. The layer-constant states are invariant under `H`, so any
//! perfect transfer the chain achieves at time `T` with phase `φ` is achieved
//! on the graph between its two end nodes at the same `T` and `φ`.
//!
//! * [`graph`]: diamond graph construction and layered-graph validation
//! * [`chain`]: Jacobi chains, the Krawtchouk chain and gap-criterion
//!   certification
//! * [`layered`]: lift, compression and the averaging projections
//! * [`evolve`]: graph dynamics, fidelity scans and chain/graph oracles
//! * [`format`]: JSON and CSV file formats

pub mod chain;
pub mod error;
pub mod evolve;
pub mod format;
pub mod graph;
pub mod layered;
pub mod state;
pub mod suite;
pub mod tridiag;

pub use chain::{evolve_chain, krawtchouk_chain, verify_pst, ChainPropagator, JacobiChain, PstReport};
pub use error::{Error, Result};
pub use evolve::{
    evolve_graph, fidelity_graph, oracle_deviation, oracle_equivalence, scan_transfer,
    spectrum_containment, FidelityTrace, GraphPropagator, TransferAmplitude,
};
pub use graph::{build_graph, validate_layered, GrowthSpec, LayeredGraph, NodeId};
pub use layered::{
    apply_p, apply_p_star, check_sym_invariant, compress, lift, proj_sym, LayeredHamiltonian,
};
pub use state::{ChainState, GraphState};
