//! Seeded random families and the property checks run by `selftest`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{krawtchouk_chain, verify_pst, ChainPropagator, JacobiChain};
use crate::error::Result;
use crate::evolve::{oracle_deviation_with, GraphPropagator, TransferAmplitude};
use crate::graph::{build_graph, validate_layered, GrowthSpec, LayeredGraph};
use crate::layered::{apply_p, apply_p_star, compress, lift, proj_sym, sym_leakage};
use crate::state::{ChainState, GraphState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A spec of level `1..=max_level` with entries drawn from the given sets.
pub fn random_growth_spec<R: Rng>(
    rng: &mut R,
    max_level: usize,
    branching: &[usize],
    segmenting: &[usize],
) -> GrowthSpec {
    let level = rng.random_range(1..=max_level);
    let b = (0..level).map(|_| *branching.choose(rng).expect("non-empty")).collect();
    let s = (0..level).map(|_| *segmenting.choose(rng).expect("non-empty")).collect();
    GrowthSpec::new(b, s).expect("generator parameters are valid")
}

/// A mirror-symmetric chain of length `n` with fields in `[-1, 1]` and
/// couplings in `[0.1, 2]`.
pub fn random_mirror_chain<R: Rng>(rng: &mut R, n: usize) -> JacobiChain {
    let mut b = vec![0.0; n + 1];
    for i in 0..=n / 2 {
        let v = rng.random_range(-1.0..=1.0);
        b[i] = v;
        b[n - i] = v;
    }
    let mut j = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let v = rng.random_range(0.1..=2.0);
        j[i] = v;
        j[n - 1 - i] = v;
    }
    JacobiChain::new(b, j).expect("positive couplings")
}

pub fn random_amplitudes<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, worst: f64, tol: f64) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: worst <= tol,
        detail: format!("worst {worst:.3e} (tol {tol:.0e})"),
    }
}

/// Runs every property suite with deterministic randomness from `seed`.
pub fn run_selftest(seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut rng = rng(seed);
    let mut results = Vec::new();

    // chain: gap law, certification and norm conservation
    let mut gap_worst = 0.0f64;
    let mut time_worst = 0.0f64;
    let mut norm_worst = 0.0f64;
    for n in 1..=32 {
        let c = krawtchouk_chain(n)?;
        let r = verify_pst(&c, 1e-8, 99)?;
        gap_worst = r.gaps.iter().fold(gap_worst, |m, g| m.max((g - 1.0).abs()));
        time_worst = time_worst.max(match (r.pst, r.transfer_time) {
            (true, Some(t)) => (t - PI).abs(),
            _ => f64::INFINITY,
        });
        let p = ChainPropagator::new(&c)?;
        let t = rng.random_range(0.0..10.0);
        norm_worst = norm_worst.max((p.evolve(&ChainState::basis(n + 1, 0), t).norm() - 1.0).abs());
    }
    results.push(outcome("krawtchouk gap law", gap_worst, 1e-10));
    results.push(outcome("krawtchouk transfer time", time_worst, 1e-8));
    results.push(outcome("chain norm conservation", norm_worst, 1e-12));

    // graphs: counts, layer sums, mirror combinatorics, validation round trip
    let mut graph_failures = 0usize;
    let mut specs = Vec::new();
    for _ in 0..20 {
        let spec = random_growth_spec(&mut rng, 3, &[1, 2, 3], &[2, 3]);
        let g = build_graph(&spec)?;
        let sizes = g.layer_sizes();
        let ok = g.n() == spec.chain_length()
            && g.edge_count() == spec.edge_count()
            && sizes.iter().eq(sizes.iter().rev())
            && (0..g.n()).all(|n| {
                let down: usize = g.layer_nodes(n + 1).map(|y| g.deg_minus(y)).sum();
                g.edges_between(n) == down
                    && g.layer_nodes(n).all(|x| g.deg_plus(x) * sizes[n] == g.edges_between(n))
            })
            && {
                let (nodes, edges) = g.to_raw();
                validate_layered(nodes, edges).map(|v| v == g).unwrap_or(false)
            };
        graph_failures += usize::from(!ok);
        specs.push((spec, Arc::new(g)));
    }
    results.push(CheckOutcome {
        name: "graph tables",
        passed: graph_failures == 0,
        detail: format!("{graph_failures} of {} graphs failed", specs.len()),
    });

    // lift/compress round trip and weighted self-adjointness
    let mut round_trip = 0.0f64;
    let mut adjoint = 0.0f64;
    for (_, g) in &specs {
        for c in [krawtchouk_chain(g.n())?, random_mirror_chain(&mut rng, g.n())] {
            let h = lift(&c, g)?;
            let back = compress(&h)?;
            round_trip = back
                .diagonal()
                .iter()
                .zip(c.diagonal())
                .chain(back.couplings().iter().zip(c.couplings()))
                .fold(round_trip, |m, (a, b)| m.max((a - b).abs()));
            adjoint = adjoint.max(h.self_adjoint_defect().0);
        }
    }
    results.push(outcome("compress(lift(c)) = c", round_trip, 1e-12));
    results.push(outcome("weighted self-adjointness", adjoint, 1e-12));

    // projections
    let mut proj = 0.0f64;
    for (_, g) in specs.iter().take(10) {
        for _ in 0..10 {
            proj = proj.max(projection_defect(&mut rng, g));
        }
    }
    results.push(outcome("projection identities", proj, 1e-12));

    // dynamics on graphs up to 200 nodes
    let mut unitarity = 0.0f64;
    let mut group = 0.0f64;
    let mut oracle = 0.0f64;
    let mut transfer = 0.0f64;
    let mut leakage = 0.0f64;
    for (_, g) in specs.iter().filter(|(_, g)| g.node_count() <= 200) {
        let c = krawtchouk_chain(g.n())?;
        let h = lift(&c, g)?;
        leakage = leakage.max(sym_leakage(&h));
        let prop = GraphPropagator::new(&h)?;
        let chain_prop = ChainPropagator::new(&c)?;
        let psi = GraphState::new(random_amplitudes(&mut rng, g.node_count()));
        let (s, t) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0));
        let out = prop.evolve(&psi, t);
        unitarity = unitarity.max((out.weighted_norm(g) - psi.weighted_norm(g)).abs());
        group = group.max(prop.evolve(&prop.evolve(&psi, s), t).max_abs_diff(&prop.evolve(&psi, s + t)));
        oracle = oracle.max(oracle_deviation_with(&prop, &chain_prop, rng.random_range(0.0..10.0 * PI)));
        transfer = transfer.max(1.0 - prop.fidelity(PI));
    }
    results.push(outcome("symmetric subspace invariance", leakage, 1e-12));
    results.push(outcome("weighted unitarity", unitarity, 1e-11));
    results.push(outcome("group law", group, 1e-10));
    results.push(outcome("chain/graph oracle equivalence", oracle, 1e-10));
    results.push(outcome("graph transfer at T = pi", transfer, 1e-8));

    Ok(results)
}

/// Worst violation of idempotence, kernel, isometry and adjointness of the
/// averaging maps on one random pair of states.
pub fn projection_defect<R: Rng>(rng: &mut R, g: &LayeredGraph) -> f64 {
    let psi = GraphState::new(random_amplitudes(rng, g.node_count()));
    let phi = ChainState::new(random_amplitudes(rng, g.n() + 1));

    let once = proj_sym(g, &psi);
    let idempotent = proj_sym(g, &once).max_abs_diff(&once);

    // psi - P*P psi has zero layer sums
    let residual = GraphState::new(
        psi.amplitudes()
            .iter()
            .zip(once.amplitudes())
            .map(|(a, b)| a - b)
            .collect(),
    );
    let kernel = apply_p(g, &residual).norm();

    let lifted = apply_p_star(g, &phi);
    let isometry = (lifted.weighted_norm(g) - phi.norm()).abs();
    let adjoint = (apply_p(g, &psi).inner(&phi) - psi.weighted_inner(&lifted, g)).norm();

    idempotent.max(kernel).max(isometry).max(adjoint)
}
