//! Replays the checked-in fuzz corpus through the JSON parsers.

use std::fs;
use std::path::PathBuf;

use fractal_pst::format::*;
use fractal_pst::{compress, verify_pst, GraphPropagator};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    out
}

fn accepted<T, E>(target: &str, parse: impl Fn(&str) -> Result<T, E>) -> Vec<String> {
    seeds(target)
        .into_iter()
        .filter(|(_, text)| parse(text).is_ok())
        .map(|(name, _)| name)
        .collect()
}

#[test]
fn graph_seeds() {
    assert_eq!(
        accepted("graph_json", graph_from_json),
        ["dead_end.json", "diamond1.json", "g0.json", "mixed.json", "path.json"]
    );
    // a layered graph may have dead ends; only lifting onto it fails
    let dead_end = graph_from_json(&seeds("graph_json")[0].1).unwrap();
    let chain = fractal_pst::krawtchouk_chain(dead_end.n()).unwrap();
    assert!(matches!(
        fractal_pst::lift(&chain, &std::sync::Arc::new(dead_end)),
        Err(fractal_pst::Error::MalformedGraph { .. })
    ));
    for (_, text) in seeds("graph_json") {
        if let Ok(g) = graph_from_json(&text) {
            assert!(graph_from_json(&graph_to_json(&g)).unwrap() == g);
        }
    }
}

#[test]
fn chain_seeds() {
    assert_eq!(accepted("chain_json", chain_from_json), ["asym.json", "kraw3.json", "single.json"]);
    let kraw = chain_from_json(&fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/chain_json/kraw3.json"),
    )
    .unwrap())
    .unwrap();
    assert!(verify_pst(&kraw, 1e-8, 99).unwrap().pst);
}

#[test]
fn hamiltonian_seeds() {
    assert_eq!(
        accepted("hamiltonian_json", hamiltonian_from_json),
        ["diamond1_kraw2.json", "not_an_edge.json", "path.json", "perturbed.json"]
    );
    for (name, text) in seeds("hamiltonian_json") {
        let Ok(h) = hamiltonian_from_json(&text) else { continue };
        let inv = h.invariants();
        let compressed = compress(&h);
        let propagator = GraphPropagator::new(&h);
        match name.as_str() {
            "not_an_edge.json" => {
                assert!(!inv.nearest_neighbor);
                assert!(matches!(compressed, Err(fractal_pst::Error::NonTridiagonal { .. })));
                assert!(propagator.is_err());
            }
            "perturbed.json" => {
                assert!(inv.nearest_neighbor && inv.self_adjoint_defect > 1e-4);
                assert!(matches!(compressed, Err(fractal_pst::Error::AsymmetricCompression { .. })));
                assert!(matches!(propagator, Err(fractal_pst::Error::NotSelfAdjoint { .. })));
            }
            _ => {
                assert!(inv.nearest_neighbor && inv.self_adjoint_defect <= 1e-12, "{name}");
                assert!(compressed.is_ok() && propagator.is_ok(), "{name}");
            }
        }
    }
}
