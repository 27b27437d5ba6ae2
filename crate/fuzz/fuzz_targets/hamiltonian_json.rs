#![no_main]

use fractal_pst::format::hamiltonian_from_json;
use fractal_pst::{compress, GraphPropagator};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = hamiltonian_from_json(text) {
        let _ = h.invariants();
        let _ = compress(&h);
        if h.graph().node_count() <= 64 {
            let _ = GraphPropagator::new(&h);
        }
    }
});
