#![no_main]

use fractal_pst::format::{graph_from_json, graph_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = graph_from_json(text) {
        let again = graph_from_json(&graph_to_json(&g)).expect("serialized graph reparses");
        assert!(again == g);
    }
});
