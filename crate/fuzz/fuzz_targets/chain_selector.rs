#![no_main]

use fractal_pst_cli::ChainSelector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sel) = text.parse::<ChainSelector>() {
        let shown = sel.to_string();
        assert_eq!(shown.parse::<ChainSelector>().unwrap(), sel);
    }
    let _ = fractal_pst_cli::parse_graph_path(text);
    let _ = fractal_pst_cli::parse_thread_cap(text);
});
