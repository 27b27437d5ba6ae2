#![no_main]

use fractal_pst::GrowthSpec;
use fractal_pst_cli::parse_int_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = parse_int_list(text) {
        assert!(list.iter().all(|&v| v > 0));
        let _ = GrowthSpec::new(list.clone(), list);
    }
});
