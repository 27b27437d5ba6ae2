#![no_main]

use fractal_pst::format::{chain_from_json, chain_to_json};
use fractal_pst::verify_pst;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = chain_from_json(text) {
        let again = chain_from_json(&chain_to_json(&c)).expect("serialized chain reparses");
        assert_eq!(again.diagonal(), c.diagonal());
        assert_eq!(again.couplings(), c.couplings());
        if c.sites() <= 64 {
            let _ = verify_pst(&c, 1e-8, 99);
        }
    }
});
