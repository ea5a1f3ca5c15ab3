#![no_main]

use bimult::symbols::by_id;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(id) = std::str::from_utf8(data) else { return };
    if let Some(s) = by_id(id) {
        assert!(s.eval(0.1, -0.2).is_finite());
        assert!(s.sup_bound().is_finite());
    }
});
