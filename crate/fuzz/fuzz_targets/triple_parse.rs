#![no_main]

use bimult::numerics::{parse_exponent, ExponentTriple};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_exponent(text) {
        assert!(p > 0.0, "exponent {p} from {text:?}");
    }
    if let Ok(t) = ExponentTriple::parse(text) {
        let gap = (1.0 / t.p1 + 1.0 / t.p2 - 1.0 / t.p3).abs();
        assert!(gap <= 1e-9, "{t:?} from {text:?}");
    }
});
