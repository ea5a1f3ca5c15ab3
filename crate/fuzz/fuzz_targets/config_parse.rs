#![no_main]

use bimult::config::{parse_assignments, ExperimentConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_assignments(text);
    if let Ok(cfg) = ExperimentConfig::parse(text) {
        // Anything accepted must also pass validation on its own and build a grid.
        cfg.validate().expect("parsed config validates");
        cfg.grid.grid().expect("validated grid builds");
        assert!(cfg.triple.p3 > 0.0);
    }
});
