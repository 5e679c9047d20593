#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(p) = beideal_cli::scan::parse_param(text) {
        assert!(!p.values.is_empty());
        let _ = beideal_cli::scan::grid(&[p]);
    }
});
