#![no_main]

use beideal::betti::{invariants_from_table, BettiTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = BettiTable::from_json_str(text) {
        let _ = invariants_from_table(&t);
        let _ = t.to_grid();
        assert_eq!(
            BettiTable::from_json_str(&t.to_json().to_string()).unwrap(),
            t
        );
    }
});
