#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(e) = beideal::dsl::parse_expr(text) {
        // whatever parses must print back to itself and build
        let again = beideal::dsl::parse_expr(&e.to_string()).expect("printed form parses");
        assert_eq!(again, e);
        let _ = e.build();
    }
});
