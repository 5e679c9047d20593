#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = beideal::Graph::from_json_str(text) {
        let back = beideal::Graph::from_json_str(&g.to_json().to_string()).unwrap();
        assert_eq!(back, g);
        if g.vertex_count() <= 64 {
            let _ = beideal::graph::classify(&g);
        }
    }
});
