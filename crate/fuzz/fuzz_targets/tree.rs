#![no_main]
use leafpower::io::JsonFormat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(parsed) = leafpower::Tree::from_json(s) {
            let emitted = parsed.to_json();
            let reparsed = leafpower::Tree::from_json(&emitted).expect("emitted json must parse");
            assert_eq!(parsed, reparsed);
            assert_eq!(emitted, reparsed.to_json());
        }
    }
});
