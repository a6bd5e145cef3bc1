#![no_main]
use leafpower::io::Artifact;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(artifact) = Artifact::parse(s) {
            let emitted = artifact.to_json();
            let reparsed = Artifact::parse(&emitted).expect("emitted json must parse");
            assert_eq!(artifact.kind(), reparsed.kind());
            assert_eq!(artifact, reparsed);
            assert_eq!(emitted, reparsed.to_json());
        }
    }
});
