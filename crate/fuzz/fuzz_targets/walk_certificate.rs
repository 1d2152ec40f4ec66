#![no_main]

use circdiam::walks::{validate_walk, WalkCertificate};
use circdiam::{circuits, data};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = WalkCertificate::from_json(text) else { return };
    let back = WalkCertificate::from_json(&w.to_json()).expect("serialized certificate parses");
    assert_eq!(w, back);
    // Validation of arbitrary certificates must report, never panic.
    let m4 = data::m4();
    let set = circuits::enumerate_circuits(&m4);
    let _ = validate_walk(&m4, &set, &w);
});
