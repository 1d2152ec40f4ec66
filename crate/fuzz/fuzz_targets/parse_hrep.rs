#![no_main]

use circdiam::hrep::{parse_hrep, write_hrep};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_hrep(text) {
        // Writing is exact, so a second parse must give the same polyhedron.
        let again = parse_hrep(&write_hrep(&p)).expect("written H-format parses");
        assert_eq!(p, again);
    }
});
