#![no_main]

use circdiam::exactla::{fmt_rat, parse_rat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(token) = std::str::from_utf8(data) else { return };
    if let Some(r) = parse_rat(token) {
        assert_eq!(parse_rat(&fmt_rat(&r)), Some(r));
    }
});
