#![no_main]

use circdiam_harness::cache::{decode, encode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Some(payload) = decode(data) {
        assert_eq!(encode(payload), data);
    }
    assert_eq!(decode(&encode(data)), Some(data));
});
