//! Runs the fuzz target bodies on the checked-in corpus and on random
//! mutations of it, so the decoders get exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;
use std::sync::OnceLock;

use circdiam::circuits::{enumerate_circuits, CircuitSet};
use circdiam::exactla::{fmt_rat, parse_rat};
use circdiam::hrep::{parse_hrep, write_hrep};
use circdiam::walks::{validate_walk, WalkCertificate};
use circdiam::{data, HRep};
use circdiam_harness::cache::{decode, encode};
use circdiam_harness::claims::Manifest;
use circdiam_harness::session::parse_point;
use proptest::prelude::*;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())).map(|e| e.unwrap().path()).collect();
    files.sort();
    let out: Vec<Vec<u8>> = files.iter().map(|f| fs::read(f).unwrap()).collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn m4() -> &'static (HRep, CircuitSet) {
    static M4: OnceLock<(HRep, CircuitSet)> = OnceLock::new();
    M4.get_or_init(|| {
        let p = data::m4();
        let set = enumerate_circuits(&p);
        (p, set)
    })
}

fn hrep_target(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_hrep(text) {
        assert_eq!(parse_hrep(&write_hrep(&p)).expect("written H-format parses"), p);
    }
}

fn rat_target(data: &[u8]) {
    let Ok(token) = std::str::from_utf8(data) else { return };
    if let Some(r) = parse_rat(token) {
        assert_eq!(parse_rat(&fmt_rat(&r)), Some(r));
    }
}

fn walk_target(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = WalkCertificate::from_json(text) else { return };
    assert_eq!(WalkCertificate::from_json(&w.to_json()).unwrap(), w);
    let (p, set) = m4();
    let _ = validate_walk(p, set, &w);
}

fn cache_target(data: &[u8]) {
    if let Some(payload) = decode(data) {
        assert_eq!(encode(payload), data);
    }
    assert_eq!(decode(&encode(data)), Some(data));
}

fn manifest_target(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = Manifest::parse(text);
    }
}

fn point_target(data: &[u8]) {
    if let Ok(spec) = std::str::from_utf8(data) {
        let _ = parse_point(spec);
    }
}

type Target = (&'static str, fn(&[u8]));

const TARGETS: [Target; 6] = [
    ("parse_hrep", hrep_target),
    ("parse_rat", rat_target),
    ("walk_certificate", walk_target),
    ("cache_decode", cache_target),
    ("claims_manifest", manifest_target),
    ("parse_point", point_target),
];

#[test]
fn corpus_seeds_run_clean() {
    for (name, f) in TARGETS {
        for s in seeds(name) {
            f(&s);
        }
    }
}

#[test]
fn valid_seeds_are_accepted() {
    assert!(parse_hrep(std::str::from_utf8(&seeds("parse_hrep")[3]).unwrap()).is_ok(), "m4 seed");
    let walk = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/walk_certificate/m4_far_to_origin")).unwrap();
    let w = WalkCertificate::from_json(&walk).unwrap();
    let (p, set) = m4();
    let rep = validate_walk(p, set, &w);
    assert!(rep.ok() && rep.monotone == Some(true), "{rep:?}");
}

#[derive(Clone, Debug)]
enum Edit {
    Flip(usize, u8),
    Insert(usize, u8),
    Delete(usize),
    Truncate(usize),
}

fn apply(mut data: Vec<u8>, edits: &[Edit]) -> Vec<u8> {
    for e in edits {
        let n = data.len();
        match *e {
            Edit::Flip(i, b) if n > 0 => data[i % n] ^= b,
            Edit::Insert(i, b) => data.insert(i % (n + 1), b),
            Edit::Delete(i) if n > 0 => {
                data.remove(i % n);
            }
            Edit::Truncate(i) => data.truncate(i % (n + 1)),
            _ => {}
        }
    }
    data
}

fn edits() -> impl Strategy<Value = Vec<Edit>> {
    let byte = prop_oneof![any::<u8>(), Just(b'\n'), Just(b' '), Just(b'/'), Just(b'-'), Just(b'0'), Just(b'9'), Just(b'"')];
    let edit = prop_oneof![
        (any::<usize>(), 1u8..).prop_map(|(i, b)| Edit::Flip(i, b)),
        (any::<usize>(), byte).prop_map(|(i, b)| Edit::Insert(i, b)),
        any::<usize>().prop_map(Edit::Delete),
        any::<usize>().prop_map(Edit::Truncate),
    ];
    prop::collection::vec(edit, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mutated_seeds_never_panic(target in 0..TARGETS.len(), seed in any::<prop::sample::Index>(), e in edits()) {
        let (name, f) = TARGETS[target];
        let all = seeds(name);
        f(&apply(all[seed.index(all.len())].clone(), &e));
    }

    #[test]
    fn raw_bytes_never_panic(target in 0..TARGETS.len(), data in prop::collection::vec(any::<u8>(), 0..64)) {
        (TARGETS[target].1)(&data);
    }
}
