//! Bundled polytopes.

use crate::exactla::{rat, Rat, RatMat, RatVec};
use crate::hrep::{parse_hrep, HRep};

pub const M4_HREP: &str = include_str!("../data/m4.hrep");
pub const S48_HREP: &str = include_str!("../data/s48.hrep");
pub const S28_HREP: &str = include_str!("../data/s28.hrep");
pub const S25_HREP: &str = include_str!("../data/s25.hrep");

/// Names accepted by [`bundled`].
pub const NAMES: [&str; 4] = ["m4", "s48", "s28", "s25"];

pub fn bundled_text(name: &str) -> Option<&'static str> {
    match name.trim_end_matches(".hrep") {
        "m4" | "todd" => Some(M4_HREP),
        "s48" => Some(S48_HREP),
        "s28" => Some(S28_HREP),
        "s25" => Some(S25_HREP),
        _ => None,
    }
}

pub fn bundled(name: &str) -> Option<HRep> {
    bundled_text(name).map(|t| parse_hrep(t).expect("bundled data parses"))
}

/// Todd's 4-dimensional polytope `{x >= 0 : Ax <= b}`.
pub fn m4() -> HRep {
    parse_hrep(M4_HREP).expect("bundled data parses")
}

pub fn s48() -> HRep {
    parse_hrep(S48_HREP).expect("bundled data parses")
}

pub fn s28() -> HRep {
    parse_hrep(S28_HREP).expect("bundled data parses")
}

pub fn s25() -> HRep {
    parse_hrep(S25_HREP).expect("bundled data parses")
}

/// Apex of M4 opposite the origin.
pub fn m4_far_apex() -> RatVec {
    [1, 1, 8, 8].iter().map(|&x| Rat::new(x.into(), 19.into())).collect()
}

/// `(±1, 0, 0, 0, 0)`, the apices of the three 5-dimensional spindles.
pub fn spindle_apex(sign: i64) -> RatVec {
    let mut v = vec![rat(0); 5];
    v[0] = rat(sign);
    v
}

/// Signed coordinate permutation: output coordinate `i` is `s * x[j]` for
/// `image[i] = (j, s)`.
pub fn signed_permutation(image: &[(usize, i64)]) -> RatMat {
    let n = image.len();
    let mut rows = vec![vec![rat(0); n]; n];
    for (i, &(j, s)) in image.iter().enumerate() {
        rows[i][j] = rat(s);
    }
    RatMat::new(n, rows).expect("square by construction")
}

/// The two linear symmetries of S48: `(x1..x5) -> (-x1, x5, x4, x2, x3)`,
/// which swaps the apices, and `(x1..x5) -> (x1, x3, x2, x5, x4)`.
pub fn s48_symmetries() -> [RatMat; 2] {
    [
        signed_permutation(&[(0, -1), (4, 1), (3, 1), (1, 1), (2, 1)]),
        signed_permutation(&[(0, 1), (2, 1), (1, 1), (4, 1), (3, 1)]),
    ]
}
