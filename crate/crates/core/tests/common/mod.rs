#![allow(dead_code)]

pub mod props;

use circdiam::exactla::{rat, Rat};
use circdiam::hrep::{HRep, Row};
use proptest::prelude::*;

/// Box `[-k, k]^n` plus the given cuts `a.x <= b` (origin stays interior).
pub fn boxed(n: usize, k: i64, cuts: &[(Vec<i64>, i64)]) -> HRep {
    let mut rows = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut a = vec![rat(0); n];
            a[i] = rat(s);
            rows.push((a, rat(k)));
        }
    }
    for (a, b) in cuts {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        rows.push((a.iter().map(|&x| rat(x)).collect(), rat(*b)));
    }
    let ineqs = rows
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| Row::new((i + 1).to_string(), a, b))
        .collect();
    HRep::new(n, vec![], ineqs).unwrap()
}

/// Bounded polytopes in dimension `dims` with at most `max_rows` rows.
pub fn polytope(dims: std::ops::RangeInclusive<usize>, max_rows: usize) -> impl Strategy<Value = HRep> {
    dims.prop_flat_map(move |n| {
        let extra = max_rows.saturating_sub(2 * n);
        (
            Just(n),
            1i64..4,
            prop::collection::vec((prop::collection::vec(-3i64..4, n), 1i64..6), 0..=extra),
        )
    })
    .prop_map(|(n, k, cuts)| boxed(n, k, &cuts))
}

/// Some point strictly inside (the origin, by construction of [`boxed`]).
pub fn origin(n: usize) -> Vec<Rat> {
    vec![rat(0); n]
}
