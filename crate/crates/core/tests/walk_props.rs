//! Walk invariants on generated cone spindles and small polytopes.

mod common;

use circdiam::circuits::enumerate_circuits;
use circdiam::exactla::{self, rat, Rat};
use circdiam::hrep::HRep;
use common::props;
use circdiam::vertexgraph::adjacency_graph;
use circdiam::walks::{self, maximal_step, triple_span_excludes};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn same_cone_spindle_walks(case in props::cone_case()) {
        props::same_cone_walk_invariants(&case)?;
    }

    #[test]
    fn maximal_steps_stop_on_a_blocking_row(p in common::polytope(2..=3, 9)) {
        let set = enumerate_circuits(&p);
        let y = common::origin(p.dim());
        for (_, _, g) in set.signed() {
            let (alpha, end) = maximal_step(&p, &y, &g).unwrap();
            prop_assert!(alpha.is_positive());
            prop_assert!(p.contains(&end));
            let blocked = p.tight_set(&end).iter().any(|i| p.row_dot_int(i, &g).is_positive());
            prop_assert!(blocked);
        }
    }

    #[test]
    fn edge_steps_are_maximal(p in common::polytope(2..=3, 10)) {
        let g = adjacency_graph(&p).unwrap();
        for &(a, b) in &g.edges {
            for (x, y) in [(a, b), (b, a)] {
                let w = walks::edge_walk(&p, &g.vertices, &[x, y]).unwrap();
                prop_assert_eq!(w.end(), g.vertices[y].point.as_slice());
            }
        }
    }

    #[test]
    fn planar_triple_test_matches_conic_oracle(p in common::polytope(2..=2, 8), t in prop::collection::vec(-5i64..6, 2)) {
        let set = enumerate_circuits(&p);
        let v: Vec<Rat> = t.into_iter().map(rat).collect();
        prop_assume!(!exactla::is_zero_vec(&v));
        let signed: Vec<Vec<BigInt>> = set.signed().map(|(_, _, g)| g).collect();
        let in_cone = |a: &[BigInt], b: &[BigInt]| {
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            if det.is_zero() {
                return false;
            }
            let det = Rat::from_integer(det);
            let la = (&v[0] * Rat::from_integer(b[1].clone()) - &v[1] * Rat::from_integer(b[0].clone())) / &det;
            let lb = (&v[1] * Rat::from_integer(a[0].clone()) - &v[0] * Rat::from_integer(a[1].clone())) / &det;
            !la.is_negative() && !lb.is_negative()
        };
        let oracle = signed.iter().any(|a| signed.iter().any(|b| in_cone(a, b)));
        prop_assert_eq!(triple_span_excludes(&set, &v).unwrap(), !oracle);
    }
}

#[test]
fn equal_polytope_has_a_trivial_walk() {
    let p = HRep::from_int_rows(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]).unwrap();
    let set = enumerate_circuits(&p);
    let y = vec![rat(0), rat(0)];
    let w = walks::bounded_depth_search(&p, &set, &y, &y, 2).unwrap().unwrap();
    assert!(w.is_empty());
}
