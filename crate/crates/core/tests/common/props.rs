//! Property checks shared by the proptest suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use circdiam::circuits::{enumerate_circuits, in_minimal_face};
use circdiam::exactla::{self, rat, IntVec, Rat, RatMat};
use circdiam::hrep::{self, wedge_over_facet, Cone, HRep};
use circdiam::orientations::{count_regions_brute_force, enumerate_regions, EdgeArrangement};
use circdiam::vertexgraph::{self, adjacency_graph, edge_direction, facet_defining_in};
use circdiam::walks::{self, same_cone_spindle_walk, validate_walk};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type Check = Result<(), TestCaseError>;

fn support(p: &HRep, g: &[BigInt]) -> BTreeSet<usize> {
    (0..p.m()).filter(|&i| !exactla::dot_int(&p.row(i).coeffs, g).is_zero()).collect()
}

/// Every one-dimensional kernel of `[A; B_S]` over all row subsets `S`, kept
/// when no other candidate has strictly smaller `B`-support.
pub fn brute_force_circuits(p: &HRep) -> BTreeSet<IntVec> {
    let mut cands = BTreeSet::new();
    for k in 0..=p.m() {
        for s in (0..p.m()).combinations(k) {
            let rows: Vec<_> = p
                .eqs()
                .iter()
                .map(|r| r.coeffs.clone())
                .chain(s.iter().map(|&i| p.row(i).coeffs.clone()))
                .collect();
            let basis = if rows.is_empty() {
                // No rows: the kernel is all of R^n.
                if p.dim() != 1 {
                    continue;
                }
                vec![vec![BigInt::from(1)]]
            } else {
                exactla::kernel_basis(&RatMat::new(p.dim(), rows).unwrap())
            };
            if basis.len() == 1 {
                let mut g = basis[0].clone();
                exactla::canonicalize_sign(&mut g);
                cands.insert(g);
            }
        }
    }
    let supports: Vec<(IntVec, BTreeSet<usize>)> = cands.iter().map(|g| (g.clone(), support(p, g))).collect();
    supports
        .iter()
        .filter(|(g, sg)| !supports.iter().any(|(h, sh)| h != g && sh.is_subset(sg) && sh.len() < sg.len()))
        .map(|(g, _)| g.clone())
        .collect()
}

pub fn circuits_match_definition(p: &HRep) -> Check {
    let set = enumerate_circuits(p);
    let got: BTreeSet<IntVec> = set.iter().map(|c| c.g.clone()).collect();
    prop_assert_eq!(got, brute_force_circuits(p), "circuit sets differ");
    for c in set.iter() {
        prop_assert!(c.certify(p));
        let bs = p.bsign(&c.g);
        prop_assert_eq!(&bs, &c.bsign);
        for i in (0..p.m()).filter(|&i| bs[i] != 0) {
            prop_assert_eq!(p.rank_with(c.witness.with(i)), p.dim());
        }
    }
    Ok(())
}

pub fn edge_directions_are_circuits(p: &HRep) -> Check {
    let g = adjacency_graph(p).unwrap();
    let set = enumerate_circuits(p);
    for &(u, v) in &g.edges {
        prop_assert!(set.find_int(&edge_direction(&g, u, v)).is_some());
    }
    Ok(())
}

pub fn adjacency_matches_midpoint_oracle(p: &HRep) -> Check {
    let g = adjacency_graph(p).unwrap();
    let n = p.dim();
    let two = rat(2);
    let oracle: BTreeSet<(usize, usize)> = (0..g.n_vertices())
        .tuple_combinations()
        .filter(|&(a, b)| {
            let mid: Vec<Rat> = exactla::add(&g.vertices[a].point, &g.vertices[b].point)
                .iter()
                .map(|x| x / &two)
                .collect();
            p.rank_with(p.tight_set(&mid)) == n - 1
        })
        .collect();
    let got: BTreeSet<(usize, usize)> = g.edges.iter().copied().collect();
    prop_assert_eq!(got, oracle);
    for &(a, b) in &g.edges {
        prop_assert!(g.is_edge(b, a));
    }
    Ok(())
}

/// Facets counted once each, as distinct vertex sets of facet-defining rows.
pub fn facet_count(verts: &[vertexgraph::Vertex], m: usize) -> usize {
    (0..m)
        .filter(|&i| facet_defining_in(verts, i))
        .map(|i| verts.iter().map(|v| v.tight.contains(i)).collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn wedge_adds_a_facet_and_a_dimension(p: &HRep) -> Check {
    let verts = vertexgraph::enumerate_vertices(p).unwrap();
    let f = (0..p.m()).find(|&i| facet_defining_in(&verts, i)).unwrap();
    let w = wedge_over_facet(p, p.label(f)).unwrap();
    prop_assert_eq!(w.dim(), p.dim() + 1);
    prop_assert!(hrep::is_bounded(&w));
    let wverts = vertexgraph::enumerate_vertices(&w).unwrap();
    prop_assert_eq!(facet_count(&wverts, w.m()), facet_count(&verts, p.m()) + 1);
    let on_f = verts.iter().filter(|v| v.tight.contains(f)).count();
    prop_assert_eq!(wverts.len(), 2 * verts.len() - on_f);
    // The base t = 0 is a copy of P; t > 0 only over points off the facet.
    for v in &verts {
        let mut x = v.point.clone();
        x.push(rat(0));
        prop_assert!(w.contains(&x));
    }
    for wv in &wverts {
        let (x, t) = wv.point.split_at(p.dim());
        prop_assert!(p.contains(x));
        prop_assert!(t[0].is_zero() || t[0] == p.slack(f, x));
    }
    Ok(())
}

pub type ConeCase = (Cone, Vec<Rat>, Vec<Rat>, Vec<Rat>);

/// Pointed cone `{g : r.g <= 0}` from the orthant rows `-e_i` and extra rows
/// flipped so that the interior direction `d` stays strictly inside; apices
/// `u` and `u + d`; `c` a positive combination of the cone rows.
pub fn cone_case() -> impl Strategy<Value = ConeCase> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1i64..6, n),
                prop::collection::vec(prop::collection::vec(-4i64..5, n), 0..4),
                prop::collection::vec(-3i64..4, n),
                prop::collection::vec(1i64..5, n + 4),
            )
        })
        .prop_map(|(d, extra, u, lambdas)| {
            let n = d.len();
            let d: Vec<Rat> = d.into_iter().map(rat).collect();
            let mut rows: Vec<Vec<Rat>> = (0..n)
                .map(|i| (0..n).map(|j| rat(if i == j { -1 } else { 0 })).collect())
                .collect();
            for r in extra {
                let r: Vec<Rat> = r.into_iter().map(rat).collect();
                let s = exactla::dot(&r, &d);
                if s.is_negative() {
                    rows.push(r);
                } else if s.is_positive() {
                    rows.push(r.iter().map(|x| -x).collect());
                }
            }
            let mut c = vec![rat(0); n];
            for (r, l) in rows.iter().zip(&lambdas) {
                c = exactla::add(&c, &exactla::scale(r, &rat(*l)));
            }
            let u: Vec<Rat> = u.into_iter().map(rat).collect();
            let v = exactla::add(&u, &d);
            (Cone::new(n, vec![], rows), u, v, c)
        })
}

pub fn same_cone_walk_invariants(case: &ConeCase) -> Check {
    let (cone, u, v, c) = case;
    let spindle = walks::cone_spindle(cone, u, v);
    let set = enumerate_circuits(&spindle);
    let w = same_cone_spindle_walk(cone, u, v).unwrap().with_objective(c.clone());
    prop_assert_eq!(w.end(), v.as_slice());
    let rep = validate_walk(&spindle, &set, &w);
    prop_assert!(rep.ok(), "{:?}", rep);
    prop_assert!(rep.sign_compatible);
    prop_assert!(rep.nested_tight);
    prop_assert!(w.len() <= cone.dim);
    let dir = exactla::sub(v, u);
    for s in &w.steps {
        prop_assert!(exactla::dot_int(c, &s.g).is_negative());
        prop_assert!(!s.entered.is_empty());
        prop_assert!(in_minimal_face(&spindle, &s.g, &dir).unwrap());
    }
    Ok(())
}

/// Normals in R^3 with duplicates and zero rows removed; `None` when they do
/// not span.
pub fn arrangement(raw: &[Vec<i64>]) -> Option<EdgeArrangement> {
    let mut normals: BTreeSet<IntVec> = BTreeSet::new();
    for r in raw {
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        let v: Vec<_> = r.iter().map(|&x| rat(x)).collect();
        normals.insert(exactla::normalize_coprime(&v).ok()?);
    }
    let normals: Vec<IntVec> = normals.into_iter().collect();
    let refs: Vec<&[BigInt]> = normals.iter().map(Vec::as_slice).collect();
    if exactla::rank_of_int_rows(3, &refs) < 3 {
        return None;
    }
    let k = normals.len();
    Some(EdgeArrangement {
        dim: 3,
        normals,
        edges: (0..k).map(|j| (2 * j, 2 * j + 1)).collect(),
        edge_normal: (0..k).collect(),
        edge_sign: vec![1; k],
    })
}

/// Zaslavsky's count for an essential central arrangement in R^3:
/// `2 + 2 * sum over intersection lines L of (m_L - 1)`.
pub fn zaslavsky(arr: &EdgeArrangement) -> usize {
    let mut planes_on: BTreeMap<IntVec, BTreeSet<usize>> = BTreeMap::new();
    for (a, b) in (0..arr.n_normals()).tuple_combinations() {
        let mut line = exactla::int_kernel_line(&[&arr.normals[a], &arr.normals[b]], 3).unwrap();
        exactla::canonicalize_sign(&mut line);
        planes_on.entry(line).or_default().extend([a, b]);
    }
    2 + 2 * planes_on.values().map(|s| s.len() - 1).sum::<usize>()
}

pub fn arrangement_raw() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..3, 3), 3..=6)
}

pub fn region_count_matches_oracles(raw: &[Vec<i64>]) -> Check {
    let Some(arr) = arrangement(raw) else {
        return Ok(());
    };
    let regions = enumerate_regions(&arr).unwrap();
    prop_assert_eq!(regions.len(), count_regions_brute_force(&arr));
    prop_assert_eq!(regions.len(), zaslavsky(&arr));
    prop_assert_eq!(regions.len() % 2, 0);
    let sigmas: BTreeSet<&str> = regions.iter().map(|r| r.normal_sigma.as_str()).collect();
    for r in &regions {
        let signs = arr.normal_signs(&r.witness_rat());
        prop_assert!(signs.iter().all(|&s| s != 0));
        let s: String = signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        prop_assert_eq!(&s, &r.normal_sigma);
        let neg: String = s.chars().map(|c| if c == '+' { '-' } else { '+' }).collect();
        prop_assert!(sigmas.contains(neg.as_str()));
    }
    Ok(())
}
