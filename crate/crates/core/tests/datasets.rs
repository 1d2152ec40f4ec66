//! Invariants checked on the bundled polytopes.

use std::sync::OnceLock;

use circdiam::circuits::is_circuit_direction;
use circdiam::data;
use circdiam::exactla::{self, int_vec_to_rat};
use circdiam::faceanalysis::{self, cfv, two_step_on_face, within_reach};
use circdiam::walks::{self, validate_walk};
use circdiam::Polytope;

fn shared(name: &'static str) -> &'static Polytope {
    static M4: OnceLock<Polytope> = OnceLock::new();
    static S48: OnceLock<Polytope> = OnceLock::new();
    static S28: OnceLock<Polytope> = OnceLock::new();
    static S25: OnceLock<Polytope> = OnceLock::new();
    let cell = match name {
        "m4" => &M4,
        "s48" => &S48,
        "s28" => &S28,
        _ => &S25,
    };
    cell.get_or_init(|| Polytope::new(data::bundled(name).unwrap()))
}

fn apices(pt: &Polytope) -> (usize, usize) {
    (
        pt.vertex_id(&data::spindle_apex(1)).unwrap(),
        pt.vertex_id(&data::spindle_apex(-1)).unwrap(),
    )
}

#[test]
fn edges_are_maximal_circuit_steps() {
    for name in data::NAMES {
        let pt = shared(name);
        let (p, g, set) = (pt.hrep(), pt.graph().unwrap(), pt.circuits());
        for &(a, b) in &g.edges {
            for (x, y) in [(a, b), (b, a)] {
                let w = walks::edge_walk(p, &g.vertices, &[x, y]).unwrap();
                assert_eq!(w.end(), g.vertices[y].point.as_slice(), "{name} edge {x}-{y}");
                if x < y {
                    assert!(validate_walk(p, set, &w).ok(), "{name} edge {x}-{y}");
                }
            }
        }
    }
}

#[test]
fn circuit_sets_are_symmetric() {
    let pt = shared("s48");
    let set = pt.circuits();
    for t in data::s48_symmetries() {
        for c in set.iter() {
            let img = t.mul_vec(&int_vec_to_rat(&c.g));
            assert!(set.find(&img).is_some(), "image of {:?} missing", c.g);
        }
    }
}

#[test]
fn lemma_rays_are_circuits_and_two_steps_validate() {
    for name in ["s48", "s28", "s25"] {
        let pt = shared(name);
        let (p, g, set) = (pt.hrep(), pt.graph().unwrap(), pt.circuits());
        let faces = pt.faces().unwrap();
        let scan = faceanalysis::scan_2faces_with_apex(p, g, faces, apices(pt)).unwrap();
        for s in &scan {
            for r in &s.cfv.rays {
                assert!(is_circuit_direction(set, &int_vec_to_rat(r)).unwrap(), "{name} ray {r:?}");
            }
        }
        for s in within_reach(&scan, 3) {
            let face = &faces[s.face];
            for &y0 in face.cycle.iter().filter(|&&y| y != s.apex) {
                let w = two_step_on_face(p, g, face, s.apex, &g.vertices[y0].point).unwrap();
                assert!(w.len() <= 2);
                assert_eq!(w.end(), g.vertices[s.apex].point.as_slice());
                let rep = validate_walk(p, set, &w);
                assert!(rep.ok(), "{name} face {:?} from {y0}: {rep:?}", s.tight);
            }
        }
    }
}

#[test]
fn assembled_walks_use_few_non_edge_steps() {
    for name in ["s48", "s28", "s25"] {
        let pt = shared(name);
        let (p, g, set) = (pt.hrep(), pt.graph().unwrap(), pt.circuits());
        let faces = pt.faces().unwrap();
        let (vp, vm) = apices(pt);
        for (from, to) in [(vp, vm), (vm, vp)] {
            let (_, w) = faceanalysis::best_face_walk(p, g, faces, from, to).unwrap();
            assert!(validate_walk(p, set, &w).ok());
            assert!(w.len() <= 5, "{name}: length {}", w.len());
            assert!(faceanalysis::non_edge_steps(g, &w) <= 2);
        }
    }
}

#[test]
fn cfv_of_the_worked_example() {
    let pt = shared("s48");
    let (p, g) = (pt.hrep(), pt.graph().unwrap());
    let want = p.rows_by_label(&["15+", "19+", "21+"]).unwrap();
    let face = pt.faces().unwrap().iter().find(|f| f.tight == want).unwrap();
    let (_, vm) = apices(pt);
    let c = cfv(p, g, face, &[vm]).unwrap();
    assert!(c.unbounded);
    for r in &c.rays {
        let x = int_vec_to_rat(r);
        // Rays stay in the face's linear span.
        for i in face.tight.iter() {
            assert!(exactla::dot(&p.row(i).coeffs, &x) == exactla::rat(0));
        }
    }
}
