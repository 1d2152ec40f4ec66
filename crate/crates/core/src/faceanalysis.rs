//! Recession tests on 2-faces and the circuit walks they yield.
//!
//! For a 2-face `F` and vertices `V` of `F`, `C(F, V)` keeps the affine hull
//! of `F` and every edge-defining row of `F` that is tight at no vertex of
//! `V`. When it
//! is unbounded, every point of `F` reaches a vertex of `V` by at most two
//! maximal circuit steps: shoot along a recession ray onto an edge at the
//! target, then along that edge.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, IntVec, Rat, RatVec};
use crate::hrep::{self, HRep};
use crate::rowset::RowSet;
use crate::vertexgraph::{self, Face2, PolyGraph};
use crate::walks::{self, WalkCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfvResult {
    pub face: Face2,
    pub v: Vec<usize>,
    /// Rows tight at some vertex of `v`, removed from the description.
    pub dropped: Vec<String>,
    /// Edge-defining rows of the face that remain.
    pub kept: Vec<String>,
    pub unbounded: bool,
    /// Generators of the recession cone in ambient coordinates, primitive;
    /// a lineality line contributes both orientations.
    #[serde(with = "int_rows")]
    pub rays: Vec<IntVec>,
}

mod int_rows {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        use serde::de::Error as _;
        use serde::Deserialize;
        Vec::<Vec<String>>::deserialize(d)?
            .into_iter()
            .map(|r| r.iter().map(|x| x.parse().map_err(D::Error::custom)).collect())
            .collect()
    }
}

pub fn cfv(p: &HRep, g: &PolyGraph, face: &Face2, v: &[usize]) -> Result<CfvResult> {
    if v.is_empty() {
        return Err(Error::pre("vertex set V is empty"));
    }
    if let Some(&bad) = v.iter().find(|&&x| !face.contains_vertex(x)) {
        return Err(Error::pre(format!("vertex {bad} is not on the face")));
    }
    let dropped = v.iter().fold(RowSet::EMPTY, |acc, &x| acc.union(g.vertices[x].tight));
    // The face is described by the rows defining its edges; rows of P that
    // are redundant on the face play no part.
    let kept = edge_rows(g, face).minus(dropped);
    // Retained rows in the chart (s, t): (B d1) s + (B d2) t <= 0 for recession.
    let rows: Vec<RatVec> = kept
        .iter()
        .map(|i| {
            let c = &p.row(i).coeffs;
            vec![exactla::dot(c, &face.d1), exactla::dot(c, &face.d2)]
        })
        .filter(|r| !exactla::is_zero_vec(r))
        .collect();
    let dec = hrep::extreme_rays(2, &[], &rows);
    let mut chart: Vec<IntVec> = dec.rays.clone();
    for l in &dec.lineality {
        chart.push(l.clone());
        chart.push(exactla::negate_int(l));
    }
    let mut rays: Vec<IntVec> = chart
        .iter()
        .map(|st| {
            let s = Rat::from_integer(st[0].clone());
            let t = Rat::from_integer(st[1].clone());
            let amb: RatVec = face.d1.iter().zip(&face.d2).map(|(a, b)| a * &s + b * &t).collect();
            exactla::normalize_primitive(&amb).expect("chart directions are independent")
        })
        .collect();
    rays.sort();
    rays.dedup();
    Ok(CfvResult {
        face: face.clone(),
        v: v.to_vec(),
        dropped: p.labels_of(dropped).into_iter().map(String::from).collect(),
        kept: p.labels_of(kept).into_iter().map(String::from).collect(),
        unbounded: !rays.is_empty(),
        rays,
    })
}

/// Rows, other than the face's own, that are tight on an edge of the face.
pub fn edge_rows(g: &PolyGraph, face: &Face2) -> RowSet {
    let k = face.cycle.len();
    (0..k)
        .map(|i| g.vertices[face.cycle[i]].tight.intersect(g.vertices[face.cycle[(i + 1) % k]].tight))
        .fold(RowSet::EMPTY, RowSet::union)
        .minus(face.tight)
}

fn on_face(p: &HRep, face: &Face2, y: &[Rat]) -> bool {
    p.contains(y) && face.tight.is_subset(p.tight_set(y))
}

/// At most two maximal circuit steps from `y0` to the face vertex `target`.
pub fn two_step_on_face(p: &HRep, g: &PolyGraph, face: &Face2, target: usize, y0: &[Rat]) -> Result<WalkCertificate> {
    let c = cfv(p, g, face, &[target])?;
    if !c.unbounded {
        return Err(Error::pre("C(F, {target}) is bounded"));
    }
    if !on_face(p, face, y0) {
        return Err(Error::pre("start point is not on the face"));
    }
    let tp = &g.vertices[target].point;
    let mut w = WalkCertificate::new(y0.to_vec());
    if y0 == tp.as_slice() {
        return Ok(w);
    }
    let (a, b) = face.face_neighbors(target).expect("target is on the face");
    let edges = [a, b].map(|x| g.vertices[target].tight.intersect(g.vertices[x].tight));
    let t0 = p.tight_set(y0);
    if edges.iter().any(|e| e.is_subset(t0)) {
        let step = step_onto(p, y0, tp).ok_or_else(|| Error::pre("edge step overshoots the target"))?;
        w.push_maximal(p, step)?;
        return Ok(w);
    }
    for r in &c.rays {
        let Ok((_, y1)) = walks::maximal_step(p, y0, r) else {
            continue;
        };
        let t1 = p.tight_set(&y1);
        if !edges.iter().any(|e| e.is_subset(t1)) {
            continue;
        }
        if let Some(last) = step_onto(p, &y1, tp) {
            w.push_maximal(p, r.clone())?;
            w.push_maximal(p, last)?;
            return Ok(w);
        }
    }
    Err(Error::pre("no recession ray reaches an edge at the target"))
}

/// Primitive `to - from` when the maximal step along it ends exactly at `to`.
fn step_onto(p: &HRep, from: &[Rat], to: &[Rat]) -> Option<IntVec> {
    let d = exactla::normalize_primitive(&exactla::sub(to, from)).ok()?;
    match walks::maximal_step(p, from, &d) {
        Ok((_, e)) if e == to => Some(d),
        _ => None,
    }
}

/// Multi-source breadth-first distances from a vertex set.
pub fn distances_from(g: &PolyGraph, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n_vertices()];
    let mut q = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        q.push_back(s);
    }
    while let Some(v) = q.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceScan {
    /// Index into the face list.
    pub face: usize,
    pub tight: Vec<String>,
    pub apex: usize,
    pub other: usize,
    /// Graph distance from `other` to the nearest face vertex.
    pub distance: usize,
    pub cfv: CfvResult,
}

/// 2-faces `F` containing an apex `a` with `C(F, {a})` unbounded. Sorted by
/// the face's tight labels, then by apex.
pub fn scan_2faces_with_apex(p: &HRep, g: &PolyGraph, faces: &[Face2], apices: (usize, usize)) -> Result<Vec<FaceScan>> {
    let (u, v) = apices;
    let du = distances_from(g, &[u]);
    let dv = distances_from(g, &[v]);
    let mut out: Vec<FaceScan> = faces
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, f)| {
            [(u, v, &dv), (v, u, &du)].into_iter().filter_map(move |(a, b, db)| {
                if !f.contains_vertex(a) {
                    return None;
                }
                let c = cfv(p, g, f, &[a]).ok()?;
                c.unbounded.then(|| FaceScan {
                    face: i,
                    tight: p.labels_of(f.tight).into_iter().map(String::from).collect(),
                    apex: a,
                    other: b,
                    distance: f.cycle.iter().filter_map(|&x| db[x]).min().unwrap_or(usize::MAX),
                    cfv: c,
                })
            })
        })
        .collect();
    out.sort_by(|a, b| (&a.tight, a.apex).cmp(&(&b.tight, b.apex)));
    Ok(out)
}

/// Scan entries whose face lies within `k` edge steps of the opposite apex,
/// i.e. those usable for a walk of length `k + 2`.
pub fn within_reach(scan: &[FaceScan], k: usize) -> Vec<&FaceScan> {
    scan.iter().filter(|s| s.distance <= k).collect()
}

/// Count per apex id.
pub fn per_apex(scan: &[&FaceScan]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for s in scan {
        *m.entry(s.apex).or_insert(0) += 1;
    }
    m
}

/// `a+, a-, ..., b+, b-`.
pub fn pm_range(a: usize, b: usize) -> Vec<String> {
    (a..=b).flat_map(|i| [format!("{i}+"), format!("{i}-")]).collect()
}

pub fn num_range(a: usize, b: usize) -> Vec<String> {
    (a..=b).map(|i| i.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessCheck {
    pub rows: Vec<String>,
    pub bounded: bool,
}

/// Boundedness of each sub-system keeping only the listed rows.
pub fn claim_star_battery(p: &HRep, specs: &[Vec<String>]) -> Result<Vec<BoundednessCheck>> {
    specs
        .iter()
        .map(|rows| {
            let keep = p.rows_by_label(rows)?;
            Ok(BoundednessCheck { rows: rows.clone(), bounded: hrep::is_bounded(&p.restrict(keep)) })
        })
        .collect()
}

/// Shortest edge walk from `from` to a vertex of `face`, then at most two
/// circuit steps on the face to `to`. Nearest face vertices are tried in id
/// order.
pub fn circuit_length_upper_via_face(
    p: &HRep,
    g: &PolyGraph,
    from: usize,
    to: usize,
    face: &Face2,
) -> Result<WalkCertificate> {
    if !face.contains_vertex(to) {
        return Err(Error::pre("target apex is not on the face"));
    }
    if !cfv(p, g, face, &[to])?.unbounded {
        return Err(Error::pre("C(F, {target}) is bounded"));
    }
    let dist = distances_from(g, &[from]);
    let mut entry: Vec<(usize, usize)> = face.cycle.iter().filter_map(|&y| dist[y].map(|d| (d, y))).collect();
    entry.sort_unstable();
    let mut last = Error::pre("face is unreachable from the start vertex");
    for (_, y0) in entry.iter().take_while(|(d, _)| *d == entry[0].0) {
        let path = g.shortest_path(from, *y0).expect("reachable");
        let mut w = walks::edge_walk(p, &g.vertices, &path)?;
        match two_step_on_face(p, g, face, to, &g.vertices[*y0].point) {
            Ok(tail) => {
                w.append(tail);
                return Ok(w);
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Shortest face-assembled walk `from -> to` over all qualifying faces.
pub fn best_face_walk(p: &HRep, g: &PolyGraph, faces: &[Face2], from: usize, to: usize) -> Result<(usize, WalkCertificate)> {
    let found: Vec<(usize, WalkCertificate)> = faces
        .par_iter()
        .enumerate()
        .filter(|(_, f)| f.contains_vertex(to))
        .filter_map(|(i, f)| circuit_length_upper_via_face(p, g, from, to, f).ok().map(|w| (i, w)))
        .collect();
    found
        .into_iter()
        .min_by_key(|(i, w)| (w.len(), *i))
        .ok_or_else(|| Error::pre("no qualifying 2-face contains the target"))
}

/// Steps that do not join two adjacent vertices.
pub fn non_edge_steps(g: &PolyGraph, w: &WalkCertificate) -> usize {
    let pts: Vec<&RatVec> = w.points().collect();
    pts.windows(2)
        .filter(|s| match (g.find_vertex(s[0]), g.find_vertex(s[1])) {
            (Some(a), Some(b)) => !g.is_edge(a, b),
            _ => true,
        })
        .count()
}

/// A printed face subgraph: face rows, start apex and the labels shown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceFixture {
    pub id: String,
    pub dataset: String,
    pub face: Vec<String>,
    /// `v+` or `v-`: the apex not on the face.
    pub from: String,
    pub face_vertices: Vec<String>,
    pub prefix: Vec<String>,
    pub highlighted: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

pub const FACE_FIXTURES_JSON: &str = include_str!("../data/face_figures.json");

pub fn face_fixtures() -> Vec<FaceFixture> {
    serde_json::from_str(FACE_FIXTURES_JSON).expect("bundled fixtures parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub id: String,
    pub face_found: bool,
    pub face_vertices: bool,
    pub prefix: bool,
    pub highlighted: bool,
    pub edges: bool,
    /// Distance from the start apex to the face.
    pub distance: Option<usize>,
    pub computed_prefix: Vec<String>,
    pub computed_edges: Vec<[String; 2]>,
}

impl FixtureCheck {
    pub fn ok(&self) -> bool {
        self.face_found && self.face_vertices && self.prefix && self.highlighted && self.edges
    }
}

/// Recomputes a printed face subgraph. `apices = (v+, v-)`.
pub fn check_face_fixture(p: &HRep, g: &PolyGraph, faces: &[Face2], apices: (usize, usize), fx: &FaceFixture) -> Result<FixtureCheck> {
    let mut check = FixtureCheck {
        id: fx.id.clone(),
        face_found: false,
        face_vertices: false,
        prefix: false,
        highlighted: false,
        edges: false,
        distance: None,
        computed_prefix: Vec::new(),
        computed_edges: Vec::new(),
    };
    let want = p.rows_by_label(&fx.face)?;
    let Some(face) = faces.iter().find(|f| f.tight == want) else {
        return Ok(check);
    };
    check.face_found = true;
    let start = match fx.from.as_str() {
        "v+" => apices.0,
        "v-" => apices.1,
        other => return Err(Error::UnknownLabel(other.to_string())),
    };
    let on: HashSet<usize> = face.cycle.iter().copied().collect();
    let label = |x: usize| -> String {
        if x == apices.0 {
            "v+".into()
        } else if x == apices.1 {
            "v-".into()
        } else if on.contains(&x) {
            vertexgraph::vertex_label(p, g.vertices[x].tight.minus(face.tight))
        } else {
            vertexgraph::vertex_label(p, g.vertices[x].tight)
        }
    };
    let sorted = |it: &mut dyn Iterator<Item = usize>| -> Vec<String> {
        let mut v: Vec<String> = it.map(label).collect();
        v.sort();
        v
    };
    check.face_vertices = sorted(&mut face.cycle.iter().copied()) == fx.face_vertices;
    let from_start = distances_from(g, &[start]);
    let to_face = distances_from(g, &face.cycle);
    let Some(d) = face.cycle.iter().filter_map(|&x| from_start[x]).min() else {
        return Ok(check);
    };
    check.distance = Some(d);
    let prefix: Vec<usize> = (0..g.n_vertices())
        .filter(|&w| w != start && !on.contains(&w))
        .filter(|&w| matches!((from_start[w], to_face[w]), (Some(a), Some(b)) if a + b == d))
        .collect();
    check.computed_prefix = sorted(&mut prefix.iter().copied());
    check.prefix = fx.prefix.iter().all(|l| check.computed_prefix.contains(l));
    // Figures draw a selection of the shortest-path vertices.
    let prefix: Vec<usize> = prefix.into_iter().filter(|&w| fx.prefix.contains(&label(w))).collect();
    check.highlighted = sorted(&mut face.cycle.iter().copied().filter(|&x| from_start[x] == Some(d))) == fx.highlighted;
    let shown: BTreeSet<usize> = prefix.iter().copied().chain(face.cycle.iter().copied()).chain([start]).collect();
    let mut edges: Vec<[String; 2]> = g
        .edges
        .iter()
        .filter(|(a, b)| shown.contains(a) && shown.contains(b))
        .map(|&(a, b)| {
            let mut e = [label(a), label(b)];
            e.sort();
            e
        })
        .collect();
    edges.sort();
    check.edges = edges == fx.edges;
    check.computed_edges = edges;
    Ok(check)
}

/// `sum_i lambda_i B_i` over labeled rows.
pub fn row_combination(p: &HRep, terms: &[(&str, Rat)]) -> Result<RatVec> {
    let mut acc = vec![Rat::zero(); p.dim()];
    for (l, lam) in terms {
        let i = p.index_of(l)?;
        acc = exactla::add(&acc, &exactla::scale(&p.row(i).coeffs, lam));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{enumerate_circuits, is_circuit_direction};
    use crate::exactla::rat;

    fn square() -> (HRep, PolyGraph) {
        let p = HRep::from_int_rows(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]).unwrap();
        let g = vertexgraph::adjacency_graph(&p).unwrap();
        (p, g)
    }

    #[test]
    fn square_as_its_own_face() {
        let (p, g) = square();
        let faces = vertexgraph::enumerate_2faces(&p, &g);
        assert_eq!(faces.len(), 1);
        let top = g.find_vertex(&[rat(1), rat(1)]).unwrap();
        let c = cfv(&p, &g, &faces[0], &[top]).unwrap();
        assert!(c.unbounded);
        assert_eq!(c.dropped, vec!["1", "2"]);
        assert!(cfv(&p, &g, &faces[0], &[]).is_err());
        let w = two_step_on_face(&p, &g, &faces[0], top, &[rat(0), rat(0)]).unwrap();
        assert_eq!(w.len(), 2);
        let set = enumerate_circuits(&p);
        assert!(walks::validate_walk(&p, &set, &w).ok());
        for r in &c.rays {
            assert!(is_circuit_direction(&set, &exactla::int_vec_to_rat(r)).unwrap());
        }
    }

    #[test]
    fn cube_faces_all_qualify() {
        let rows: Vec<(Vec<i64>, i64)> = (0..3)
            .flat_map(|i| {
                let mut e = vec![0; 3];
                e[i] = 1;
                let neg: Vec<i64> = e.iter().map(|x| -x).collect();
                [(e, 1), (neg, 0)]
            })
            .collect();
        let refs: Vec<(&[i64], i64)> = rows.iter().map(|(c, b)| (c.as_slice(), *b)).collect();
        let p = HRep::from_int_rows(&refs).unwrap();
        let g = vertexgraph::adjacency_graph(&p).unwrap();
        let faces = vertexgraph::enumerate_2faces(&p, &g);
        let (u, v) = vertexgraph::detect_spindle_in(&p, &g).unwrap();
        let scan = scan_2faces_with_apex(&p, &g, &faces, (u, v)).unwrap();
        assert_eq!(scan.len(), 6);
        assert!(scan.iter().all(|s| s.distance == 1));
        let w = best_face_walk(&p, &g, &faces, u, v).unwrap().1;
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn pentagon_two_steps() {
        // Pentagon with a vertex v whose C(P, {v}) is an unbounded wedge.
        let p = HRep::from_int_rows(&[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 2), (&[0, 1], 2), (&[1, 1], 3)]).unwrap();
        let g = vertexgraph::adjacency_graph(&p).unwrap();
        let faces = vertexgraph::enumerate_2faces(&p, &g);
        let v = g.find_vertex(&[rat(0), rat(0)]).unwrap();
        let far = g.find_vertex(&[rat(2), rat(1)]).unwrap();
        assert!(cfv(&p, &g, &faces[0], &[v]).unwrap().unbounded);
        let w = two_step_on_face(&p, &g, &faces[0], v, &g.vertices[far].point).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(non_edge_steps(&g, &w), 2);
        assert!(walks::validate_walk(&p, &enumerate_circuits(&p), &w).ok());
        assert_eq!(graph_distance_of(&g, far, v), 2);
    }

    fn graph_distance_of(g: &PolyGraph, a: usize, b: usize) -> usize {
        vertexgraph::graph_distance(g, a, b).unwrap()
    }

    #[test]
    fn label_ranges() {
        assert_eq!(pm_range(3, 4), vec!["3+", "3-", "4+", "4-"]);
        assert_eq!(num_range(1, 3), vec!["1", "2", "3"]);
        assert_eq!(face_fixtures().len(), 9);
    }
}
