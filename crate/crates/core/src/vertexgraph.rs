//! Vertices, the graph, 2-faces and spindles of bounded polyhedra.
//!
//! Vertices come from exhaustive basis enumeration: every subset of
//! `n - rank(A)` inequality rows whose tight system has full rank is solved
//! exactly and kept when feasible. This is immune to degeneracy, which the
//! bundled spindles have in abundance.
//!
//! Two vertices `u, v` of a bounded polyhedron are adjacent iff the rows tight
//! at both have rank `n - 1`: that system cuts out a line, the face it defines
//! is the segment `[u, v]`, and conversely the minimal face containing an edge
//! has rank `n - 1`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, fastint, fastint::SquareSolution, Rat, RatMat, RatVec};
use crate::hrep::HRep;
use crate::rowset::RowSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub point: RatVec,
    /// Every inequality row tight at `point`.
    pub tight: RowSet,
}

/// Undirected graph of a polytope; vertex ids index `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl PolyGraph {
    pub fn new(vertices: Vec<Vertex>, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        PolyGraph { vertices, edges, adj }
    }

    /// Rebuilds adjacency lists after deserialization.
    pub fn reindex(self) -> Self {
        PolyGraph::new(self.vertices, self.edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn find_vertex(&self, x: &[Rat]) -> Option<usize> {
        self.vertices.binary_search_by(|v| exactla::lex_cmp(&v.point, x)).ok()
    }

    pub fn find_by_tight(&self, tight: RowSet) -> Option<usize> {
        self.vertices.iter().position(|v| v.tight == tight)
    }

    /// BFS distances from `src`.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_vertices()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path `src .. dst`, smallest ids first among ties.
    pub fn shortest_path(&self, src: usize, dst: usize) -> Option<Vec<usize>> {
        let dist = self.bfs(dst);
        dist[src]?;
        let mut path = vec![src];
        let mut cur = src;
        while cur != dst {
            let d = dist[cur].unwrap();
            cur = *self.adj[cur].iter().find(|&&w| dist[w] == Some(d - 1))?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn to_dot(&self, p: &HRep) -> String {
        let mut out = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", vertex_label(p, v.tight));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

/// 2-dimensional face with an affine chart `base + s d1 + t d2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face2 {
    /// Every inequality row tight on the whole face.
    pub tight: RowSet,
    /// Vertex ids in cyclic order, starting at the smallest id.
    pub cycle: Vec<usize>,
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub base: RatVec,
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub d1: RatVec,
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub d2: RatVec,
}

impl Face2 {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }

    /// Sorted vertex ids.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v = self.cycle.clone();
        v.sort_unstable();
        v
    }

    /// The two face neighbours of `v`, if `v` is on the face.
    pub fn face_neighbors(&self, v: usize) -> Option<(usize, usize)> {
        let k = self.cycle.len();
        let i = self.cycle.iter().position(|&w| w == v)?;
        Some((self.cycle[(i + k - 1) % k], self.cycle[(i + 1) % k]))
    }

    pub fn point_at(&self, s: &Rat, t: &Rat) -> RatVec {
        self.base
            .iter()
            .zip(&self.d1)
            .zip(&self.d2)
            .map(|((b, x), y)| b + s * x + t * y)
            .collect()
    }
}

/// Label of a tight set in the figure convention: row labels concatenated,
/// space-separated unless every label is a single character or ends in a
/// sign.
pub fn vertex_label(p: &HRep, set: RowSet) -> String {
    let labels = p.labels_of(set);
    let all = p.labels_of(RowSet::full(p.m()));
    let compact = all.iter().all(|l| l.chars().count() == 1)
        || all.iter().all(|l| l.ends_with('+') || l.ends_with('-'));
    labels.join(if compact { "" } else { " " })
}

struct FastSystem<'a> {
    eq: Vec<&'a [i128]>,
    ineq: &'a [Vec<i128>],
}

/// Candidate vertex from a square subsystem, in exact integer form.
fn fast_candidate(sys: &FastSystem<'_>, subset: &[usize], n: usize) -> Option<Option<(Vec<i128>, i128)>> {
    let rows: Vec<&[i128]> = sys
        .eq
        .iter()
        .copied()
        .chain(subset.iter().map(|&i| sys.ineq[i].as_slice()))
        .collect();
    let coeffs: Vec<&[i128]> = rows.iter().map(|r| &r[..n]).collect();
    let rhs: Vec<i128> = rows.iter().map(|r| r[n]).collect();
    match fastint::solve_square(&coeffs, &rhs)? {
        SquareSolution::Singular => Some(None),
        SquareSolution::Unique { num, den } => {
            for r in sys.ineq {
                let mut lhs = 0i128;
                for (c, x) in r[..n].iter().zip(&num) {
                    lhs = lhs.checked_add(c.checked_mul(*x)?)?;
                }
                if r[n].checked_mul(den)? < lhs {
                    return Some(None);
                }
            }
            Some(Some((num, den)))
        }
    }
}

fn rat_candidate(p: &HRep, eq_basis: &[usize], subset: &[usize]) -> Option<RatVec> {
    let n = p.dim();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for &e in eq_basis {
        rows.push(p.eqs()[e].coeffs.clone());
        rhs.push(p.eqs()[e].rhs.clone());
    }
    for &i in subset {
        rows.push(p.row(i).coeffs.clone());
        rhs.push(p.row(i).rhs.clone());
    }
    let m = RatMat::new(n, rows).expect("dimension");
    if exactla::rank(&m) < n {
        return None;
    }
    let x = exactla::solve(&m, &rhs)?;
    p.contains(&x).then_some(x)
}

/// All vertices, sorted lexicographically by coordinates.
pub fn enumerate_vertices(p: &HRep) -> Result<Vec<Vertex>> {
    let n = p.dim();
    if p.rank_with(RowSet::full(p.m())) < n {
        return Err(Error::NotPointed);
    }
    let eq_refs: Vec<&[Rat]> = p.eqs().iter().map(|r| r.coeffs.as_slice()).collect();
    let eq_basis = exactla::independent_subset(n, &eq_refs);
    let k = n - eq_basis.len();
    let fast = match (p.fast_ineqs(), p.fast_eqs()) {
        (Some(fi), Some(fe)) => Some(FastSystem {
            eq: eq_basis.iter().map(|&e| fe[e].as_slice()).collect(),
            ineq: fi,
        }),
        _ => None,
    };

    enum Found {
        Fast(Vec<i128>, i128),
        Exact(RatVec),
    }
    let m = p.m();
    let per_first = |first: usize| -> Vec<Found> {
        let mut out = Vec::new();
        let mut seen: HashSet<(Vec<i128>, i128)> = HashSet::new();
        let rest = (first + 1..m).combinations(k.saturating_sub(1));
        for tail in rest {
            let mut subset = Vec::with_capacity(k);
            subset.push(first);
            subset.extend(tail);
            let cand = fast.as_ref().and_then(|s| fast_candidate(s, &subset, n));
            match cand {
                Some(None) => {}
                Some(Some(key)) => {
                    if seen.insert(key.clone()) {
                        out.push(Found::Fast(key.0, key.1));
                    }
                }
                None => {
                    if let Some(x) = rat_candidate(p, &eq_basis, &subset) {
                        out.push(Found::Exact(x));
                    }
                }
            }
        }
        out
    };
    let found: Vec<Found> = if k == 0 {
        // Equalities alone pin the point.
        rat_candidate(p, &eq_basis, &[]).map(Found::Exact).into_iter().collect()
    } else {
        (0..m).into_par_iter().flat_map_iter(per_first).collect()
    };

    let mut points: BTreeSet<RatVec> = BTreeSet::new();
    for f in found {
        points.insert(match f {
            Found::Fast(num, den) => fastint::to_rat_point(&num, den),
            Found::Exact(x) => x,
        });
    }
    Ok(points
        .into_iter()
        .filter(|x| p.contains(x))
        .map(|point| {
            let tight = p.tight_set(&point);
            Vertex { point, tight }
        })
        .collect())
}

/// Edges of a bounded polyhedron by the common-tight-set rank test.
pub fn adjacency_from_vertices(p: &HRep, vertices: Vec<Vertex>) -> PolyGraph {
    let n = p.dim();
    let need = (n - 1).saturating_sub(p.eq_rank());
    let nv = vertices.len();
    let edges: Vec<(usize, usize)> = (0..nv)
        .into_par_iter()
        .flat_map_iter(|a| {
            let vs = &vertices;
            (a + 1..nv).filter_map(move |b| {
                let common = vs[a].tight.intersect(vs[b].tight);
                (common.len() >= need && p.rank_with(common) == n - 1).then_some((a, b))
            })
        })
        .collect();
    PolyGraph::new(vertices, edges)
}

pub fn adjacency_graph(p: &HRep) -> Result<PolyGraph> {
    if !crate::hrep::is_bounded(p) {
        return Err(Error::pre("adjacency needs a bounded polyhedron"));
    }
    Ok(adjacency_from_vertices(p, enumerate_vertices(p)?))
}

pub fn graph_distance(g: &PolyGraph, u: usize, v: usize) -> Result<usize> {
    g.bfs(u)[v].ok_or_else(|| Error::pre(format!("vertices {u} and {v} are disconnected")))
}

/// Affine dimension of a point set.
pub fn affine_dim(points: &[&[Rat]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<RatVec> = rest.iter().map(|x| exactla::sub(x, first)).collect();
    let refs: Vec<&[Rat]> = diffs.iter().map(Vec::as_slice).collect();
    exactla::rank_of_rows(first.len(), &refs)
}

/// Facet test on precomputed vertices: the vertices tight on row `i` span
/// an affine space one dimension below the polyhedron.
pub fn facet_defining_in(vertices: &[Vertex], i: usize) -> bool {
    let all: Vec<&[Rat]> = vertices.iter().map(|v| v.point.as_slice()).collect();
    let on: Vec<&[Rat]> = vertices
        .iter()
        .filter(|v| v.tight.contains(i))
        .map(|v| v.point.as_slice())
        .collect();
    if on.is_empty() {
        return false;
    }
    affine_dim(&on) + 1 == affine_dim(&all)
}

pub fn is_facet_defining(p: &HRep, label: &str) -> Result<bool> {
    let i = p.index_of(label)?;
    Ok(facet_defining_in(&enumerate_vertices(p)?, i))
}

fn primitive_dir(v: &[Rat]) -> RatVec {
    exactla::int_vec_to_rat(&exactla::normalize_primitive(v).expect("nonzero direction"))
}

fn face_from_vertices(p: &HRep, g: &PolyGraph, ids: &[usize]) -> Option<Face2> {
    let tight = ids
        .iter()
        .fold(RowSet::full(p.m()), |acc, &v| acc.intersect(g.vertices[v].tight));
    // Order the polygon by walking its edges.
    let start = *ids.iter().min()?;
    let on_face: HashSet<usize> = ids.iter().copied().collect();
    let nb = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|w| on_face.contains(w)).collect()
    };
    let mut cycle = vec![start];
    let first = nb(start);
    if first.len() != 2 {
        return None;
    }
    let mut prev = start;
    let mut cur = first[0].min(first[1]);
    while cur != start {
        let next = nb(cur);
        if next.len() != 2 || cycle.len() > ids.len() {
            return None;
        }
        cycle.push(cur);
        let nxt = if next[0] == prev { next[1] } else { next[0] };
        prev = cur;
        cur = nxt;
    }
    if cycle.len() != ids.len() {
        return None;
    }
    let base = g.vertices[start].point.clone();
    let d1 = primitive_dir(&exactla::sub(&g.vertices[cycle[1]].point, &base));
    let raw = exactla::sub(&g.vertices[*cycle.last().unwrap()].point, &base);
    // Gram-Schmidt against d1.
    let f = exactla::dot(&raw, &d1) / exactla::dot(&d1, &d1);
    let d2 = primitive_dir(&exactla::sub(&raw, &exactla::scale(&d1, &f)));
    Some(Face2 { tight, cycle, base, d1, d2 })
}

/// All 2-faces, sorted by vertex-id set.
pub fn enumerate_2faces(p: &HRep, g: &PolyGraph) -> Vec<Face2> {
    let n = p.dim();
    if n < 2 {
        return Vec::new();
    }
    let target = n - 2;
    let seeds: BTreeSet<Vec<usize>> = (0..g.n_vertices())
        .into_par_iter()
        .flat_map_iter(|w| {
            let tw = g.vertices[w].tight;
            let mut local: Vec<Vec<usize>> = Vec::new();
            let mut seen_t: HashSet<RowSet> = HashSet::new();
            for (&a, &b) in g.neighbors(w).iter().tuple_combinations() {
                let t = tw.intersect(g.vertices[a].tight).intersect(g.vertices[b].tight);
                if !seen_t.insert(t) || p.rank_with(t) != target {
                    continue;
                }
                let ids: Vec<usize> = (0..g.n_vertices())
                    .filter(|&v| t.is_subset(g.vertices[v].tight))
                    .collect();
                local.push(ids);
            }
            local
        })
        .collect();
    seeds
        .into_iter()
        .filter_map(|ids| face_from_vertices(p, g, &ids))
        .collect()
}

/// Apex pair `(u, v)`, `u < v`, whose tight sets partition the rows; the first
/// such pair by `u` when several exist.
pub fn detect_spindle_in(p: &HRep, g: &PolyGraph) -> Option<(usize, usize)> {
    let full = RowSet::full(p.m());
    let by_tight: HashMap<RowSet, usize> =
        g.vertices.iter().enumerate().map(|(i, v)| (v.tight, i)).collect();
    g.vertices.iter().enumerate().find_map(|(u, vu)| {
        let w = *by_tight.get(&full.minus(vu.tight))?;
        (w > u).then_some((u, w))
    })
}

pub fn detect_spindle(p: &HRep) -> Result<Option<(usize, usize)>> {
    let g = adjacency_graph(p)?;
    Ok(detect_spindle_in(p, &g))
}

/// CSV table `id,label,coordinates`.
pub fn vertex_csv(p: &HRep, vertices: &[Vertex]) -> String {
    let mut out = String::from("id,label,point\n");
    for (i, v) in vertices.iter().enumerate() {
        let coords: Vec<String> = v.point.iter().map(exactla::fmt_rat).collect();
        let _ = writeln!(out, "{i},{},{}", vertex_label(p, v.tight), coords.join(" "));
    }
    out
}

/// Integer direction `v - u` as a primitive vector.
pub fn edge_direction(g: &PolyGraph, u: usize, v: usize) -> Vec<BigInt> {
    exactla::normalize_primitive(&exactla::sub(&g.vertices[v].point, &g.vertices[u].point))
        .expect("distinct vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::exactla::rat;

    fn square() -> HRep {
        HRep::from_int_rows(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]).unwrap()
    }

    fn cube() -> HRep {
        let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            rows.push((e.clone(), 1));
            e[i] = -1;
            rows.push((e, 0));
        }
        let refs: Vec<(&[i64], i64)> = rows.iter().map(|(c, d)| (c.as_slice(), *d)).collect();
        HRep::from_int_rows(&refs).unwrap()
    }

    fn hexagon() -> HRep {
        HRep::from_int_rows(&[
            (&[1, 0], 2),
            (&[-1, 0], 2),
            (&[1, 1], 3),
            (&[-1, -1], 3),
            (&[1, -1], 3),
            (&[-1, 1], 3),
        ])
        .unwrap()
    }

    #[test]
    fn square_graph() {
        let g = adjacency_graph(&square()).unwrap();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(g.edges.len(), 4);
        assert!(g.vertices.iter().all(|v| g.neighbors(g.find_vertex(&v.point).unwrap()).len() == 2));
        assert_eq!(graph_distance(&g, 0, 3).unwrap(), 2);
        assert_eq!(detect_spindle_in(&square(), &g), Some((0, 3)));
        let faces = enumerate_2faces(&square(), &g);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].cycle, vec![0, 1, 3, 2]);
    }

    #[test]
    fn cube_faces() {
        let c = cube();
        let g = adjacency_graph(&c).unwrap();
        assert_eq!((g.n_vertices(), g.edges.len()), (8, 12));
        let faces = enumerate_2faces(&c, &g);
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert_eq!(f.cycle.len(), 4);
            assert_eq!(f.tight.len(), 1);
            assert!(exactla::dot(&f.d1, &f.d2) == rat(0));
        }
    }

    #[test]
    fn hexagon_is_not_a_spindle() {
        assert_eq!(detect_spindle(&hexagon()).unwrap(), None);
    }

    #[test]
    fn m4_structure() {
        let m4 = data::m4();
        let g = adjacency_graph(&m4).unwrap();
        assert_eq!(g.n_vertices(), 20);
        assert_eq!(g.edges.len(), 40);
        assert_eq!(g.vertices[0].point, vec![rat(0); 4]);
        assert_eq!(vertex_label(&m4, g.vertices[0].tight), "5678");
        let far = g.find_vertex(&data::m4_far_apex()).unwrap();
        assert_eq!(vertex_label(&m4, g.vertices[far].tight), "1234");
        assert_eq!(detect_spindle_in(&m4, &g), Some((0, far)));
        let verts = enumerate_vertices(&m4).unwrap();
        assert!((0..8).all(|i| facet_defining_in(&verts, i)));
    }

    #[test]
    fn m4_labels_match_figure() {
        let m4 = data::m4();
        let verts = enumerate_vertices(&m4).unwrap();
        let mut got: Vec<String> = verts.iter().map(|v| vertex_label(&m4, v.tight)).collect();
        got.sort();
        let mut want: Vec<&str> = "1234 1246 2346 1235 1345 3458 1458 2367 3467 2567 1568 3478 \
                                   2358 2378 1478 1467 2578 1678 5678 1256"
            .split_whitespace()
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn slack_row_is_not_a_facet() {
        let p = HRep::from_int_rows(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 5)])
            .unwrap();
        assert!(!is_facet_defining(&p, "5").unwrap());
        assert!(is_facet_defining(&p, "1").unwrap());
    }

    #[test]
    fn equality_rows_reduce_the_basis_size() {
        // The triangle {x + y + z = 1, x, y, z >= 0}.
        let p = HRep::new(
            3,
            vec![crate::hrep::Row::from_ints("s", &[1, 1, 1], 1)],
            (0..3)
                .map(|i| {
                    let mut c = [0i64; 3];
                    c[i] = -1;
                    crate::hrep::Row::from_ints(format!("x{i}"), &c, 0)
                })
                .collect(),
        )
        .unwrap();
        let g = adjacency_graph(&p).unwrap();
        assert_eq!((g.n_vertices(), g.edges.len()), (3, 3));
        assert_eq!(g.vertices[2].point, vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn unbounded_inputs_are_rejected() {
        let half = HRep::from_int_rows(&[(&[1, 0], 0), (&[0, 1], 0)]).unwrap();
        assert!(adjacency_graph(&half).is_err());
        let strip = HRep::from_int_rows(&[(&[1, 0], 1), (&[-1, 0], 0)]).unwrap();
        assert!(matches!(enumerate_vertices(&strip), Err(Error::NotPointed)));
    }
}
