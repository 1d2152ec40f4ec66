//! Orientations of a polytope graph induced by linear objectives.
//!
//! Generic objectives `c` are classified by the central arrangement of the
//! hyperplanes `{c : c·(u - v) = 0}` over the edges `(u, v)`. Regions are
//! enumerated exactly by breadth-first search across walls. Every candidate
//! extreme ray of a region cone is a line of the arrangement (the kernel of
//! `n - 1` independent normals), so the lines are computed once together with
//! their sign patterns, and each region then reduces to bitmask tests.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, IntVec, Rat};
use crate::hrep::HRep;
use crate::vertexgraph::{self, PolyGraph};

/// Widest arrangement handled by the bitmask region representation.
pub const MAX_NORMALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeArrangement {
    pub dim: usize,
    /// Distinct edge directions, primitive with canonical sign, sorted.
    #[serde(with = "int_rows")]
    pub normals: Vec<IntVec>,
    /// The graph's edges, in graph order.
    pub edges: Vec<(usize, usize)>,
    /// `u - v = edge_sign[k] * lambda * normals[edge_normal[k]]`, `lambda > 0`.
    pub edge_normal: Vec<usize>,
    pub edge_sign: Vec<i8>,
}

mod int_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        use serde::de::Error as _;
        Vec::<Vec<String>>::deserialize(d)?
            .into_iter()
            .map(|r| r.iter().map(|x| x.parse().map_err(D::Error::custom)).collect())
            .collect()
    }
}

impl EdgeArrangement {
    pub fn n_normals(&self) -> usize {
        self.normals.len()
    }

    /// Signs of `c · n_j` over the distinct normals.
    pub fn normal_signs(&self, c: &[Rat]) -> Vec<i8> {
        self.normals.iter().map(|n| exactla::sign(&exactla::dot_int(c, n))).collect()
    }

    /// Expands per-normal signs to the sign of `c·(u - v)` on every edge.
    pub fn expand(&self, normal_sigma: &[i8]) -> Vec<i8> {
        self.edge_normal
            .iter()
            .zip(&self.edge_sign)
            .map(|(&j, &s)| normal_sigma[j] * s)
            .collect()
    }
}

pub fn build_edge_arrangement(g: &PolyGraph) -> EdgeArrangement {
    let dim = g.vertices.first().map_or(0, |v| v.point.len());
    let dirs: Vec<IntVec> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let d = exactla::sub(&g.vertices[a].point, &g.vertices[b].point);
            exactla::normalize_primitive(&d).expect("distinct vertices")
        })
        .collect();
    let normals: Vec<IntVec> = dirs
        .iter()
        .map(|d| {
            let mut c = d.clone();
            exactla::canonicalize_sign(&mut c);
            c
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (edge_normal, edge_sign) = dirs
        .iter()
        .map(|d| {
            let mut c = d.clone();
            let flipped = exactla::canonicalize_sign(&mut c);
            (normals.binary_search(&c).unwrap(), if flipped { -1 } else { 1 })
        })
        .unzip();
    EdgeArrangement { dim, normals, edges: g.edges.clone(), edge_normal, edge_sign }
}

/// A full-dimensional region, in the bitmask form used during enumeration:
/// bit `j` of `positive` is set iff `c · n_j > 0` on the region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationRegion {
    /// `+`/`-` per distinct normal.
    pub normal_sigma: String,
    /// `+`/`-` per edge: the sign of `c·(u - v)`.
    pub sigma: String,
    #[serde(with = "crate::exactla::serde_intvec")]
    pub witness: IntVec,
    /// Normals defining facets of the region cone.
    pub walls: Vec<usize>,
    pub n_rays: usize,
}

impl OrientationRegion {
    pub fn witness_rat(&self) -> Vec<Rat> {
        exactla::int_vec_to_rat(&self.witness)
    }

    pub fn positive_mask(&self) -> u64 {
        sigma_mask(&self.normal_sigma)
    }
}

fn sigma_mask(s: &str) -> u64 {
    s.bytes().enumerate().filter(|&(_, b)| b == b'+').fold(0, |m, (j, _)| m | 1 << j)
}

fn sign_string(signs: impl IntoIterator<Item = i8>) -> String {
    signs.into_iter().map(|s| if s > 0 { '+' } else { '-' }).collect()
}

/// Arrangement line with its sign pattern over the normals.
struct Line {
    g: IntVec,
    zero: u64,
    positive: u64,
}

impl Line {
    fn negative(&self, all: u64) -> u64 {
        all & !self.zero & !self.positive
    }
}

fn arrangement_lines(arr: &EdgeArrangement) -> Vec<Line> {
    let n = arr.dim;
    let k = arr.n_normals();
    let found: Vec<IntVec> = (0..k)
        .combinations(n - 1)
        .par_bridge()
        .filter_map(|subset| {
            let rows: Vec<&[BigInt]> = subset.iter().map(|&j| arr.normals[j].as_slice()).collect();
            exactla::int_kernel_line(&rows, n)
        })
        .collect();
    let distinct: BTreeSet<IntVec> = found.into_iter().collect();
    distinct
        .into_iter()
        .map(|g| {
            let (mut zero, mut positive) = (0u64, 0u64);
            for (j, nv) in arr.normals.iter().enumerate() {
                let d: BigInt = nv.iter().zip(&g).map(|(a, b)| a * b).sum();
                if d.is_zero() {
                    zero |= 1 << j;
                } else if d.is_positive() {
                    positive |= 1 << j;
                }
            }
            Line { g, zero, positive }
        })
        .collect()
}

/// `(1, t, t^2, ...)` for the smallest `t >= 1` off every hyperplane.
pub fn generic_seed(arr: &EdgeArrangement, max_tries: u64) -> Result<Vec<Rat>> {
    for t in 1..=max_tries {
        let c: Vec<Rat> = (0..arr.dim as u32).map(|i| Rat::from_integer(BigInt::from(t).pow(i))).collect();
        if arr.normal_signs(&c).iter().all(|&s| s != 0) {
            return Ok(c);
        }
    }
    Err(Error::pre(format!("no generic seed (1, t, t^2, ...) with t <= {max_tries}")))
}

struct RegionGeometry<'a> {
    arr: &'a EdgeArrangement,
    lines: Vec<Line>,
    all: u64,
}

impl RegionGeometry<'_> {
    /// Rays of the closed region cone, walls, and witness (the ray sum).
    fn examine(&self, positive: u64) -> Result<OrientationRegion> {
        let n = self.arr.dim;
        let k = self.arr.n_normals();
        let mut rays: Vec<(IntVec, u64)> = Vec::new();
        for l in &self.lines {
            let nz = self.all & !l.zero;
            if (l.positive ^ positive) & nz == 0 {
                rays.push((l.g.clone(), l.zero));
            } else if (l.negative(self.all) ^ positive) & nz == 0 {
                rays.push((exactla::negate_int(&l.g), l.zero));
            }
        }
        let walls: Vec<usize> = (0..k)
            .filter(|&j| {
                let on: Vec<&[BigInt]> =
                    rays.iter().filter(|(_, z)| z & (1 << j) != 0).map(|(g, _)| g.as_slice()).collect();
                on.len() >= n - 1 && exactla::rank_of_int_rows(n, &on) == n - 1
            })
            .collect();
        let mut witness = vec![BigInt::zero(); n];
        for (g, _) in &rays {
            for (w, x) in witness.iter_mut().zip(g) {
                *w += x;
            }
        }
        let wr = exactla::int_vec_to_rat(&witness);
        let signs = self.arr.normal_signs(&wr);
        if signs.iter().enumerate().any(|(j, &s)| s != if positive >> j & 1 == 1 { 1 } else { -1 }) {
            return Err(Error::pre("region witness is not strictly inside its region"));
        }
        let witness = exactla::normalize_primitive(&wr)?;
        Ok(OrientationRegion {
            normal_sigma: sign_string(signs.iter().copied()),
            sigma: sign_string(self.arr.expand(&signs)),
            witness,
            walls,
            n_rays: rays.len(),
        })
    }
}

/// All full-dimensional regions, sorted by `normal_sigma`.
pub fn enumerate_regions(arr: &EdgeArrangement) -> Result<Vec<OrientationRegion>> {
    let k = arr.n_normals();
    if k > MAX_NORMALS {
        return Err(Error::TooManyRows { max: MAX_NORMALS, found: k });
    }
    let refs: Vec<&[BigInt]> = arr.normals.iter().map(Vec::as_slice).collect();
    if arr.dim == 0 || exactla::rank_of_int_rows(arr.dim, &refs) < arr.dim {
        return Err(Error::pre("edge normals do not span the ambient space"));
    }
    let geo = RegionGeometry { arr, lines: arrangement_lines(arr), all: if k == 64 { u64::MAX } else { (1 << k) - 1 } };
    let seed = generic_seed(arr, 1000)?;
    let seed_mask = sigma_mask(&sign_string(arr.normal_signs(&seed)));
    let mut seen: HashSet<u64> = HashSet::from([seed_mask]);
    let mut frontier = vec![seed_mask];
    let mut out = Vec::new();
    while !frontier.is_empty() {
        let level: Vec<OrientationRegion> = frontier.par_iter().map(|&m| geo.examine(m)).collect::<Result<_>>()?;
        let mut next = Vec::new();
        for r in &level {
            let m = r.positive_mask();
            for &j in &r.walls {
                let flipped = m ^ (1 << j);
                if seen.insert(flipped) {
                    next.push(flipped);
                }
            }
        }
        out.extend(level);
        frontier = next;
    }
    out.sort_by(|a, b| a.normal_sigma.cmp(&b.normal_sigma));
    Ok(out)
}

/// Exhaustive oracle: every sign vector whose closed cone has a ray sum
/// strictly inside it. Exponential in the number of normals.
pub fn count_regions_brute_force(arr: &EdgeArrangement) -> usize {
    let n = arr.dim;
    let k = arr.n_normals();
    assert!(k <= 20, "brute-force oracle is exponential");
    (0u64..1 << k)
        .filter(|&mask| {
            // Cone convention of the ray enumerator: rows r with r·g <= 0.
            let rows: Vec<Vec<Rat>> = (0..k)
                .map(|j| {
                    let s = if mask >> j & 1 == 1 { -1 } else { 1 };
                    arr.normals[j].iter().map(|x| Rat::from_integer(x * s)).collect()
                })
                .collect();
            let rays = crate::hrep::extreme_rays(n, &[], &rows);
            if !rays.lineality.is_empty() {
                return false;
            }
            let mut sum = vec![Rat::zero(); n];
            for r in &rays.rays {
                sum = exactla::add(&sum, &exactla::int_vec_to_rat(r));
            }
            rows.iter().all(|r| exactla::dot(r, &sum).is_negative())
        })
        .count()
}

/// Graph oriented toward decreasing objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.succ.len()).filter(|&v| self.succ[v].is_empty()).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.pred.len()).filter(|&v| self.pred[v].is_empty()).collect()
    }

    pub fn to_dot(&self, p: &HRep, g: &PolyGraph) -> String {
        let mut s = String::from("digraph orientation {\n");
        for (i, v) in g.vertices.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", vertexgraph::vertex_label(p, v.tight));
        }
        for (a, b) in self.arcs() {
            let _ = writeln!(s, "  {a} -> {b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn orient_graph(g: &PolyGraph, c: &[Rat]) -> Result<Digraph> {
    let nv = g.n_vertices();
    let val: Vec<Rat> = g.vertices.iter().map(|v| exactla::dot(c, &v.point)).collect();
    let mut d = Digraph { succ: vec![Vec::new(); nv], pred: vec![Vec::new(); nv] };
    for &(a, b) in &g.edges {
        let (hi, lo) = match val[a].cmp(&val[b]) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal => return Err(Error::NotGeneric(a, b)),
        };
        d.succ[hi].push(lo);
        d.pred[lo].push(hi);
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub sink: usize,
    pub diameter: usize,
    /// Vertices at the maximum distance from the sink.
    pub worst: Vec<usize>,
}

/// Longest shortest directed path to the unique sink.
pub fn monotone_edge_diameter(d: &Digraph) -> Result<MonotoneReport> {
    let sinks = d.sinks();
    if sinks.len() != 1 {
        return Err(Error::MultipleSinks(sinks.len()));
    }
    let sink = sinks[0];
    let mut dist = vec![usize::MAX; d.succ.len()];
    dist[sink] = 0;
    let mut q = VecDeque::from([sink]);
    while let Some(v) = q.pop_front() {
        for &u in &d.pred[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::pre("some vertex has no monotone path to the sink"));
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    let worst = (0..dist.len()).filter(|&v| dist[v] == diameter).collect();
    Ok(MonotoneReport { sink, diameter, worst })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionStats {
    #[serde(flatten)]
    pub region: OrientationRegion,
    pub sink: usize,
    pub source: usize,
    pub diameter: usize,
    pub worst: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `f - d`: facets minus dimension.
    pub hirsch_bound: usize,
    pub regions: Vec<RegionStats>,
    /// Indices of regions whose monotone diameter exceeds the bound.
    pub bad: Vec<usize>,
    #[serde(skip)]
    arrangement: Option<EdgeArrangement>,
}

impl Classification {
    pub fn total(&self) -> usize {
        self.regions.len()
    }

    pub fn sink_count(&self, v: usize) -> usize {
        self.regions.iter().filter(|r| r.sink == v).count()
    }

    /// Index of the region containing a generic objective.
    pub fn region_of(&self, c: &[Rat]) -> Option<usize> {
        let arr = self.arrangement.as_ref()?;
        let signs = arr.normal_signs(c);
        if signs.contains(&0) {
            return None;
        }
        let key = sign_string(signs);
        self.regions.binary_search_by(|r| r.region.normal_sigma.cmp(&key)).ok()
    }

    /// Number of edges on which two regions orient differently.
    pub fn hamming(&self, i: usize, j: usize) -> usize {
        let a = self.regions[i].region.sigma.as_bytes();
        let b = self.regions[j].region.sigma.as_bytes();
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }

    pub fn to_csv(&self, p: &HRep, g: &PolyGraph) -> String {
        let mut s = String::from("sigma,witness,sink,diameter\n");
        for r in &self.regions {
            let w = r.region.witness.iter().join(" ");
            let label = vertexgraph::vertex_label(p, g.vertices[r.sink].tight);
            let _ = writeln!(s, "{},{w},{label},{}", r.region.sigma, r.diameter);
        }
        s
    }
}

pub fn classify_regions(p: &HRep, g: &PolyGraph) -> Result<Classification> {
    let arr = build_edge_arrangement(g);
    let regions = enumerate_regions(&arr)?;
    let stats: Vec<RegionStats> = regions
        .into_par_iter()
        .map(|region| {
            let d = orient_graph(g, &region.witness_rat())?;
            let sources = d.sources();
            if sources.len() != 1 {
                return Err(Error::pre("orientation without a unique source"));
            }
            let m = monotone_edge_diameter(&d)?;
            Ok(RegionStats { region, sink: m.sink, source: sources[0], diameter: m.diameter, worst: m.worst })
        })
        .collect::<Result<_>>()?;
    let hirsch_bound = p.m() - (p.dim() - p.eq_rank());
    let bad = (0..stats.len()).filter(|&i| stats[i].diameter > hirsch_bound).collect();
    Ok(Classification { hirsch_bound, regions: stats, bad, arrangement: Some(arr) })
}

/// Every `n`-subset of distinct edge directions is a basis.
pub fn edge_direction_matroid_uniform(g: &PolyGraph, n: usize) -> bool {
    let arr = build_edge_arrangement(g);
    arr.normals
        .iter()
        .combinations(n)
        .par_bridge()
        .all(|s| {
            let rows: Vec<&[BigInt]> = s.iter().map(|r| r.as_slice()).collect();
            exactla::rank_of_int_rows(n, &rows) == n
        })
}

/// Per-normal count of edges, for reporting parallel classes.
pub fn parallel_classes(arr: &EdgeArrangement) -> HashMap<usize, usize> {
    arr.edge_normal.iter().fold(HashMap::new(), |mut m, &j| {
        *m.entry(j).or_insert(0) += 1;
        m
    })
}
