//! Maximal circuit steps, walk certificates and the walk constructions.
//!
//! A circuit walk from `y_0` is a sequence `y_k = y_{k-1} + alpha_k g_k` of
//! points of `P` where each `g_k` is a circuit, `alpha_k > 0`, and the step is
//! maximal: `y_{k-1} + alpha g_k` leaves `P` for every `alpha > alpha_k`.
//! Certificates record every step and are re-validated from scratch by
//! [`validate_walk`]; nothing constructed here is trusted without it.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{self, CircuitSet};
use crate::error::{Error, Result};
use crate::exactla::{self, fastint, IntVec, Rat, RatVec};
use crate::hrep::{self, Cone, HRep, Row};
use crate::rowset::RowSet;
use crate::vertexgraph::{self, Vertex};

/// Outcome of pushing along a direction as far as possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Step { alpha: Rat, endpoint: RatVec },
    /// A row tight at the start point has positive slope along `g`.
    Blocked,
    /// No row bounds the ray.
    Unbounded,
}

/// Slack at a fixed start point, reused across many directions.
pub struct StepContext<'a> {
    p: &'a HRep,
    y: RatVec,
    /// `s_i (d_i - B_i y)` for the fast-path scaling `s_i`, else plain slack.
    slack: Vec<Rat>,
    fast: bool,
}

impl<'a> StepContext<'a> {
    pub fn new(p: &'a HRep, y: &[Rat]) -> Result<Self> {
        if !p.contains(y) {
            return Err(Error::NotInPolyhedron);
        }
        let n = p.dim();
        let (slack, fast) = match p.fast_ineqs() {
            Some(fi) => (
                fi.iter()
                    .map(|r| {
                        let bx = r[..n]
                            .iter()
                            .zip(y)
                            .fold(Rat::zero(), |acc, (c, x)| acc + x * Rat::from_integer((*c).into()));
                        Rat::from_integer(r[n].into()) - bx
                    })
                    .collect(),
                true,
            ),
            None => ((0..p.m()).map(|i| p.slack(i, y)).collect(), false),
        };
        Ok(StepContext { p, y: y.to_vec(), slack, fast })
    }

    pub fn point(&self) -> &[Rat] {
        &self.y
    }

    fn slope_fast(&self, i: usize, g: &[i128]) -> Option<i128> {
        let r = &self.p.fast_ineqs()?[i];
        let mut s = 0i128;
        for (a, b) in r.iter().zip(g) {
            s = s.checked_add(a.checked_mul(*b)?)?;
        }
        Some(s)
    }

    /// Maximal step along `g`; equality rows are assumed to annihilate `g`.
    pub fn step(&self, g: &[BigInt]) -> StepOutcome {
        let small: Option<Vec<i128>> = if self.fast {
            g.iter().map(|x| i128::try_from(x).ok()).collect()
        } else {
            None
        };
        let mut best: Option<Rat> = None;
        for i in 0..self.p.m() {
            let slope = match small.as_deref().and_then(|gs| self.slope_fast(i, gs)) {
                Some(s) if s > 0 => Rat::from_integer(s.into()),
                Some(_) => continue,
                None => {
                    let s = self.p.row_dot_int(i, g);
                    if !s.is_positive() {
                        continue;
                    }
                    if self.fast {
                        // Match the scaling of the stored slack.
                        let fi = &self.p.fast_ineqs().unwrap()[i];
                        exactla::dot_int(&self.p.row(i).coeffs, g)
                            * first_scale(fi, &self.p.row(i).coeffs, &self.p.row(i).rhs)
                    } else {
                        s
                    }
                }
            };
            if self.slack[i].is_zero() {
                return StepOutcome::Blocked;
            }
            let ratio = &self.slack[i] / slope;
            if best.as_ref().is_none_or(|b| ratio < *b) {
                best = Some(ratio);
            }
        }
        match best {
            None => StepOutcome::Unbounded,
            Some(alpha) => {
                let endpoint = exactla::axpy_int(&self.y, &alpha, g);
                StepOutcome::Step { alpha, endpoint }
            }
        }
    }
}

/// The positive factor `s` with `fast_row = s (coeffs | rhs)`.
fn first_scale(fast: &[i128], coeffs: &[Rat], rhs: &Rat) -> Rat {
    coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .zip(fast)
        .find(|(c, _)| !c.is_zero())
        .map(|(c, f)| Rat::from_integer((*f).into()) / c)
        .expect("nonzero row")
}

/// Maximal step from `y` along `g` (Def. of a circuit walk, item iii).
pub fn maximal_step(p: &HRep, y: &[Rat], g: &[BigInt]) -> Result<(Rat, RatVec)> {
    if p.eqs().iter().any(|r| !exactla::dot_int(&r.coeffs, g).is_zero()) {
        return Err(Error::pre("direction leaves the equality subspace"));
    }
    match StepContext::new(p, y)?.step(g) {
        StepOutcome::Step { alpha, endpoint } => Ok((alpha, endpoint)),
        StepOutcome::Blocked => Err(Error::Blocked),
        StepOutcome::Unbounded => Err(Error::UnboundedRay),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(with = "crate::exactla::serde_intvec")]
    pub g: IntVec,
    #[serde(with = "crate::exactla::serde_rat")]
    pub alpha: Rat,
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub point: RatVec,
    /// Rows newly tight at `point`.
    pub entered: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkFlags {
    pub feasible: bool,
    pub circuits: bool,
    pub maximal: bool,
    pub sign_compatible: bool,
    pub monotone: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCertificate {
    #[serde(with = "crate::exactla::serde_ratvec")]
    pub start: RatVec,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_ratvec")]
    pub objective: Option<RatVec>,
    #[serde(default)]
    pub flags: WalkFlags,
}

mod opt_ratvec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactla::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
        use serde::de::Error as _;
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| {
                v.iter()
                    .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))))
                    .collect()
            })
            .transpose()
    }
}

impl WalkCertificate {
    pub fn new(start: RatVec) -> Self {
        WalkCertificate { start, steps: Vec::new(), objective: None, flags: WalkFlags::default() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> &[Rat] {
        self.steps.last().map_or(&self.start, |s| &s.point)
    }

    pub fn points(&self) -> impl Iterator<Item = &RatVec> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.point))
    }

    /// Appends the maximal step along `g` from the current end.
    pub fn push_maximal(&mut self, p: &HRep, g: IntVec) -> Result<&Step> {
        let y = self.end().to_vec();
        let (alpha, point) = maximal_step(p, &y, &g)?;
        let entered = entered_labels(p, &y, &point);
        self.steps.push(Step { g, alpha, point, entered });
        Ok(self.steps.last().unwrap())
    }

    pub fn append(&mut self, other: WalkCertificate) {
        assert_eq!(self.end(), other.start.as_slice(), "walks must connect");
        self.steps.extend(other.steps);
    }

    pub fn with_objective(mut self, c: RatVec) -> Self {
        self.objective = Some(c);
        self
    }

    /// Strictly decreasing objective values along the walk.
    pub fn is_monotone_for(&self, c: &[Rat]) -> bool {
        self.points()
            .map(|x| exactla::dot(c, x))
            .tuple_windows()
            .all(|(a, b)| b < a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

fn entered_labels(p: &HRep, from: &[Rat], to: &[Rat]) -> Vec<String> {
    let new = p.tight_set(to).minus(p.tight_set(from));
    p.labels_of(new).into_iter().map(String::from).collect()
}

/// Every property of a certificate, re-derived from the raw steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkReport {
    pub feasible: bool,
    pub connected: bool,
    pub circuits: bool,
    pub maximal: bool,
    pub entered: bool,
    pub sign_compatible: bool,
    /// Rows tight at the end point accumulate strictly along the walk.
    pub nested_tight: bool,
    pub monotone: Option<bool>,
    pub length: usize,
}

impl WalkReport {
    /// Feasible, connected circuit walk with maximal steps, and monotone
    /// when an objective is attached.
    pub fn ok(&self) -> bool {
        self.feasible
            && self.connected
            && self.circuits
            && self.maximal
            && self.entered
            && self.monotone != Some(false)
    }

    pub fn flags(&self) -> WalkFlags {
        WalkFlags {
            feasible: self.feasible,
            circuits: self.circuits,
            maximal: self.maximal,
            sign_compatible: self.sign_compatible,
            monotone: self.monotone,
        }
    }
}

pub fn validate_walk(p: &HRep, set: &CircuitSet, w: &WalkCertificate) -> WalkReport {
    let n = p.dim();
    let shaped = w.start.len() == n
        && w.steps.iter().all(|s| s.g.len() == n && s.point.len() == n)
        && w.objective.as_ref().is_none_or(|c| c.len() == n);
    if !shaped {
        return WalkReport {
            feasible: false,
            connected: false,
            circuits: false,
            maximal: false,
            entered: false,
            sign_compatible: false,
            nested_tight: false,
            monotone: w.objective.as_ref().map(|_| false),
            length: w.len(),
        };
    }
    let mut rep = WalkReport {
        feasible: p.contains(&w.start),
        connected: true,
        circuits: true,
        maximal: true,
        entered: true,
        sign_compatible: true,
        nested_tight: true,
        monotone: None,
        length: w.len(),
    };
    // Rows tight at the end point, entered one batch per step.
    let goal = if p.contains(w.end()) { p.tight_set(w.end()) } else { RowSet::EMPTY };
    let mut prev = w.start.clone();
    let mut images: Vec<Vec<i8>> = Vec::new();
    for s in &w.steps {
        rep.feasible &= p.contains(&s.point);
        rep.connected &= s.alpha.is_positive() && exactla::axpy_int(&prev, &s.alpha, &s.g) == s.point;
        rep.circuits &= set.find_int(&s.g).is_some();
        rep.maximal &= p.contains(&prev)
            && matches!(maximal_step(p, &prev, &s.g), Ok((a, _)) if a == s.alpha);
        rep.entered &= entered_labels(p, &prev, &s.point) == s.entered;
        if p.contains(&prev) && p.contains(&s.point) {
            let before = p.tight_set(&prev).intersect(goal);
            let after = p.tight_set(&s.point).intersect(goal);
            rep.nested_tight &= before.is_subset(after) && after != before;
        }
        images.push(p.bsign(&s.g));
        prev = s.point.clone();
    }
    rep.sign_compatible = images
        .iter()
        .tuple_combinations()
        .all(|(a, b)| circuits::signs_compatible(a, b));
    if let Some(c) = &w.objective {
        rep.monotone = Some(w.is_monotone_for(c));
    }
    rep
}

/// Validates and stamps the flags.
pub fn certify(p: &HRep, set: &CircuitSet, mut w: WalkCertificate) -> (WalkCertificate, WalkReport) {
    let rep = validate_walk(p, set, &w);
    w.flags = rep.flags();
    (w, rep)
}

/// Endpoints of single maximal circuit steps from `y`, deduplicated:
/// `(circuit index, orientation, endpoint)`.
pub fn one_step_reach(p: &HRep, set: &CircuitSet, y: &[Rat]) -> Result<Vec<(usize, i8, RatVec)>> {
    let ctx = StepContext::new(p, y)?;
    let raw: Vec<(usize, i8, RatVec)> = set
        .circuits
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, c)| {
            let ctx = &ctx;
            [1i8, -1].into_iter().filter_map(move |s| {
                let g = if s == 1 { c.g.clone() } else { c.negated_g() };
                match ctx.step(&g) {
                    StepOutcome::Step { endpoint, .. } => Some((i, s, endpoint)),
                    _ => None,
                }
            })
        })
        .collect();
    let mut seen: HashMap<RatVec, ()> = HashMap::new();
    Ok(raw.into_iter().filter(|(_, _, e)| seen.insert(e.clone(), ()).is_none()).collect())
}

/// One maximal circuit step `y -> v`, if there is one.
fn direct_step(p: &HRep, set: &CircuitSet, y: &[Rat], v: &[Rat]) -> Option<IntVec> {
    let d = exactla::sub(v, y);
    if exactla::is_zero_vec(&d) {
        return None;
    }
    set.find(&d)?;
    let g = exactla::normalize_primitive(&d).ok()?;
    match maximal_step(p, y, &g) {
        Ok((_, end)) if end == v => Some(g),
        _ => None,
    }
}

/// A circuit walk `u -> v` of length at most 2, shortest first.
pub fn two_step_reachable(p: &HRep, set: &CircuitSet, u: &[Rat], v: &[Rat]) -> Result<Option<WalkCertificate>> {
    bounded_depth_search(p, set, u, v, 2)
}

/// Shortest circuit walk `u -> v` with at most `k_max` steps, by breadth-first
/// search over maximal-step endpoints with exact point deduplication.
pub fn bounded_depth_search(
    p: &HRep,
    set: &CircuitSet,
    u: &[Rat],
    v: &[Rat],
    k_max: usize,
) -> Result<Option<WalkCertificate>> {
    if !p.contains(u) || !p.contains(v) {
        return Err(Error::NotInPolyhedron);
    }
    if u == v {
        return Ok(Some(WalkCertificate::new(u.to_vec())));
    }
    // parent[i] = (predecessor index, direction into point i).
    let mut points: Vec<RatVec> = vec![u.to_vec()];
    let mut parent: Vec<Option<(usize, IntVec)>> = vec![None];
    let mut index: HashMap<RatVec, usize> = HashMap::from([(u.to_vec(), 0)]);
    let mut frontier = vec![0usize];
    for depth in 0..k_max {
        let hit = frontier
            .par_iter()
            .find_first(|&&i| direct_step(p, set, &points[i], v).is_some())
            .copied();
        if let Some(i) = hit {
            let last = direct_step(p, set, &points[i], v).unwrap();
            let mut dirs = vec![last];
            let mut cur = i;
            while let Some((pre, g)) = &parent[cur] {
                dirs.push(g.clone());
                cur = *pre;
            }
            dirs.reverse();
            let mut w = WalkCertificate::new(u.to_vec());
            for g in dirs {
                w.push_maximal(p, g)?;
            }
            return Ok(Some(w));
        }
        if depth + 1 == k_max {
            break;
        }
        let expanded: Vec<Vec<(IntVec, RatVec)>> = frontier
            .par_iter()
            .map(|&i| {
                one_step_reach(p, set, &points[i])
                    .map(|r| {
                        r.into_iter()
                            .map(|(ci, s, e)| {
                                let c = &set.circuits[ci];
                                (if s == 1 { c.g.clone() } else { c.negated_g() }, e)
                            })
                            .collect()
                    })
                    .unwrap_or_default()
            })
            .collect();
        let mut next = Vec::new();
        for (&i, list) in frontier.iter().zip(expanded) {
            for (g, e) in list {
                if index.contains_key(&e) {
                    continue;
                }
                index.insert(e.clone(), points.len());
                points.push(e);
                parent.push(Some((i, g)));
                next.push(points.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// No three circuits span `v`, which rules out every circuit walk of length
/// at most 3 from the origin to `v`.
pub fn triple_span_excludes(set: &CircuitSet, v: &[Rat]) -> Result<bool> {
    if exactla::is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let n = v.len();
    let vv = exactla::normalize_primitive(v)?;
    let to_small = |g: &[BigInt]| -> Option<Vec<i128>> { g.iter().map(|x| i128::try_from(x).ok()).collect() };
    let gs: Vec<&IntVec> = set.circuits.iter().map(|c| &c.g).collect();
    let spans = |a: &IntVec, b: &IntVec, c: &IntVec| -> bool {
        if let (Some(a), Some(b), Some(c), Some(w)) = (to_small(a), to_small(b), to_small(c), to_small(&vv)) {
            let three = [a.as_slice(), b.as_slice(), c.as_slice()];
            let four = [a.as_slice(), b.as_slice(), c.as_slice(), w.as_slice()];
            if let (Some(r3), Some(r4)) = (fastint::rank(&three, n), fastint::rank(&four, n)) {
                return r3 == r4;
            }
        }
        let rows: Vec<RatVec> = [a, b, c].iter().map(|g| exactla::int_vec_to_rat(g)).collect();
        let refs: Vec<&[Rat]> = rows.iter().map(Vec::as_slice).collect();
        let r3 = exactla::rank_of_rows(n, &refs);
        let mut refs4 = refs.clone();
        refs4.push(v);
        r3 == exactla::rank_of_rows(n, &refs4)
    };
    let m = gs.len();
    if m < 3 {
        // Fewer than three circuits: pad with repeats, which keeps the span.
        return Ok(!(0..m).any(|i| spans(gs[i], gs[(i + 1) % m], gs[i])));
    }
    let any = (0..m)
        .into_par_iter()
        .any(|i| (i + 1..m).any(|j| (j + 1..m).any(|k| spans(gs[i], gs[j], gs[k]))));
    Ok(!any)
}

/// `(C + u) ∩ (-C + v)` with rows labeled `u:<label>` and `v:<label>`.
pub fn cone_spindle(c: &Cone, u: &[Rat], v: &[Rat]) -> HRep {
    let mut ineqs = Vec::with_capacity(2 * c.rows.len());
    for (r, l) in c.rows.iter().zip(&c.labels) {
        ineqs.push(Row::new(format!("u:{l}"), r.clone(), exactla::dot(r, u)));
    }
    for (r, l) in c.rows.iter().zip(&c.labels) {
        let neg: RatVec = r.iter().map(|x| -x).collect();
        ineqs.push(Row::new(format!("v:{l}"), neg.clone(), exactla::dot(&neg, v)));
    }
    let eqs = c
        .eqs
        .iter()
        .enumerate()
        .map(|(k, r)| Row::new(format!("eq{}", k + 1), r.clone(), exactla::dot(r, u)))
        .collect();
    HRep::new(c.dim, eqs, ineqs).expect("cone rows have the cone dimension")
}

/// Walk `u -> v` inside `(C + u) ∩ (-C + v)` along extreme rays of `C`.
///
/// Keeps the set `E` of cone rows already tight against `v`; the remaining
/// spindle lives in the face `C_E`, and its lexicographically smallest
/// extreme ray is an edge at the current point. Each step makes at least one
/// more row tight, so there are at most `dim` steps. The certificate is
/// expressed against [`cone_spindle`].
pub fn same_cone_spindle_walk(c: &Cone, u: &[Rat], v: &[Rat]) -> Result<WalkCertificate> {
    let d = exactla::sub(v, u);
    let interior = c.eqs.iter().all(|e| exactla::dot(e, &d).is_zero())
        && c.rows.iter().all(|r| exactla::dot(r, &d).is_negative());
    if !interior {
        return Err(Error::pre("v - u is not in the interior of the cone"));
    }
    let rays = c.extreme_rays();
    if !rays.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    let spindle = cone_spindle(c, u, v);
    let mut w = WalkCertificate::new(u.to_vec());
    let mut tight = RowSet::EMPTY;
    let mut y = u.to_vec();
    while y != v {
        if w.len() >= c.dim {
            return Err(Error::pre("walk exceeded the dimension bound"));
        }
        let ray = rays
            .rays
            .iter()
            .find(|r| tight.iter().all(|i| exactla::dot_int(&c.rows[i], r).is_zero()))
            .ok_or_else(|| Error::pre("no extreme ray in the current face"))?;
        w.push_maximal(&spindle, ray.clone())?;
        y = w.end().to_vec();
        let gap = exactla::sub(v, &y);
        tight = (0..c.rows.len()).filter(|&i| exactla::dot(&c.rows[i], &gap).is_zero()).collect();
    }
    Ok(w)
}

/// Sign-compatible walk between the apices `u, v` of a spindle whose cone
/// at `u` contains the reflected cone at `v`.
///
/// With `D = -(feasible cone at v) ⊆ C = feasible cone at u`, the walk inside
/// `(D + u) ∩ (-D + v)` runs along rays of `D`; every such step is also
/// maximal in `P`, which is re-checked here step by step.
pub fn containment_spindle_walk(p: &HRep, u: &[Rat], v: &[Rat]) -> Result<WalkCertificate> {
    let cu = hrep::feasible_cone_at(p, u)?;
    let d = hrep::feasible_cone_at(p, v)?.negated();
    if !hrep::cone_contains(&d, &cu)? {
        return Err(Error::pre("cone at v, reflected, is not contained in the cone at u"));
    }
    let inner = same_cone_spindle_walk(&d, u, v)?;
    let mut w = WalkCertificate::new(u.to_vec());
    for s in inner.steps {
        let step = w.push_maximal(p, s.g)?;
        if step.point != s.point {
            return Err(Error::pre("a cone step is not maximal in the polyhedron"));
        }
    }
    Ok(w)
}

/// Lemma-free check of down-closedness in irredundant form: rows are the
/// `n` non-negativity rows plus rows with non-negative coefficients and
/// right-hand side, all facet-defining.
pub fn is_antiblocking(p: &HRep) -> bool {
    let n = p.dim();
    if !p.eqs().is_empty() || !hrep::is_bounded(p) {
        return false;
    }
    let mut nonneg = vec![false; n];
    for r in p.ineqs() {
        let nz: Vec<usize> = (0..n).filter(|&j| !r.coeffs[j].is_zero()).collect();
        let is_axis = nz.len() == 1 && r.coeffs[nz[0]].is_negative() && r.rhs.is_zero();
        if is_axis {
            nonneg[nz[0]] = true;
        } else if r.coeffs.iter().any(Signed::is_negative) || r.rhs.is_negative() {
            return false;
        }
    }
    if !nonneg.iter().all(|&b| b) {
        return false;
    }
    let Ok(verts) = vertexgraph::enumerate_vertices(p) else {
        return false;
    };
    (0..p.m()).all(|i| vertexgraph::facet_defining_in(&verts, i))
}

/// Steps `-x_i e_i` in descending index order; each is maximal because the
/// step stops exactly on the row `-x_i <= 0`.
pub fn antiblocking_walk(p: &HRep, x: &[Rat]) -> Result<WalkCertificate> {
    if !is_antiblocking(p) {
        return Err(Error::pre("polyhedron is not anti-blocking"));
    }
    if !p.contains(x) {
        return Err(Error::NotInPolyhedron);
    }
    let n = p.dim();
    let mut w = WalkCertificate::new(x.to_vec());
    for i in (0..n).rev().filter(|&i| x[i].is_positive()) {
        let mut g = vec![BigInt::zero(); n];
        g[i] = BigInt::from(-1);
        let step = w.push_maximal(p, g)?;
        if step.alpha != x[i] {
            return Err(Error::pre("axis step stopped before the coordinate hyperplane"));
        }
    }
    Ok(w)
}

/// Largest shortest circuit-walk length from the origin to a vertex, if every
/// vertex is reached within `k_max` steps.
pub fn delta0_upper(p: &HRep, set: &CircuitSet, vertices: &[Vertex], k_max: usize) -> Result<Option<usize>> {
    if !is_antiblocking(p) {
        return Err(Error::pre("polyhedron is not anti-blocking"));
    }
    let origin = vec![Rat::zero(); p.dim()];
    let mut worst = 0;
    for v in vertices {
        match bounded_depth_search(p, set, &origin, &v.point, k_max)? {
            Some(w) => worst = worst.max(w.len()),
            None => return Ok(None),
        }
    }
    Ok(Some(worst))
}

/// Edge walk along graph vertex ids, each edge re-encoded as a maximal step.
pub fn edge_walk(p: &HRep, vertices: &[Vertex], path: &[usize]) -> Result<WalkCertificate> {
    let mut w = WalkCertificate::new(vertices[path[0]].point.clone());
    for (&a, &b) in path.iter().tuple_windows() {
        let g = exactla::normalize_primitive(&exactla::sub(&vertices[b].point, &vertices[a].point))?;
        let step = w.push_maximal(p, g)?;
        if step.point != vertices[b].point {
            return Err(Error::pre(format!("edge {a}-{b} is not a maximal step")));
        }
    }
    Ok(w)
}
