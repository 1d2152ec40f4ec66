//! Polyhedra in inequality form, the H text format, cones and wedges.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    self, fastint, int_vec_to_rat, normalize_coprime, normalize_primitive, IntVec, Rat, RatMat,
    RatVec,
};
use crate::rowset::{RowSet, MAX_ROWS};

/// One labeled row `coeffs . x (<= | =) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub coeffs: RatVec,
    pub rhs: Rat,
    pub label: String,
}

impl Row {
    pub fn new(label: impl Into<String>, coeffs: RatVec, rhs: Rat) -> Self {
        Row { coeffs, rhs, label: label.into() }
    }

    pub fn from_ints(label: impl Into<String>, coeffs: &[i64], rhs: i64) -> Self {
        Row::new(label, coeffs.iter().map(|&c| exactla::rat(c)).collect(), exactla::rat(rhs))
    }
}

/// `{x in R^n : Ax = b, Bx <= d}` with labeled rows.
///
/// Inequality rows are addressed by index `0..m` and by label. The integer
/// image of every row (scaled to a primitive vector) is kept alongside so the
/// enumeration loops can run on `i128` when the entries are small enough.
#[derive(Clone, Debug)]
pub struct HRep {
    dim: usize,
    eqs: Vec<Row>,
    ineqs: Vec<Row>,
    fast_ineq: Option<Vec<Vec<i128>>>,
    fast_eq: Option<Vec<Vec<i128>>>,
}

impl PartialEq for HRep {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.eqs == other.eqs && self.ineqs == other.ineqs
    }
}

impl Eq for HRep {}

fn check_label(label: &str, seen: &mut HashSet<String>) -> std::result::Result<(), String> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(format!("invalid label {label:?}"));
    }
    if !seen.insert(label.to_string()) {
        return Err(format!("duplicate label {label:?}"));
    }
    Ok(())
}

fn fast_rows(rows: &[Row]) -> Option<Vec<Vec<i128>>> {
    rows.iter().map(|r| fastint::scale_row(&r.coeffs, &r.rhs)).collect()
}

impl HRep {
    pub fn new(dim: usize, eqs: Vec<Row>, ineqs: Vec<Row>) -> Result<Self> {
        if ineqs.len() > MAX_ROWS {
            return Err(Error::TooManyRows { max: MAX_ROWS, found: ineqs.len() });
        }
        let mut seen = HashSet::new();
        for r in eqs.iter().chain(&ineqs) {
            if r.coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.coeffs.len() });
            }
            check_label(&r.label, &mut seen).map_err(Error::Precondition)?;
        }
        let fast_ineq = fast_rows(&ineqs);
        let fast_eq = fast_rows(&eqs);
        Ok(HRep { dim, eqs, ineqs, fast_ineq, fast_eq })
    }

    /// Inequalities only, labeled `1..=m`.
    pub fn from_int_rows(rows: &[(&[i64], i64)]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.0.len());
        let ineqs = rows
            .iter()
            .enumerate()
            .map(|(i, (c, d))| Row::from_ints((i + 1).to_string(), c, *d))
            .collect();
        HRep::new(dim, Vec::new(), ineqs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eqs(&self) -> &[Row] {
        &self.eqs
    }

    pub fn ineqs(&self) -> &[Row] {
        &self.ineqs
    }

    /// Number of inequality rows.
    pub fn m(&self) -> usize {
        self.ineqs.len()
    }

    pub fn row(&self, i: usize) -> &Row {
        &self.ineqs[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.ineqs[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ineqs
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn rows_by_label<S: AsRef<str>>(&self, labels: &[S]) -> Result<RowSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn labels_of(&self, set: RowSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Integer images `[coeffs | rhs]` of the inequality rows, when every
    /// row fits the fast path.
    pub fn fast_ineqs(&self) -> Option<&[Vec<i128>]> {
        self.fast_ineq.as_deref()
    }

    pub fn fast_eqs(&self) -> Option<&[Vec<i128>]> {
        self.fast_eq.as_deref()
    }

    /// `d_i - B_i x`.
    pub fn slack(&self, i: usize, x: &[Rat]) -> Rat {
        let r = &self.ineqs[i];
        &r.rhs - exactla::dot(&r.coeffs, x)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self.eqs.iter().all(|r| exactla::dot(&r.coeffs, x) == r.rhs)
            && (0..self.m()).all(|i| !self.slack(i, x).is_negative())
    }

    /// Inequality rows with zero slack at `x`.
    pub fn tight_set(&self, x: &[Rat]) -> RowSet {
        (0..self.m()).filter(|&i| self.slack(i, x).is_zero()).collect()
    }

    /// `B_i g` for an integer direction.
    pub fn row_dot_int(&self, i: usize, g: &[BigInt]) -> Rat {
        exactla::dot_int(&self.ineqs[i].coeffs, g)
    }

    /// Sign vector of `B g` over all inequality rows.
    pub fn bsign(&self, g: &[BigInt]) -> Vec<i8> {
        (0..self.m()).map(|i| exactla::sign(&self.row_dot_int(i, g))).collect()
    }

    pub fn bsign_rat(&self, w: &[Rat]) -> Vec<i8> {
        self.ineqs.iter().map(|r| exactla::sign(&exactla::dot(&r.coeffs, w))).collect()
    }

    pub fn eq_rank(&self) -> usize {
        let rows: Vec<&[Rat]> = self.eqs.iter().map(|r| r.coeffs.as_slice()).collect();
        exactla::rank_of_rows(self.dim, &rows)
    }

    /// Rank of the equality rows together with the inequality rows in `set`.
    pub fn rank_with(&self, set: RowSet) -> usize {
        if let (Some(fi), Some(fe)) = (&self.fast_ineq, &self.fast_eq) {
            let rows: Vec<&[i128]> = fe
                .iter()
                .map(Vec::as_slice)
                .chain(set.iter().map(|i| fi[i].as_slice()))
                .collect();
            if let Some(r) = fastint::rank(&rows, self.dim) {
                return r;
            }
        }
        let rows: Vec<&[Rat]> = self
            .eqs
            .iter()
            .map(|r| r.coeffs.as_slice())
            .chain(set.iter().map(|i| self.ineqs[i].coeffs.as_slice()))
            .collect();
        exactla::rank_of_rows(self.dim, &rows)
    }

    /// The polyhedron cut out by the equalities and the inequality rows in
    /// `keep`, in original order.
    pub fn restrict(&self, keep: RowSet) -> HRep {
        let ineqs = keep.iter().map(|i| self.ineqs[i].clone()).collect();
        HRep::new(self.dim, self.eqs.clone(), ineqs).expect("sub-system of a valid HRep")
    }

    /// Homogeneous system of the recession cone.
    pub fn recession_cone(&self) -> Cone {
        Cone {
            dim: self.dim,
            eqs: self.eqs.iter().map(|r| r.coeffs.clone()).collect(),
            rows: self.ineqs.iter().map(|r| r.coeffs.clone()).collect(),
            labels: self.ineqs.iter().map(|r| r.label.clone()).collect(),
        }
    }
}

// --- H text format -------------------------------------------------------

fn parse_row(line_no: usize, line: &str, dim: usize) -> Result<Row> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len().checked_sub(2) != Some(dim) {
        return Err(Error::parse(
            line_no,
            format!("expected label, rhs and {dim} coefficients, found {} tokens", toks.len()),
        ));
    }
    let num = |t: &str| {
        exactla::parse_rat(t)
            .ok_or_else(|| Error::parse(line_no, format!("not a rational number: {t:?}")))
    };
    let rhs = num(toks[1])?;
    let coeffs = toks[2..].iter().map(|t| num(t).map(|x| -x)).collect::<Result<_>>()?;
    Ok(Row::new(toks[0], coeffs, rhs))
}

/// Parses the H text format.
///
/// ```text
/// * comment
/// H
/// <m> <n>
/// <label> <d_i> <-B_i1> ... <-B_in>     (m lines)
/// LIN <k>                               (optional)
/// <label> <b_j> <-A_j1> ... <-A_jn>     (k lines)
/// END
/// ```
pub fn parse_hrep(text: &str) -> Result<HRep> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| -> Result<(usize, &str)> {
        lines.next().ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")))
    };

    let (mut no, mut line) = next("H marker")?;
    while line.starts_with('*') {
        (no, line) = next("H marker")?;
    }
    if line != "H" {
        return Err(Error::parse(no, format!("expected \"H\", found {line:?}")));
    }
    let (no, header) = next("header")?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(no, format!("malformed header {header:?}")))?;
    let [m, n] = dims[..] else {
        return Err(Error::parse(no, format!("malformed header {header:?}")));
    };
    if m > MAX_ROWS {
        return Err(Error::TooManyRows { max: MAX_ROWS, found: m });
    }

    let mut ineqs = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, line) = next("inequality row")?;
        ineqs.push(parse_row(no, line, n)?);
    }
    let mut eqs = Vec::new();
    let (mut no, mut line) = next("END")?;
    if let Some(rest) = line.strip_prefix("LIN") {
        let k: usize = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse(no, format!("malformed LIN header {line:?}")))?;
        for _ in 0..k {
            let (no, line) = next("equality row")?;
            eqs.push(parse_row(no, line, n)?);
        }
        (no, line) = next("END")?;
    }
    if line != "END" {
        return Err(Error::parse(no, format!("expected \"END\", found {line:?}")));
    }
    if let Some((no, extra)) = lines.next() {
        return Err(Error::parse(no, format!("trailing content after END: {extra:?}")));
    }

    let mut seen = HashSet::new();
    for (k, r) in ineqs.iter().chain(&eqs).enumerate() {
        check_label(&r.label, &mut seen).map_err(|msg| Error::parse(k + 1, msg))?;
    }
    HRep::new(n, eqs, ineqs)
}

/// Serializes in the H text format; `parse_hrep` inverts it exactly.
pub fn write_hrep(p: &HRep) -> String {
    fn emit(out: &mut String, r: &Row) {
        out.push_str(&r.label);
        let _ = write!(out, " {}", r.rhs);
        for c in &r.coeffs {
            let _ = write!(out, " {}", -c);
        }
        out.push('\n');
    }
    let mut out = String::new();
    let _ = writeln!(out, "H\n{} {}", p.m(), p.dim);
    for r in &p.ineqs {
        emit(&mut out, r);
    }
    if !p.eqs.is_empty() {
        let _ = writeln!(out, "LIN {}", p.eqs.len());
        for r in &p.eqs {
            emit(&mut out, r);
        }
    }
    out.push_str("END\n");
    out
}

// --- Cones and extreme rays ----------------------------------------------

/// Polyhedral cone `{g : E g = 0, M g <= 0}` with labeled inequality rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub dim: usize,
    pub eqs: Vec<RatVec>,
    pub rows: Vec<RatVec>,
    pub labels: Vec<String>,
}

/// Lineality basis and extreme rays of a cone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RayDecomposition {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

impl RayDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }
}

impl Cone {
    pub fn new(dim: usize, eqs: Vec<RatVec>, rows: Vec<RatVec>) -> Self {
        let labels = (1..=rows.len()).map(|i| i.to_string()).collect();
        Cone { dim, eqs, rows, labels }
    }

    pub fn orthant(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| exactla::rat(if i == j { -1 } else { 0 })).collect())
            .collect();
        Cone::new(dim, Vec::new(), rows)
    }

    pub fn contains(&self, g: &[Rat]) -> bool {
        self.eqs.iter().all(|e| exactla::dot(e, g).is_zero())
            && self.rows.iter().all(|r| !exactla::dot(r, g).is_positive())
    }

    pub fn contains_int(&self, g: &[BigInt]) -> bool {
        self.eqs.iter().all(|e| exactla::dot_int(e, g).is_zero())
            && self.rows.iter().all(|r| !exactla::dot_int(r, g).is_positive())
    }

    /// `-C`.
    pub fn negated(&self) -> Cone {
        let neg = |rows: &[RatVec]| rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        Cone { dim: self.dim, eqs: neg(&self.eqs), rows: neg(&self.rows), labels: self.labels.clone() }
    }

    pub fn extreme_rays(&self) -> RayDecomposition {
        extreme_rays(self.dim, &self.eqs, &self.rows)
    }

    /// `(C + apex)` as an HRep, with the cone's labels.
    pub fn translate(&self, apex: &[Rat]) -> HRep {
        let ineqs = self
            .rows
            .iter()
            .zip(&self.labels)
            .map(|(r, l)| Row::new(l.clone(), r.clone(), exactla::dot(r, apex)))
            .collect();
        let eqs = self
            .eqs
            .iter()
            .enumerate()
            .map(|(k, r)| Row::new(format!("eq{}", k + 1), r.clone(), exactla::dot(r, apex)))
            .collect();
        HRep::new(self.dim, eqs, ineqs).expect("cone rows have the cone dimension")
    }
}

/// Lineality basis and extreme rays of `{g : E g = 0, M g <= 0}`.
///
/// When the lineality space is nontrivial only the basis is returned. Rays
/// are found by the subset-kernel method: every extreme ray spans the kernel
/// of the equalities plus `n - 1 - rank(E)` independent rows of `M` that it
/// makes tight. Rays are primitive integer vectors with the feasible sign,
/// sorted lexicographically.
pub fn extreme_rays(dim: usize, eqs: &[RatVec], rows: &[RatVec]) -> RayDecomposition {
    let all: Vec<RatVec> = eqs.iter().chain(rows).cloned().collect();
    let lineality = if dim == 0 {
        Vec::new()
    } else {
        exactla::kernel_basis(&RatMat::new(dim, all).expect("rows have the cone dimension"))
    };
    if !lineality.is_empty() {
        return RayDecomposition { lineality, rays: Vec::new() };
    }

    let eq_refs: Vec<&[Rat]> = eqs.iter().map(Vec::as_slice).collect();
    let eq_basis: Vec<RatVec> = exactla::independent_subset(dim, &eq_refs)
        .into_iter()
        .map(|i| eqs[i].clone())
        .collect();
    let Some(k) = (dim - 1).checked_sub(eq_basis.len()) else {
        return RayDecomposition::default();
    };

    let zero = Rat::zero();
    let int_rows: Option<Vec<Vec<i128>>> = eq_basis
        .iter()
        .chain(rows)
        .map(|r| fastint::scale_row(r, &zero).map(|mut v| {
            v.pop();
            v
        }))
        .collect();
    let (int_eq, int_ineq) = match &int_rows {
        Some(v) => {
            let (a, b) = v.split_at(eq_basis.len());
            (Some(a), Some(b))
        }
        None => (None, None),
    };

    let mut found: HashSet<IntVec> = HashSet::new();
    for subset in (0..rows.len()).combinations(k) {
        let mut g = None;
        if let (Some(ie), Some(ii)) = (int_eq, int_ineq) {
            let sys: Vec<&[i128]> = ie
                .iter()
                .map(Vec::as_slice)
                .chain(subset.iter().map(|&i| ii[i].as_slice()))
                .collect();
            g = fastint::cofactor_kernel(&sys, dim).map(|mut v| {
                if fastint::primitive_canonical(&mut v) {
                    Some(fastint::to_bigint_vec(&v))
                } else {
                    None
                }
            });
        }
        let g = match g {
            Some(g) => g,
            None => {
                let sys: Vec<RatVec> = eq_basis
                    .iter()
                    .cloned()
                    .chain(subset.iter().map(|&i| rows[i].clone()))
                    .collect();
                let ker = exactla::kernel_basis(&RatMat::new(dim, sys).expect("dimension"));
                (ker.len() == 1).then(|| ker.into_iter().next().unwrap())
            }
        };
        let Some(mut g) = g else { continue };
        let mut pos = false;
        let mut neg = false;
        for r in rows {
            let s = exactla::dot_int(r, &g);
            pos |= s.is_positive();
            neg |= s.is_negative();
        }
        if pos && neg {
            continue;
        }
        if pos {
            g = exactla::negate_int(&g);
        }
        found.insert(g);
    }
    let mut rays: Vec<IntVec> = found.into_iter().collect();
    rays.sort();
    RayDecomposition { lineality: Vec::new(), rays }
}

/// Lineality basis and extreme rays of the recession cone of `p`.
pub fn recession_extreme_rays(p: &HRep) -> RayDecomposition {
    p.recession_cone().extreme_rays()
}

/// Bounded iff the recession cone is `{0}`. Empty polyhedra report bounded.
pub fn is_bounded(p: &HRep) -> bool {
    recession_extreme_rays(p).is_trivial()
}

/// Cone of feasible directions at `x`: equalities plus the rows tight at `x`.
pub fn feasible_cone_at(p: &HRep, x: &[Rat]) -> Result<Cone> {
    if !p.contains(x) {
        return Err(Error::NotInPolyhedron);
    }
    let tight = p.tight_set(x);
    Ok(Cone {
        dim: p.dim(),
        eqs: p.eqs().iter().map(|r| r.coeffs.clone()).collect(),
        rows: tight.iter().map(|i| p.row(i).coeffs.clone()).collect(),
        labels: tight.iter().map(|i| p.label(i).to_string()).collect(),
    })
}

/// `D ⊆ C`, decided on the extreme rays of a pointed `D`.
pub fn cone_contains(d: &Cone, c: &Cone) -> Result<bool> {
    let rays = d.extreme_rays();
    if !rays.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    Ok(rays.rays.iter().all(|r| c.contains_int(r)))
}

/// `T(P)` for invertible `T`: each row `r` becomes `r T^{-1}`.
pub fn apply_linear_map(p: &HRep, t: &RatMat) -> Result<HRep> {
    if t.nrows() != p.dim() || t.ncols() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: t.nrows() });
    }
    let inv = t.inverse().ok_or(Error::Singular)?.transpose();
    let map = |r: &Row| Row::new(r.label.clone(), inv.mul_vec(&r.coeffs), r.rhs.clone());
    HRep::new(p.dim(), p.eqs().iter().map(map).collect(), p.ineqs().iter().map(map).collect())
}

fn positive_key(r: &Row) -> IntVec {
    let mut v = r.coeffs.clone();
    v.push(r.rhs.clone());
    normalize_primitive(&v).unwrap_or_default()
}

fn line_key(r: &Row) -> IntVec {
    let mut v = r.coeffs.clone();
    v.push(r.rhs.clone());
    normalize_coprime(&v).unwrap_or_default()
}

/// Bijection `sigma` on inequality rows with row `i` of `p` a positive
/// multiple of row `sigma[i]` of `q`, and equal equality spans row by row
/// up to scaling; `None` if there is none.
pub fn hrep_equivalent(p: &HRep, q: &HRep) -> Option<Vec<usize>> {
    if p.dim() != q.dim() || p.m() != q.m() || p.eqs().len() != q.eqs().len() {
        return None;
    }
    let p_eq: HashSet<IntVec> = p.eqs().iter().map(line_key).collect();
    let q_eq: HashSet<IntVec> = q.eqs().iter().map(line_key).collect();
    if p_eq != q_eq {
        return None;
    }
    let mut index: HashMap<IntVec, usize> = HashMap::new();
    for (j, r) in q.ineqs().iter().enumerate() {
        if index.insert(positive_key(r), j).is_some() {
            return None;
        }
    }
    let mut used = vec![false; q.m()];
    let mut sigma = Vec::with_capacity(p.m());
    for r in p.ineqs() {
        let j = *index.get(&positive_key(r))?;
        if std::mem::replace(&mut used[j], true) {
            return None;
        }
        sigma.push(j);
    }
    Some(sigma)
}

/// Wedge over the facet `label`: lifts to `(x, t)` with every other row
/// getting coefficient 0 on `t`, and replaces the facet row by
/// `b_f x + t <= d_f` (same label) and `-t <= 0` (label with a prime).
pub fn wedge_over_facet(p: &HRep, label: &str) -> Result<HRep> {
    let f = p.index_of(label)?;
    if !p.eqs().is_empty() {
        return Err(Error::pre("wedge needs a full-dimensional inequality description"));
    }
    if !is_bounded(p) {
        return Err(Error::pre("wedge needs a bounded polyhedron"));
    }
    if !crate::vertexgraph::is_facet_defining(p, label)? {
        return Err(Error::NotFacet(label.to_string()));
    }
    let lift = |r: &Row, t: i64| {
        let mut c = r.coeffs.clone();
        c.push(exactla::rat(t));
        Row::new(r.label.clone(), c, r.rhs.clone())
    };
    let mut ineqs = Vec::with_capacity(p.m() + 1);
    for (i, r) in p.ineqs().iter().enumerate() {
        if i == f {
            ineqs.push(lift(r, 1));
            let mut c = vec![Rat::zero(); p.dim()];
            c.push(exactla::rat(-1));
            ineqs.push(Row::new(format!("{label}'"), c, Rat::zero()));
        } else {
            ineqs.push(lift(r, 0));
        }
    }
    HRep::new(p.dim() + 1, Vec::new(), ineqs)
}

/// Integer ray as a rational vector.
pub fn ray_to_rat(g: &[BigInt]) -> RatVec {
    int_vec_to_rat(g)
}
