//! Exact rational linear algebra.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms. Matrices
//! are dense and row-major; every instance handled by this crate is small
//! (tens of rows, a handful of columns). The [`fastint`] submodule holds a
//! checked `i128` fraction-free path used by the hot enumeration loops; any
//! overflow there falls back to the routines in this module.

pub mod fastint;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;
pub type IntVec = Vec<BigInt>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a rational vector from `(numerator, denominator)` pairs.
pub fn rat_vec(entries: &[(i64, i64)]) -> RatVec {
    entries.iter().map(|&(n, d)| ratio(n, d)).collect()
}

pub fn int_vec_to_rat(v: &[BigInt]) -> RatVec {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Parses an integer or a `p/q` literal. Rejects zero denominators,
/// whitespace and anything that is not a plain decimal integer on either side.
pub fn parse_rat(token: &str) -> Option<Rat> {
    fn parse_int(s: &str) -> Option<BigInt> {
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match token.split_once('/') {
        None => parse_int(token).map(Rat::from_integer),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Rat], g: &[BigInt]) -> Rat {
    debug_assert_eq!(a.len(), g.len());
    a.iter().zip(g).fold(Rat::zero(), |acc, (x, y)| {
        if y.is_zero() {
            acc
        } else {
            acc + x * Rat::from_integer(y.clone())
        }
    })
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

/// `y + alpha * g` for an integer direction `g`.
pub fn axpy_int(y: &[Rat], alpha: &Rat, g: &[BigInt]) -> RatVec {
    y.iter()
        .zip(g)
        .map(|(yi, gi)| yi + alpha * Rat::from_integer(gi.clone()))
        .collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Lexicographic comparison of rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    a.iter().cmp(b.iter())
}

pub fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Clears denominators and divides by the gcd, keeping the sign of every
/// entry. Result is the primitive integer vector on the same ray.
pub fn normalize_primitive(v: &[Rat]) -> Result<IntVec> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.into_iter().map(|x| x / &g).collect())
}

/// Primitive integer vector on the line through `v`, with the first nonzero
/// entry positive.
pub fn normalize_coprime(v: &[Rat]) -> Result<IntVec> {
    let mut g = normalize_primitive(v)?;
    canonicalize_sign(&mut g);
    Ok(g)
}

/// Flips the sign of an integer vector so its first nonzero entry is
/// positive. Returns true when a flip happened.
pub fn canonicalize_sign(g: &mut [BigInt]) -> bool {
    let flip = g.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if flip {
        for x in g.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    flip
}

pub fn negate_int(g: &[BigInt]) -> IntVec {
    g.iter().map(|x| -x).collect()
}

/// Serde adapters: rationals as `"p"` / `"p/q"` strings, integers as JSON
/// numbers when they fit in `i64`.
pub mod serde_rat {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}")))
    }
}

pub mod serde_ratvec {
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))))
            .collect()
    }
}

pub mod serde_intvec {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum IntRepr {
        Num(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match x.to_i64() {
                Some(i) => seq.serialize_element(&i)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                IntRepr::Num(i) => Ok(BigInt::from(i)),
                IntRepr::Str(s) => s
                    .parse()
                    .map_err(|_| D::Error::custom(format!("not an integer: {s:?}"))),
            })
            .collect()
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    cols: usize,
    rows: Vec<RatVec>,
}

impl RatMat {
    pub fn new(cols: usize, rows: Vec<RatVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(RatMat { cols, rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        RatMat::new(cols, rows).expect("ragged integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        RatMat { cols: n, rows }
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        RatMat {
            cols: c,
            rows: vec![vec![Rat::zero(); c]; r],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RatVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn push_row(&mut self, row: RatVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.nrows(), "matrix product dimension mismatch");
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
            .collect();
        RatMat {
            cols: other.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> RatMat {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMat {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (RatMat { cols: self.cols, rows: a }, pivots)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        let aug = RatMat {
            cols: 2 * n,
            rows: aug_rows,
        };
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = red.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(RatMat { cols: n, rows })
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(fmt_rat).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Row rank over the rationals.
pub fn rank(m: &RatMat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.rref().1.len()
}

pub fn rank_of_rows(cols: usize, rows: &[&[Rat]]) -> usize {
    let m = RatMat {
        cols,
        rows: rows.iter().map(|r| r.to_vec()).collect(),
    };
    rank(&m)
}

/// Rank of integer rows, on the `i128` path when every entry fits.
pub fn rank_of_int_rows(cols: usize, rows: &[&[BigInt]]) -> usize {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    if let Some(small) = small {
        let refs: Vec<&[i128]> = small.iter().map(Vec::as_slice).collect();
        if let Some(r) = fastint::rank(&refs, cols) {
            return r;
        }
    }
    let rat: Vec<RatVec> = rows.iter().map(|r| int_vec_to_rat(r)).collect();
    let refs: Vec<&[Rat]> = rat.iter().map(Vec::as_slice).collect();
    rank_of_rows(cols, &refs)
}

/// Primitive canonical generator of the kernel of `n - 1` integer rows in
/// dimension `n`, or `None` when they are dependent.
pub fn int_kernel_line(rows: &[&[BigInt]], n: usize) -> Option<IntVec> {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    if let Some(small) = small {
        let refs: Vec<&[i128]> = small.iter().map(Vec::as_slice).collect();
        if let Some(mut g) = fastint::cofactor_kernel(&refs, n) {
            return fastint::primitive_canonical(&mut g).then(|| fastint::to_bigint_vec(&g));
        }
    }
    let m = RatMat::new(n, rows.iter().map(|r| int_vec_to_rat(r)).collect()).ok()?;
    let mut k = kernel_basis(&m);
    (k.len() == 1).then(|| k.pop().unwrap())
}

/// Basis of the right null space, each vector primitive with canonical sign.
pub fn kernel_basis(m: &RatMat) -> Vec<IntVec> {
    let n = m.ncols();
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red.rows[r][f].clone();
            }
            normalize_coprime(&v).expect("kernel basis vector has a unit entry")
        })
        .collect()
}

/// One exact solution of `m x = rhs`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve(m: &RatMat, rhs: &[Rat]) -> Option<RatVec> {
    assert_eq!(rhs.len(), m.nrows(), "right-hand side length mismatch");
    let n = m.ncols();
    let rows = m
        .rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let aug = RatMat { cols: n + 1, rows };
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red.rows[r][n].clone();
    }
    Some(x)
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in order.
pub fn independent_subset(cols: usize, rows: &[&[Rat]]) -> Vec<usize> {
    let mut basis: Vec<RatVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.to_vec();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &b[p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = (0..cols).find(|&c| !v[c].is_zero()) {
            basis.push(v);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}
