//! Circuits of `{x : Ax = b, Bx <= d}` and the sign predicates built on them.
//!
//! A circuit is a nonzero `g` in `ker A` whose image `Bg` has inclusion-minimal
//! support. Equivalently, `g` spans `ker A ∩ ker B_S` for a row set `S` of
//! rank `n - 1` (together with `A`). Every such system contains an
//! independent subsystem with `n - 1 - rank A` rows of `B` plus a basis of
//! `A`'s row space, with the same kernel, so enumerating those subsets finds
//! every circuit.

use std::collections::HashMap;
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, fastint, IntVec, Rat, RatMat, RatVec};
use crate::hrep::HRep;
use crate::rowset::RowSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    /// Coprime integer direction, first nonzero entry positive.
    #[serde(with = "crate::exactla::serde_intvec")]
    pub g: IntVec,
    /// Independent rows whose kernel (with the equalities) is `span(g)`.
    pub witness: RowSet,
    /// `sign(B_i g)` for every inequality row.
    pub bsign: Vec<i8>,
}

impl Circuit {
    pub fn negated_g(&self) -> IntVec {
        exactla::negate_int(&self.g)
    }

    /// Re-checks the minimality certificate: the witness is tight, has rank
    /// `n - 1`, and adding any row not annihilating `g` raises the rank.
    pub fn certify(&self, p: &HRep) -> bool {
        let n = p.dim();
        let in_kernel = p.eqs().iter().all(|r| exactla::dot_int(&r.coeffs, &self.g).is_zero());
        in_kernel
            && self.witness.iter().all(|i| self.bsign[i] == 0)
            && p.rank_with(self.witness) == n - 1
            && (0..p.m())
                .filter(|&i| self.bsign[i] != 0)
                .all(|i| p.rank_with(self.witness.with(i)) == n)
    }
}

/// Canonical circuits of one polyhedron, sorted by `g`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitSet {
    pub circuits: Vec<Circuit>,
    #[serde(skip)]
    index: HashMap<IntVec, usize>,
}

impl CircuitSet {
    pub fn new(mut circuits: Vec<Circuit>) -> Self {
        circuits.sort_by(|a, b| a.g.cmp(&b.g));
        circuits.dedup_by(|a, b| a.g == b.g);
        let index = circuits.iter().enumerate().map(|(i, c)| (c.g.clone(), i)).collect();
        CircuitSet { circuits, index }
    }

    /// Rebuilds the lookup table after deserialization.
    pub fn reindex(self) -> Self {
        CircuitSet::new(self.circuits)
    }

    /// One representative per `±` pair.
    pub fn canonical_count(&self) -> usize {
        self.circuits.len()
    }

    /// Both orientations counted.
    pub fn signed_count(&self) -> usize {
        2 * self.circuits.len()
    }

    /// Index of the circuit on the line through `w`.
    pub fn find(&self, w: &[Rat]) -> Option<usize> {
        let g = exactla::normalize_coprime(w).ok()?;
        self.index.get(&g).copied()
    }

    pub fn find_int(&self, g: &[BigInt]) -> Option<usize> {
        let mut g = g.to_vec();
        exactla::canonicalize_sign(&mut g);
        self.index.get(&g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Circuit> {
        self.circuits.iter()
    }

    /// Every circuit in both orientations: `(index, sign, g)`.
    pub fn signed(&self) -> impl Iterator<Item = (usize, i8, IntVec)> + '_ {
        self.circuits
            .iter()
            .enumerate()
            .flat_map(|(i, c)| [(i, 1, c.g.clone()), (i, -1, c.negated_g())])
    }

    /// `g1 ... gn | witness-labels`, one line per canonical circuit.
    pub fn to_text(&self, p: &HRep) -> String {
        let mut out = String::new();
        for c in &self.circuits {
            let g: Vec<String> = c.g.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{} | {}", g.join(" "), p.labels_of(c.witness).join(" "));
        }
        out
    }
}

fn kernel_line(p: &HRep, eq_basis: &[usize], subset: &[usize]) -> Option<IntVec> {
    let n = p.dim();
    if let (Some(fi), Some(fe)) = (p.fast_ineqs(), p.fast_eqs()) {
        let rows: Vec<&[i128]> = eq_basis
            .iter()
            .map(|&e| &fe[e][..n])
            .chain(subset.iter().map(|&i| &fi[i][..n]))
            .collect();
        if let Some(mut g) = fastint::cofactor_kernel(&rows, n) {
            return fastint::primitive_canonical(&mut g).then(|| fastint::to_bigint_vec(&g));
        }
    }
    let rows: Vec<RatVec> = eq_basis
        .iter()
        .map(|&e| p.eqs()[e].coeffs.clone())
        .chain(subset.iter().map(|&i| p.row(i).coeffs.clone()))
        .collect();
    let ker = exactla::kernel_basis(&RatMat::new(n, rows).expect("dimension"));
    (ker.len() == 1).then(|| ker.into_iter().next().unwrap())
}

fn fast_bsign(p: &HRep, g: &[BigInt]) -> Option<Vec<i8>> {
    let n = p.dim();
    let g: Vec<i128> = g.iter().map(|x| x.try_into().ok()).collect::<Option<_>>()?;
    p.fast_ineqs()?
        .iter()
        .map(|r| {
            let mut s = 0i128;
            for (a, b) in r[..n].iter().zip(&g) {
                s = s.checked_add(a.checked_mul(*b)?)?;
            }
            Some(s.signum() as i8)
        })
        .collect()
}

/// All circuits, one canonical representative per line.
pub fn enumerate_circuits(p: &HRep) -> CircuitSet {
    let n = p.dim();
    if n == 0 {
        return CircuitSet::default();
    }
    let eq_refs: Vec<&[Rat]> = p.eqs().iter().map(|r| r.coeffs.as_slice()).collect();
    let eq_basis = exactla::independent_subset(n, &eq_refs);
    let Some(k) = (n - 1).checked_sub(eq_basis.len()) else {
        return CircuitSet::default();
    };
    let m = p.m();
    let make = |subset: &[usize], g: IntVec| -> Circuit {
        let bsign = fast_bsign(p, &g).unwrap_or_else(|| p.bsign(&g));
        Circuit { g, witness: subset.iter().copied().collect(), bsign }
    };
    let found: Vec<Circuit> = if k == 0 {
        kernel_line(p, &eq_basis, &[]).map(|g| make(&[], g)).into_iter().collect()
    } else {
        (0..m)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut local: HashMap<IntVec, Circuit> = HashMap::new();
                for tail in (first + 1..m).combinations(k - 1) {
                    let mut subset = Vec::with_capacity(k);
                    subset.push(first);
                    subset.extend(tail);
                    if let Some(g) = kernel_line(p, &eq_basis, &subset) {
                        if !local.contains_key(&g) {
                            local.insert(g.clone(), make(&subset, g));
                        }
                    }
                }
                local.into_values()
            })
            .collect()
    };
    // Keep the lexicographically first witness per line for determinism.
    let mut best: HashMap<IntVec, Circuit> = HashMap::new();
    for c in found {
        match best.get_mut(&c.g) {
            Some(old) if old.witness.iter().lt(c.witness.iter()) => {}
            Some(old) => *old = c,
            None => {
                best.insert(c.g.clone(), c);
            }
        }
    }
    CircuitSet::new(best.into_values().collect())
}

/// `w` is (up to sign and positive scaling) a circuit of `p`.
pub fn is_circuit_direction(set: &CircuitSet, w: &[Rat]) -> Result<bool> {
    if exactla::is_zero_vec(w) {
        return Err(Error::ZeroVector);
    }
    Ok(set.find(w).is_some())
}

/// Componentwise `a_i b_i >= 0`.
pub fn sign_compatible(a: &[Rat], b: &[Rat]) -> bool {
    assert_eq!(a.len(), b.len(), "sign_compatible needs equal lengths");
    a.iter().zip(b).all(|(x, y)| exactla::sign(x) * exactla::sign(y) >= 0)
}

pub fn signs_compatible(a: &[i8], b: &[i8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x * y >= 0)
}

/// Oriented `g` lies in the minimal face of the elementary arrangement that
/// contains `direction`: every `sign(B_i g)` is 0 or `sign(B_i direction)`.
pub fn in_minimal_face(p: &HRep, g: &[BigInt], direction: &[Rat]) -> Result<bool> {
    if exactla::is_zero_vec(direction) {
        return Err(Error::ZeroVector);
    }
    let sd = p.bsign_rat(direction);
    Ok(p.bsign(g).iter().zip(&sd).all(|(&a, &b)| a == 0 || a == b))
}

/// The orientation of a canonical circuit lying in the minimal face of
/// `direction`, if either does.
pub fn oriented_in_minimal_face(p: &HRep, c: &Circuit, direction: &[Rat]) -> Option<i8> {
    let sd = p.bsign_rat(direction);
    let fits = |s: i8| c.bsign.iter().zip(&sd).all(|(&a, &b)| a == 0 || a * s == b);
    [1, -1].into_iter().find(|&s| fits(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::exactla::rat;

    fn square() -> HRep {
        HRep::from_int_rows(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]).unwrap()
    }

    fn ints(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rats(v: &[i64]) -> RatVec {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn square_circuits() {
        let set = enumerate_circuits(&square());
        let gs: Vec<IntVec> = set.iter().map(|c| c.g.clone()).collect();
        assert_eq!(gs, vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(set.signed_count(), 4);
        assert!(!is_circuit_direction(&set, &rats(&[1, 1])).unwrap());
        assert!(is_circuit_direction(&set, &rats(&[-3, 0])).unwrap());
        assert!(is_circuit_direction(&set, &rats(&[0, 0])).is_err());
        assert!(set.iter().all(|c| c.certify(&square())));
    }

    #[test]
    fn sign_compatibility() {
        assert!(sign_compatible(&rats(&[1, 0, -2]), &rats(&[3, 5, -1])));
        assert!(!sign_compatible(&rats(&[1, 0]), &rats(&[-1, 0])));
        let m4 = data::m4();
        let u = data::m4_far_apex();
        let dir = exactla::sub(&vec![rat(0); 4], &u);
        let g = rats(&[-1, 0, 0, 0]);
        let bg = m4.ineqs().iter().map(|r| exactla::dot(&r.coeffs, &g)).collect::<Vec<_>>();
        let bd = m4.ineqs().iter().map(|r| exactla::dot(&r.coeffs, &dir)).collect::<Vec<_>>();
        assert!(sign_compatible(&bg, &bd));
    }

    #[test]
    fn minimal_face_membership() {
        let sq = square();
        let d = rats(&[1, 1]);
        assert!(in_minimal_face(&sq, &ints(&[1, 0]), &d).unwrap());
        assert!(in_minimal_face(&sq, &ints(&[0, 1]), &d).unwrap());
        assert!(!in_minimal_face(&sq, &ints(&[-1, 0]), &d).unwrap());

        let m4 = data::m4();
        let set = enumerate_circuits(&m4);
        let dir: RatVec = data::m4_far_apex().iter().map(|x| -x).collect();
        for i in 0..4 {
            let mut e = vec![0i64; 4];
            e[i] = -1;
            assert!(in_minimal_face(&m4, &ints(&e), &dir).unwrap());
            let c = &set.circuits[set.find_int(&ints(&e)).expect("axis is a circuit")];
            assert_eq!(oriented_in_minimal_face(&m4, c, &dir), Some(-1));
        }
    }

    #[test]
    fn s48_witness_circuit() {
        let s48 = data::s48();
        let set = enumerate_circuits(&s48);
        assert!(is_circuit_direction(&set, &rats(&[360, 8, 4, 4, 7])).unwrap());
        assert!(is_circuit_direction(&set, &rats(&[-360, 8, 4, 4, 7])).unwrap());
        assert!(!is_circuit_direction(&set, &rats(&[1, 0, 0, 0, 0])).unwrap());
        assert!(set.iter().all(|c| c.certify(&s48)));
    }

    #[test]
    fn equalities_are_respected() {
        // Triangle in the plane x + y + z = 1 of R^3.
        use crate::hrep::Row;
        let p = HRep::new(
            3,
            vec![Row::from_ints("s", &[1, 1, 1], 1)],
            (0..3)
                .map(|i| {
                    let mut c = [0i64; 3];
                    c[i] = -1;
                    Row::from_ints(format!("x{i}"), &c, 0)
                })
                .collect(),
        )
        .unwrap();
        let set = enumerate_circuits(&p);
        let gs: Vec<IntVec> = set.iter().map(|c| c.g.clone()).collect();
        assert_eq!(gs, vec![ints(&[0, 1, -1]), ints(&[1, -1, 0]), ints(&[1, 0, -1])]);
        assert!(set.iter().all(|c| c.certify(&p)));
    }
}
