//! Checked `i128` fraction-free kernels.
//!
//! Every function returns `None` on arithmetic overflow so callers can retry
//! with [`Rat`](super::Rat). Intermediate entries are minors of the input
//! (Sylvester's identity), so every division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Rat, RatVec};

/// Largest magnitude accepted when scaling rational rows to integers.
const ENTRY_LIMIT: i128 = 1 << 62;

/// Scales `[coeffs | rhs]` by a positive factor to a primitive integer row.
pub fn scale_row(coeffs: &[Rat], rhs: &Rat) -> Option<Vec<i128>> {
    let mut lcm = BigInt::one();
    for x in coeffs.iter().chain(std::iter::once(rhs)) {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    ints.iter()
        .map(|x| x.to_i128().filter(|v| v.abs() < ENTRY_LIMIT))
        .collect()
}

#[inline]
fn mul_sub_div(a: i128, b: i128, c: i128, d: i128, div: i128) -> Option<i128> {
    // (a*b - c*d) / div, exact by construction.
    let ab = a.checked_mul(b)?;
    let cd = c.checked_mul(d)?;
    Some(ab.checked_sub(cd)? / div)
}

/// Rank by fraction-free Bareiss elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[&[i128]], cols: usize) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r[..cols].to_vec()).collect();
    let m = a.len();
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c];
        for i in r + 1..m {
            let lead = a[i][c];
            for j in c + 1..cols {
                a[i][j] = mul_sub_div(piv, a[i][j], lead, a[r][j], prev)?;
            }
            a[i][c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

/// Outcome of a square solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareSolution {
    Singular,
    /// `x = num / den` with `den > 0` and `gcd(num, den) = 1`.
    Unique { num: Vec<i128>, den: i128 },
}

/// Solves the `n x n` system `rows * x = rhs` by fraction-free Gauss-Jordan.
#[allow(clippy::needless_range_loop)]
pub fn solve_square(rows: &[&[i128]], rhs: &[i128]) -> Option<SquareSolution> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r[..n].to_vec();
            row.push(b);
            row
        })
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return Some(SquareSolution::Singular);
        };
        a.swap(k, p);
        let piv = a[k][k];
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = a[i][k];
            for j in 0..=n {
                if j == k {
                    continue;
                }
                a[i][j] = mul_sub_div(piv, a[i][j], lead, a[k][j], prev)?;
            }
            a[i][k] = 0;
        }
        prev = piv;
    }
    let mut den = prev;
    let mut num: Vec<i128> = a.iter().map(|r| r[n]).collect();
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    let g = num.iter().fold(den, |acc, &x| acc.gcd(&x));
    if g > 1 {
        den /= g;
        for x in num.iter_mut() {
            *x /= g;
        }
    }
    Some(SquareSolution::Unique { num, den })
}

/// Determinant by Bareiss elimination.
#[allow(clippy::needless_range_loop)]
pub fn det(rows: &[&[i128]]) -> Option<i128> {
    let n = rows.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let mut prev = 1i128;
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return Some(0);
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        let piv = a[k][k];
        for i in k + 1..n {
            let lead = a[i][k];
            for j in k + 1..n {
                a[i][j] = mul_sub_div(piv, a[i][j], lead, a[k][j], prev)?;
            }
            a[i][k] = 0;
        }
        prev = piv;
    }
    if negate {
        prev.checked_neg()
    } else {
        Some(prev)
    }
}

/// Generalized cross product of `n - 1` rows in dimension `n`: the vector of
/// signed maximal minors. It spans the kernel when the rows are independent
/// and is zero otherwise. Not normalized.
pub fn cofactor_kernel(rows: &[&[i128]], n: usize) -> Option<Vec<i128>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    let mut minor: Vec<Vec<i128>> = vec![Vec::with_capacity(n - 1); rows.len()];
    for skip in 0..n {
        for (m, r) in minor.iter_mut().zip(rows) {
            m.clear();
            m.extend(r[..n].iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x));
        }
        let refs: Vec<&[i128]> = minor.iter().map(|m| m.as_slice()).collect();
        let d = det(&refs)?;
        out.push(if skip % 2 == 0 { d } else { d.checked_neg()? });
    }
    Some(out)
}

/// Divides by the gcd and flips to canonical sign (first nonzero positive).
pub fn primitive_canonical(v: &mut [i128]) -> bool {
    let g = v.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return false;
    }
    let neg = v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    let g = if neg { -g } else { g };
    for x in v.iter_mut() {
        *x /= g;
    }
    true
}

pub fn to_rat_point(num: &[i128], den: i128) -> RatVec {
    num.iter()
        .map(|&x| Rat::new(BigInt::from(x), BigInt::from(den)))
        .collect()
}

pub fn to_bigint_vec(v: &[i128]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
