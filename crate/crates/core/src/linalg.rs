//! Fraction-free integer linear algebra (Bareiss elimination).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Dense integer matrix, row major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Leading principal minors `D_1, ..., D_n` via Bareiss without pivoting.
///
/// Stops early (returning the minors found so far) at the first zero pivot.
pub fn leading_minors(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.len();
    let mut m = a.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &pivot - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `a x = rhs` exactly. Elimination is fraction-free; only the
/// back-substitution divides.
pub fn solve(a: &IntMatrix, rhs: &[BigInt]) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut m: IntMatrix = a.iter().zip(rhs).map(|(row, r)| row.iter().cloned().chain([r.clone()]).collect()).collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let r = (k + 1..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
            m.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= &x[j] * &m[i][j];
        }
        x[i] = acc / &m[i][i];
    }
    Ok(x)
}
