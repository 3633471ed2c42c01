//! Exact rational primitives: Dedekind symbols and sums, negative continued
//! fractions.
//!
//! Everything here is arbitrary precision. Nothing touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `((x))`: the fractional part shifted by one half, or zero on integers.
pub fn dedekind_symbol(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - ratio(1, 2)
}

/// Dedekind sum `s(h, k)` evaluated straight from its definition, O(k).
pub fn dedekind_sum(h: &BigInt, k: &BigInt) -> Result<Rational> {
    if !k.is_positive() {
        return Err(Error::NonPositiveModulus(k.clone()));
    }
    let h = h.mod_floor(k);
    let mut total = Rational::zero();
    let mut mu = BigInt::one();
    while &mu < k {
        let a = dedekind_symbol(&Rational::new(mu.clone(), k.clone()));
        let b = dedekind_symbol(&Rational::new(&h * &mu, k.clone()));
        total += a * b;
        mu += 1;
    }
    Ok(total)
}

/// Dedekind sum through the reciprocity law, O(log k) steps.
///
/// Agrees with [`dedekind_sum`] everywhere; the direct sum is the reference.
pub fn dedekind_sum_fast(h: &BigInt, k: &BigInt) -> Result<Rational> {
    if !k.is_positive() {
        return Err(Error::NonPositiveModulus(k.clone()));
    }
    let g = h.gcd(k);
    let (mut h, mut k) = (h / &g, k / &g);
    h = h.mod_floor(&k);
    let mut sign = Rational::one();
    let mut acc = Rational::zero();
    // s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12 for coprime h, k > 0
    while !h.is_zero() {
        let hq = from_int(&h);
        let kq = from_int(&k);
        let corr = (&hq / &kq + &kq / &hq + Rational::one() / (&hq * &kq)) / from_int(&int(12)) - ratio(1, 4);
        acc += &sign * corr;
        sign = -sign;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    Ok(acc)
}

/// Entries `b_1, ..., b_k` (all at least 2) of
/// `b_1 - 1/(b_2 - 1/(... - 1/b_k))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    entries: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn evaluate(&self) -> Rational {
        let mut iter = self.entries.iter().rev();
        let mut acc = match iter.next() {
            Some(last) => from_int(last),
            None => return Rational::zero(),
        };
        for b in iter {
            acc = from_int(b) - acc.recip();
        }
        acc
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// Negative (Hirzebruch-Jung) continued fraction of `alpha / omega`.
pub fn neg_continued_fraction(alpha: &BigInt, omega: &BigInt) -> Result<ContinuedFraction> {
    if !omega.is_positive() || omega >= alpha || !alpha.gcd(omega).is_one() {
        return Err(Error::ContinuedFractionDomain { alpha: alpha.clone(), omega: omega.clone() });
    }
    let (mut num, mut den) = (alpha.clone(), omega.clone());
    let mut entries = Vec::new();
    loop {
        let b = num.div_ceil(&den);
        let rest = &b * &den - &num;
        entries.push(b);
        if rest.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, rest);
    }
    Ok(ContinuedFraction { entries })
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}
