//! Seifert invariants: validation, normalization and the derived scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{from_int, lcm_all, Rational};
use crate::error::{Error, Result};

/// Unnormalized Seifert invariants `((alpha_i, beta_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnnormalizedSeifert {
    pairs: Vec<(BigInt, BigInt)>,
}

impl UnnormalizedSeifert {
    pub fn new(pairs: Vec<(BigInt, BigInt)>) -> Result<Self> {
        if pairs.len() < 3 {
            return Err(Error::TooFewArms(pairs.len()));
        }
        for (index, (alpha, beta)) in pairs.iter().enumerate() {
            if alpha < &BigInt::from(2) {
                return Err(Error::MultiplicityTooSmall { index, alpha: alpha.clone() });
            }
            if !alpha.gcd(beta).is_one() {
                return Err(Error::PairNotCoprime { index, alpha: alpha.clone(), beta: beta.clone() });
            }
        }
        let s = UnnormalizedSeifert { pairs };
        let e = s.euler();
        if !e.is_negative() {
            return Err(Error::NonNegativeEuler(e));
        }
        Ok(s)
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| (BigInt::from(a), BigInt::from(b))).collect())
    }

    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    /// `e = -sum beta_i / alpha_i`.
    pub fn euler(&self) -> Rational {
        -self.pairs.iter().map(|(a, b)| Rational::new(b.clone(), a.clone())).sum::<Rational>()
    }
}

/// Normalized Seifert invariants `(b; (alpha_i, omega_i))` with cached
/// derived scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    b: BigInt,
    pairs: Vec<(BigInt, BigInt)>,
    scalars: DerivedScalars,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedScalars {
    pub e: Rational,
    pub chi_m: Rational,
    pub alpha_lcm: BigInt,
    pub o: BigInt,
    pub h_order: BigInt,
}

impl SeifertData {
    /// Builds data from normalized invariants, checking every invariant.
    pub fn new(b: BigInt, pairs: Vec<(BigInt, BigInt)>) -> Result<Self> {
        if pairs.len() < 3 {
            return Err(Error::TooFewArms(pairs.len()));
        }
        for (index, (alpha, omega)) in pairs.iter().enumerate() {
            if alpha < &BigInt::from(2) {
                return Err(Error::MultiplicityTooSmall { index, alpha: alpha.clone() });
            }
            if omega.is_negative() || omega >= alpha {
                return Err(Error::OmegaOutOfRange { index, alpha: alpha.clone(), omega: omega.clone() });
            }
            if !alpha.gcd(omega).is_one() {
                return Err(Error::PairNotCoprime { index, alpha: alpha.clone(), beta: omega.clone() });
            }
        }
        let e = from_int(&b) + pairs.iter().map(|(a, w)| Rational::new(w.clone(), a.clone())).sum::<Rational>();
        if !e.is_negative() {
            return Err(Error::NonNegativeEuler(e));
        }
        let scalars = compute_scalars(&e, &pairs)?;
        Ok(SeifertData { b, pairs, scalars })
    }

    pub fn from_i64(b: i64, pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(BigInt::from(b), pairs.iter().map(|&(a, w)| (BigInt::from(a), BigInt::from(w))).collect())
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `(alpha_i, omega_i)` in input order.
    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    pub fn num_arms(&self) -> usize {
        self.pairs.len()
    }

    pub fn alphas(&self) -> impl Iterator<Item = &BigInt> {
        self.pairs.iter().map(|(a, _)| a)
    }

    pub fn scalars(&self) -> &DerivedScalars {
        &self.scalars
    }

    pub fn e(&self) -> &Rational {
        &self.scalars.e
    }

    pub fn chi_m(&self) -> &Rational {
        &self.scalars.chi_m
    }

    pub fn alpha_lcm(&self) -> &BigInt {
        &self.scalars.alpha_lcm
    }

    pub fn o(&self) -> &BigInt {
        &self.scalars.o
    }

    pub fn h_order(&self) -> &BigInt {
        &self.scalars.h_order
    }

    /// Unnormalized representative: `beta_i = -omega_i`, with `b` folded
    /// into the first pair.
    pub fn to_unnormalized(&self) -> UnnormalizedSeifert {
        let pairs = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, (a, w))| {
                let beta = if i == 0 { -w - &self.b * a } else { -w };
                (a.clone(), beta)
            })
            .collect();
        UnnormalizedSeifert { pairs }
    }

    /// `beta_i` class representatives `-omega_i` used in Dedekind sums.
    pub fn betas(&self) -> impl Iterator<Item = (BigInt, &BigInt)> {
        self.pairs.iter().map(|(a, w)| (-w, a))
    }
}

/// Normalizes Seifert invariants: `e = b + sum omega_i/alpha_i`,
/// `omega_i = -beta_i mod alpha_i`.
pub fn normalize(u: &UnnormalizedSeifert) -> Result<SeifertData> {
    let mut b = BigInt::zero();
    let mut pairs = Vec::with_capacity(u.pairs.len());
    for (alpha, beta) in &u.pairs {
        let omega = (-beta).mod_floor(alpha);
        // -beta/alpha = omega/alpha + floor(-beta/alpha)
        b += (-beta).div_floor(alpha);
        pairs.push((alpha.clone(), omega));
    }
    SeifertData::new(b, pairs)
}

pub fn derived_scalars(s: &SeifertData) -> Result<DerivedScalars> {
    compute_scalars(s.e(), s.pairs())
}

fn compute_scalars(e: &Rational, pairs: &[(BigInt, BigInt)]) -> Result<DerivedScalars> {
    let chi_m =
        from_int(&BigInt::from(2)) - pairs.iter().map(|(a, _)| Rational::new(a - 1, a.clone())).sum::<Rational>();
    let alpha_lcm = lcm_all(pairs.iter().map(|(a, _)| a));
    let product: BigInt = pairs.iter().map(|(a, _)| a).product();
    let abs_e = e.abs();
    let o = from_int(&alpha_lcm) * &abs_e;
    let h_order = from_int(&product) * &abs_e;
    if !o.is_integer() || !h_order.is_integer() {
        return Err(Error::Internal(format!("non-integral group orders: o = {o}, |H| = {h_order}")));
    }
    Ok(DerivedScalars { e: e.clone(), chi_m, alpha_lcm, o: o.to_integer(), h_order: h_order.to_integer() })
}

/// Seifert invariants of the Brieskorn sphere `Sigma(a1, a2, a3)`,
/// normalized so that `e = -1/(a1 a2 a3)`.
pub fn brieskorn(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> Result<UnnormalizedSeifert> {
    let exps = [a1, a2, a3];
    for a in exps {
        if a < &BigInt::from(2) {
            return Err(Error::BrieskornExponent(a.clone()));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if !exps[i].gcd(exps[j]).is_one() {
                return Err(Error::NotPairwiseCoprime(exps[i].clone(), exps[j].clone()));
            }
        }
    }
    let total: BigInt = exps.iter().copied().product();
    let mut betas: Vec<BigInt> = exps
        .iter()
        .map(|&a| {
            let cofactor = (&total / a).mod_floor(a);
            // cofactor is a unit mod a
            cofactor.extended_gcd(a).x.mod_floor(a)
        })
        .collect();
    let weighted: BigInt = exps.iter().zip(&betas).map(|(&a, beta)| &total / a * beta).sum();
    let shift = (weighted - 1) / &total;
    betas[0] -= shift * a1;
    UnnormalizedSeifert::new(exps.iter().map(|&a| a.clone()).zip(betas).collect())
}

pub fn brieskorn_i64(a1: i64, a2: i64, a3: i64) -> Result<UnnormalizedSeifert> {
    brieskorn(&BigInt::from(a1), &BigInt::from(a2), &BigInt::from(a3))
}

/// Sigma(2,3,5) as normalized data `(b=-2; (2,1),(3,2),(5,4))`.
pub fn sigma_235() -> SeifertData {
    SeifertData::from_i64(-2, &[(2, 1), (3, 2), (5, 4)]).expect("valid fixture")
}

/// Sigma(2,3,7) as normalized data `(b=-1; (2,1),(3,1),(7,1))`.
pub fn sigma_237() -> SeifertData {
    SeifertData::from_i64(-1, &[(2, 1), (3, 1), (7, 1)]).expect("valid fixture")
}

/// The D4 link `(b=-2; (2,1),(2,1),(2,1))`.
pub fn d4() -> SeifertData {
    SeifertData::from_i64(-2, &[(2, 1), (2, 1), (2, 1)]).expect("valid fixture")
}
