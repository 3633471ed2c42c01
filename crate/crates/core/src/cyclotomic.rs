//! Exact arithmetic in `Q(zeta_m)`.
//!
//! An element is stored as a polynomial in the group ring `Q[x]/(x^m - 1)`
//! and stands for its value at the primitive root `zeta_m = exp(2 pi i/m)`.
//! Ring operations stay in the group ring (cheap index arithmetic). Zero
//! tests, equality, rationality and inversion reduce modulo the cyclotomic
//! polynomial `Phi_m`, which is where the representation becomes unique.
//!
//! Operands with different conductors are promoted to the lcm of the two.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Cyclotomic {
    m: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        Cyclotomic { m, coeffs: vec![Rational::zero(); m as usize] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational_in(Rational::one(), m)
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_rational_in(q, 1)
    }

    pub fn from_rational_in(q: Rational, m: u64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[k.rem_euclid(m as i64) as usize] = Rational::one();
        z
    }

    /// Builds `sum c_k zeta_m^k`; indices beyond `m` wrap around.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Self {
        let mut z = Self::zero(m);
        for (k, c) in coeffs.into_iter().enumerate() {
            z.coeffs[k % m as usize] += c;
        }
        z
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Group-ring coefficients (not canonical).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Same value viewed in `Q(zeta_target)`; `target` must be a multiple
    /// of the conductor.
    pub fn promote(&self, target: u64) -> Self {
        assert!(target.is_multiple_of(self.m), "{target} is not a multiple of {}", self.m);
        if target == self.m {
            return self.clone();
        }
        let step = (target / self.m) as usize;
        let mut z = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            z.coeffs[k * step] = c.clone();
        }
        z
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.m.lcm(&b.m);
        (a.promote(m), b.promote(m))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplies by `zeta_m^k` (a rotation).
    pub fn mul_root(&self, k: i64) -> Self {
        let m = self.m as usize;
        let shift = k.rem_euclid(self.m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % m] = c.clone();
        }
        Cyclotomic { m: self.m, coeffs }
    }

    /// Multiplies by `zeta_m^k - 1` in O(m).
    pub fn mul_root_minus_one(&self, k: i64) -> Self {
        let mut out = self.mul_root(k);
        for (o, c) in out.coeffs.iter_mut().zip(&self.coeffs) {
            *o -= c;
        }
        out
    }

    /// Divides by `zeta_m^k - 1` in O(m).
    ///
    /// For `w = zeta^k` of order `n > 1`, `1/(w - 1) = (1/n) sum_{j<n} j w^j`;
    /// the convolution with that ramp is evaluated along each coset of
    /// `<k>` with a running-sum recurrence.
    pub fn div_root_minus_one(&self, k: i64) -> Result<Self> {
        let m = self.m;
        let k = k.rem_euclid(m as i64) as u64;
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = k.gcd(&m);
        let n = (m / g) as usize;
        let n_q = Rational::from_integer(BigInt::from(n));
        let mut out = vec![Rational::zero(); m as usize];
        for base in 0..g {
            let cycle: Vec<usize> = (0..n as u64).map(|i| ((base + i * k) % m) as usize).collect();
            let p: Vec<&Rational> = cycle.iter().map(|&q| &self.coeffs[q]).collect();
            let total: Rational = p.iter().copied().sum();
            // R_0 = sum_j j p_{-j}
            let mut r: Rational = (1..n).map(|j| p[n - j] * BigInt::from(j)).sum();
            out[cycle[0]] = &r / &n_q;
            for i in 1..n {
                // R_i = R_{i-1} + S - n p_i
                r = r + &total - p[i] * &n_q;
                out[cycle[i]] = &r / &n_q;
            }
        }
        Ok(Cyclotomic { m, coeffs: out })
    }

    /// Galois conjugate `zeta -> zeta^u`, `gcd(u, m) = 1`.
    pub fn conjugate(&self, u: u64) -> Self {
        debug_assert!(u.gcd(&self.m) == 1);
        let m = self.m as usize;
        let mut coeffs = vec![Rational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i * (u as usize % m)) % m] += c;
        }
        Cyclotomic { m: self.m, coeffs }
    }

    /// Complex conjugate.
    pub fn complex_conjugate(&self) -> Self {
        self.conjugate(self.m - 1)
    }

    /// Field trace `Tr_{Q(zeta_m)/Q}`, via Ramanujan sums.
    pub fn trace(&self) -> Rational {
        let table = ramanujan_table(self.m);
        self.coeffs.iter().zip(&table).filter(|(c, _)| !c.is_zero()).map(|(c, &r)| c * BigInt::from(r)).sum()
    }

    /// Coordinates in the power basis of `Q[x]/Phi_m`; unique for each value.
    pub fn canonical(&self) -> Vec<Rational> {
        let phi = cyclotomic_polynomial(self.m);
        let mut f = self.coeffs.clone();
        reduce_monic(&mut f, &phi);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Result<Rational> {
        let c = self.canonical();
        if c.iter().skip(1).any(|x| !x.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(c.into_iter().next().unwrap_or_else(Rational::zero))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_m`.
    pub fn invert(&self) -> Result<Self> {
        let phi: Vec<Rational> = cyclotomic_polynomial(self.m).into_iter().map(Rational::from_integer).collect();
        let f = trim(self.canonical());
        if f.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (phi, f);
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_m is irreducible, so the gcd r0 is a nonzero constant.
        if r0.len() != 1 {
            return Err(Error::Internal("cyclotomic gcd is not a unit".into()));
        }
        let c = r0[0].clone();
        let coeffs = s0.into_iter().map(|x| x / &c).collect();
        Ok(Cyclotomic::from_coeffs(self.m, coeffs))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*z{}^{k}", self.m)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let m = a.m as usize;
        let mut out = vec![Rational::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % m] += x * y;
            }
        }
        Cyclotomic { m: a.m, coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

pub fn totient(n: u64) -> u64 {
    let mut n_left = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n_left {
        if n_left.is_multiple_of(p) {
            while n_left.is_multiple_of(p) {
                n_left /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n_left > 1 {
        result -= result / n_left;
    }
    result
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `c_m(k) = sum over primitive m-th roots of zeta^k`.
pub fn ramanujan_sum(m: u64, phi_m: u64, k: u64) -> i64 {
    let q = m / k.gcd(&m);
    mobius(q) * (phi_m / totient(q)) as i64
}

/// `c_m(k)` for `k = 0..m`.
pub fn ramanujan_table(m: u64) -> Vec<i64> {
    let phi_m = totient(m);
    let by_divisor: std::collections::HashMap<u64, i64> =
        (1..=m).filter(|d| m.is_multiple_of(*d)).map(|g| (g, ramanujan_sum(m, phi_m, g))).collect();
    (0..m).map(|k| by_divisor[&k.gcd(&m)]).collect()
}

/// Integer coefficients of `Phi_m`, lowest degree first, from
/// `Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut poly = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            let mut next = vec![BigInt::zero(); poly.len() + d as usize];
            for (i, c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            // exact division by x^d - 1: Q_k = Q_{k-d} - P_k
            let d = d as usize;
            let mut q = vec![BigInt::zero(); poly.len() - d];
            for k in 0..q.len() {
                let prev = if k >= d { q[k - d].clone() } else { BigInt::zero() };
                q[k] = prev - &poly[k];
            }
            poly = q;
        }
    }
    poly
}

fn reduce_monic(f: &mut Vec<Rational>, modulus: &[BigInt]) {
    let deg = modulus.len() - 1;
    for k in (deg..f.len()).rev() {
        if f[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut f[k], Rational::zero());
        for (j, p) in modulus[..deg].iter().enumerate() {
            if !p.is_zero() {
                f[k - deg + j] -= &c * p;
            }
        }
    }
    f.truncate(deg);
    f.resize(deg, Rational::zero());
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}
