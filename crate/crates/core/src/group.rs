//! `H = H_1(M, Z)` from the Seifert presentation, its Smith normal form and
//! the character group.
//!
//! Generators are `g_0` (class of the generic fiber, the central vertex) and
//! `g_1..g_nu` (arm ends). Relations in additive notation:
//! `-b g_0 - sum omega_i g_i = 0` and `g_0 - alpha_i g_i = 0`.
//!
//! After reduction `H = Z/d_1 + ... + Z/d_r` with `d_1 | ... | d_r`, only
//! the nontrivial factors kept. Elements and characters are coordinate
//! vectors against this decomposition; a character value is an exponent `k`
//! modulo the group exponent `m`, standing for `zeta_m^k`.

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};
use crate::seifert::SeifertData;

#[derive(Debug, Clone)]
pub struct AbelianGroup {
    relations: IntMatrix,
    divisors: Vec<u64>,
    exponent: u64,
    order: u64,
    /// Coordinates of `g_0, ..., g_nu`.
    generator_images: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exps: Vec<u64>,
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }
}

/// An element of `H` remembered together with the word it came from.
/// Equality and hashing look only at the reduced coordinates.
#[derive(Debug, Clone)]
pub struct GroupElement {
    word: Vec<BigInt>,
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn word(&self) -> &[BigInt] {
        &self.word
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

/// Relation matrix of the presentation, one row per relation.
pub fn relation_matrix(s: &SeifertData) -> IntMatrix {
    let nu = s.num_arms();
    let mut rows = Vec::with_capacity(nu + 1);
    let mut first = vec![-s.b()];
    first.extend(s.pairs().iter().map(|(_, w)| -w));
    rows.push(first);
    for (i, (alpha, _)) in s.pairs().iter().enumerate() {
        let mut row = vec![BigInt::zero(); nu + 1];
        row[0] = BigInt::one();
        row[i + 1] = -alpha;
        rows.push(row);
    }
    rows
}

/// Smith normal form diagonal together with the column transform `V`
/// (`U A V = D` for some unimodular `U`).
pub fn smith_normal_form(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = a.len();
    let mut a = a.clone();
    let mut v: IntMatrix =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();

    for t in 0..n {
        while let Some((pi, pj)) = smallest_entry(&a, t) {
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, pj);
                }
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * p;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    ((0..n).map(|i| a[i][i].clone()).collect(), v)
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn to_u64(x: &BigInt, order: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::GroupTooLarge(order.clone()))
}

pub fn build_group(s: &SeifertData) -> Result<AbelianGroup> {
    let relations = relation_matrix(s);
    let h_order = s.h_order();
    let det = determinant(&relations);
    if &det.abs() != h_order {
        return Err(Error::Internal(format!("relation determinant {det} does not match |H| = {h_order}")));
    }
    let (diag, v) = smith_normal_form(&relations);
    let product: BigInt = diag.iter().product();
    if &product != h_order {
        return Err(Error::Internal(format!("Smith divisors {diag:?} do not multiply to |H| = {h_order}")));
    }
    let kept: Vec<usize> = (0..diag.len()).filter(|&j| !diag[j].is_one()).collect();
    let divisors = kept.iter().map(|&j| to_u64(&diag[j], h_order)).collect::<Result<Vec<_>>>()?;
    let generator_images = v
        .iter()
        .map(|row| kept.iter().map(|&j| to_u64(&row[j].mod_floor(&diag[j]), h_order)).collect())
        .collect::<Result<Vec<Vec<u64>>>>()?;
    let exponent = divisors.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    let order = to_u64(h_order, h_order)?;
    Ok(AbelianGroup { relations, divisors, exponent, order, generator_images })
}

impl AbelianGroup {
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relations
    }

    /// Nontrivial elementary divisors, each dividing the next.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// Exponent `m`; character values are `m`-th roots of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of presentation generators, `nu + 1`.
    pub fn num_generators(&self) -> usize {
        self.generator_images.len()
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut word = vec![BigInt::zero(); self.num_generators()];
        word[i] = BigInt::one();
        GroupElement { word, coords: self.generator_images[i].clone() }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { word: vec![BigInt::zero(); self.num_generators()], coords: vec![0; self.divisors.len()] }
    }

    /// Reduces `g_0^{a_0} g_1^{a_1} ... g_nu^{a_nu}`.
    pub fn element_from_word(&self, word: &[BigInt]) -> Result<GroupElement> {
        if word.len() != self.num_generators() {
            return Err(Error::WordLength { expected: self.num_generators(), found: word.len() });
        }
        let coords = self
            .divisors
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let d = BigInt::from(d);
                let total: BigInt =
                    word.iter().zip(&self.generator_images).map(|(a, img)| a * BigInt::from(img[j])).sum();
                total.mod_floor(&d).to_u64().expect("reduced below a u64 divisor")
            })
            .collect();
        Ok(GroupElement { word: word.to_vec(), coords })
    }

    pub fn element_from_word_i64(&self, word: &[i64]) -> Result<GroupElement> {
        self.element_from_word(&word.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let word = x.word.iter().zip(&y.word).map(|(a, b)| a + b).collect();
        let coords = self
            .divisors
            .iter()
            .zip(x.coords.iter().zip(&y.coords))
            .map(|(&d, (&a, &b))| ((a as u128 + b as u128) % d as u128) as u64)
            .collect();
        GroupElement { word, coords }
    }

    /// Order of an element.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        self.divisors.iter().zip(&x.coords).fold(1u64, |acc, (&d, &c)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// All characters in lexicographic order of their coordinates.
    pub fn characters(&self) -> Vec<Character> {
        mixed_radix(&self.divisors).map(|exps| Character { exps }).collect()
    }

    pub fn character(&self, exps: Vec<u64>) -> Character {
        let exps = exps.iter().zip(&self.divisors).map(|(&c, &d)| c % d).collect();
        Character { exps }
    }

    /// `chi(x)` as an exponent `k` mod `m`.
    pub fn evaluate(&self, chi: &Character, x: &GroupElement) -> u64 {
        self.pair(&chi.exps, &x.coords)
    }

    /// `chi(g_i)` for presentation generator `i` (0 is the central one).
    pub fn evaluate_generator(&self, chi: &Character, i: usize) -> u64 {
        self.pair(&chi.exps, &self.generator_images[i])
    }

    fn pair(&self, c: &[u64], y: &[u64]) -> u64 {
        let m = self.exponent as u128;
        self.divisors
            .iter()
            .zip(c.iter().zip(y))
            .fold(0u128, |acc, (&d, (&c, &y))| (acc + (c as u128 * y as u128 % d as u128) * (m / d as u128)) % m)
            as u64
    }

    /// Order of a character (order of its value group).
    pub fn character_order(&self, chi: &Character) -> u64 {
        self.divisors.iter().zip(&chi.exps).fold(1u64, |acc, (&d, &c)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// `chi^u`.
    pub fn character_pow(&self, chi: &Character, u: u64) -> Character {
        let exps =
            chi.exps.iter().zip(&self.divisors).map(|(&c, &d)| (c as u128 * u as u128 % d as u128) as u64).collect();
        Character { exps }
    }

    /// Position of a character (or element) coordinate vector in
    /// lexicographic enumeration order.
    pub fn index_of(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.divisors).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    /// Every element of `H`, each carrying a shortest positive word in the
    /// presentation generators (breadth-first, generator order as tie-break).
    /// Sorted in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<GroupElement> {
        let n = self.order as usize;
        let mut found: Vec<Option<GroupElement>> = vec![None; n];
        let start = self.identity();
        found[0] = Some(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.num_generators() {
                let y = self.add(&x, &self.generator(i));
                let idx = self.index_of(&y.coords);
                if found[idx].is_none() {
                    found[idx] = Some(y.clone());
                    queue.push_back(y);
                }
            }
        }
        found.into_iter().map(|x| x.expect("generators span H")).collect()
    }
}

/// Lexicographic enumeration of `Z/d_1 x ... x Z/d_r`, last index fastest.
fn mixed_radix(divisors: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = divisors.iter().product();
    (0..total).map(move |mut idx| {
        let mut out = vec![0; divisors.len()];
        for (slot, &d) in out.iter_mut().zip(divisors).rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    })
}
