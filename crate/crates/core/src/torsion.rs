//! Reidemeister-Turaev torsion of the link.
//!
//! Two independent routes to `T_{M,sigma}(1)`:
//!
//! * Fourier: for every nontrivial character `chi` the limit at `t = 1` of
//!   `P_chi(t) = (t^alpha chi(g_0) - 1)^{nu-2} / prod_i (t^{alpha/alpha_i} chi(g_i) - 1)`
//!   is computed exactly in `Q(zeta_m)`, then summed against `conj(chi)(h_sigma)`
//!   and divided by `|H|`. Characters are grouped into Galois orbits
//!   `{chi^u}`; the sum over an orbit is a field trace, which keeps the work
//!   proportional to the number of cyclic subgroups instead of `|H| * m`.
//! * Closed form (canonical structure only): Dedekind sums, `DP_M` and the
//!   constant term `E` of the Laurent expansion of `P_1(t)/|H|`.
//!
//! Limits are taken by case analysis rather than series expansion. With
//! `c_0 = chi(g_0)`, `c_i = chi(g_i)`: the numerator vanishes at `t = 1` to
//! order `nu - 2` iff `c_0 = 1`, each denominator factor to order one iff
//! `c_i = 1`, and `c_i = 1` forces `c_0 = c_i^{alpha_i} = 1`. When `c_0 = 1`
//! and `S = {i : c_i = 1}`, the limit is zero for `|S| < nu - 2` and
//! `prod_{i in S} alpha_i / prod_{i not in S} (c_i - 1)` for `|S| = nu - 2`;
//! `|S| > nu - 2` would force `chi = 1`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{dedekind_sum, from_int, ratio, Rational};
use crate::cyclotomic::{ramanujan_table, Cyclotomic};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, ExecMode};
use crate::group::{AbelianGroup, Character, GroupElement};
use crate::invariants::dp_invariant;
use crate::seifert::SeifertData;

/// A spin^c structure `sigma = h_sigma . sigma_can`, with `h_sigma` given
/// by a word `g_0^{a_0} ... g_nu^{a_nu}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpincStructure {
    element: GroupElement,
    a_tilde: Rational,
}

impl SpincStructure {
    pub fn canonical(s: &SeifertData, g: &AbelianGroup) -> Self {
        Self::from_element(s, g.identity())
    }

    pub fn from_word(s: &SeifertData, g: &AbelianGroup, word: &[BigInt]) -> Result<Self> {
        Ok(Self::from_element(s, g.element_from_word(word)?))
    }

    pub fn from_word_i64(s: &SeifertData, g: &AbelianGroup, word: &[i64]) -> Result<Self> {
        Ok(Self::from_element(s, g.element_from_word_i64(word)?))
    }

    /// Uses the word the element carries.
    pub fn from_element(s: &SeifertData, element: GroupElement) -> Self {
        let word = element.word();
        let mut inner = from_int(&word[0]);
        for ((alpha, _), a) in s.pairs().iter().zip(&word[1..]) {
            inner += Rational::new(a.clone(), alpha.clone());
        }
        let a_tilde = from_int(s.alpha_lcm()) * inner;
        SpincStructure { element, a_tilde }
    }

    pub fn word(&self) -> &[BigInt] {
        self.element.word()
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    /// `alpha * (a_0 + sum a_i / alpha_i)`; always an integer.
    pub fn a_tilde(&self) -> &Rational {
        &self.a_tilde
    }

    pub fn is_canonical(&self) -> bool {
        self.element.is_identity()
    }
}

/// Exponents (mod `m`) of `chi(g_0)` and `chi(g_1..g_nu)`.
fn character_values(g: &AbelianGroup, chi: &Character) -> (u64, Vec<u64>) {
    let center = g.evaluate_generator(chi, 0);
    let arms = (1..g.num_generators()).map(|i| g.evaluate_generator(chi, i)).collect();
    (center, arms)
}

/// The limit in `Q(zeta_m)` given the character values as exponents mod `m`.
fn limit_from_values(alphas: &[BigInt], m: u64, center: u64, arms: &[u64]) -> Result<Cyclotomic> {
    let nu = arms.len();
    if center != 0 {
        let mut z = Cyclotomic::one(m);
        for _ in 0..nu - 2 {
            z = z.mul_root_minus_one(center as i64);
        }
        for &c in arms {
            if c == 0 {
                return Err(Error::Internal("chi(g_i) = 1 while chi(g_0) != 1 contradicts g_0 = g_i^alpha_i".into()));
            }
            z = z.div_root_minus_one(c as i64)?;
        }
        return Ok(z);
    }
    let fixed = arms.iter().filter(|&&c| c == 0).count();
    if fixed == nu {
        return Err(Error::TrivialCharacter);
    }
    if fixed > nu - 2 {
        return Err(Error::Internal(format!("{fixed} of {nu} arm values trivial for a nontrivial character")));
    }
    if fixed < nu - 2 {
        return Ok(Cyclotomic::zero(m));
    }
    let numerator: BigInt = arms.iter().zip(alphas).filter(|(&c, _)| c == 0).map(|(_, a)| a).product();
    let mut z = Cyclotomic::from_rational_in(from_int(&numerator), m);
    for &c in arms.iter().filter(|&&c| c != 0) {
        z = z.div_root_minus_one(c as i64)?;
    }
    Ok(z)
}

/// `lim_{t -> 1} P_chi(t)` for a nontrivial character, in `Q(zeta_m)` with
/// `m` the group exponent.
pub fn limit_p_hat(s: &SeifertData, g: &AbelianGroup, chi: &Character) -> Result<Cyclotomic> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let alphas: Vec<BigInt> = s.alphas().cloned().collect();
    let (center, arms) = character_values(g, chi);
    limit_from_values(&alphas, g.exponent(), center, &arms)
}

struct Orbit {
    rep: Character,
    /// `m / d`, where `d` is the order of the orbit's characters.
    step: u64,
    limit: Cyclotomic,
    ramanujan: Vec<i64>,
}

/// Fourier transform of the canonical torsion, prepared once per manifold
/// and evaluated at any `h` (equivalently, at any spin^c structure).
pub struct FourierTorsion {
    order: BigInt,
    orbits: Vec<Orbit>,
}

impl FourierTorsion {
    pub fn new(s: &SeifertData, g: &AbelianGroup, mode: ExecMode) -> Result<Self> {
        let m = g.exponent();
        let n = g.order() as usize;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut reps = Vec::new();
        for chi in g.characters() {
            let idx = g.index_of(chi.exponents());
            if seen[idx] {
                continue;
            }
            let d = g.character_order(&chi);
            for u in (1..=d).filter(|u| u.gcd(&d) == 1) {
                seen[g.index_of(g.character_pow(&chi, u).exponents())] = true;
            }
            reps.push((chi, d));
        }
        let alphas: Vec<BigInt> = s.alphas().cloned().collect();
        let orbits = map_ordered(mode, &reps, |(chi, d)| {
            let step = m / d;
            let (center, arms) = character_values(g, chi);
            let arms: Vec<u64> = arms.iter().map(|c| c / step).collect();
            let limit = limit_from_values(&alphas, *d, center / step, &arms)?;
            Ok(Orbit { rep: chi.clone(), step, limit, ramanujan: ramanujan_table(*d) })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Ok(FourierTorsion { order: BigInt::from(g.order()), orbits })
    }

    /// `(1/|H|) sum_{chi != 1} conj(chi)(h) lim P_chi`, i.e. `T_{M,sigma}(1)`
    /// for `h = h_sigma`, which is also `T_{M,sigma_can}(h)`.
    pub fn value_at(&self, g: &AbelianGroup, h: &GroupElement) -> Rational {
        let total: Rational = self
            .orbits
            .iter()
            .map(|orbit| {
                let d = orbit.limit.conductor();
                let k = g.evaluate(&orbit.rep, h) / orbit.step;
                // Tr(zeta_d^{-k} L) = sum_j L_j c_d(j - k)
                orbit
                    .limit
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| c * BigInt::from(orbit.ramanujan[((j as u64 + d - k) % d) as usize]))
                    .sum::<Rational>()
            })
            .sum();
        total / from_int(&self.order)
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }
}

/// `T_{M,sigma}(1)` through the Fourier route.
pub fn torsion_at_one(s: &SeifertData, g: &AbelianGroup, sigma: &SpincStructure) -> Result<Rational> {
    torsion_at_one_with(s, g, sigma, ExecMode::default())
}

pub fn torsion_at_one_with(
    s: &SeifertData,
    g: &AbelianGroup,
    sigma: &SpincStructure,
    mode: ExecMode,
) -> Result<Rational> {
    Ok(FourierTorsion::new(s, g, mode)?.value_at(g, sigma.element()))
}

/// `T_{M, h . sigma_can}(1)` for every `h` in `H`, in element enumeration order.
pub fn torsion_table(s: &SeifertData, g: &AbelianGroup, mode: ExecMode) -> Result<Vec<(GroupElement, Rational)>> {
    let fourier = FourierTorsion::new(s, g, mode)?;
    let elements = g.elements();
    let values = map_ordered(mode, &elements, |h| fourier.value_at(g, h));
    Ok(elements.into_iter().zip(values).collect())
}

/// `sum_i s(beta_i, alpha_i)` with `beta_i = -omega_i`.
pub fn dedekind_total(s: &SeifertData) -> Rational {
    s.betas().map(|(beta, alpha)| dedekind_sum(&beta, alpha).expect("alpha >= 2")).sum()
}

/// Constant term `E` of the expansion of `P_1(t)/|H|` in powers of `t^o - 1`.
pub fn constant_e(s: &SeifertData) -> Rational {
    let e = s.e();
    let one = Rational::one();
    let defects: Vec<Rational> = s.alphas().map(|a| &one - Rational::new(BigInt::one(), a.clone())).collect();
    let inv_alphas: Vec<Rational> = s.alphas().map(|a| Rational::new(BigInt::one(), a.clone())).collect();
    let twelve_e = e * from_int(&BigInt::from(12));
    let four_e = e * from_int(&BigInt::from(4));

    let first = -((e + &one) * (e + from_int(&BigInt::from(5)))) / &twelve_e;
    let second = defects.iter().sum::<Rational>() / from_int(&BigInt::from(4));
    let third =
        defects.iter().zip(&inv_alphas).map(|(d, inv)| d * (from_int(&BigInt::from(4)) + inv)).sum::<Rational>()
            / &twelve_e;
    let mut pairs = Rational::zero();
    for i in 0..defects.len() {
        for j in i + 1..defects.len() {
            pairs += &defects[i] * &defects[j];
        }
    }
    first + second + third - pairs / four_e
}

/// Coefficients of `(t^o - 1)^{-2}`, `(t^o - 1)^{-1}` and the constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentData {
    pub pole2: Rational,
    pub pole1: Rational,
    pub constant: Rational,
}

fn pole_parts(s: &SeifertData) -> (Rational, Rational) {
    let e = s.e();
    (-e, -e - s.chi_m() * ratio(1, 2))
}

/// Expansion of `sum_{l >= 0} (1 - lb + sum floor(-l omega_i/alpha_i)) t^{ol}`.
pub fn laurent_lhs(s: &SeifertData) -> LaurentData {
    let (pole2, pole1) = pole_parts(s);
    let constant = (from_int(&BigInt::from(2)) - s.chi_m()) * ratio(1, 4) + dedekind_total(s);
    LaurentData { pole2, pole1, constant }
}

/// Expansion of `P_1(t) / |H|`.
pub fn laurent_rhs(s: &SeifertData) -> LaurentData {
    let (pole2, pole1) = pole_parts(s);
    LaurentData { pole2, pole1, constant: constant_e(s) }
}

/// `T_{M,sigma_can}(1)` from the Laurent constants: the pole parts of the
/// two series cancel, leaving `DP_M + (2 - chi_M)/4 + sum s(beta_i, alpha_i) - E`.
pub fn torsion_closed_form(s: &SeifertData) -> Result<Rational> {
    let lhs = laurent_lhs(s);
    let rhs = laurent_rhs(s);
    if lhs.pole2 != rhs.pole2 || lhs.pole1 != rhs.pole1 {
        return Err(Error::Internal("Laurent pole parts disagree".into()));
    }
    Ok(from_int(&dp_invariant(s)?) + lhs.constant - rhs.constant)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantTerm {
    pub l: BigInt,
    /// `o l + a_tilde`.
    pub exponent: BigInt,
    pub coefficient: BigInt,
}

/// `max(0, 1 + a_0 - lb + sum floor((-l omega_i + a_i)/alpha_i))` for `l` in
/// the window, the coefficient of `t^{ol + a_tilde}` in
/// `(1/|H|) sum_chi conj(chi)(h_sigma) P_chi(t)`.
pub fn equivariant_coefficients(
    s: &SeifertData,
    sigma: &SpincStructure,
    window: RangeInclusive<i64>,
) -> Vec<EquivariantTerm> {
    let word = sigma.word();
    let a_tilde = sigma.a_tilde().to_integer();
    window
        .map(|l| {
            let l = BigInt::from(l);
            let mut value = BigInt::one() + &word[0] - &l * s.b();
            for ((alpha, omega), a) in s.pairs().iter().zip(&word[1..]) {
                value += (a - &l * omega).div_floor(alpha);
            }
            EquivariantTerm { exponent: &l * s.o() + &a_tilde, coefficient: value.max(BigInt::zero()), l }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::seifert::{d4, sigma_235, sigma_237};

    fn setup(s: &SeifertData) -> AbelianGroup {
        build_group(s).unwrap()
    }

    #[test]
    fn d4_limits() {
        let s = d4();
        let g = setup(&s);
        for chi in g.characters().iter().filter(|c| !c.is_trivial()) {
            assert_eq!(limit_p_hat(&s, &g, chi).unwrap().to_rational().unwrap(), ratio(1, 2));
        }
        assert_eq!(limit_p_hat(&s, &g, &g.characters()[0]).unwrap_err(), Error::TrivialCharacter);
    }

    #[test]
    fn four_arms_with_few_fixed_values_vanish() {
        // nu = 4: chi(g_0) = 1 with at most one trivial arm value gives 0
        let s = SeifertData::from_i64(-3, &[(2, 1), (2, 1), (2, 1), (2, 1)]).unwrap();
        let g = setup(&s);
        let mut checked = 0;
        for chi in g.characters().iter().filter(|c| !c.is_trivial()) {
            let (center, arms) = character_values(&g, chi);
            let fixed = arms.iter().filter(|&&c| c == 0).count();
            if center == 0 && fixed < 2 {
                assert!(limit_p_hat(&s, &g, chi).unwrap().is_zero());
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn torsion_fixtures() {
        let s = d4();
        let g = setup(&s);
        let can = SpincStructure::canonical(&s, &g);
        assert_eq!(torsion_at_one(&s, &g, &can).unwrap(), ratio(3, 8));
        let g1 = SpincStructure::from_word_i64(&s, &g, &[0, 1, 0, 0]).unwrap();
        assert_eq!(torsion_at_one(&s, &g, &g1).unwrap(), ratio(-1, 8));
        for s in [sigma_237(), sigma_235()] {
            let g = setup(&s);
            let can = SpincStructure::canonical(&s, &g);
            assert_eq!(torsion_at_one(&s, &g, &can).unwrap(), ratio(0, 1));
        }
    }

    #[test]
    fn closed_form_fixtures() {
        assert_eq!(constant_e(&sigma_237()), ratio(551, 504));
        assert_eq!(constant_e(&d4()), ratio(0, 1));
        assert_eq!(torsion_closed_form(&sigma_237()).unwrap(), ratio(0, 1));
        assert_eq!(torsion_closed_form(&d4()).unwrap(), ratio(3, 8));
        assert_eq!(torsion_closed_form(&sigma_235()).unwrap(), ratio(0, 1));
        let s = sigma_235();
        let lhs = laurent_lhs(&s);
        assert_eq!(constant_e(&s), lhs.constant);
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(laurent_lhs(&d4()), LaurentData { pole2: ratio(1, 2), pole1: ratio(1, 4), constant: ratio(3, 8) });
        let l = laurent_lhs(&sigma_237());
        assert_eq!(l.pole2, ratio(1, 42));
        assert_eq!(l.pole1, ratio(1, 42) + ratio(1, 84));
        assert_eq!(l.constant, ratio(85, 168) - ratio(26, 63));
    }

    #[test]
    fn table_rows_and_augmentation() {
        let s = d4();
        let g = setup(&s);
        let table = torsion_table(&s, &g, ExecMode::Sequential).unwrap();
        let mut values: Vec<Rational> = table.iter().map(|(_, v)| v.clone()).collect();
        values.sort();
        assert_eq!(values, vec![ratio(-1, 8), ratio(-1, 8), ratio(-1, 8), ratio(3, 8)]);
        assert_eq!(values.iter().sum::<Rational>(), ratio(0, 1));
    }

    #[test]
    fn canonical_equivariant_window() {
        let s = sigma_237();
        let g = setup(&s);
        let can = SpincStructure::canonical(&s, &g);
        let coeffs: Vec<BigInt> =
            equivariant_coefficients(&s, &can, 0..=6).into_iter().map(|t| t.coefficient).collect();
        let expected: Vec<BigInt> = [1, 0, 0, 0, 0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(coeffs, expected);
        assert!(equivariant_coefficients(&s, &can, -40..=-1).iter().all(|t| t.coefficient.is_zero()));
    }
}
