//! Headline invariants of the link and the identity relating them:
//!
//! `T_{M,sigma_can}(1) + lambda(M)/|H| = (K^2 + #V)/8 + DP_M`.
//!
//! `beta_i` enters the Dedekind sums only through its class mod `alpha_i`;
//! the representative `-omega_i` is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{from_int, ratio, Rational};
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::group::{build_group, AbelianGroup};
use crate::plumbing::{k2_plus_numvert_from_graph, to_plumbing};
use crate::seifert::SeifertData;
use crate::torsion::{dedekind_total, torsion_at_one_with, torsion_closed_form, SpincStructure};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Casson-Walker invariant in Lescop's normalization.
pub fn casson_walker(s: &SeifertData) -> Rational {
    let e = s.e();
    let nu = q(s.num_arms() as i64);
    let inv_sq: Rational = s.alphas().map(|a| Rational::new(BigInt::one(), a * a)).sum();
    let bracket = (q(2) - nu + inv_sq) / e + e + q(3) + q(12) * dedekind_total(s);
    bracket * from_int(s.h_order()) / q(24)
}

/// `K^2 + #V` from the Seifert invariants.
pub fn k2_plus_numvert(s: &SeifertData) -> Rational {
    let e = s.e();
    let nu = q(s.num_arms() as i64);
    let inv: Rational = s.alphas().map(|a| Rational::new(BigInt::one(), a.clone())).sum();
    let base = q(2) - nu + inv;
    &base * &base / e + e + q(5) + q(12) * dedekind_total(s)
}

/// Unclamped term `-1 + lb - sum floor(-l omega_i / alpha_i)` of `DP_M`.
pub fn dp_term(s: &SeifertData, l: &BigInt) -> BigInt {
    let mut v = -BigInt::one() + l * s.b();
    for (alpha, omega) in s.pairs() {
        v -= (-(l * omega)).div_floor(alpha);
    }
    v
}

/// Unclamped coefficient `1 - lb + sum floor(-l omega_i / alpha_i)`.
pub fn poincare_term(s: &SeifertData, l: &BigInt) -> BigInt {
    let mut v = BigInt::one() - l * s.b();
    for (alpha, omega) in s.pairs() {
        v += (-(l * omega)).div_floor(alpha);
    }
    v
}

/// Last `l` that can contribute to `DP_M`: the unclamped term is at most
/// `-1 + le + nu`, so nothing beyond `(nu - 2)/|e|` is positive.
pub fn dp_bound(s: &SeifertData) -> BigInt {
    (q(s.num_arms() as i64 - 2) / s.e().abs()).floor().to_integer()
}

const DP_TAIL_AUDIT: i64 = 10;

/// Dolgachev-Pinkham invariant `sum_{l >= 0} max(0, dp_term(l))`.
pub fn dp_invariant(s: &SeifertData) -> Result<BigInt> {
    let bound = dp_bound(s);
    let mut total = BigInt::zero();
    let mut l = BigInt::zero();
    while l <= bound {
        let t = dp_term(s, &l);
        if t.is_positive() {
            total += t;
        }
        l += 1;
    }
    for _ in 0..DP_TAIL_AUDIT {
        let t = dp_term(s, &l);
        if t.is_positive() {
            return Err(Error::Internal(format!("DP term at l = {l} is {t} beyond the bound")));
        }
        l += 1;
    }
    Ok(total)
}

/// Poincare series coefficients `l = 0..=terms` of the graded ring.
pub fn poincare_coefficients(s: &SeifertData, terms: u64) -> Vec<BigInt> {
    (0..=terms).map(|l| poincare_term(s, &BigInt::from(l)).max(BigInt::zero())).collect()
}

/// Modified Seiberg-Witten invariant `lambda/|H| + T_{M,sigma}(1)`.
pub fn sw_invariant(s: &SeifertData, g: &AbelianGroup, sigma: &SpincStructure) -> Result<Rational> {
    let torsion = torsion_at_one_with(s, g, sigma, ExecMode::default())?;
    Ok(casson_walker(s) / from_int(s.h_order()) + torsion)
}

/// Gompf's invariant of the canonical contact structure, `K^2 + #V - 2`.
pub fn gompf_theta(s: &SeifertData) -> Rational {
    k2_plus_numvert(s) - q(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub verdict: bool,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let verdict = lhs == rhs;
        IdentityCheck { lhs, rhs, verdict }
    }
}

/// Both sides of the identity, with the torsion taken from the Fourier route.
pub fn verify_identity(s: &SeifertData) -> Result<IdentityCheck> {
    let g = build_group(s)?;
    verify_identity_with(s, &g, ExecMode::default())
}

pub fn verify_identity_with(s: &SeifertData, g: &AbelianGroup, mode: ExecMode) -> Result<IdentityCheck> {
    let can = SpincStructure::canonical(s, g);
    let torsion = torsion_at_one_with(s, g, &can, mode)?;
    let lhs = torsion + casson_walker(s) / from_int(s.h_order());
    let rhs = k2_plus_numvert(s) * ratio(1, 8) + from_int(&dp_invariant(s)?);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `sw^0(sigma_can) - (K^2 + #V)/8 - p_g`; zero when `p_g = DP_M`.
pub fn conjecture_gap(s: &SeifertData, pg: &BigInt) -> Result<Rational> {
    let g = build_group(s)?;
    let sw = sw_invariant(s, &g, &SpincStructure::canonical(s, &g))?;
    Ok(sw - k2_plus_numvert(s) * ratio(1, 8) - from_int(pg))
}

/// Everything computed for one manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub data: SeifertData,
    pub lambda: Rational,
    pub k2_plus_v_formula: Rational,
    pub k2_plus_v_graph: Rational,
    pub dp: BigInt,
    pub torsion_can: Rational,
    pub torsion_closed_form: Rational,
    pub sw0_can: Rational,
    pub theta: Rational,
    pub constant_e: Rational,
    pub identity: IdentityCheck,
}

impl InvariantReport {
    pub fn k2_paths_agree(&self) -> bool {
        self.k2_plus_v_formula == self.k2_plus_v_graph
    }

    pub fn torsion_paths_agree(&self) -> bool {
        self.torsion_can == self.torsion_closed_form
    }
}

pub fn compute_report(s: &SeifertData) -> Result<InvariantReport> {
    compute_report_with(s, ExecMode::default())
}

pub fn compute_report_with(s: &SeifertData, mode: ExecMode) -> Result<InvariantReport> {
    let g = build_group(s)?;
    let can = SpincStructure::canonical(s, &g);
    let torsion_can = torsion_at_one_with(s, &g, &can, mode)?;
    let lambda = casson_walker(s);
    let k2_plus_v_formula = k2_plus_numvert(s);
    let k2_plus_v_graph = k2_plus_numvert_from_graph(&to_plumbing(s)?)?;
    let dp = dp_invariant(s)?;
    let sw0_can = &lambda / from_int(s.h_order()) + &torsion_can;
    let rhs = &k2_plus_v_formula * ratio(1, 8) + from_int(&dp);
    Ok(InvariantReport {
        data: s.clone(),
        theta: gompf_theta(s),
        constant_e: crate::torsion::constant_e(s),
        torsion_closed_form: torsion_closed_form(s)?,
        identity: IdentityCheck::new(sw0_can.clone(), rhs),
        lambda,
        k2_plus_v_formula,
        k2_plus_v_graph,
        dp,
        torsion_can,
        sw0_can,
    })
}
