//! Randomized verification over many manifolds.
//!
//! All manifolds are drawn up front from one seeded stream, then evaluated
//! (optionally in parallel) and reported in draw order, so a seed fixes the
//! output bit for bit regardless of worker count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{from_int, ratio, Rational};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, ExecMode};
use crate::invariants::{compute_report_with, IdentityCheck};
use crate::plumbing::{intersection_determinant, to_plumbing};
use crate::seifert::SeifertData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub count: usize,
    pub seed: u64,
    pub max_alpha: u64,
    pub max_arms: usize,
    /// Upper bound on `|H|`; draws above it are rejected and redrawn.
    pub h_cap: u64,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig { count: 500, seed: 0, max_alpha: 10, max_arms: 5, h_cap: 5000 }
    }
}

impl BatchConfig {
    fn validate(&self) -> Result<()> {
        if self.max_arms < 3 {
            return Err(Error::TooFewArms(self.max_arms));
        }
        if self.max_alpha < 2 {
            return Err(Error::MultiplicityTooSmall { index: 0, alpha: BigInt::from(self.max_alpha) });
        }
        if self.h_cap < 1 {
            return Err(Error::GroupTooLarge(BigInt::from(self.h_cap)));
        }
        Ok(())
    }
}

/// One random valid manifold: `nu` in `[3, max_arms]`, `alpha_i` in
/// `[2, max_alpha]`, `omega_i` uniform among units mod `alpha_i`, and `b`
/// one of the two largest values keeping `e < 0`.
pub fn random_seifert<R: Rng>(rng: &mut R, cfg: &BatchConfig) -> Result<SeifertData> {
    cfg.validate()?;
    loop {
        let nu = rng.random_range(3..=cfg.max_arms);
        let mut pairs = Vec::with_capacity(nu);
        let mut frac_sum = Rational::from_integer(BigInt::from(0));
        for _ in 0..nu {
            let alpha = rng.random_range(2..=cfg.max_alpha);
            let units: Vec<u64> = (1..alpha).filter(|w| w.gcd(&alpha) == 1).collect();
            let omega = units[rng.random_range(0..units.len())];
            frac_sum += ratio(omega as i64, alpha as i64);
            pairs.push((BigInt::from(alpha), BigInt::from(omega)));
        }
        // largest b with b + sum omega/alpha < 0
        let b_max = (-&frac_sum).ceil().to_integer() - 1;
        let b = b_max - rng.random_range(0..=1u8);
        let s = SeifertData::new(b, pairs)?;
        if s.h_order() <= &BigInt::from(cfg.h_cap) {
            return Ok(s);
        }
    }
}

pub fn generate(cfg: &BatchConfig) -> Result<Vec<SeifertData>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count).map(|_| random_seifert(&mut rng, cfg)).collect()
}

/// Outcome of every cross-check on one manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchRow {
    pub index: usize,
    pub data: SeifertData,
    pub identity: IdentityCheck,
    pub torsion_fourier: Rational,
    pub torsion_closed_form: Rational,
    pub k2_formula: Rational,
    pub k2_graph: Rational,
    pub det_abs: BigInt,
    /// `sw^0(sigma_can) - (K^2 + #V)/8 - DP_M`.
    pub gap: Rational,
}

impl BatchRow {
    pub fn torsion_paths_agree(&self) -> bool {
        self.torsion_fourier == self.torsion_closed_form
    }

    pub fn k2_paths_agree(&self) -> bool {
        self.k2_formula == self.k2_graph
    }

    pub fn det_matches(&self) -> bool {
        &self.det_abs == self.data.h_order()
    }

    pub fn passed(&self) -> bool {
        self.identity.verdict
            && self.torsion_paths_agree()
            && self.k2_paths_agree()
            && self.det_matches()
            && self.gap == Rational::from_integer(BigInt::from(0))
    }
}

pub fn verify_one(index: usize, s: &SeifertData, mode: ExecMode) -> Result<BatchRow> {
    let report = compute_report_with(s, mode)?;
    let det_abs = intersection_determinant(&to_plumbing(s)?)?.abs();
    let gap = &report.sw0_can - &report.k2_plus_v_formula * ratio(1, 8) - from_int(&report.dp);
    Ok(BatchRow {
        index,
        data: s.clone(),
        identity: report.identity,
        torsion_fourier: report.torsion_can,
        torsion_closed_form: report.torsion_closed_form,
        k2_formula: report.k2_plus_v_formula,
        k2_graph: report.k2_plus_v_graph,
        det_abs,
        gap,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchSummary {
    pub rows: Vec<BatchRow>,
}

impl BatchSummary {
    pub fn failures(&self) -> impl Iterator<Item = &BatchRow> {
        self.rows.iter().filter(|r| !r.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn max_h_order(&self) -> u64 {
        self.rows.iter().filter_map(|r| r.data.h_order().to_u64()).max().unwrap_or(0)
    }
}

/// Draws `cfg.count` manifolds and runs every check on each. Manifolds are
/// spread over workers; each one is evaluated on a single worker.
pub fn verify_batch(cfg: &BatchConfig, mode: ExecMode) -> Result<BatchSummary> {
    let data = generate(cfg)?;
    let indexed: Vec<(usize, SeifertData)> = data.into_iter().enumerate().collect();
    let rows = map_ordered(mode, &indexed, |(i, s)| verify_one(*i, s, ExecMode::Sequential))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(BatchSummary { rows })
}
