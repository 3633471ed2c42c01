use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Dedekind sum needs a positive modulus, got {0}")]
    NonPositiveModulus(BigInt),
    #[error("continued fraction needs 0 < omega < alpha and gcd(alpha, omega) = 1, got alpha={alpha}, omega={omega}")]
    ContinuedFractionDomain { alpha: BigInt, omega: BigInt },
    #[error("need at least 3 singular fibers, got {0}")]
    TooFewArms(usize),
    #[error("pair {index}: multiplicity alpha={alpha} must be at least 2")]
    MultiplicityTooSmall { index: usize, alpha: BigInt },
    #[error("pair {index}: gcd(alpha={alpha}, beta={beta}) != 1")]
    PairNotCoprime { index: usize, alpha: BigInt, beta: BigInt },
    #[error("pair {index}: normalized omega={omega} must satisfy 0 <= omega < alpha={alpha}")]
    OmegaOutOfRange { index: usize, alpha: BigInt, omega: BigInt },
    #[error("orbifold Euler number e = {0} must be negative (e >= 0 is not a singularity link)")]
    NonNegativeEuler(Rational),
    #[error("Brieskorn exponents not pairwise coprime: {0} and {1}")]
    NotPairwiseCoprime(BigInt, BigInt),
    #[error("Brieskorn exponent {0} must be at least 2")]
    BrieskornExponent(BigInt),
    #[error("spin^c word has {found} exponents, expected {expected}")]
    WordLength { expected: usize, found: usize },
    #[error("group of order {0} is too large to enumerate")]
    GroupTooLarge(BigInt),
    #[error("intersection matrix is not negative definite (leading minor {index} = {minor})")]
    NotNegativeDefinite { index: usize, minor: BigInt },
    #[error("singular linear system")]
    Singular,
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("cyclotomic value is not rational")]
    NotRational,
    #[error("the trivial character has no finite limit")]
    TrivialCharacter,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by invalid user data, false for internal failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonPositiveModulus(_)
                | Error::ContinuedFractionDomain { .. }
                | Error::TooFewArms(_)
                | Error::MultiplicityTooSmall { .. }
                | Error::PairNotCoprime { .. }
                | Error::OmegaOutOfRange { .. }
                | Error::NonNegativeEuler(_)
                | Error::NotPairwiseCoprime(..)
                | Error::BrieskornExponent(_)
                | Error::WordLength { .. }
                | Error::GroupTooLarge(_)
                | Error::TrivialCharacter
        )
    }
}
