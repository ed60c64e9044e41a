//! Arithmetic of an imaginary quadratic field K = Q(sqrt(m)), m < 0
//! squarefree: the class group modeled by reduced binary quadratic forms,
//! splitting of rational primes, ideal classes of primes, and residue-degree
//! data of primes of K in the two-level tower defining the extension L.

mod class_group;
mod forms;
mod primes;
mod tower;

pub use class_group::{class_group, ClassGroup};
pub use forms::BinQuadForm;
pub use primes::{prime_of_k, PrimeOfK, SplitKind};
pub use tower::{splitting_in_l, splitting_in_l_seeded, TowerSpec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("m must be negative")]
    NotNegative,
    #[error("m must be squarefree")]
    NotSquarefree,
    #[error("form must be positive definite with negative discriminant")]
    NotPositiveDefinite,
    #[error("composition requires primitive forms (gcd(a,b,c) = 1)")]
    ImprimitiveForm,
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("level-{0} tower polynomial must be monic of degree at least 1")]
    BadTowerPolynomial(u8),
    #[error("tower polynomial is inseparable (zero discriminant)")]
    Inseparable,
    #[error("cannot factor tower discriminant data beyond the trial bound")]
    DiscriminantTooLarge,
    #[error("prime {p} is excluded for this tower: {reason}")]
    BadPrime { p: BigInt, reason: String },
    #[error("prime {p} (label {label}) ramifies in L")]
    RamifiedInL { p: BigInt, label: u8 },
}

/// The field K = Q(sqrt(m)) with its fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadField {
    m: BigInt,
    d: BigInt,
}

impl QuadField {
    pub fn new(m: BigInt) -> Result<QuadField, QuadError> {
        if !m.is_negative() {
            return Err(QuadError::NotNegative);
        }
        if !is_squarefree(&m.abs()) {
            return Err(QuadError::NotSquarefree);
        }
        let four = BigInt::from(4);
        let d = if m.mod_floor(&four) == BigInt::from(1) {
            m.clone()
        } else {
            &m * &four
        };
        Ok(QuadField { m, d })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// Fundamental discriminant: m if m = 1 mod 4, else 4m.
    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    // Trial division; inputs are desk-scale field labels, not cryptographic.
    if n.is_zero() {
        return false;
    }
    let mut n = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.mod_floor(&p).is_zero() {
            n /= &p;
            if n.mod_floor(&p).is_zero() {
                return false;
            }
        }
        p += 1;
    }
    true
}
