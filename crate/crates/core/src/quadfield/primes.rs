//! Primes of K above a rational prime: splitting kind, canonical labels for
//! conjugate pairs, ideal classes as reduced forms, and residue images of
//! sqrt(m).

use super::forms::BinQuadForm;
use super::{QuadError, QuadField};
use crate::ffarith::{is_prime, kronecker, sqrt_ff, FiniteField};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitKind::Split => write!(f, "split"),
            SplitKind::Inert => write!(f, "inert"),
            SplitKind::Ramified => write!(f, "ramified"),
        }
    }
}

/// One prime of K above a rational prime p. Split primes come in conjugate
/// pairs labeled 1 and 2: label 1 corresponds to the canonical square root
/// r = sqrt_ff(m mod p) as the residue image of sqrt(m), label 2 to p - r.
/// Inert and ramified primes carry label 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeOfK {
    p: BigInt,
    kind: SplitKind,
    label: u8,
    class: BinQuadForm,
    sqrt_image: Option<BigInt>,
}

impl PrimeOfK {
    pub fn rational(&self) -> &BigInt {
        &self.p
    }

    pub fn kind(&self) -> SplitKind {
        self.kind
    }

    pub fn label(&self) -> u8 {
        self.label
    }

    /// Ideal class as a reduced form.
    pub fn class(&self) -> &BinQuadForm {
        &self.class
    }

    /// Residue image of sqrt(m) in F_p; split primes only.
    pub fn sqrt_image(&self) -> Option<&BigInt> {
        self.sqrt_image.as_ref()
    }

    /// Residue degree over Q: 2 for inert, else 1.
    pub fn residue_degree(&self) -> u32 {
        if self.kind == SplitKind::Inert {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for PrimeOfK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SplitKind::Split => write!(f, "P_{{{},{}}}", self.p, self.label),
            _ => write!(f, "P_{{{}}}", self.p),
        }
    }
}

/// The primes of K above p: two entries (labels 1, 2) if p splits, one if
/// inert or ramified. Errors if p is not prime.
pub fn prime_of_k(k: &QuadField, p: &BigInt) -> Result<Vec<PrimeOfK>, QuadError> {
    let pu = match p.to_biguint() {
        Some(pu) if is_prime(&pu) => pu,
        _ => return Err(QuadError::NotPrime(p.clone())),
    };
    let d = k.discriminant();
    match kronecker(d, p) {
        0 => Ok(vec![ramified_prime(k, p)]),
        -1 => Ok(vec![PrimeOfK {
            p: p.clone(),
            kind: SplitKind::Inert,
            label: 1,
            class: BinQuadForm::principal(d),
            sqrt_image: None,
        }]),
        _ => Ok(split_pair(k, p, &pu)),
    }
}

fn split_pair(k: &QuadField, p: &BigInt, pu: &BigUint) -> Vec<PrimeOfK> {
    let d = k.discriminant();
    let two = BigInt::from(2);
    let (r1, r2) = if pu == &BigUint::from(2u32) {
        // d = 1 mod 8; both primes send sqrt(m) to 1 and are told apart by
        // the b convention below.
        (BigInt::one(), BigInt::one())
    } else {
        let fp = FiniteField::prime_field(pu.clone()).expect("p prime");
        let r = sqrt_ff(&fp.from_int(k.m())).expect("split means m is a residue");
        let r = BigInt::from_biguint(Sign::Plus, r.coords()[0].clone());
        let other = p - &r;
        (r, other)
    };
    let mk = |r: BigInt, label: u8| -> PrimeOfK {
        let b = if d.is_even() {
            // d = 4m: b = 2r has b^2 = d mod 4p.
            &two * &r
        } else if pu == &BigUint::from(2u32) {
            // Above 2 with d odd: b in {1, 3} indexes the conjugates.
            if label == 1 {
                BigInt::one()
            } else {
                BigInt::from(3)
            }
        } else {
            // d odd: the odd lift of r into [0, 2p).
            if r.is_odd() {
                r.clone()
            } else {
                &r + p
            }
        };
        let num = &b * &b - d;
        let den = BigInt::from(4) * p;
        debug_assert!(num.mod_floor(&den).is_zero());
        let form = BinQuadForm::new(p.clone(), b, num / den).expect("positive definite");
        PrimeOfK {
            p: p.clone(),
            kind: SplitKind::Split,
            label,
            class: form.reduce(),
            sqrt_image: Some(r),
        }
    };
    vec![mk(r1, 1), mk(r2, 2)]
}

fn ramified_prime(k: &QuadField, p: &BigInt) -> PrimeOfK {
    let d = k.discriminant();
    // Scan the finitely many candidates b in [0, 2p) with b^2 = d mod 4p;
    // p | d so p is at most |d|.
    let two_p = BigInt::from(2) * p;
    let four_p = BigInt::from(4) * p;
    let mut b = BigInt::zero();
    let form = loop {
        assert!(b < two_p, "ramified prime must divide the discriminant");
        let num = &b * &b - d;
        if num.mod_floor(&four_p).is_zero() {
            break BinQuadForm::new(p.clone(), b.clone(), num / &four_p)
                .expect("positive definite");
        }
        b += 1;
    };
    PrimeOfK {
        p: p.clone(),
        kind: SplitKind::Ramified,
        label: 1,
        class: form.reduce(),
        sqrt_image: None,
    }
}
