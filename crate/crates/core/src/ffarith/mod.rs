//! Finite fields F_{p^k} with exact arithmetic and deterministic choices.
//!
//! A field is a prime p, a degree k and a fixed modulus polynomial: the
//! lexicographically least monic irreducible of degree k over F_p, where
//! polynomials of equal degree are compared by coefficient tuples from the
//! most significant coefficient down. Elements are coordinate vectors of
//! length k in the power basis of the modulus, little-endian.
//!
//! The module also provides the integer-side utilities the rest of the crate
//! leans on: a deterministic Miller-Rabin primality test, a prime sieve, and
//! the full Kronecker symbol.

mod factor;
mod poly;

pub use factor::{
    factor_ff, factor_ff_seeded, is_irreducible_ff, least_irreducible, sqrt_ff,
    DEFAULT_FACTOR_SEED,
};
pub use poly::FfPoly;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Errors from field construction and element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(BigUint),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("arithmetic between elements of different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square roots are not supported in characteristic 2")]
    CharacteristicTwo,
    #[error("element is not a square")]
    NotASquare,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// The field F_{p^k}. Construct through [`FiniteField::new`] and share via
/// `Arc`; element operations check field identity, not pointer identity.
#[derive(Debug)]
pub struct FiniteField {
    p: BigUint,
    k: usize,
    q: BigUint,
    /// Monic modulus, little-endian, length k+1; for k = 1 this is x itself.
    modulus: Vec<BigUint>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for FiniteField {}

impl FiniteField {
    /// Builds F_{p^k} with the canonical (lexicographically least) modulus.
    pub fn new(p: BigUint, k: usize) -> Result<Arc<Self>, FfError> {
        if k == 0 {
            return Err(FfError::DegreeZero);
        }
        if !is_prime(&p) {
            return Err(FfError::NotPrime(p));
        }
        let q = p.pow(k as u32);
        let modulus = if k == 1 {
            vec![BigUint::zero(), BigUint::one()]
        } else {
            let base = Self::prime_field_unchecked(p.clone());
            let f = factor::least_irreducible_over(&base, k);
            f.coeffs()
                .iter()
                .map(|c| c[0].clone())
                .collect::<Vec<_>>()
        };
        Ok(Arc::new(FiniteField { p, k, q, modulus }))
    }

    /// F_p itself.
    pub fn prime_field(p: BigUint) -> Result<Arc<Self>, FfError> {
        Self::new(p, 1)
    }

    fn prime_field_unchecked(p: BigUint) -> Arc<Self> {
        Arc::new(FiniteField {
            q: p.clone(),
            p,
            k: 1,
            modulus: vec![BigUint::zero(), BigUint::one()],
        })
    }

    pub fn characteristic(&self) -> &BigUint {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Field order q = p^k.
    pub fn order(&self) -> &BigUint {
        &self.q
    }

    /// Little-endian coefficients of the modulus polynomial (length k+1).
    pub fn modulus(&self) -> &[BigUint] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> FfElt {
        FfElt {
            field: self.clone(),
            c: self.c_zero(),
        }
    }

    pub fn one(self: &Arc<Self>) -> FfElt {
        FfElt {
            field: self.clone(),
            c: self.c_one(),
        }
    }

    /// Element from little-endian coordinates; entries are reduced mod p and
    /// the vector is padded or truncated-of-zeros to length k.
    pub fn elt_from_coords(self: &Arc<Self>, coords: &[BigInt]) -> FfElt {
        assert!(
            coords.len() <= self.k,
            "coordinate vector longer than field degree"
        );
        let mut c = self.c_zero();
        for (i, x) in coords.iter().enumerate() {
            c[i] = self.red_int(x);
        }
        FfElt {
            field: self.clone(),
            c,
        }
    }

    /// The image of a rational integer (coordinate 0).
    pub fn from_int(self: &Arc<Self>, n: &BigInt) -> FfElt {
        self.elt_from_coords(std::slice::from_ref(n))
    }

    /// Wraps already-reduced coordinates without copying through BigInt.
    pub(crate) fn elt_raw(self: &Arc<Self>, c: Vec<BigUint>) -> FfElt {
        debug_assert_eq!(c.len(), self.k);
        debug_assert!(c.iter().all(|x| *x < self.p));
        FfElt {
            field: self.clone(),
            c,
        }
    }

    // ---- internal coordinate arithmetic -------------------------------

    fn red_int(&self, x: &BigInt) -> BigUint {
        let p = BigInt::from(self.p.clone());
        x.mod_floor(&p).to_biguint().expect("mod_floor is nonneg")
    }

    pub(crate) fn c_zero(&self) -> Vec<BigUint> {
        vec![BigUint::zero(); self.k]
    }

    pub(crate) fn c_one(&self) -> Vec<BigUint> {
        let mut c = self.c_zero();
        if self.p > BigUint::one() {
            c[0] = BigUint::one();
        }
        c
    }

    pub(crate) fn c_is_zero(&self, a: &[BigUint]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    pub(crate) fn c_add(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.p {
                    s - &self.p
                } else {
                    s
                }
            })
            .collect()
    }

    pub(crate) fn c_neg(&self, a: &[BigUint]) -> Vec<BigUint> {
        a.iter()
            .map(|x| {
                if x.is_zero() {
                    BigUint::zero()
                } else {
                    &self.p - x
                }
            })
            .collect()
    }

    pub(crate) fn c_sub(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        self.c_add(a, &self.c_neg(b))
    }

    pub(crate) fn c_mul(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        let k = self.k;
        let mut r = vec![BigUint::zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                r[i + j] = (&r[i + j] + x * y) % &self.p;
            }
        }
        // Reduce by the monic modulus: x^k = -(modulus[0] + ... + modulus[k-1] x^{k-1}).
        for i in (k..2 * k - 1).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[i]);
            for j in 0..k {
                if self.modulus[j].is_zero() {
                    continue;
                }
                let t = (&c * &self.modulus[j]) % &self.p;
                let cur = &r[i - k + j];
                r[i - k + j] = if *cur >= t {
                    cur - &t
                } else {
                    cur + &self.p - &t
                };
            }
        }
        r.truncate(k);
        r
    }

    pub(crate) fn c_pow(&self, a: &[BigUint], e: &BigUint) -> Vec<BigUint> {
        if e.is_zero() {
            return self.c_one();
        }
        let mut acc = self.c_one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.c_mul(&acc, &acc);
            if e.bit(i) {
                acc = self.c_mul(&acc, a);
            }
        }
        acc
    }

    pub(crate) fn c_inv(&self, a: &[BigUint]) -> Option<Vec<BigUint>> {
        if self.c_is_zero(a) {
            return None;
        }
        let e = &self.q - 2u32;
        Some(self.c_pow(a, &e))
    }

    /// The inverse Frobenius a -> a^(p^(k-1)), i.e. the p-th root.
    pub(crate) fn c_pth_root(&self, a: &[BigUint]) -> Vec<BigUint> {
        if self.k == 1 {
            return a.to_vec();
        }
        let e = self.p.pow(self.k as u32 - 1);
        self.c_pow(a, &e)
    }
}

/// An element of a [`FiniteField`]; immutable coordinate vector of length k.
#[derive(Debug, Clone)]
pub struct FfElt {
    field: Arc<FiniteField>,
    c: Vec<BigUint>,
}

impl PartialEq for FfElt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}
impl Eq for FfElt {}

impl FfElt {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Little-endian coordinates in the power basis, each in [0, p).
    pub fn coords(&self) -> &[BigUint] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.field.c_is_zero(&self.c)
    }

    fn check(&self, other: &FfElt) -> Result<(), FfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FfError::MixedFields)
        }
    }

    pub fn add(&self, other: &FfElt) -> Result<FfElt, FfError> {
        self.check(other)?;
        Ok(self.lift(self.field.c_add(&self.c, &other.c)))
    }

    pub fn sub(&self, other: &FfElt) -> Result<FfElt, FfError> {
        self.check(other)?;
        Ok(self.lift(self.field.c_sub(&self.c, &other.c)))
    }

    pub fn mul(&self, other: &FfElt) -> Result<FfElt, FfError> {
        self.check(other)?;
        Ok(self.lift(self.field.c_mul(&self.c, &other.c)))
    }

    pub fn div(&self, other: &FfElt) -> Result<FfElt, FfError> {
        self.check(other)?;
        let inv = self.field.c_inv(&other.c).ok_or(FfError::DivisionByZero)?;
        Ok(self.lift(self.field.c_mul(&self.c, &inv)))
    }

    pub fn neg(&self) -> FfElt {
        self.lift(self.field.c_neg(&self.c))
    }

    pub fn inv(&self) -> Result<FfElt, FfError> {
        self.field
            .c_inv(&self.c)
            .map(|c| self.lift(c))
            .ok_or(FfError::DivisionByZero)
    }

    pub fn pow(&self, e: &BigUint) -> FfElt {
        self.lift(self.field.c_pow(&self.c, e))
    }

    /// Total order on elements of one field: coordinate tuples compared from
    /// coordinate 0 up. Used wherever a canonical representative is needed.
    pub fn canonical_cmp(&self, other: &FfElt) -> Ordering {
        debug_assert!(self.field == other.field);
        self.c.cmp(&other.c)
    }

    fn lift(&self, c: Vec<BigUint>) -> FfElt {
        FfElt {
            field: self.field.clone(),
            c,
        }
    }
}

impl fmt::Display for FfElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "(")?;
            for (i, x) in self.c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}

/// Deterministic Miller-Rabin: the witness set {2,...,37} decides primality
/// for every n < 3.3 * 10^24, far beyond anything this crate touches.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for w in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 2 is odd here");
    let d = &n_minus_1 >> s;
    'witness: for w in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `bound`, by sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Full Kronecker symbol (a|n), defined for all integers n.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.magnitude().is_one() { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut sign = 1i32;
    if n.sign() == num_bigint::Sign::Minus {
        n = -n;
        if a.sign() == num_bigint::Sign::Minus {
            sign = -sign;
        }
    }
    // Pull out the even part of n; (a|2) depends on a mod 8.
    let t2 = n.trailing_zeros().unwrap_or(0);
    if t2 > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= t2;
        if t2 % 2 == 1 {
            let r = (a.mod_floor(&BigInt::from(8))).to_u32().unwrap();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    // Now n is positive and odd: Jacobi with quadratic reciprocity.
    a = a.mod_floor(&n);
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        let t = a.trailing_zeros().unwrap_or(0);
        if t > 0 {
            a >>= t;
            if t % 2 == 1 {
                let r = n.mod_floor(&eight);
                if r == three || r == five {
                    sign = -sign;
                }
            }
        }
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Arc<FiniteField> {
        FiniteField::new(BigUint::from(p), 1).unwrap()
    }

    fn fq(p: u32, k: usize) -> Arc<FiniteField> {
        FiniteField::new(BigUint::from(p), k).unwrap()
    }

    fn modulus_u32(f: &FiniteField) -> Vec<u32> {
        f.modulus().iter().map(|c| c.to_u32().unwrap()).collect()
    }

    #[test]
    fn canonical_moduli_are_least_irreducibles() {
        // Little-endian: x^2+1 over F_3, x^4+x+1 over F_2, x^2+2 over F_5,
        // x^2+1 over F_7, x^5+4x+1 over F_5, x^2+3 over F_137, x^4+x+2 over F_3.
        assert_eq!(modulus_u32(&fq(3, 2)), vec![1, 0, 1]);
        assert_eq!(modulus_u32(&fq(2, 4)), vec![1, 1, 0, 0, 1]);
        assert_eq!(modulus_u32(&fq(5, 2)), vec![2, 0, 1]);
        assert_eq!(modulus_u32(&fq(7, 2)), vec![1, 0, 1]);
        assert_eq!(modulus_u32(&fq(5, 5)), vec![1, 4, 0, 0, 0, 1]);
        assert_eq!(modulus_u32(&fq(137, 2)), vec![3, 0, 1]);
        assert_eq!(modulus_u32(&fq(3, 4)), vec![2, 1, 0, 0, 1]);
    }

    #[test]
    fn field_construction_rejects_bad_inputs() {
        assert_eq!(
            FiniteField::new(BigUint::from(6u32), 2).unwrap_err(),
            FfError::NotPrime(BigUint::from(6u32))
        );
        assert_eq!(
            FiniteField::new(BigUint::from(7u32), 0).unwrap_err(),
            FfError::DegreeZero
        );
    }

    #[test]
    fn element_arithmetic_in_f9() {
        let f = fq(3, 2);
        // i = x with x^2 = -1; (1 + i)^2 = 2i.
        let a = f.elt_from_coords(&[BigInt::from(1), BigInt::from(1)]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, f.elt_from_coords(&[BigInt::from(0), BigInt::from(2)]));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), f.one());
        // Multiplicative order of the full group is q - 1 = 8.
        let e = BigUint::from(8u32);
        assert_eq!(a.pow(&e), f.one());
        assert_ne!(a.pow(&BigUint::from(4u32)), f.one());
    }

    #[test]
    fn mixed_field_arithmetic_is_rejected() {
        let a = fp(3).one();
        let b = fp(5).one();
        assert_eq!(a.add(&b).unwrap_err(), FfError::MixedFields);
        assert_eq!(fp(3).one().div(&fp(3).zero()).unwrap_err(), FfError::DivisionByZero);
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = fq(5, 2);
        let p = BigUint::from(5u32);
        for n in 0..5 {
            let a = f.from_int(&BigInt::from(n));
            assert_eq!(a.pow(&p), a);
        }
        let x = f.elt_from_coords(&[BigInt::zero(), BigInt::one()]);
        assert_ne!(x.pow(&p), x);
        // p-th root inverts Frobenius.
        let y = x.pow(&p);
        assert_eq!(f.c_pth_root(y.coords()), x.coords().to_vec());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_up_to(2000);
        for n in 0..=2000u64 {
            assert_eq!(
                is_prime(&BigUint::from(n)),
                sieve.binary_search(&n).is_ok(),
                "disagreement at {n}"
            );
        }
        // A couple of larger cases on both sides.
        assert!(is_prime(&BigUint::from(1_000_003u64)));
        assert!(!is_prime(&(BigUint::from(1_000_003u64) * 1_000_033u64)));
    }

    #[test]
    fn kronecker_reference_values() {
        let k = |a: i64, n: i64| kronecker(&BigInt::from(a), &BigInt::from(n));
        assert_eq!(k(-56, 137), 1);
        assert_eq!(k(0, 7), 0);
        assert_eq!(k(-23, 7), -1);
        assert_eq!(k(-23, 5), -1);
        assert_eq!(k(-4, 11), -1);
        assert_eq!(k(-56, 3), 1);
        assert_eq!(k(-56, 11), -1);
        assert_eq!(k(-56, 13), 1);
    }

    #[test]
    fn kronecker_total_function_cases() {
        let k = |a: i64, n: i64| kronecker(&BigInt::from(a), &BigInt::from(n));
        assert_eq!(k(1, 0), 1);
        assert_eq!(k(-1, 0), 1);
        assert_eq!(k(5, 0), 0);
        assert_eq!(k(3, 2), -1); // 3 mod 8
        assert_eq!(k(7, 2), 1); // 7 mod 8
        assert_eq!(k(4, 2), 0);
        assert_eq!(k(-1, -1), -1);
        assert_eq!(k(2, -9), 1);
        // Multiplicativity spot check in the bottom argument.
        for a in -20i64..=20 {
            let lhs = k(a, 15);
            let rhs = k(a, 3) * k(a, 5);
            assert_eq!(lhs, rhs, "a = {a}");
        }
    }
}
