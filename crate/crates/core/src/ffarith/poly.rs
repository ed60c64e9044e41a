//! Dense univariate polynomials over a [`FiniteField`].
//!
//! Coefficients are stored little-endian as raw coordinate vectors of the
//! field, with the invariant that the leading coefficient is nonzero (the
//! zero polynomial is the empty list). All binary operations require both
//! operands to live over the same field; public constructors enforce this
//! and the internal ops assume it.

use super::{FfElt, FfError, FiniteField};
use num_bigint::BigUint;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FfPoly {
    field: Arc<FiniteField>,
    /// Little-endian coefficients; each entry is a coordinate vector.
    c: Vec<Vec<BigUint>>,
}

impl PartialEq for FfPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}
impl Eq for FfPoly {}

impl FfPoly {
    pub fn zero(field: &Arc<FiniteField>) -> FfPoly {
        FfPoly {
            field: field.clone(),
            c: vec![],
        }
    }

    pub fn one(field: &Arc<FiniteField>) -> FfPoly {
        FfPoly {
            field: field.clone(),
            c: vec![field.c_one()],
        }
    }

    pub fn x(field: &Arc<FiniteField>) -> FfPoly {
        FfPoly {
            field: field.clone(),
            c: vec![field.c_zero(), field.c_one()],
        }
    }

    /// From little-endian element coefficients. Errors if any coefficient
    /// lives in a different field.
    pub fn new(field: &Arc<FiniteField>, coeffs: &[FfElt]) -> Result<FfPoly, FfError> {
        for e in coeffs {
            if e.field() != field {
                return Err(FfError::MixedFields);
            }
        }
        Ok(Self::from_coords(
            field.clone(),
            coeffs.iter().map(|e| e.coords().to_vec()).collect(),
        ))
    }

    pub(crate) fn from_coords(field: Arc<FiniteField>, c: Vec<Vec<BigUint>>) -> FfPoly {
        let mut p = FfPoly { field, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while let Some(last) = self.c.last() {
            if self.field.c_is_zero(last) {
                self.c.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == self.field.c_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn coeffs(&self) -> &[Vec<BigUint>] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FfElt {
        let c = self
            .c
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.c_zero());
        self.field.elt_raw(c)
    }

    pub fn leading(&self) -> Option<FfElt> {
        self.deg().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.c.last(), Some(l) if *l == self.field.c_one())
    }

    pub fn add(&self, other: &FfPoly) -> FfPoly {
        debug_assert!(self.field == other.field);
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        let z = self.field.c_zero();
        for i in 0..n {
            let a = self.c.get(i).unwrap_or(&z);
            let b = other.c.get(i).unwrap_or(&z);
            c.push(self.field.c_add(a, b));
        }
        Self::from_coords(self.field.clone(), c)
    }

    pub fn sub(&self, other: &FfPoly) -> FfPoly {
        debug_assert!(self.field == other.field);
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        let z = self.field.c_zero();
        for i in 0..n {
            let a = self.c.get(i).unwrap_or(&z);
            let b = other.c.get(i).unwrap_or(&z);
            c.push(self.field.c_sub(a, b));
        }
        Self::from_coords(self.field.clone(), c)
    }

    pub fn mul(&self, other: &FfPoly) -> FfPoly {
        debug_assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut c = vec![self.field.c_zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if self.field.c_is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if self.field.c_is_zero(b) {
                    continue;
                }
                let t = self.field.c_mul(a, b);
                c[i + j] = self.field.c_add(&c[i + j], &t);
            }
        }
        Self::from_coords(self.field.clone(), c)
    }

    pub fn mul_elt(&self, e: &[BigUint]) -> FfPoly {
        let c = self
            .c
            .iter()
            .map(|a| self.field.c_mul(a, e))
            .collect::<Vec<_>>();
        Self::from_coords(self.field.clone(), c)
    }

    pub fn neg(&self) -> FfPoly {
        let c = self.c.iter().map(|a| self.field.c_neg(a)).collect();
        Self::from_coords(self.field.clone(), c)
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &FfPoly) -> Result<(FfPoly, FfPoly), FfError> {
        debug_assert!(self.field == d.field);
        let dd = d.deg().ok_or(FfError::DivisionByZero)?;
        if self.deg().map_or(true, |n| n < dd) {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let lead_inv = self
            .field
            .c_inv(d.c.last().unwrap())
            .expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let n = r.len() - 1;
        let mut q = vec![self.field.c_zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            if self.field.c_is_zero(&r[i]) {
                continue;
            }
            let f = self.field.c_mul(&r[i], &lead_inv);
            q[i - dd] = f.clone();
            for (j, dc) in d.c.iter().enumerate() {
                if self.field.c_is_zero(dc) {
                    continue;
                }
                let t = self.field.c_mul(&f, dc);
                r[i - dd + j] = self.field.c_sub(&r[i - dd + j], &t);
            }
        }
        r.truncate(dd);
        Ok((
            Self::from_coords(self.field.clone(), q),
            Self::from_coords(self.field.clone(), r),
        ))
    }

    pub fn rem(&self, d: &FfPoly) -> Result<FfPoly, FfError> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; panics if the division is inexact (internal use).
    pub(crate) fn div_exact(&self, d: &FfPoly) -> FfPoly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &FfPoly) -> FfPoly {
        debug_assert!(self.field == other.field);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic().1
    }

    /// Scales to leading coefficient 1; returns (original leading coeff, monic).
    pub fn monic(&self) -> (FfElt, FfPoly) {
        match self.c.last() {
            None => (self.field.one(), self.clone()),
            Some(l) => {
                let inv = self.field.c_inv(l).expect("leading nonzero");
                let lead = self.leading().unwrap();
                (lead, self.mul_elt(&inv))
            }
        }
    }

    /// self^e mod m, by binary exponentiation.
    pub fn powmod(&self, e: &BigUint, m: &FfPoly) -> Result<FfPoly, FfError> {
        debug_assert!(self.field == m.field);
        if m.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let mut acc = Self::one(&self.field);
        if e.is_zero() {
            return acc.rem(m);
        }
        let base = self.rem(m)?;
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> FfPoly {
        if self.c.len() <= 1 {
            return Self::zero(&self.field);
        }
        let p = self.field.characteristic().clone();
        let mut c = Vec::with_capacity(self.c.len() - 1);
        for (i, a) in self.c.iter().enumerate().skip(1) {
            let n = BigUint::from(i) % &p;
            let scalar = vec![n]
                .into_iter()
                .chain(std::iter::repeat(BigUint::zero()))
                .take(self.field.degree())
                .collect::<Vec<_>>();
            c.push(self.field.c_mul(a, &scalar));
        }
        Self::from_coords(self.field.clone(), c)
    }

    pub fn eval(&self, x: &FfElt) -> FfElt {
        debug_assert!(*x.field() == self.field);
        let mut acc = self.field.c_zero();
        for a in self.c.iter().rev() {
            acc = self.field.c_mul(&acc, x.coords());
            acc = self.field.c_add(&acc, a);
        }
        self.field.elt_raw(acc)
    }

    /// Canonical order: degree first, then coefficients compared from the
    /// most significant down, each by the coordinate order of the field.
    pub fn canonical_cmp(&self, other: &FfPoly) -> Ordering {
        debug_assert!(self.field == other.field);
        match self.c.len().cmp(&other.c.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.c.iter().rev().zip(other.c.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for FfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if self.field.c_is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.field.elt_raw(c.clone());
            let unit = c == &self.field.c_one();
            match (i, unit) {
                (0, _) => write!(f, "{e}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{e}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{e}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(field: &Arc<FiniteField>, coeffs: &[i64]) -> FfPoly {
        let elts: Vec<FfElt> = coeffs
            .iter()
            .map(|&c| field.from_int(&BigInt::from(c)))
            .collect();
        FfPoly::new(field, &elts).unwrap()
    }

    #[test]
    fn divrem_and_gcd() {
        let f = FiniteField::prime_field(BigUint::from(7u32)).unwrap();
        // (x+1)(x+2) = x^2 + 3x + 2
        let a = poly(&f, &[2, 3, 1]);
        let b = poly(&f, &[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, poly(&f, &[2, 1]));
        assert_eq!(a.gcd(&b), poly(&f, &[1, 1]));
        let c = poly(&f, &[2, 1]);
        assert_eq!(a.gcd(&c), c);
        // Coprime case reduces to 1.
        assert!(poly(&f, &[1, 0, 1]).gcd(&b).is_one());
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = FiniteField::prime_field(BigUint::from(5u32)).unwrap();
        let m = poly(&f, &[2, 0, 1]); // x^2 + 2, irreducible mod 5
        let x = FfPoly::x(&f);
        let mut acc = FfPoly::one(&f);
        for e in 0u32..30 {
            assert_eq!(x.powmod(&BigUint::from(e), &m).unwrap(), acc);
            acc = acc.mul(&x).rem(&m).unwrap();
        }
    }

    #[test]
    fn derivative_in_char_p() {
        let f = FiniteField::prime_field(BigUint::from(3u32)).unwrap();
        // d/dx (x^3 + x + 1) = 1 in characteristic 3.
        let a = poly(&f, &[1, 1, 0, 1]);
        assert_eq!(a.derivative(), FfPoly::one(&f));
        assert!(poly(&f, &[2, 0, 0, 2]).derivative().is_zero());
    }

    #[test]
    fn eval_horner() {
        let f = FiniteField::prime_field(BigUint::from(11u32)).unwrap();
        let a = poly(&f, &[7, 0, 1]); // x^2 + 7
        for x in 0..11i64 {
            let v = a.eval(&f.from_int(&BigInt::from(x)));
            let expect = f.from_int(&BigInt::from(x * x + 7));
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn canonical_order_sorts_by_degree_then_high_coefficients() {
        let f = FiniteField::prime_field(BigUint::from(5u32)).unwrap();
        let a = poly(&f, &[4, 1]); // x + 4
        let b = poly(&f, &[0, 0, 1]); // x^2
        let c = poly(&f, &[1, 1]); // x + 1
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(a.canonical_cmp(&c), Ordering::Greater);
        assert_eq!(c.canonical_cmp(&c.clone()), Ordering::Equal);
    }
}
