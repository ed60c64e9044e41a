//! Binary quadratic forms and Gauss composition.
//!
//! Positive definite integral forms (a, b, c) of a fixed negative
//! discriminant model ideal classes of the quadratic order; reduction gives
//! a unique representative per class and composition realizes the group law.

use super::QuadError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A positive definite integral binary quadratic form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinQuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl BinQuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<BinQuadForm, QuadError> {
        if !a.is_positive() {
            return Err(QuadError::NotPositiveDefinite);
        }
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if !disc.is_negative() {
            return Err(QuadError::NotPositiveDefinite);
        }
        Ok(BinQuadForm { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<BinQuadForm, QuadError> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    /// The principal (identity) form of discriminant d.
    pub fn principal(d: &BigInt) -> BinQuadForm {
        let four = BigInt::from(4);
        if d.mod_floor(&four).is_zero() {
            BinQuadForm {
                a: BigInt::one(),
                b: BigInt::zero(),
                c: -d / four,
            }
        } else {
            BinQuadForm {
                a: BigInt::one(),
                b: BigInt::one(),
                c: (BigInt::one() - d) / four,
            }
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// Value at (x, y).
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Reduced: -a < b <= a <= c, and b >= 0 if a = c.
    pub fn is_reduced(&self) -> bool {
        let babs = self.b.abs();
        babs <= self.a
            && self.a <= self.c
            && !(self.b.is_negative() && (babs == self.a || self.a == self.c))
    }

    /// Gauss reduction: the unique reduced form in the proper equivalence
    /// class.
    pub fn reduce(&self) -> BinQuadForm {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        let d = self.discriminant();
        loop {
            if c < a {
                // (a, b, c) -> (c, -b, a)
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b > a || -&b >= a {
                // Normalize b into (-a, a] and recompute c from d.
                let two_a = BigInt::from(2) * &a;
                let mut nb = b.mod_floor(&two_a);
                if nb > a {
                    nb -= &two_a;
                }
                b = nb;
                c = (&b * &b - &d) / (BigInt::from(4) * &a);
                continue;
            }
            if b.is_negative() && (a == c || b.abs() == a) {
                b = -b;
                continue;
            }
            break;
        }
        debug_assert_eq!(&b * &b - BigInt::from(4) * &a * &c, d);
        let f = BinQuadForm { a, b, c };
        debug_assert!(f.is_reduced());
        f
    }

    /// The class inverse: (a, -b, c) reduced.
    pub fn inverse(&self) -> BinQuadForm {
        BinQuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
        .reduce()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Gauss/Dirichlet composition, returned reduced. Errors if the
    /// discriminants differ or either form is imprimitive (imprimitive forms
    /// cannot represent values coprime to a given modulus, which the
    /// algorithm relies on; they never occur for fundamental discriminants).
    pub fn compose(&self, other: &BinQuadForm) -> Result<BinQuadForm, QuadError> {
        let d = self.discriminant();
        let d2 = other.discriminant();
        if d != d2 {
            return Err(QuadError::DiscriminantMismatch(d, d2));
        }
        if !self.is_primitive() || !other.is_primitive() {
            return Err(QuadError::ImprimitiveForm);
        }
        // Replace `other` by an equivalent form whose leading coefficient is
        // coprime to ours: search primitively represented values f2(x, y)
        // with gcd(x, y) = 1 over growing boxes. Such a value always exists
        // because a primitive form represents values coprime to any modulus.
        let (a2p, b2p) = other.transform_coprime_to(&self.a);
        // Dirichlet composition for gcd(a1, a2') = 1:
        // B = b1 mod 2a1, B = b2' mod 2a2', with B = b1 + 2 a1 t.
        let a1 = &self.a;
        let half_diff = (&b2p - &self.b) / BigInt::from(2); // b1, b2' share parity of d
        let inv = mod_inverse(&a1.mod_floor(&a2p), &a2p).expect("coprime by construction");
        let t = (&half_diff * &inv).mod_floor(&a2p);
        let big_b = &self.b + BigInt::from(2) * a1 * &t;
        let big_a = a1 * &a2p;
        let num = &big_b * &big_b - &d;
        let den = BigInt::from(4) * &big_a;
        debug_assert!(num.mod_floor(&den).is_zero());
        let big_c = num / den;
        Ok(BinQuadForm {
            a: big_a,
            b: big_b,
            c: big_c,
        }
        .reduce())
    }

    /// An equivalent form (a2', b2', _) with gcd(a2', n) = 1: returns
    /// (a2', b2').
    fn transform_coprime_to(&self, n: &BigInt) -> (BigInt, BigInt) {
        let mut radius = 1i64;
        loop {
            for x in -radius..=radius {
                for y in -radius..=radius {
                    let xb = BigInt::from(x);
                    let yb = BigInt::from(y);
                    if xb.gcd(&yb) != BigInt::one() {
                        continue;
                    }
                    let val = self.eval(&xb, &yb);
                    if val.gcd(n) != BigInt::one() {
                        continue;
                    }
                    // Complete (x, y) to an SL2 matrix [[x, z], [y, w]]:
                    // xw - yz = 1 via the extended gcd s x + t y = 1.
                    let e = xb.extended_gcd(&yb);
                    debug_assert!(e.gcd.is_one());
                    let (s, t) = (e.x, e.y);
                    let z = -&t;
                    let w = s;
                    let b2 = BigInt::from(2) * (&self.a * &xb * &z + &self.c * &yb * &w)
                        + &self.b * (&xb * &w + &yb * &z);
                    return (val, b2);
                }
            }
            radius += 1;
        }
    }

    /// k-th compose power of the class (k >= 0), reduced.
    pub fn pow(&self, k: u64) -> Result<BinQuadForm, QuadError> {
        let d = self.discriminant();
        let mut acc = BinQuadForm::principal(&d);
        let mut base = self.reduce();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            base = base.compose(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for BinQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    if n.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinQuadForm {
        BinQuadForm::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn construction_and_reduction() {
        assert_eq!(
            BinQuadForm::from_i64(-1, 0, 14).unwrap_err(),
            QuadError::NotPositiveDefinite
        );
        assert_eq!(
            BinQuadForm::from_i64(1, 10, 1).unwrap_err(),
            QuadError::NotPositiveDefinite
        );
        // Already reduced.
        assert_eq!(f(1, 0, 14).reduce(), f(1, 0, 14));
        assert!(f(1, 0, 14).is_reduced());
        // The two boundary conventions.
        assert!(!f(2, -2, 3).is_reduced()); // |b| = a needs b >= 0
        assert_eq!(f(2, -2, 3).reduce(), f(2, 2, 3));
        assert!(!f(3, -2, 3).is_reduced()); // a = c needs b >= 0
        assert_eq!(f(3, -2, 3).reduce(), f(3, 2, 3));
        // A wilder orbit: discriminant -56.
        let g = f(65, 62, 15); // 62^2 - 4*65*15 = -56
        assert_eq!(g.discriminant(), BigInt::from(-56));
        assert_eq!(g.reduce(), f(1, 0, 14));
        // Reduction preserves the discriminant and fixes reduced forms.
        for (a, b, c) in [(3, 2, 5), (2, 0, 7), (1, 0, 14), (3, -2, 5)] {
            let g = f(a, b, c);
            assert_eq!(g.reduce(), g);
        }
    }

    #[test]
    fn principal_forms() {
        assert_eq!(
            BinQuadForm::principal(&BigInt::from(-56)),
            f(1, 0, 14)
        );
        assert_eq!(
            BinQuadForm::principal(&BigInt::from(-23)),
            f(1, 1, 6)
        );
        assert_eq!(BinQuadForm::principal(&BigInt::from(-4)), f(1, 0, 1));
    }

    #[test]
    fn composition_reference_values() {
        // d = -56 class group: (3,2,5) has order 4 with square (2,0,7).
        let g = f(3, 2, 5);
        assert_eq!(g.compose(&g).unwrap(), f(2, 0, 7));
        assert_eq!(g.pow(2).unwrap(), f(2, 0, 7));
        assert_eq!(g.pow(4).unwrap(), f(1, 0, 14));
        assert_ne!(g.pow(2).unwrap(), f(1, 0, 14));
        // Inverse pair.
        assert_eq!(g.compose(&f(3, -2, 5)).unwrap(), f(1, 0, 14));
        assert_eq!(g.inverse(), f(3, -2, 5));
        // (2,0,7) is 2-torsion.
        assert_eq!(f(2, 0, 7).compose(&f(2, 0, 7)).unwrap(), f(1, 0, 14));
        // Identity composes trivially.
        let id = BinQuadForm::principal(&BigInt::from(-56));
        for h in [f(1, 0, 14), f(2, 0, 7), f(3, 2, 5), f(3, -2, 5)] {
            assert_eq!(h.compose(&id).unwrap(), h);
            assert_eq!(id.compose(&h).unwrap(), h);
        }
        // Mismatched discriminants are rejected.
        assert!(matches!(
            f(1, 0, 14).compose(&f(1, 0, 1)),
            Err(QuadError::DiscriminantMismatch(_, _))
        ));
    }

    #[test]
    fn composition_with_non_coprime_leading_coefficients() {
        // Same leading coefficient forces the coprime-representative search.
        let g = f(3, 2, 5);
        let h = f(3, -2, 5);
        assert_eq!(g.compose(&h).unwrap(), f(1, 0, 14));
        assert_eq!(g.compose(&g).unwrap(), f(2, 0, 7));
        // d = -23: (2,1,3) and (2,-1,3) are inverse; (2,1,3)^2 = (2,-1,3).
        let u = f(2, 1, 3);
        let v = f(2, -1, 3);
        assert_eq!(u.compose(&v).unwrap(), f(1, 1, 6));
        assert_eq!(u.compose(&u).unwrap(), v);
        assert_eq!(u.pow(3).unwrap(), f(1, 1, 6));
    }

    #[test]
    fn powers_and_zeroth_power() {
        let g = f(3, 2, 5);
        assert_eq!(g.pow(0).unwrap(), f(1, 0, 14));
        assert_eq!(g.pow(1).unwrap(), g);
        assert_eq!(g.pow(5).unwrap(), g);
        assert_eq!(g.pow(3).unwrap(), g.inverse());
    }
}
