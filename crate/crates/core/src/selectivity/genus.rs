//! The genus group G_R = C_K / (C_K^n * <[nu]^kappa_nu : nu ramified>).
//!
//! The classes killed are exactly the reduced norms the maximal order's
//! normalizer is known to contain: local unit norms everywhere, global n-th
//! powers, and at each ramified prime the class of the radical to the power
//! kappa. Splitting of maximal orders into isomorphism classes is measured
//! by this quotient, so its order bounds the type count and its quotients
//! by Frobenius subgroups decide selectivity.

use super::{AlgebraData, SelError};
use crate::abelian::{AbGroup, CyclicFactor, Quotient};
use crate::quadfield::{ClassGroup, PrimeOfK};
use num_bigint::BigInt;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct GenusGroup {
    class_group: ClassGroup,
    quotient: Quotient,
    ram_keys: BTreeSet<(BigInt, u8)>,
    n: u32,
}

/// Builds G_R: quotient of the class group by the subgroup generated by
/// all n-th powers and, per ramified prime, the class [nu]^{kappa_nu}. A
/// totally ramified prime (m = n, kappa = 1) kills its full class.
pub fn genus_group(b: &AlgebraData, c: &ClassGroup) -> GenusGroup {
    let g = c.group();
    let n = b.degree();
    let mut gens: Vec<usize> = (0..g.order()).map(|x| g.pow(x, n as u64)).collect();
    for (p, m) in b.ramified() {
        let idx = c
            .index_of(p.class())
            .expect("classes of primes of K are reduced forms of d");
        gens.push(g.pow(idx, b.capacity(*m) as u64));
    }
    let kernel = g.subgroup(&gens);
    let quotient = g.quotient(&kernel);
    let ram_keys = b
        .ramified()
        .iter()
        .map(|(p, _)| (p.rational().clone(), p.label()))
        .collect();
    GenusGroup {
        class_group: c.clone(),
        quotient,
        ram_keys,
        n,
    }
}

impl GenusGroup {
    pub fn order(&self) -> usize {
        self.quotient.group.order()
    }

    pub fn exponent(&self) -> u64 {
        self.quotient.group.exponent()
    }

    /// The quotient group itself; element indices are coset indices.
    pub fn group(&self) -> &AbGroup {
        &self.quotient.group
    }

    pub fn identity(&self) -> usize {
        self.quotient.group.identity()
    }

    pub fn algebra_degree(&self) -> u32 {
        self.n
    }

    pub fn class_group(&self) -> &ClassGroup {
        &self.class_group
    }

    pub fn decompose(&self) -> Vec<CyclicFactor> {
        self.quotient.group.decompose()
    }

    /// Image in G_R of a class-group element index.
    pub fn project(&self, class_index: usize) -> usize {
        self.quotient.project[class_index]
    }

    /// The Artin symbol of P: the image of its ideal class in G_R. Defined
    /// for every prime of K unramified in the algebra, including primes
    /// ramified in K itself.
    pub fn frobenius(&self, p: &PrimeOfK) -> Result<usize, SelError> {
        if self.ram_keys.contains(&(p.rational().clone(), p.label())) {
            return Err(SelError::RamifiedInB(p.rational().clone(), p.label()));
        }
        let idx = self
            .class_group
            .index_of(p.class())
            .expect("classes of primes of K are reduced forms of d");
        Ok(self.project(idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{class_group, prime_of_k, QuadField};

    fn field(m: i64) -> (QuadField, ClassGroup) {
        let k = QuadField::new(BigInt::from(m)).unwrap();
        let c = class_group(&k);
        (k, c)
    }

    fn prime(k: &QuadField, p: i64, label: u8) -> PrimeOfK {
        prime_of_k(k, &BigInt::from(p))
            .unwrap()
            .into_iter()
            .find(|q| q.label() == label)
            .unwrap()
    }

    #[test]
    fn unramified_algebra_keeps_the_whole_class_group() {
        // d = -56: C_K is cyclic of order 4, so 4th powers are trivial and
        // G_R for the split algebra M_4(K) is all of C_K.
        let (_, c) = field(-14);
        let b = AlgebraData::new(4, vec![]).unwrap();
        let g = genus_group(&b, &c);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.group().invariant_factors(), vec![4]);
    }

    #[test]
    fn trivial_ramified_classes_change_nothing() {
        // Ramification at the two principal primes above 137 with m = 2:
        // killing [nu]^2 for principal nu is a no-op, so G_R is still Z/4.
        let (k, c) = field(-14);
        let b = AlgebraData::new(
            4,
            vec![(prime(&k, 137, 1), 2), (prime(&k, 137, 2), 2)],
        )
        .unwrap();
        let g = genus_group(&b, &c);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn partial_ramification_kills_the_capacity_power() {
        // Ramify at a prime above 3 (class of order 4) with m = 2, so
        // kappa = 2 and the square of the class dies: G_R drops to Z/2.
        let (k, c) = field(-14);
        let b = AlgebraData::new(4, vec![(prime(&k, 3, 1), 2)]).unwrap();
        let g = genus_group(&b, &c);
        assert_eq!(g.order(), 2);
        // Total ramification at the same prime kills the full class.
        let b = AlgebraData::new(4, vec![(prime(&k, 3, 1), 4)]).unwrap();
        let g = genus_group(&b, &c);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn exponent_divides_the_degree() {
        for (m, n) in [(-14i64, 4u32), (-23, 3), (-1, 3), (-21, 4), (-26, 6)] {
            let (_, c) = field(m);
            let b = AlgebraData::new(n, vec![]).unwrap();
            let g = genus_group(&b, &c);
            assert_eq!(
                n % g.exponent() as u32,
                0,
                "exponent {} does not divide n = {n} for m = {m}",
                g.exponent()
            );
        }
    }

    #[test]
    fn frobenius_values() {
        let (k, c) = field(-14);
        let b = AlgebraData::new(
            4,
            vec![(prime(&k, 137, 1), 2), (prime(&k, 137, 2), 2)],
        )
        .unwrap();
        let g = genus_group(&b, &c);
        // Principal primes map to the identity... 137 is ramified in B
        // here, so use an inert prime (principal by construction).
        let p11 = prime(&k, 11, 1);
        assert_eq!(g.frobenius(&p11).unwrap(), g.identity());
        // A prime above 3 generates: order 4.
        let p3 = prime(&k, 3, 1);
        let x = g.frobenius(&p3).unwrap();
        assert_eq!(g.group().elt_order(x), 4);
        // The ramified prime above 7 is fine for Frobenius (order 2 class).
        let p7 = prime(&k, 7, 1);
        let y = g.frobenius(&p7).unwrap();
        assert_eq!(g.group().elt_order(y), 2);
        // Ramified-in-B primes are rejected.
        assert!(matches!(
            g.frobenius(&prime(&k, 137, 1)).unwrap_err(),
            SelError::RamifiedInB(..)
        ));
    }
}
