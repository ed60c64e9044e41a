//! The ideal class group of K, enumerated through reduced forms.

use super::forms::BinQuadForm;
use super::QuadField;
use crate::abelian::{AbGroup, CyclicFactor};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The full class group C_K: all reduced forms of discriminant d (sorted by
/// (a, b, c)), the Cayley table they generate under composition, and a
/// canonical cyclic decomposition.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    field: QuadField,
    forms: Vec<BinQuadForm>,
    group: AbGroup,
    decomposition: Vec<CyclicFactor>,
}

/// Enumerates the reduced forms of discriminant d(K) (scan a up to
/// sqrt(|d|/3)), builds the composition table, and verifies the group
/// axioms by construction.
pub fn class_group(k: &QuadField) -> ClassGroup {
    let d = k.discriminant().clone();
    let mut forms = Vec::new();
    // For reduced forms |d| = 4ac - b^2 >= 4a^2 - a^2, so a <= sqrt(|d|/3).
    let bound = (d.abs().to_f64().expect("desk-scale d") / 3.0).sqrt() as i64 + 1;
    for a in 1..=bound {
        let a = BigInt::from(a);
        let four_a = BigInt::from(4) * &a;
        let mut b: BigInt = BigInt::one() - &a;
        while b <= a {
            let num = &b * &b - &d;
            if num.mod_floor(&four_a).is_zero() {
                let c = num / &four_a;
                if c >= a {
                    let f = BinQuadForm::new(a.clone(), b.clone(), c).expect("valid form");
                    if f.is_reduced() {
                        forms.push(f);
                    }
                }
            }
            b += 1;
        }
    }
    forms.sort();
    let h = forms.len();
    let index_of = |f: &BinQuadForm| -> usize {
        forms.binary_search(f).expect("composition stays reduced")
    };
    let mut table = vec![vec![0usize; h]; h];
    for i in 0..h {
        for j in 0..h {
            table[i][j] = index_of(&forms[i].compose(&forms[j]).expect("same discriminant"));
        }
    }
    let identity = index_of(&BinQuadForm::principal(&d));
    let group = AbGroup::new(table, identity);
    let decomposition = group.decompose();
    ClassGroup {
        field: k.clone(),
        forms,
        group,
        decomposition,
    }
}

impl ClassGroup {
    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn discriminant(&self) -> &BigInt {
        self.field.discriminant()
    }

    /// Class number h(d).
    pub fn h(&self) -> u64 {
        self.forms.len() as u64
    }

    /// All reduced forms, sorted by (a, b, c); indices match the group.
    pub fn forms(&self) -> &[BinQuadForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &BinQuadForm {
        &self.forms[i]
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn identity_index(&self) -> usize {
        self.group.identity()
    }

    /// Index of the reduced form equal to the reduction of f, if f has the
    /// right discriminant.
    pub fn index_of(&self, f: &BinQuadForm) -> Option<usize> {
        if f.discriminant() != *self.discriminant() {
            return None;
        }
        self.forms.binary_search(&f.reduce()).ok()
    }

    /// Multiplicative orders of all classes, in form order.
    pub fn orders(&self) -> Vec<u64> {
        (0..self.forms.len())
            .map(|i| self.group.elt_order(i))
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    /// Canonical cyclic decomposition (largest order first, greedy).
    pub fn generators(&self) -> &[CyclicFactor] {
        &self.decomposition
    }
}
