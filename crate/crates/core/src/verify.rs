//! Exhaustive consistency suites: the vertex-type theorem against the
//! brute-force order oracle, uniqueness at inert primes, the admissible-type
//! subgroup identity, class group axioms on reduced forms, and the
//! companion-matrix closure law. These run the same computations two ways
//! and compare, so a defect in either side surfaces as a counterexample.

use crate::building::{
    admissible_types, contains_ring_of_integers, enumerate_containing_vertices, HomothetyClass,
    SplittingType,
};
use crate::orders::{oracle_contains, unramified_generator, IntMatrix};
use crate::quadfield::{class_group, BinQuadForm, QuadField};
use num_bigint::{BigInt, BigUint};
use std::collections::BTreeSet;

/// Outcome of one suite: how many cases ran and every counterexample found.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All ordered tuples of positive integers summing to n (2^(n-1) of them).
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut v = Vec::with_capacity(rest.len() + 1);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Every canonical homothety class whose coordinates fit in [0, bound):
/// bound^n - (bound-1)^n classes.
pub fn canonical_classes(n: usize, bound: i64) -> Vec<HomothetyClass> {
    let b = bound as u64;
    let mut set = BTreeSet::new();
    for mut idx in 0..b.pow(n as u32) {
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push((idx % b) as i64);
            idx /= b;
        }
        set.insert(HomothetyClass::new(&coords).expect("n >= 1"));
    }
    set.into_iter().collect()
}

fn unramified(comp: &[u32]) -> SplittingType {
    let pairs: Vec<(u32, u32)> = comp.iter().map(|&f| (1, f)).collect();
    SplittingType::new(&pairs).expect("positive parts")
}

/// Criterion-style sweep: block-constancy test vs the valuation-pattern
/// oracle on every composition, class, and small prime. `inject_fault`
/// negates the oracle on the first case, as a negative control proving the
/// suite can fail.
fn suite_local_oracle(n_max: u32, inject_fault: bool) -> SuiteReport {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    let mut pending_fault = inject_fault;
    for n in 1..=n_max {
        for comp in compositions(n) {
            let s = unramified(&comp);
            for class in canonical_classes(n as usize, 3) {
                for p in [2u32, 3, 5] {
                    cases += 1;
                    let theorem = contains_ring_of_integers(&class, &s).expect("same degree");
                    let mut oracle =
                        oracle_contains(&class, &s, &BigUint::from(p)).expect("same degree");
                    if pending_fault {
                        oracle = !oracle;
                        pending_fault = false;
                    }
                    if theorem != oracle {
                        failures.push(format!(
                            "n={n} f={comp:?} class={class} p={p}: theorem says {theorem}, oracle says {oracle}"
                        ));
                    }
                }
            }
        }
    }
    SuiteReport {
        name: "local-oracle".to_string(),
        cases,
        failures,
    }
}

/// At an inert prime (single block), the origin is the only vertex whose
/// order contains the integers, at every enumeration bound.
fn suite_inert_uniqueness(n_max: u32) -> SuiteReport {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for n in 3..=n_max.max(3) {
        let s = unramified(&[n]);
        for bound in 1..=6i64 {
            cases += 1;
            let got = enumerate_containing_vertices(&s, bound).expect("unramified");
            if got.len() != 1 || got[0] != HomothetyClass::origin(n as usize) {
                failures.push(format!(
                    "n={n} bound={bound}: expected only the origin, got {} classes",
                    got.len()
                ));
            }
        }
    }
    SuiteReport {
        name: "inert-uniqueness".to_string(),
        cases,
        failures,
    }
}

/// admissible_types must equal both the subgroup of Z/n generated by
/// gcd(f_i) and the set of types realized by enumerated containing classes.
fn suite_admissible_types(n_max: u32) -> SuiteReport {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for n in 1..=n_max + 1 {
        for comp in compositions(n) {
            cases += 1;
            let s = unramified(&comp);
            let adm = admissible_types(&s).expect("unramified");
            let g = comp
                .iter()
                .fold(0usize, |acc, &f| num_integer::gcd(acc, f as usize));
            let subgroup: Vec<usize> = (0..n as usize / g).map(|k| k * g).collect();
            let realized: BTreeSet<usize> = enumerate_containing_vertices(&s, n as i64)
                .expect("unramified")
                .iter()
                .map(|c| c.vertex_type())
                .collect();
            let realized: Vec<usize> = realized.into_iter().collect();
            if adm != subgroup || adm != realized {
                failures.push(format!(
                    "f={comp:?}: admissible {adm:?}, subgroup {subgroup:?}, realized {realized:?}"
                ));
            }
        }
    }
    SuiteReport {
        name: "admissible-types".to_string(),
        cases,
        failures,
    }
}

/// Group axioms on reduced forms under composition, plus the known class
/// numbers, for the discriminants -4, -23, -56, -84, -104.
fn suite_class_group_laws() -> SuiteReport {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for (m, h) in [(-1i64, 1u64), (-23, 3), (-14, 4), (-21, 4), (-26, 6)] {
        let k = QuadField::new(BigInt::from(m)).expect("squarefree");
        let c = class_group(&k);
        cases += 1;
        if c.h() != h {
            failures.push(format!("m={m}: h = {}, expected {h}", c.h()));
            continue;
        }
        let forms = c.forms();
        let principal = BinQuadForm::principal(c.discriminant());
        let compose = |x: &BinQuadForm, y: &BinQuadForm| {
            x.compose(y).expect("forms of one discriminant")
        };
        for f1 in forms {
            cases += 2;
            if compose(f1, &principal) != *f1 {
                failures.push(format!("m={m}: {f1:?} * 1 != {f1:?}"));
            }
            if compose(f1, &f1.inverse()) != principal {
                failures.push(format!("m={m}: {f1:?} * inverse not principal"));
            }
            for f2 in forms {
                cases += 1;
                if c.index_of(&compose(f1, f2)).is_none() {
                    failures.push(format!("m={m}: {f1:?} * {f2:?} left the class set"));
                }
                for f3 in forms {
                    cases += 1;
                    let left = compose(&compose(f1, f2), f3);
                    let right = compose(f1, &compose(f2, f3));
                    if left != right {
                        failures.push(format!(
                            "m={m}: associativity fails on {f1:?}, {f2:?}, {f3:?}"
                        ));
                    }
                }
            }
        }
    }
    SuiteReport {
        name: "class-group-laws".to_string(),
        cases,
        failures,
    }
}

/// The unramified generator must satisfy its own minimal polynomial over Z:
/// c^f + a_{f-1} c^{f-1} + ... + a_0 = 0 with the lifted coefficients.
fn suite_multiplicative_closure(n_max: u32) -> SuiteReport {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for p in [2u32, 3, 5] {
        for f in 1..=n_max as usize {
            cases += 1;
            let (c, h) = unramified_generator(&BigUint::from(p), f);
            let mut power = IntMatrix::identity(f);
            let mut sum = IntMatrix::zero(f);
            for j in 0..f {
                let a_j = BigInt::from(
                    h.coeff(j).coords().first().cloned().unwrap_or_default(),
                );
                sum = sum.add(&power.scale(&a_j));
                power = power.mul(&c);
            }
            if !power.add(&sum).is_zero() {
                failures.push(format!(
                    "p={p} f={f}: companion matrix does not satisfy its polynomial"
                ));
            }
        }
    }
    SuiteReport {
        name: "multiplicative-closure".to_string(),
        cases,
        failures,
    }
}

/// Runs every suite at the given scale. `inject_fault` is a negative
/// control: it corrupts exactly one oracle comparison and must make the
/// local-oracle suite fail.
pub fn run_suites(n_max: u32, inject_fault: bool) -> Vec<SuiteReport> {
    vec![
        suite_local_oracle(n_max, inject_fault),
        suite_inert_uniqueness(n_max),
        suite_admissible_types(n_max),
        suite_class_group_laws(),
        suite_multiplicative_closure(n_max),
    ]
}
