//! Global selectivity engine.
//!
//! The pipeline: validate the algebra's ramification data, check the local
//! embedding criterion at every ramified prime (`check_abhn`), form the
//! genus group G_R as a quotient of the class group (`genus`), scan primes
//! of K to pin down the Frobenius subgroups H and H-hat (`scan`),
//! parametrize the genus by exponent tuples with local vertex data
//! (`param`), and assemble the full report (`engine`).

mod engine;
mod genus;
mod param;
mod scan;

pub use engine::{
    analyze, EngineConfig, LocalCertificate, RamSelector, RamSpec, SelectivityAnalysis, Status,
};
pub use genus::{genus_group, GenusGroup};
pub use param::{
    admits_embedding, distance_idele, parametrize_genus, DistanceIdele, GenusRep,
};
pub use scan::{
    scan_class_field_index, scan_subgroups, GeneratorData, ScanParams, SubgroupData,
};

use crate::building::SplittingType;
use crate::quadfield::{
    splitting_in_l_seeded, PrimeOfK, QuadError, QuadField, TowerSpec,
};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelError {
    #[error(transparent)]
    Field(#[from] QuadError),
    #[error("algebra degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("local index {m} at {p} must be a divisor of {n} greater than 1")]
    BadLocalIndex { p: BigInt, m: u32, n: u32 },
    #[error("ramification list names the prime above {0} (label {1}) twice")]
    DuplicateRamification(BigInt, u8),
    #[error("no prime above {p} matches the requested selector")]
    SelectorMismatch { p: BigInt },
    #[error("extension degree {got} does not match the algebra degree {expected}")]
    ExtensionDegreeMismatch { expected: u32, got: u32 },
    #[error("no splitting data for the ramified prime above {0} (label {1}); supply an override")]
    MissingSplitting(BigInt, u8),
    #[error("Frobenius is undefined at the prime above {0} (label {1}): it is ramified in the algebra")]
    RamifiedInB(BigInt, u8),
    #[error("scan inconclusive at bound {bound}: {processed} primes processed, |H| = {h_order}, |H-hat| = {hhat_order}, stable run {stable_run}")]
    Inconclusive {
        bound: u64,
        processed: u64,
        h_order: usize,
        hhat_order: usize,
        stable_run: u64,
    },
    #[error("representatives come from different parametrizations")]
    MixedParametrization,
}

/// A central simple algebra over K of degree n, given by its finite
/// ramification data: the primes where the completion is not a full matrix
/// algebra, each with its local index m (so the completion is kappa x kappa
/// matrices over a division algebra of degree m, kappa = n / m).
#[derive(Debug, Clone)]
pub struct AlgebraData {
    n: u32,
    ramified: Vec<(PrimeOfK, u32)>,
}

impl AlgebraData {
    pub fn new(n: u32, ramified: Vec<(PrimeOfK, u32)>) -> Result<AlgebraData, SelError> {
        if n < 3 {
            return Err(SelError::DegreeTooSmall(n));
        }
        let mut seen = BTreeSet::new();
        for (p, m) in &ramified {
            if *m <= 1 || n % m != 0 {
                return Err(SelError::BadLocalIndex {
                    p: p.rational().clone(),
                    m: *m,
                    n,
                });
            }
            if !seen.insert((p.rational().clone(), p.label())) {
                return Err(SelError::DuplicateRamification(
                    p.rational().clone(),
                    p.label(),
                ));
            }
        }
        Ok(AlgebraData { n, ramified })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn ramified(&self) -> &[(PrimeOfK, u32)] {
        &self.ramified
    }

    /// Local capacity kappa = n / m at a ramified prime.
    pub fn capacity(&self, m: u32) -> u32 {
        self.n / m
    }

    pub fn is_ramified_at(&self, p: &PrimeOfK) -> bool {
        self.ramified
            .iter()
            .any(|(q, _)| q.rational() == p.rational() && q.label() == p.label())
    }

    /// True when some local index equals n: the completion there is a full
    /// division algebra, which rules selectivity out before any scan.
    pub fn has_division_prime(&self) -> bool {
        self.ramified.iter().any(|&(_, m)| m == self.n)
    }
}

/// Per-prime row of the local embedding check.
#[derive(Debug, Clone)]
pub struct AbhnRow {
    pub prime: PrimeOfK,
    pub local_index: u32,
    pub splitting: SplittingType,
    pub ok: bool,
}

/// Outcome of the local embedding criterion at every ramified prime.
#[derive(Debug, Clone)]
pub struct AbhnReport {
    pub rows: Vec<AbhnRow>,
    pub ok: bool,
}

/// L embeds in B iff at every ramified prime nu the local index m_nu
/// divides e*f for every prime of L above nu. Requires splitting data for
/// each ramified prime, keyed by (rational prime, label).
pub fn check_abhn(
    b: &AlgebraData,
    splittings: &BTreeMap<(BigInt, u8), SplittingType>,
) -> Result<AbhnReport, SelError> {
    let mut rows = Vec::new();
    for (p, m) in b.ramified() {
        let key = (p.rational().clone(), p.label());
        let st = splittings
            .get(&key)
            .ok_or_else(|| SelError::MissingSplitting(key.0.clone(), key.1))?;
        let ok = st.pairs().iter().all(|&(e, f)| (e * f) % m == 0);
        rows.push(AbhnRow {
            prime: p.clone(),
            local_index: *m,
            splitting: st.clone(),
            ok,
        });
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok(AbhnReport { rows, ok })
}

/// Where splitting data comes from: explicit per-prime overrides first, the
/// tower machinery otherwise. Primes in the tower's bad set without an
/// override have no data and are skipped by the scan.
#[derive(Debug, Clone)]
pub struct SplittingSource {
    tower: Option<TowerSpec>,
    overrides: BTreeMap<(BigInt, u8), SplittingType>,
}

impl SplittingSource {
    pub fn new(
        tower: Option<TowerSpec>,
        overrides: BTreeMap<(BigInt, u8), SplittingType>,
    ) -> SplittingSource {
        SplittingSource { tower, overrides }
    }

    pub fn tower(&self) -> Option<&TowerSpec> {
        self.tower.as_ref()
    }

    /// Primes the tower cannot answer for (divisors of 2d and of the tower
    /// discriminants); empty when no tower is configured, since overrides
    /// carry their own authority.
    pub fn bad_primes(&self, k: &QuadField) -> Result<BTreeSet<BigInt>, QuadError> {
        match &self.tower {
            Some(t) => t.bad_primes(k),
            None => Ok(BTreeSet::new()),
        }
    }

    /// Splitting of P in L, or None when no source covers P (bad prime
    /// without an override, or P ramified in L).
    pub fn splitting_for(
        &self,
        k: &QuadField,
        bad: &BTreeSet<BigInt>,
        p: &PrimeOfK,
        seed: u64,
    ) -> Option<SplittingType> {
        if let Some(st) = self.overrides.get(&(p.rational().clone(), p.label())) {
            return Some(st.clone());
        }
        let tower = self.tower.as_ref()?;
        if bad.contains(p.rational()) {
            return None;
        }
        match splitting_in_l_seeded(k, tower, p, seed) {
            Ok(st) => Some(st),
            Err(QuadError::RamifiedInL { .. }) => None,
            Err(e) => panic!("splitting failed off the bad set: {e}"),
        }
    }
}
