//! Frobenius scan: determine H (classes of primes with a degree-one factor
//! in L) and H-hat (classes of primes splitting completely in L) inside
//! G_R, with witness primes for every cyclic generator.
//!
//! Both subgroups are unions of Frobenius classes, so each new prime either
//! contributes fresh information or confirms the state so far. The scan
//! stops once a configurable run of consecutive rational primes contributes
//! nothing new — no subgroup growth and no first occurrence of a Frobenius
//! class in any witness table — and every generator has a witness. Resetting
//! on witness novelty, not just on subgroup growth, matters: a class can
//! surface long before its first degree-one prime does, and that first
//! sighting is evidence the subgroups may still be moving. Equidistribution
//! guarantees termination eventually but gives no usable bound, so
//! exhausting the bound yields an explicit inconclusive error carrying the
//! partial state rather than a guessed index.

use super::genus::GenusGroup;
use super::{AlgebraData, SelError, SplittingSource};
use crate::ffarith::{primes_up_to, DEFAULT_FACTOR_SEED};
use crate::quadfield::{prime_of_k, PrimeOfK, QuadField};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanParams {
    /// Rational primes up to this bound are examined.
    pub bound: u64,
    /// Consecutive rational primes contributing no new information (no
    /// subgroup growth, no new witness-table entry) required to stop.
    pub window: u64,
    /// Factorization seed threaded through the tower machinery.
    pub seed: u64,
}

impl Default for ScanParams {
    fn default() -> ScanParams {
        ScanParams {
            bound: 5000,
            window: 50,
            seed: DEFAULT_FACTOR_SEED,
        }
    }
}

/// One cyclic generator of a layer of the filtration, realized by an
/// actual prime: `element` is the Frobenius image in G_R of `witness`, and
/// `order` is the generator's order in the layer's quotient (G_R/H for the
/// lambda layer, H/H-hat for mu, H-hat itself for nu).
#[derive(Debug, Clone)]
pub struct GeneratorData {
    pub element: usize,
    pub order: u64,
    pub witness: PrimeOfK,
}

/// Completed scan: the subgroups as element sets of G_R, cyclic generator
/// data for the three filtration layers, and the scan extent.
#[derive(Debug, Clone)]
pub struct SubgroupData {
    h: BTreeSet<usize>,
    hhat: BTreeSet<usize>,
    lambda: Vec<GeneratorData>,
    mu: Vec<GeneratorData>,
    nu: Vec<GeneratorData>,
    l0_index: usize,
    bound: u64,
    processed: u64,
}

impl SubgroupData {
    pub fn h(&self) -> &BTreeSet<usize> {
        &self.h
    }

    pub fn hhat(&self) -> &BTreeSet<usize> {
        &self.hhat
    }

    /// Generators of G_R/H: the layer whose exponents decide embedding.
    pub fn lambda(&self) -> &[GeneratorData] {
        &self.lambda
    }

    /// Generators of H/H-hat.
    pub fn mu(&self) -> &[GeneratorData] {
        &self.mu
    }

    /// Generators of H-hat.
    pub fn nu(&self) -> &[GeneratorData] {
        &self.nu
    }

    /// [G_R : H] = [L_0 : K], the selectivity denominator.
    pub fn l0_index(&self) -> usize {
        self.l0_index
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn processed(&self) -> u64 {
        self.processed
    }
}

/// Witness bookkeeping: least usable prime per Frobenius class, per class
/// seen at all, seen with a degree-one factor, and seen completely split.
#[derive(Debug, Default)]
struct WitnessTables {
    any: BTreeMap<usize, PrimeOfK>,
    degree_one: BTreeMap<usize, PrimeOfK>,
    split: BTreeMap<usize, PrimeOfK>,
}

/// Scans primes of K up to the rational bound, feeding every usable prime
/// (not ramified in B, covered by the splitting source, unramified in L)
/// into the subgroup accumulators. Stops once `window` consecutive rational
/// primes have contributed nothing new — neither subgroup growth nor a
/// first witness-table occurrence — and a witness exists for every cyclic
/// generator of G_R/H, H/H-hat, and H-hat.
pub fn scan_subgroups(
    k: &QuadField,
    source: &SplittingSource,
    b: &AlgebraData,
    g: &GenusGroup,
    params: &ScanParams,
) -> Result<SubgroupData, SelError> {
    let bad = source.bad_primes(k)?;
    let group = g.group();
    let mut tables = WitnessTables::default();
    let mut h_gens: Vec<usize> = Vec::new();
    let mut hhat_gens: Vec<usize> = Vec::new();
    let mut h = group.subgroup(&h_gens);
    let mut hhat = group.subgroup(&hhat_gens);
    let mut stable: u64 = 0;
    let mut processed: u64 = 0;

    for p in primes_up_to(params.bound) {
        let pb = BigInt::from(p);
        let mut novelty = false;
        for prime in prime_of_k(k, &pb)? {
            if b.is_ramified_at(&prime) {
                continue;
            }
            let st = match source.splitting_for(k, &bad, &prime, params.seed) {
                Some(st) => st,
                None => continue,
            };
            if !st.is_unramified() {
                continue;
            }
            let fr = g.frobenius(&prime).expect("not ramified in B");
            processed += 1;
            if !tables.any.contains_key(&fr) {
                tables.any.insert(fr, prime.clone());
                novelty = true;
            }
            if st.has_degree_one_factor() {
                if !tables.degree_one.contains_key(&fr) {
                    tables.degree_one.insert(fr, prime.clone());
                    novelty = true;
                }
                if !h.contains(&fr) {
                    h_gens.push(fr);
                    h = group.subgroup(&h_gens);
                    novelty = true;
                }
            }
            if st.is_completely_split() {
                if !tables.split.contains_key(&fr) {
                    tables.split.insert(fr, prime.clone());
                    novelty = true;
                }
                if !hhat.contains(&fr) {
                    hhat_gens.push(fr);
                    hhat = group.subgroup(&hhat_gens);
                    novelty = true;
                }
            }
        }
        stable = if novelty { 0 } else { stable + 1 };
        if stable >= params.window {
            if let Some(data) = assemble(g, &h, &hhat, &tables, params.bound, processed) {
                return Ok(data);
            }
        }
    }
    Err(SelError::Inconclusive {
        bound: params.bound,
        processed,
        h_order: h.len(),
        hhat_order: hhat.len(),
        stable_run: stable,
    })
}

/// Tries to turn the accumulated state into a complete answer: decompose
/// the three layers and find the least witness prime whose Frobenius coset
/// generates each cyclic factor. None if any witness is still missing.
fn assemble(
    g: &GenusGroup,
    h: &BTreeSet<usize>,
    hhat: &BTreeSet<usize>,
    tables: &WitnessTables,
    bound: u64,
    processed: u64,
) -> Option<SubgroupData> {
    let group = g.group();

    // Lambda layer: G_R/H.
    let q1 = group.quotient(h);
    let mut lambda = Vec::new();
    for factor in q1.group.decompose() {
        let target = q1.group.subgroup(&[factor.generator]);
        let (element, witness) = least_witness(&tables.any, |&e| {
            q1.group.subgroup(&[q1.project[e]]) == target
        })?;
        lambda.push(GeneratorData {
            element,
            order: factor.order,
            witness,
        });
    }

    // Mu layer: H/H-hat, inside H presented as its own group.
    let (h_group, h_elems) = group.subgroup_as_group(h);
    let hhat_local: BTreeSet<usize> = hhat
        .iter()
        .map(|x| h_elems.binary_search(x).expect("H-hat inside H"))
        .collect();
    let q2 = h_group.quotient(&hhat_local);
    let mut mu = Vec::new();
    for factor in q2.group.decompose() {
        let target = q2.group.subgroup(&[factor.generator]);
        let (element, witness) = least_witness(&tables.degree_one, |&e| {
            let local = h_elems.binary_search(&e).expect("degree-one classes lie in H");
            q2.group.subgroup(&[q2.project[local]]) == target
        })?;
        mu.push(GeneratorData {
            element,
            order: factor.order,
            witness,
        });
    }

    // Nu layer: H-hat itself.
    let (hh_group, hh_elems) = group.subgroup_as_group(hhat);
    let mut nu = Vec::new();
    for factor in hh_group.decompose() {
        let target = hh_group.subgroup(&[factor.generator]);
        let (element, witness) = least_witness(&tables.split, |&e| {
            let local = hh_elems.binary_search(&e).expect("split classes lie in H-hat");
            hh_group.subgroup(&[local]) == target
        })?;
        nu.push(GeneratorData {
            element,
            order: factor.order,
            witness,
        });
    }

    Some(SubgroupData {
        h: h.clone(),
        hhat: hhat.clone(),
        lambda,
        mu,
        nu,
        l0_index: q1.group.order(),
        bound,
        processed,
    })
}

/// Least witness (by rational prime, then label) among the table entries
/// whose Frobenius class satisfies the predicate.
fn least_witness(
    table: &BTreeMap<usize, PrimeOfK>,
    pred: impl Fn(&usize) -> bool,
) -> Option<(usize, PrimeOfK)> {
    table
        .iter()
        .filter(|(e, _)| pred(e))
        .min_by_key(|(_, p)| (p.rational().clone(), p.label()))
        .map(|(e, p)| (*e, p.clone()))
}

/// Chevalley cross-check: the degree [K-tilde intersect L : K] computed
/// directly in the class group, where K-tilde is the exponent-n class
/// field. Scans degree-one primes, accumulates the subgroup of C_K their
/// classes generate together with all n-th powers, and returns its index.
/// Must equal the unramified algebra's [L_0 : K] on every configuration.
/// The stopping rule mirrors `scan_subgroups`: the stability window resets
/// whenever a rational prime first exhibits a class at all, with a
/// degree-one factor, or completely split — not only on span growth.
pub fn scan_class_field_index(
    k: &QuadField,
    source: &SplittingSource,
    n: u32,
    params: &ScanParams,
) -> Result<usize, SelError> {
    let c = crate::quadfield::class_group(k);
    let group = c.group();
    let bad = source.bad_primes(k)?;
    let mut gens: Vec<usize> = (0..group.order()).map(|x| group.pow(x, n as u64)).collect();
    let mut span = group.subgroup(&gens);
    let mut seen_any: BTreeSet<usize> = BTreeSet::new();
    let mut seen_degree_one: BTreeSet<usize> = BTreeSet::new();
    let mut seen_split: BTreeSet<usize> = BTreeSet::new();
    let mut stable: u64 = 0;
    let mut processed: u64 = 0;
    for p in primes_up_to(params.bound) {
        let pb = BigInt::from(p);
        let mut novelty = false;
        for prime in prime_of_k(k, &pb)? {
            let st = match source.splitting_for(k, &bad, &prime, params.seed) {
                Some(st) => st,
                None => continue,
            };
            if !st.is_unramified() {
                continue;
            }
            let idx = c
                .index_of(prime.class())
                .expect("classes of primes are reduced forms");
            processed += 1;
            novelty |= seen_any.insert(idx);
            if st.has_degree_one_factor() {
                novelty |= seen_degree_one.insert(idx);
                if !span.contains(&idx) {
                    gens.push(idx);
                    span = group.subgroup(&gens);
                    novelty = true;
                }
            }
            if st.is_completely_split() {
                novelty |= seen_split.insert(idx);
            }
        }
        stable = if novelty { 0 } else { stable + 1 };
        if stable >= params.window {
            return Ok(group.order() / span.len());
        }
    }
    Err(SelError::Inconclusive {
        bound: params.bound,
        processed,
        h_order: span.len(),
        hhat_order: 0,
        stable_run: stable,
    })
}
