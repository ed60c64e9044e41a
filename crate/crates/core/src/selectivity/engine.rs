//! End-to-end analysis: resolve a declarative configuration into an
//! algebra, run the local embedding check, the genus computation, the
//! Frobenius scan, and the parametrization, and collect everything a
//! report needs.
//!
//! Outcome policy: configuration problems (unknown selectors, degree
//! mismatches, missing splitting data) are hard errors; a failed local
//! embedding check and an inconclusive scan are *results*, reported through
//! `Status` so a caller can still print the partial data.

use super::genus::{genus_group, GenusGroup};
use super::param::{admits_embedding, parametrize_genus, GenusRep};
use super::scan::{scan_subgroups, ScanParams, SubgroupData};
use super::{check_abhn, AbhnReport, AlgebraData, SelError, SplittingSource};
use crate::building::{admissible_types, chamber_vertices, HomothetyClass, SplittingType};
use crate::quadfield::{class_group, prime_of_k, PrimeOfK, QuadField, SplitKind, TowerSpec};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Which primes above a rational prime a ramification entry names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RamSelector {
    /// The prime with this label (1, or 2 for the second split factor).
    Label(u8),
    /// Every prime above the rational prime.
    All,
    /// The prime ramified in K; errors if the rational prime is unramified.
    Ramified,
    /// The inert prime; errors if the rational prime is not inert.
    Inert,
}

/// One ramification entry: the algebra has local index `local_index` at the
/// selected primes above `rational`.
#[derive(Debug, Clone)]
pub struct RamSpec {
    pub rational: BigInt,
    pub selector: RamSelector,
    pub local_index: u32,
}

/// Declarative input for `analyze`.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Squarefree negative integer defining K = Q(sqrt(m)).
    pub m: BigInt,
    /// Algebra degree n.
    pub n: u32,
    pub ramification: Vec<RamSpec>,
    /// Defining data for L/K; optional when overrides carry everything.
    pub tower: Option<TowerSpec>,
    /// Per-prime splitting overrides, keyed by (rational prime, label).
    pub overrides: BTreeMap<(BigInt, u8), SplittingType>,
    pub scan: ScanParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Analysis completed; ratio and representatives are present.
    Ok,
    /// The local embedding criterion failed: L does not embed in B at all.
    AbhnFail,
    /// The scan exhausted its bound before stabilizing.
    Inconclusive,
}

/// Local data at one ramified prime: the splitting of the prime in L, the
/// vertex types whose maximal orders contain the integers of L, and the
/// distinguished chamber vertices. The two lists are empty when the prime
/// ramifies in L, where the unramified vertex calculus does not apply.
#[derive(Debug, Clone)]
pub struct LocalCertificate {
    pub prime: PrimeOfK,
    pub local_index: u32,
    pub splitting: SplittingType,
    pub admissible: Vec<usize>,
    pub chamber: Vec<HomothetyClass>,
}

/// Everything `analyze` learned. `l0_index`, `scan`, and `representatives`
/// are filled only when `status` permits: an embedding failure has no
/// selectivity question to answer, and an inconclusive scan has no certified
/// subgroups.
#[derive(Debug, Clone)]
pub struct SelectivityAnalysis {
    pub status: Status,
    /// Human-readable qualifier: the shortcut notice, the embedding
    /// failure, or the inconclusive scan state. Empty otherwise.
    pub detail: String,
    /// True when some local index equals n, which forces [L_0 : K] = 1.
    pub shortcut: bool,
    pub algebra: AlgebraData,
    pub abhn: AbhnReport,
    pub genus: GenusGroup,
    pub scan: Option<SubgroupData>,
    pub l0_index: Option<usize>,
    /// Genus representatives, paired with whether each admits the integers
    /// of L; empty unless the scan completed.
    pub representatives: Vec<(GenusRep, bool)>,
    pub certificates: Vec<LocalCertificate>,
}

impl SelectivityAnalysis {
    /// Proportion of the genus admitting an embedding, in lowest terms.
    pub fn ratio(&self) -> Option<(u64, u64)> {
        self.l0_index.map(|l| (1, l as u64))
    }
}

/// Resolves one ramification entry against the primes of K above its
/// rational prime.
fn resolve_spec(k: &QuadField, spec: &RamSpec) -> Result<Vec<(PrimeOfK, u32)>, SelError> {
    let primes = prime_of_k(k, &spec.rational)?;
    let selected: Vec<PrimeOfK> = match spec.selector {
        RamSelector::Label(l) => primes.into_iter().filter(|p| p.label() == l).collect(),
        RamSelector::All => primes,
        RamSelector::Ramified => primes
            .into_iter()
            .filter(|p| p.kind() == SplitKind::Ramified)
            .collect(),
        RamSelector::Inert => primes
            .into_iter()
            .filter(|p| p.kind() == SplitKind::Inert)
            .collect(),
    };
    if selected.is_empty() {
        return Err(SelError::SelectorMismatch {
            p: spec.rational.clone(),
        });
    }
    Ok(selected
        .into_iter()
        .map(|p| (p, spec.local_index))
        .collect())
}

pub fn analyze(cfg: &EngineConfig) -> Result<SelectivityAnalysis, SelError> {
    let k = QuadField::new(cfg.m.clone())?;
    let c = class_group(&k);

    let mut ramified = Vec::new();
    for spec in &cfg.ramification {
        ramified.extend(resolve_spec(&k, spec)?);
    }
    let b = AlgebraData::new(cfg.n, ramified)?;

    if let Some(t) = &cfg.tower {
        if t.degree() != cfg.n {
            return Err(SelError::ExtensionDegreeMismatch {
                expected: cfg.n,
                got: t.degree(),
            });
        }
    }
    for st in cfg.overrides.values() {
        if st.degree() as u32 != cfg.n {
            return Err(SelError::ExtensionDegreeMismatch {
                expected: cfg.n,
                got: st.degree() as u32,
            });
        }
    }

    let source = SplittingSource::new(cfg.tower.clone(), cfg.overrides.clone());
    let bad = source.bad_primes(&k)?;

    // Local embedding criterion at every ramified prime. Missing data is a
    // configuration error: these primes cannot be skipped.
    let mut ram_splittings = BTreeMap::new();
    for (p, _) in b.ramified() {
        let key = (p.rational().clone(), p.label());
        let st = source
            .splitting_for(&k, &bad, p, cfg.scan.seed)
            .ok_or_else(|| SelError::MissingSplitting(key.0.clone(), key.1))?;
        ram_splittings.insert(key, st);
    }
    let abhn = check_abhn(&b, &ram_splittings)?;

    let certificates = b
        .ramified()
        .iter()
        .map(|(p, m)| {
            let st = ram_splittings[&(p.rational().clone(), p.label())].clone();
            let (admissible, chamber) = if st.is_unramified() {
                (
                    admissible_types(&st).expect("unramified"),
                    chamber_vertices(&st).expect("unramified"),
                )
            } else {
                (Vec::new(), Vec::new())
            };
            LocalCertificate {
                prime: p.clone(),
                local_index: *m,
                splitting: st,
                admissible,
                chamber,
            }
        })
        .collect();

    let genus = genus_group(&b, &c);
    let shortcut = b.has_division_prime();

    if !abhn.ok {
        return Ok(SelectivityAnalysis {
            status: Status::AbhnFail,
            detail: "L does not embed in B".to_string(),
            shortcut,
            algebra: b,
            abhn,
            genus,
            scan: None,
            l0_index: None,
            representatives: Vec::new(),
            certificates,
        });
    }

    match scan_subgroups(&k, &source, &b, &genus, &cfg.scan) {
        Ok(data) => {
            if shortcut {
                assert_eq!(
                    data.l0_index(),
                    1,
                    "scan contradicts the division-prime shortcut; splitting data is inconsistent"
                );
            }
            let reps = parametrize_genus(&genus, &data);
            let representatives = reps
                .into_iter()
                .map(|r| {
                    let adm = admits_embedding(&data, &r);
                    (r, adm)
                })
                .collect();
            let l0 = data.l0_index();
            Ok(SelectivityAnalysis {
                status: Status::Ok,
                detail: if shortcut {
                    "no selectivity: division prime present".to_string()
                } else {
                    String::new()
                },
                shortcut,
                algebra: b,
                abhn,
                genus,
                scan: Some(data),
                l0_index: Some(l0),
                representatives,
                certificates,
            })
        }
        Err(SelError::Inconclusive {
            bound,
            processed,
            h_order,
            hhat_order,
            stable_run,
        }) => {
            if shortcut {
                // The division prime already decides the answer; report it
                // without witnesses rather than failing.
                return Ok(SelectivityAnalysis {
                    status: Status::Ok,
                    detail: "no selectivity: division prime present".to_string(),
                    shortcut,
                    algebra: b,
                    abhn,
                    genus,
                    scan: None,
                    l0_index: Some(1),
                    representatives: Vec::new(),
                    certificates,
                });
            }
            Ok(SelectivityAnalysis {
                status: Status::Inconclusive,
                detail: format!(
                    "scan inconclusive at bound {bound}: {processed} primes processed, \
                     |H| = {h_order}, |H-hat| = {hhat_order}, stable run {stable_run}"
                ),
                shortcut,
                algebra: b,
                abhn,
                genus,
                scan: None,
                l0_index: None,
                representatives: Vec::new(),
                certificates,
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn quartic_tower() -> TowerSpec {
        TowerSpec::new(
            vec![
                (BigInt::from(33), BigInt::from(44)),
                (BigInt::from(22), BigInt::from(4)),
                (BigInt::one(), BigInt::zero()),
            ],
            Some(vec![BigInt::from(5), BigInt::zero(), BigInt::one()]),
        )
        .unwrap()
    }

    fn cubic_radical_tower() -> TowerSpec {
        TowerSpec::new(
            vec![
                (BigInt::from(-2), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
                (BigInt::one(), BigInt::zero()),
            ],
            None,
        )
        .unwrap()
    }

    fn quartic_config() -> EngineConfig {
        EngineConfig {
            m: BigInt::from(-14),
            n: 4,
            ramification: vec![RamSpec {
                rational: BigInt::from(137),
                selector: RamSelector::All,
                local_index: 2,
            }],
            tower: Some(quartic_tower()),
            overrides: BTreeMap::new(),
            scan: ScanParams::default(),
        }
    }

    #[test]
    fn quartic_reference_analysis() {
        let a = analyze(&quartic_config()).unwrap();
        assert_eq!(a.status, Status::Ok);
        assert!(!a.shortcut);
        assert!(a.abhn.ok);
        assert_eq!(a.genus.order(), 4);
        assert_eq!(a.l0_index, Some(2));
        assert_eq!(a.ratio(), Some((1, 2)));
        assert_eq!(a.representatives.len(), 4);
        let admitting = a.representatives.iter().filter(|(_, adm)| *adm).count();
        assert_eq!(admitting, 2);

        // Certificates at both primes above 137: inertia degree 2 twice,
        // admissible types {0, 2}, chamber vertices origin and [1,1,0,0].
        assert_eq!(a.certificates.len(), 2);
        for cert in &a.certificates {
            assert_eq!(cert.prime.rational(), &BigInt::from(137));
            assert_eq!(cert.local_index, 2);
            assert_eq!(cert.splitting.pairs(), &[(1, 2), (1, 2)]);
            assert_eq!(cert.admissible, vec![0, 2]);
            assert_eq!(cert.chamber.len(), 2);
            assert_eq!(cert.chamber[0].coords(), &[0, 0, 0, 0]);
            assert_eq!(cert.chamber[1].coords(), &[1, 1, 0, 0]);
        }
    }

    #[test]
    fn division_prime_shortcut_agrees_with_the_scan() {
        let cfg = EngineConfig {
            m: BigInt::from(-23),
            n: 3,
            ramification: vec![RamSpec {
                rational: BigInt::from(7),
                selector: RamSelector::Inert,
                local_index: 3,
            }],
            tower: Some(cubic_radical_tower()),
            overrides: BTreeMap::new(),
            scan: ScanParams::default(),
        };
        let a = analyze(&cfg).unwrap();
        assert_eq!(a.status, Status::Ok);
        assert!(a.shortcut);
        assert_eq!(a.detail, "no selectivity: division prime present");
        assert_eq!(a.l0_index, Some(1));
        // The scan completed independently and agrees.
        assert!(a.scan.is_some());
        assert_eq!(a.scan.as_ref().unwrap().l0_index(), 1);
        assert!(a.representatives.iter().all(|(_, adm)| *adm));
        assert_eq!(a.representatives.len(), 3);
    }

    #[test]
    fn embedding_failure_is_a_result_not_an_error() {
        // The inert prime 11 splits completely in L, so e*f = 1 at every
        // factor and the local index 2 cannot divide it.
        let cfg = EngineConfig {
            m: BigInt::from(-14),
            n: 4,
            ramification: vec![RamSpec {
                rational: BigInt::from(11),
                selector: RamSelector::Inert,
                local_index: 2,
            }],
            tower: Some(quartic_tower()),
            overrides: BTreeMap::new(),
            scan: ScanParams::default(),
        };
        let a = analyze(&cfg).unwrap();
        assert_eq!(a.status, Status::AbhnFail);
        assert_eq!(a.detail, "L does not embed in B");
        assert!(!a.abhn.ok);
        assert_eq!(a.l0_index, None);
        assert!(a.representatives.is_empty());
        assert!(a.scan.is_none());
        // The certificate still shows the offending splitting.
        assert_eq!(a.certificates.len(), 1);
        assert_eq!(a.certificates[0].splitting.pairs(), &[(1, 1); 4]);
    }

    #[test]
    fn configuration_errors_are_hard_errors() {
        // Label 2 of an inert prime does not exist.
        let mut cfg = quartic_config();
        cfg.ramification = vec![RamSpec {
            rational: BigInt::from(11),
            selector: RamSelector::Label(2),
            local_index: 2,
        }];
        assert!(matches!(
            analyze(&cfg).unwrap_err(),
            SelError::SelectorMismatch { .. }
        ));

        // The ramified selector on a split prime selects nothing.
        let mut cfg = quartic_config();
        cfg.ramification = vec![RamSpec {
            rational: BigInt::from(3),
            selector: RamSelector::Ramified,
            local_index: 2,
        }];
        assert!(matches!(
            analyze(&cfg).unwrap_err(),
            SelError::SelectorMismatch { .. }
        ));

        // Tower degree disagrees with the algebra degree.
        let mut cfg = quartic_config();
        cfg.n = 3;
        cfg.ramification = Vec::new();
        assert!(matches!(
            analyze(&cfg).unwrap_err(),
            SelError::ExtensionDegreeMismatch {
                expected: 3,
                got: 4
            }
        ));

        // An override of the wrong degree is rejected before any scan.
        let mut cfg = quartic_config();
        cfg.overrides.insert(
            (BigInt::from(3), 1),
            SplittingType::new(&[(1, 3)]).unwrap(),
        );
        assert!(matches!(
            analyze(&cfg).unwrap_err(),
            SelError::ExtensionDegreeMismatch {
                expected: 4,
                got: 3
            }
        ));

        // Ramification at a bad prime without an override has no splitting
        // data to check the local criterion against.
        let mut cfg = quartic_config();
        cfg.ramification = vec![RamSpec {
            rational: BigInt::from(5),
            selector: RamSelector::All,
            local_index: 2,
        }];
        assert!(matches!(
            analyze(&cfg).unwrap_err(),
            SelError::MissingSplitting(..)
        ));
    }

    #[test]
    fn small_bound_reports_inconclusive() {
        let mut cfg = quartic_config();
        cfg.scan.bound = 30;
        let a = analyze(&cfg).unwrap();
        assert_eq!(a.status, Status::Inconclusive);
        assert_eq!(a.l0_index, None);
        assert!(a.representatives.is_empty());
        assert!(a.detail.contains("bound 30"));
    }
}
