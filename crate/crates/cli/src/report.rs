//! Machine-readable report tree and the human-readable rendering.
//!
//! The JSON schema is stable: key names below are the interchange contract.
//! Integers that can outgrow the 53-bit range safe in JSON consumers (class
//! numbers, group orders, form coefficients, rational primes) are decimal
//! strings; structurally small integers (degree, labels, exponent tuples,
//! vertex coordinates) stay native.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use ordsel_core::quadfield::prime_of_k;
use ordsel_core::selectivity::{SelectivityAnalysis, Status};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub status: String,
    pub detail: String,
    pub degree: u32,
    pub dimension: u32,
    pub shortcut: bool,
    pub class_group: ClassGroupReport,
    pub genus_group: GenusGroupReport,
    #[serde(rename = "L0_index")]
    pub l0_index: Option<String>,
    pub ratio: Option<String>,
    pub representatives: Vec<RepresentativeReport>,
    pub local_certificates: Vec<CertificateReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassGroupReport {
    pub h: String,
    pub orders: Vec<String>,
    pub generators: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusGroupReport {
    pub order: String,
    pub exponent: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentativeReport {
    pub tuple: TupleReport,
    pub admits: bool,
    /// Primes whose Frobenius classes compose to this representative: the
    /// witnesses of the generators used with nonzero exponent.
    pub witness_primes: Vec<(String, u8)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleReport {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateReport {
    pub prime: (String, u8),
    pub local_index: u32,
    pub splitting: Vec<(u32, u32)>,
    pub admissible_types: Vec<usize>,
    pub chamber_vertices: Vec<Vec<i64>>,
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::AbhnFail => "abhn_fail",
        Status::Inconclusive => "inconclusive",
    }
}

fn prime_key(p: &ordsel_core::quadfield::PrimeOfK) -> (String, u8) {
    (p.rational().to_string(), p.label())
}

pub fn build_report(a: &SelectivityAnalysis) -> Report {
    let c = a.genus.class_group();
    // `orders` is the cyclic decomposition, aligned with `generators`.
    let class_group = ClassGroupReport {
        h: c.h().to_string(),
        orders: c.generators().iter().map(|g| g.order.to_string()).collect(),
        generators: c
            .generators()
            .iter()
            .map(|g| {
                let f = c.form(g.generator);
                (f.a().to_string(), f.b().to_string(), f.c().to_string())
            })
            .collect(),
    };
    let genus_group = GenusGroupReport {
        order: a.genus.order().to_string(),
        exponent: a.genus.exponent().to_string(),
    };
    let representatives = a
        .representatives
        .iter()
        .map(|(rep, admits)| {
            let mut witness_primes = Vec::new();
            if let Some(scan) = &a.scan {
                for (layer, exps) in [
                    (scan.lambda(), rep.a()),
                    (scan.mu(), rep.b()),
                    (scan.nu(), rep.c()),
                ] {
                    for (gen, &e) in layer.iter().zip(exps) {
                        if e != 0 {
                            witness_primes.push(prime_key(&gen.witness));
                        }
                    }
                }
            }
            RepresentativeReport {
                tuple: TupleReport {
                    a: rep.a().to_vec(),
                    b: rep.b().to_vec(),
                    c: rep.c().to_vec(),
                },
                admits: *admits,
                witness_primes,
            }
        })
        .collect();
    let local_certificates = a
        .certificates
        .iter()
        .map(|cert| CertificateReport {
            prime: prime_key(&cert.prime),
            local_index: cert.local_index,
            splitting: cert.splitting.pairs().to_vec(),
            admissible_types: cert.admissible.clone(),
            chamber_vertices: cert.chamber.iter().map(|v| v.coords().to_vec()).collect(),
        })
        .collect();
    let n = a.algebra.degree();
    Report {
        status: status_name(a.status).to_string(),
        detail: a.detail.clone(),
        degree: n,
        dimension: n * n,
        shortcut: a.shortcut,
        class_group,
        genus_group,
        l0_index: a.l0_index.map(|l| l.to_string()),
        ratio: a.ratio().map(|(p, q)| format!("{p}/{q}")),
        representatives,
        local_certificates,
    }
}

/// Canonical serialization: pretty JSON with declaration-order keys and a
/// trailing newline. Byte-identical for equal reports.
pub fn serialize_report(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn fmt_prime(p: &ordsel_core::quadfield::PrimeOfK) -> String {
    format!("{}#{}", p.rational(), p.label())
}

/// "Z/4 x Z/2" from a cyclic decomposition; "trivial" for the empty one.
pub fn structure_string(factors: &[ordsel_core::abelian::CyclicFactor]) -> String {
    if factors.is_empty() {
        return "trivial".to_string();
    }
    factors
        .iter()
        .map(|g| format!("Z/{}", g.order))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Prime divisors of |d| by trial division; field discriminants here are
/// desk-scale labels, matching the squarefree check that admitted them.
fn ramified_rationals(d: &BigInt) -> Vec<BigInt> {
    let mut n = d.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n = &n / &p;
            }
        }
        p += 1;
    }
    if n > BigInt::from(1) {
        out.push(n);
    }
    out
}

pub fn render_text(a: &SelectivityAnalysis) -> String {
    let mut out = String::new();
    let c = a.genus.class_group();
    let k = c.field();
    let n = a.algebra.degree();
    let _ = writeln!(
        out,
        "Base field: K = Q(sqrt({})), discriminant {}",
        k.m(),
        k.discriminant()
    );
    let _ = writeln!(
        out,
        "Class group: order {}, structure {}",
        c.h(),
        structure_string(c.generators())
    );
    for g in c.generators() {
        let f = c.form(g.generator);
        let _ = writeln!(
            out,
            "  generator ({}, {}, {}) of order {}",
            f.a(),
            f.b(),
            f.c(),
            g.order
        );
    }
    let _ = writeln!(out, "Algebra: degree {n}, dimension {} over K", n * n);
    if a.algebra.ramified().is_empty() {
        let _ = writeln!(out, "  unramified (full matrix algebra)");
    }
    for (p, m) in a.algebra.ramified() {
        let _ = writeln!(
            out,
            "  ramified at {} with local index {m} (capacity {})",
            fmt_prime(p),
            a.algebra.capacity(*m)
        );
    }
    let _ = writeln!(out, "Local embedding criterion:");
    if a.abhn.rows.is_empty() {
        let _ = writeln!(out, "  no ramified primes: vacuously satisfied");
    }
    for row in &a.abhn.rows {
        let _ = writeln!(
            out,
            "  {}: splitting in L = {}, local index {} -> {}",
            fmt_prime(&row.prime),
            row.splitting,
            row.local_index,
            if row.ok { "ok" } else { "FAILS" }
        );
    }
    for cert in &a.certificates {
        if cert.admissible.is_empty() {
            continue;
        }
        let types: Vec<String> = cert.admissible.iter().map(|t| t.to_string()).collect();
        let chamber: Vec<String> = cert.chamber.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "  {}: admissible vertex types {{{}}}, chamber vertices {}",
            fmt_prime(&cert.prime),
            types.join(", "),
            chamber.join(" ")
        );
    }
    let _ = writeln!(
        out,
        "Genus group G_R: order {}, exponent {}",
        a.genus.order(),
        a.genus.exponent()
    );
    // Frobenius orders at the primes of K ramified over Q (when defined):
    // these classes are rigid landmarks of G_R, independent of the scan.
    for p in ramified_rationals(k.discriminant()) {
        let primes = prime_of_k(k, &p).expect("divisors of d are prime");
        for q in primes {
            if let Ok(idx) = a.genus.frobenius(&q) {
                let _ = writeln!(
                    out,
                    "  Frobenius of {} has order {} in G_R",
                    fmt_prime(&q),
                    a.genus.group().elt_order(idx)
                );
            }
        }
    }
    if let Some(scan) = &a.scan {
        let _ = writeln!(
            out,
            "Scan: {} primes of K processed up to bound {}; |H| = {}, |H-hat| = {}",
            scan.processed(),
            scan.bound(),
            scan.h().len(),
            scan.hhat().len()
        );
        for (name, layer) in [
            ("G_R/H", scan.lambda()),
            ("H/H-hat", scan.mu()),
            ("H-hat", scan.nu()),
        ] {
            for gen in layer {
                let _ = writeln!(
                    out,
                    "  {} generator of order {}, witness prime {}",
                    name,
                    gen.order,
                    fmt_prime(&gen.witness)
                );
            }
        }
    }
    if let Some(l0) = a.l0_index {
        let _ = writeln!(out, "[L_0 : K] = {l0}");
    }
    if let Some((p, q)) = a.ratio() {
        let _ = writeln!(out, "Admitting proportion: {p}/{q}");
    }
    if !a.representatives.is_empty() {
        let admitting = a.representatives.iter().filter(|(_, adm)| *adm).count();
        let _ = writeln!(
            out,
            "Representatives: {} classes, {} admitting",
            a.representatives.len(),
            admitting
        );
        for (rep, admits) in &a.representatives {
            let _ = writeln!(
                out,
                "  a={:?} b={:?} c={:?} -> {}",
                rep.a(),
                rep.b(),
                rep.c(),
                if *admits { "admits" } else { "does not admit" }
            );
        }
    }
    let _ = writeln!(out, "Status: {}", status_name(a.status));
    if !a.detail.is_empty() {
        let _ = writeln!(out, "  {}", a.detail);
    }
    out
}
