//! Configuration file schema and its resolution into an engine config.
//!
//! Integers may be JSON numbers or decimal strings (strings are mandatory
//! past 53-bit precision, numbers are a convenience below it). `which`
//! selects primes above a rational prime: a label (1 or 2), or one of
//! "all", "ramified", "inert".

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use ordsel_core::building::SplittingType;
use ordsel_core::ffarith::DEFAULT_FACTOR_SEED;
use ordsel_core::quadfield::{prime_of_k, QuadField, SplitKind, TowerSpec};
use ordsel_core::selectivity::{EngineConfig, RamSelector, RamSpec, ScanParams};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::str::FromStr;

/// An integer that tolerates both JSON number and decimal-string forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Num(i64),
    Str(String),
}

impl IntValue {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntValue::Num(n) => Ok(BigInt::from(*n)),
            IntValue::Str(s) => {
                BigInt::from_str(s.trim()).with_context(|| format!("not an integer: {s:?}"))
            }
        }
    }
}

/// Prime selector: numeric label or one of the named forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum WhichValue {
    Label(u8),
    Name(String),
}

impl WhichValue {
    fn to_selector(&self) -> Result<RamSelector> {
        match self {
            WhichValue::Label(l @ (1 | 2)) => Ok(RamSelector::Label(*l)),
            WhichValue::Label(l) => bail!("prime label must be 1 or 2, got {l}"),
            WhichValue::Name(s) => match s.as_str() {
                "all" => Ok(RamSelector::All),
                "ramified" => Ok(RamSelector::Ramified),
                "inert" => Ok(RamSelector::Inert),
                other => bail!("unknown prime selector {other:?}"),
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub base_field: BaseFieldSection,
    pub algebra: AlgebraSection,
    pub extension: ExtensionSection,
    #[serde(default)]
    pub scan: ScanSection,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseFieldSection {
    pub m: IntValue,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    pub degree: u32,
    #[serde(default)]
    pub ramification: Vec<RamEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamEntry {
    pub rational_prime: IntValue,
    pub which: WhichValue,
    pub local_index: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSection {
    #[serde(default)]
    pub tower: Option<TowerSection>,
    #[serde(default)]
    pub splitting_override: Option<Vec<OverrideEntry>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSection {
    /// Coefficients of the first layer as (u, v) pairs meaning u + v*sqrt(m),
    /// constant term first, monic.
    pub level1: Vec<(IntValue, IntValue)>,
    /// Rational coefficients of the optional second layer, constant first.
    #[serde(default)]
    pub level2: Option<Vec<IntValue>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideEntry {
    pub rational_prime: IntValue,
    pub which: WhichValue,
    pub factors: Vec<(u32, u32)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    #[serde(default = "default_bound")]
    pub bound: u64,
    #[serde(default = "default_window")]
    pub window: u64,
}

impl Default for ScanSection {
    fn default() -> ScanSection {
        ScanSection {
            bound: default_bound(),
            window: default_window(),
        }
    }
}

fn default_bound() -> u64 {
    5000
}

fn default_window() -> u64 {
    50
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct CliOverrides {
    pub seed: Option<u64>,
    pub bound: Option<u64>,
    pub window: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile> {
        serde_json::from_str(text).context("config does not match the schema")
    }

    /// Validates and resolves the file into an engine configuration.
    pub fn resolve(&self, cli: CliOverrides) -> Result<EngineConfig> {
        let m = self.base_field.m.to_bigint()?;
        let k = QuadField::new(m.clone()).map_err(|e| anyhow!("base field: {e}"))?;

        let mut ramification = Vec::with_capacity(self.algebra.ramification.len());
        for entry in &self.algebra.ramification {
            ramification.push(RamSpec {
                rational: entry.rational_prime.to_bigint()?,
                selector: entry.which.to_selector()?,
                local_index: entry.local_index,
            });
        }

        let tower = match &self.extension.tower {
            Some(t) => {
                let level1: Vec<(BigInt, BigInt)> = t
                    .level1
                    .iter()
                    .map(|(u, v)| Ok((u.to_bigint()?, v.to_bigint()?)))
                    .collect::<Result<_>>()?;
                let level2: Option<Vec<BigInt>> = t
                    .level2
                    .as_ref()
                    .map(|cs| cs.iter().map(|c| c.to_bigint()).collect::<Result<_>>())
                    .transpose()?;
                Some(TowerSpec::new(level1, level2).map_err(|e| anyhow!("tower: {e}"))?)
            }
            None => None,
        };

        let mut overrides = BTreeMap::new();
        if let Some(entries) = &self.extension.splitting_override {
            for entry in entries {
                let p = entry.rational_prime.to_bigint()?;
                let st = SplittingType::new(&entry.factors)
                    .map_err(|e| anyhow!("override at {p}: {e}"))?;
                for label in resolve_labels(&k, &p, &entry.which)? {
                    if overrides.insert((p.clone(), label), st.clone()).is_some() {
                        bail!("override names the prime above {p} (label {label}) twice");
                    }
                }
            }
        }

        if tower.is_none() && overrides.is_empty() {
            bail!("extension must provide a tower, splitting overrides, or both");
        }

        Ok(EngineConfig {
            m,
            n: self.algebra.degree,
            ramification,
            tower,
            overrides,
            scan: ScanParams {
                bound: cli.bound.unwrap_or(self.scan.bound),
                window: cli.window.unwrap_or(self.scan.window),
                seed: cli.seed.or(self.seed).unwrap_or(DEFAULT_FACTOR_SEED),
            },
        })
    }
}

/// The labels above `p` that a selector names, validated against the actual
/// splitting of p in K.
fn resolve_labels(k: &QuadField, p: &BigInt, which: &WhichValue) -> Result<Vec<u8>> {
    let primes = prime_of_k(k, p).map_err(|e| anyhow!("prime {p}: {e}"))?;
    let selected: Vec<u8> = match which.to_selector()? {
        RamSelector::Label(l) => primes
            .iter()
            .filter(|q| q.label() == l)
            .map(|q| q.label())
            .collect(),
        RamSelector::All => primes.iter().map(|q| q.label()).collect(),
        RamSelector::Ramified => primes
            .iter()
            .filter(|q| q.kind() == SplitKind::Ramified)
            .map(|q| q.label())
            .collect(),
        RamSelector::Inert => primes
            .iter()
            .filter(|q| q.kind() == SplitKind::Inert)
            .map(|q| q.label())
            .collect(),
    };
    if selected.is_empty() {
        bail!("no prime above {p} matches the requested selector");
    }
    Ok(selected)
}
