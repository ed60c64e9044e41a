//! Command-line driver.
//!
//! Exit codes are a function of the analysis status alone: 0 success,
//! 1 verification-suite failure, 2 usage or configuration error, 3 local
//! embedding failure, 4 inconclusive scan.

mod config;
mod report;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use config::{CliOverrides, ConfigFile};
use num_bigint::BigInt;
use ordsel_core::building::{
    admissible_types, chamber_vertices, enumerate_containing_vertices, SplittingType,
};
use ordsel_core::quadfield::{class_group, QuadField};
use ordsel_core::selectivity::{analyze, Status};
use ordsel_core::verify::run_suites;
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ordsel",
    version,
    about = "Selectivity of maximal orders in central simple algebras over imaginary quadratic fields"
)]
struct Cli {
    /// Write a machine-readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for the deterministic factorization kernel (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Scan bound: rational primes up to N are examined (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    bound: Option<u64>,
    /// Stability window: quiet primes required to stop (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    window: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Local embedding certificate for an unramified prime of given splitting.
    Local {
        /// Algebra degree n.
        #[arg(long)]
        n: u32,
        /// Residue degrees f_1,...,f_g of the primes above nu, summing to n.
        #[arg(long, value_delimiter = ',', required = true)]
        f: Vec<u32>,
    },
    /// Class group of Q(sqrt(m)) as reduced binary quadratic forms.
    Classgroup {
        /// Negative squarefree integer m.
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Full selectivity analysis from a configuration file.
    Selectivity {
        /// JSON configuration file.
        config: PathBuf,
    },
    /// Oracle-vs-theorem consistency suites at a configurable scale.
    Verify {
        /// Optional configuration file to schema-check before the suites.
        config: Option<PathBuf>,
        /// Largest algebra degree the exhaustive suites cover.
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        /// Negative control: corrupt one oracle answer to prove detection.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let overrides = CliOverrides {
        seed: cli.seed,
        bound: cli.bound,
        window: cli.window,
    };
    match cli.command {
        Command::Local { n, f } => cmd_local(n, &f, cli.json.as_deref()),
        Command::Classgroup { m } => cmd_classgroup(&m, cli.json.as_deref()),
        Command::Selectivity { config } => {
            cmd_selectivity(&config, overrides, cli.json.as_deref())
        }
        Command::Verify {
            config,
            n_max,
            inject_fault,
        } => cmd_verify(config.as_deref(), n_max, inject_fault, overrides, cli.json.as_deref()),
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

/// Writes to stdout, treating a closed pipe as an ordinary early exit
/// rather than an error: downstream consumers may stop reading at any time.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

#[derive(Serialize)]
struct LocalJson {
    degree: u32,
    composition: Vec<u32>,
    admissible_types: Vec<usize>,
    chamber_vertices: Vec<Vec<i64>>,
    containing_at_bound: Vec<Vec<i64>>,
}

fn cmd_local(n: u32, f: &[u32], json: Option<&Path>) -> Result<ExitCode> {
    if f.is_empty() || f.iter().any(|&fi| fi == 0) {
        bail!("composition must consist of positive residue degrees");
    }
    let sum: u32 = f.iter().sum();
    if sum != n {
        bail!("composition {:?} sums to {sum}, not to the degree {n}", f);
    }
    let pairs: Vec<(u32, u32)> = f.iter().map(|&fi| (1, fi)).collect();
    let st = SplittingType::new(&pairs)?;
    let types = admissible_types(&st)?;
    let chamber = chamber_vertices(&st)?;
    let contained = enumerate_containing_vertices(&st, n as i64)?;
    let mut out = String::new();
    let _ = writeln!(out, "Unramified local datum of degree {n}, splitting {st}");
    let shown: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "Admissible vertex types: {{{}}}", shown.join(", "));
    let shown: Vec<String> = chamber.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "Chamber vertices: {}", shown.join(" "));
    let _ = writeln!(
        out,
        "Containing vertices with coordinates in [0, {n}): {}",
        contained.len()
    );
    for v in &contained {
        let _ = writeln!(out, "  {v}  (type {})", v.vertex_type());
    }
    emit(&out)?;
    write_json(
        json,
        &LocalJson {
            degree: n,
            composition: f.to_vec(),
            admissible_types: types,
            chamber_vertices: chamber.iter().map(|v| v.coords().to_vec()).collect(),
            containing_at_bound: contained.iter().map(|v| v.coords().to_vec()).collect(),
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClassGroupJson {
    m: String,
    discriminant: String,
    h: String,
    orders: Vec<String>,
    forms: Vec<(String, String, String)>,
    form_orders: Vec<String>,
    generators: Vec<(String, String, String)>,
}

fn cmd_classgroup(m: &str, json: Option<&Path>) -> Result<ExitCode> {
    let m: BigInt = m
        .parse()
        .with_context(|| format!("{m:?} is not an integer"))?;
    let k = QuadField::new(m)?;
    let c = class_group(&k);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "K = Q(sqrt({})), discriminant {}",
        k.m(),
        k.discriminant()
    );
    let _ = writeln!(
        out,
        "Class group: order {}, structure {}",
        c.h(),
        report::structure_string(c.generators())
    );
    let _ = writeln!(out, "Reduced forms (a, b, c) with element orders:");
    for (i, form) in c.forms().iter().enumerate() {
        let _ = writeln!(
            out,
            "  ({}, {}, {})  order {}",
            form.a(),
            form.b(),
            form.c(),
            c.group().elt_order(i)
        );
    }
    let _ = writeln!(out, "Generators:");
    if c.generators().is_empty() {
        let _ = writeln!(out, "  trivial group");
    }
    for g in c.generators() {
        let form = c.form(g.generator);
        let _ = writeln!(
            out,
            "  ({}, {}, {})  of order {}",
            form.a(),
            form.b(),
            form.c(),
            g.order
        );
    }
    emit(&out)?;
    let triple =
        |f: &ordsel_core::quadfield::BinQuadForm| (f.a().to_string(), f.b().to_string(), f.c().to_string());
    write_json(
        json,
        &ClassGroupJson {
            m: k.m().to_string(),
            discriminant: k.discriminant().to_string(),
            h: c.h().to_string(),
            orders: c.generators().iter().map(|g| g.order.to_string()).collect(),
            forms: c.forms().iter().map(triple).collect(),
            form_orders: (0..c.forms().len())
                .map(|i| c.group().elt_order(i).to_string())
                .collect(),
            generators: c.generators().iter().map(|g| triple(c.form(g.generator))).collect(),
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selectivity(
    path: &Path,
    overrides: CliOverrides,
    json: Option<&Path>,
) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file = ConfigFile::parse(&text)
        .with_context(|| format!("invalid configuration {}", path.display()))?;
    let engine_config = file.resolve(overrides)?;
    let analysis = analyze(&engine_config)?;
    emit(&report::render_text(&analysis))?;
    let report = report::build_report(&analysis);
    if let Some(path) = json {
        std::fs::write(path, report::serialize_report(&report))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(match analysis.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::AbhnFail => ExitCode::from(3),
        Status::Inconclusive => ExitCode::from(4),
    })
}

#[derive(Serialize)]
struct SuiteJson {
    name: String,
    cases: u64,
    ok: bool,
    failures: Vec<String>,
}

fn cmd_verify(
    config: Option<&Path>,
    n_max: u32,
    inject_fault: bool,
    overrides: CliOverrides,
    json: Option<&Path>,
) -> Result<ExitCode> {
    let mut out = String::new();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let file = ConfigFile::parse(&text)
            .with_context(|| format!("invalid configuration {}", path.display()))?;
        file.resolve(overrides)?;
        let _ = writeln!(out, "Configuration {} resolves cleanly.", path.display());
    }
    let suites = run_suites(n_max, inject_fault);
    let mut all_ok = true;
    for suite in &suites {
        if suite.ok() {
            let _ = writeln!(out, "{}: {} cases, ok", suite.name, suite.cases);
        } else {
            all_ok = false;
            let _ = writeln!(
                out,
                "{}: {} cases, FAILED ({} counterexamples)",
                suite.name,
                suite.cases,
                suite.failures.len()
            );
            let _ = writeln!(out, "  first counterexample: {}", suite.failures[0]);
        }
    }
    emit(&out)?;
    write_json(
        json,
        &suites
            .iter()
            .map(|s| SuiteJson {
                name: s.name.clone(),
                cases: s.cases,
                ok: s.ok(),
                failures: s.failures.clone(),
            })
            .collect::<Vec<_>>(),
    )?;
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
