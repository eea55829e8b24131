//! Command-line front end: `analyze` writes a JSON report, `export` dumps
//! windows, complexes and matrices.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use tilecoh::complexes::SymmetrySpec;
use tilecoh::report::{analyze, prepare, AnalysisConfig, ComplexChoice, ProbeRequest};
use tilecoh::substitution::SubstitutionRule;
use tilecoh::{Error, Result};

#[derive(Parser)]
#[command(name = "tilecoh", version, about = "Exact cohomology of cubical substitution tilings")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write a JSON report.
    Analyze {
        #[command(flatten)]
        build: BuildArgs,
        /// Highest cohomological degree to compute.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Cup-product bilinear forms by eigenvalue.
        #[arg(long)]
        ring: bool,
        /// Chern-character integrality check (dimension 4 only).
        #[arg(long)]
        chern: bool,
        /// Divisibility probe of every eigenclass, as PRIME:DEPTH; repeatable.
        #[arg(long, value_parser = parse_probe)]
        probe: Vec<ProbeRequest>,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump windows, the complex or the chain-map matrices.
    Export {
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long, value_enum)]
        what: Exported,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Degree of the chain-map matrix (required for CSV matrices).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Rule JSON file, or builtin:NAME for a bundled fixture.
    rule: String,
    #[arg(long, value_enum, default_value_t = ComplexArg::Dual)]
    complex: ComplexArg,
    /// Treat the rule as border-forcing (needed for the uncollared AP complex).
    #[arg(long)]
    assume_border: bool,
    /// Symmetry to quotient by (JSON with "axes", "colors", "level").
    #[arg(long)]
    quotient: Option<PathBuf>,
    /// Second rule; the analysis runs on the product rule.
    #[arg(long)]
    product: Option<String>,
    /// Triangulate the cubical complex before a complex-level quotient.
    #[arg(long)]
    triangulate: bool,
    /// Offset of child cells inside inflated dual cells.
    #[arg(long, default_value_t = 0)]
    anchor: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexArg {
    Dual,
    ApUncollared,
}

#[derive(Clone, Copy, ValueEnum)]
enum Exported {
    Windows,
    Complex,
    Matrices,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_probe(s: &str) -> std::result::Result<ProbeRequest, String> {
    let (p, k) = s.split_once(':').ok_or("expected PRIME:DEPTH")?;
    let prime: BigInt = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
    let depth: u32 = k.parse().map_err(|_| format!("bad depth {k:?}"))?;
    Ok(ProbeRequest { prime, depth })
}

fn load_rule(spec: &str) -> Result<SubstitutionRule> {
    match spec.strip_prefix("builtin:") {
        Some(name) => tilecoh::fixtures::builtin(name),
        None => SubstitutionRule::from_file(Path::new(spec)),
    }
}

fn config_from(build: &BuildArgs) -> Result<(SubstitutionRule, AnalysisConfig)> {
    let mut rule = load_rule(&build.rule)?;
    if let Some(other) = &build.product {
        rule = SubstitutionRule::product(&rule, &load_rule(other)?)?;
    }
    let quotient = build.quotient.as_deref().map(SymmetrySpec::from_file).transpose()?;
    let config = AnalysisConfig {
        complex: match build.complex {
            ComplexArg::Dual => ComplexChoice::Dual,
            ComplexArg::ApUncollared => ComplexChoice::ApUncollared,
        },
        assume_border: build.assume_border,
        quotient,
        triangulate: build.triangulate,
        anchor: build.anchor,
        ..Default::default()
    };
    Ok((rule, config))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // a closed reader (e.g. `| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        // only fails if a pool exists already, in which case it is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Analyze { build, max_degree, ring, chern, probe, out } => {
            let (rule, mut config) = config_from(&build)?;
            config.max_degree = max_degree;
            config.ring = ring;
            config.chern = chern;
            config.probes = probe;
            let report = analyze(&rule, &config)?;
            write_out(out.as_deref(), &serde_json::to_string_pretty(&report)?)
        }
        Command::Export { build, what, format, degree, out } => {
            let (rule, config) = config_from(&build)?;
            let prepared = prepare(&rule, &config)?;
            let text = match (what, format) {
                (Exported::Windows, Format::Json) => prepared.language.dump_json(),
                (Exported::Complex, Format::Json) => serde_json::to_string_pretty(&prepared.complex.dump_json(Some(&prepared.map)))?,
                (Exported::Matrices, fmt) => {
                    let mats = &prepared.map.matrices;
                    match (degree, fmt) {
                        (Some(q), _) if q >= mats.len() => {
                            return Err(Error::Format(format!("degree {q} exceeds the dimension {}", mats.len() - 1)))
                        }
                        (Some(q), Format::Csv) => mats[q].to_csv()?,
                        (Some(q), Format::Json) => mats[q].to_json(),
                        (None, Format::Json) => {
                            let all = mats
                                .iter()
                                .map(|m| serde_json::from_str::<serde_json::Value>(&m.to_json()))
                                .collect::<std::result::Result<Vec<_>, _>>()?;
                            serde_json::to_string_pretty(&all)?
                        }
                        (None, Format::Csv) => return Err(Error::Format("CSV export needs --degree".into())),
                    }
                }
                (_, Format::Csv) => return Err(Error::Format("only matrices can be exported as CSV".into())),
            };
            write_out(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
