//! Command-line surface for the path rewrite engine and the witness tower.
//!
//! Inputs are inline s-expressions or files containing them; certificates
//! are JSON files. Exit codes: 0 success, 1 domain error (ill-formed input,
//! failed verification, inequivalent paths), 2 resource exhaustion.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pathtower::{
    bfs_rweq, chi_n, coherence3_interchange, coherence3_pentagon, coherence3_triangle,
    corpus_confluence, delta, gamma, parse_path, trace_to_json, witness2, AnyCell, BfsOutcome,
    CertError, Certificate, Derivation, DerivationError, GenConfig, Normalized, Path, Rewriter,
    TowerError, TrsError, WitnessKind, DEFAULT_FUEL,
};

#[derive(Parser)]
#[command(
    name = "pathtower",
    about = "Rewrite computational paths and build verifiable higher-cell witnesses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON artifact (trace, certificate, or report) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,

    /// Normalization fuel.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: usize,

    /// Enable the refl-congruence collapse rules (RC_NU, RC_MU, RC_XI).
    #[arg(long, global = true)]
    enable_rc: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a path, printing one line per rewrite step.
    Normalize { input: String },
    /// Decide whether two parallel paths are rewrite-equivalent.
    Equiv { left: String, right: String },
    /// Build and verify the canonical derivation between equivalent paths.
    Canonical { left: String, right: String },
    /// Emit a groupoid-law 2-cell (assoc|lunit|runit|linv|rinv|invinv).
    Witness { kind: String, args: Vec<String> },
    /// Contract two parallel cells: dim 3 takes cell2 certificates, dim n
    /// takes cell(n-1) certificates.
    Contract {
        dim: u32,
        left: PathBuf,
        right: PathBuf,
    },
    /// Emit a higher coherence 3-cell (pentagon|triangle|interchange).
    Coherence { kind: String, args: Vec<String> },
    /// Verify a certificate file.
    Verify { cert: PathBuf },
    /// Check the globular identities for a certificate file.
    Globular { cert: PathBuf },
    /// Generate a path corpus and check local confluence empirically.
    FuzzConfluence(FuzzArgs),
}

#[derive(Args)]
struct FuzzArgs {
    /// Corpus seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Maximum path depth.
    #[arg(long, default_value_t = 5)]
    depth: usize,
    /// Number of paths to generate.
    #[arg(long, default_value_t = 1000)]
    paths: usize,
    /// Bound for the breadth-first equivalence oracle cross-check.
    #[arg(long, default_value_t = 12)]
    bound: usize,
}

enum CliError {
    Domain(String),
    Resource(String),
}

impl From<TrsError> for CliError {
    fn from(e: TrsError) -> Self {
        match e {
            TrsError::FuelExhausted { .. } => CliError::Resource(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<DerivationError> for CliError {
    fn from(e: DerivationError) -> Self {
        match e {
            DerivationError::Trs(TrsError::FuelExhausted { .. }) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Trs(TrsError::FuelExhausted { .. })
            | TowerError::Derivation(DerivationError::Trs(TrsError::FuelExhausted { .. })) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<CertError> for CliError {
    fn from(e: CertError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Resolve an argument that is either a file of s-expression text or the
/// text itself.
fn read_input(arg: &str) -> Result<String, CliError> {
    let candidate = std::path::Path::new(arg);
    if candidate.is_file() {
        Ok(fs::read_to_string(candidate)?)
    } else {
        Ok(arg.to_string())
    }
}

fn read_path_arg(arg: &str) -> Result<Path, CliError> {
    let text = read_input(arg)?;
    let path = parse_path(text.trim()).map_err(|e| CliError::Domain(e.to_string()))?;
    path.validate()
        .map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(path)
}

fn read_cert(file: &PathBuf) -> Result<Certificate, CliError> {
    let text = fs::read_to_string(file)?;
    Ok(Certificate::from_json_str(&text)?)
}

fn write_json(target: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), CliError> {
    if let Some(file) = target {
        fs::write(
            file,
            serde_json::to_string_pretty(value).expect("serializable"),
        )?;
    }
    Ok(())
}

fn print_trace(norm: &Normalized) {
    for step in &norm.trace.steps {
        println!("{}  {}  {}", step.pos, step.rule, step.target);
    }
    println!("normal form: {}", norm.nf);
    println!("steps: {}", norm.trace.steps.len());
}

fn emit_cert(cert: &Certificate, rw: &Rewriter, json: &Option<PathBuf>) -> Result<(), CliError> {
    cert.verify(rw)?;
    write_json(json, &cert.to_json())?;
    println!("verified {} (dim {})", cert.kind(), cert.dim());
    Ok(())
}

fn expect_paths(args: &[String], want: usize) -> Result<Vec<Path>, CliError> {
    if args.len() != want {
        return Err(CliError::Domain(format!(
            "expected {want} path argument(s), got {}",
            args.len()
        )));
    }
    args.iter().map(|a| read_path_arg(a)).collect()
}

fn expect_cell2(file: &PathBuf, rw: &Rewriter) -> Result<Derivation, CliError> {
    let cert = read_cert(file)?;
    cert.verify(rw)?;
    match cert {
        Certificate::Cell2 { body, .. } => Ok(body),
        other => Err(CliError::Domain(format!(
            "expected a cell2 certificate, got {}",
            other.kind()
        ))),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut rw = Rewriter::new().with_fuel(cli.fuel);
    if cli.enable_rc {
        rw = rw.with_refl_congruence();
    }

    match &cli.command {
        Command::Normalize { input } => {
            let p = read_path_arg(input)?;
            let norm = rw.normalize(&p)?;
            print_trace(&norm);
            write_json(&cli.json, &trace_to_json(&norm.trace))?;
            Ok(())
        }
        Command::Equiv { left, right } => {
            let p = read_path_arg(left)?;
            let q = read_path_arg(right)?;
            if rw.rweq(&p, &q)? {
                println!("equivalent");
                Ok(())
            } else {
                println!("not equivalent");
                Err(CliError::Domain("paths are not equivalent".to_string()))
            }
        }
        Command::Canonical { left, right } => {
            let p = read_path_arg(left)?;
            let q = read_path_arg(right)?;
            match gamma(&rw, &p, &q) {
                Ok(d) => emit_cert(&Certificate::for_derivation(d), &rw, &cli.json),
                Err(DerivationError::NotEquivalent) => {
                    println!("not equivalent");
                    Err(CliError::Domain("paths are not equivalent".to_string()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Witness { kind, args } => {
            let kind = WitnessKind::from_name(kind)
                .ok_or_else(|| CliError::Domain(format!("unknown witness kind {kind:?}")))?;
            let paths = args
                .iter()
                .map(|a| read_path_arg(a))
                .collect::<Result<Vec<_>, _>>()?;
            let d = witness2(kind, &paths)?;
            emit_cert(&Certificate::for_derivation(d), &rw, &cli.json)
        }
        Command::Contract { dim, left, right } => {
            let lc = read_cert(left)?;
            let rc = read_cert(right)?;
            lc.verify(&rw)?;
            rc.verify(&rw)?;
            if *dim < 3 {
                return Err(CliError::Domain(
                    "contract dimension must be at least 3".to_string(),
                ));
            }
            if lc.dim() != dim - 1 || rc.dim() != dim - 1 {
                return Err(CliError::Domain(format!(
                    "contract at dimension {dim} needs two cell{} certificates",
                    dim - 1
                )));
            }
            match (*dim, lc, rc) {
                (3, Certificate::Cell2 { body: d1, .. }, Certificate::Cell2 { body: d2, .. }) => {
                    let cell = pathtower::chi3(&d1, &d2)?;
                    emit_cert(&Certificate::for_cell3(cell), &rw, &cli.json)
                }
                (n, lc, rc) => {
                    let to_any = |c: Certificate| match c {
                        Certificate::Cell2 { body, .. } => AnyCell::Two(body),
                        Certificate::Cell3 { body } => AnyCell::Three(body),
                        Certificate::CellN { body } => AnyCell::Higher(body),
                    };
                    let cell = chi_n(&rw, n, &to_any(lc), &to_any(rc))?;
                    emit_cert(&Certificate::for_celln(cell), &rw, &cli.json)
                }
            }
        }
        Command::Coherence { kind, args } => {
            let cell = match kind.as_str() {
                "pentagon" => {
                    let p = expect_paths(args, 4)?;
                    coherence3_pentagon(&rw, &p[0], &p[1], &p[2], &p[3])?
                }
                "triangle" => {
                    let p = expect_paths(args, 2)?;
                    coherence3_triangle(&rw, &p[0], &p[1])?
                }
                "interchange" => {
                    if args.len() != 2 {
                        return Err(CliError::Domain(
                            "interchange takes two cell2 certificate files".to_string(),
                        ));
                    }
                    let a = expect_cell2(&PathBuf::from(&args[0]), &rw)?;
                    let b = expect_cell2(&PathBuf::from(&args[1]), &rw)?;
                    coherence3_interchange(&rw, &a, &b)?
                }
                other => {
                    return Err(CliError::Domain(format!(
                        "unknown coherence kind {other:?}"
                    )))
                }
            };
            emit_cert(&Certificate::for_cell3(cell), &rw, &cli.json)
        }
        Command::Verify { cert } => {
            let cert = read_cert(cert)?;
            cert.verify(&rw)?;
            println!("verified {} (dim {})", cert.kind(), cert.dim());
            Ok(())
        }
        Command::Globular { cert } => {
            let cert = read_cert(cert)?;
            if cert.check_globular(&rw) {
                println!("globular: ok");
                Ok(())
            } else {
                println!("globular: violated");
                Err(CliError::Domain(
                    "globular identities violated".to_string(),
                ))
            }
        }
        Command::FuzzConfluence(fuzz) => {
            let cfg = GenConfig {
                seed: fuzz.seed,
                max_path_depth: fuzz.depth,
                ..GenConfig::default()
            };
            let report = corpus_confluence(&rw, &cfg, fuzz.paths);
            println!(
                "paths: {}  divergent pairs: {}  joinable: {}  failures: {}  max steps: {}",
                report.paths,
                report.divergent_pairs,
                report.joinable,
                report.failures.len(),
                report.max_normalize_steps
            );
            // spot-check the BFS oracle against the normal-form decision on
            // a slice of the corpus
            let mut gen = pathtower::PathGen::new(&cfg);
            for p in gen.corpus(fuzz.paths.min(32)) {
                let d = delta(&rw, &p)?;
                if rw.rweq(d.src(), d.tgt())? {
                    let outcome = bfs_rweq(&rw, d.src(), d.tgt(), fuzz.bound)?;
                    if !matches!(outcome, BfsOutcome::Connected { .. }) {
                        return Err(CliError::Domain(format!("oracle disagreement on {p}")));
                    }
                }
            }
            let failures: Vec<serde_json::Value> = report
                .failures
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "path": f.path.to_string(),
                        "left": f.left.to_string(),
                        "right": f.right.to_string(),
                    })
                })
                .collect();
            write_json(
                &cli.json,
                &serde_json::json!({
                    "corpus_seed": report.corpus_seed,
                    "paths": report.paths,
                    "divergent_pairs": report.divergent_pairs,
                    "joinable": report.joinable,
                    "failures": failures,
                    "fuel_exhausted": report.fuel_exhausted,
                    "max_normalize_steps": report.max_normalize_steps,
                }),
            )?;
            if report.failures.is_empty() && report.fuel_exhausted == 0 {
                Ok(())
            } else {
                Err(CliError::Domain(format!(
                    "{} non-joinable divergence(s)",
                    report.failures.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
