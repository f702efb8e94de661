use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fiberscale_core::catalog::{build_chain, list_catalog, ExpectedVerdict};
use fiberscale_core::certfile::CertificateFile;
use fiberscale_core::criterion::{classify_chain, decompose, verify_coords, Budget, VerdictKind};
use fiberscale_core::report::{all_consistent, run_suite, to_json, to_markdown};
use fiberscale_core::tolerances::Tolerances;
use fiberscale_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Environment variable overriding the default number of search restarts.
const BUDGET_ENV: &str = "FIBERSCALE_BUDGET";

#[derive(Parser)]
#[command(name = "fiberscale", version, about = "Decide and certify the fiber-scaling curvature criterion on chains h ⊂ k ⊂ g")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of named chains.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Classify one chain; writes a certificate when a counterexample is found.
    Analyze {
        id: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Acceptance threshold for the commutator residual.
        #[arg(long)]
        tol: Option<f64>,
        /// Where to write the certificate file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file against a freshly built chain.
    Verify { path: PathBuf },
    /// Run a suite of chains and tabulate verdicts.
    Report {
        #[arg(long, value_enum, default_value_t = Suite::Paper)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
        format: ReportFormat,
        /// Override an expected tag, e.g. `--expect L4.1-1=HOLDS_PROVED`.
        #[arg(long = "expect", value_parser = parse_expect)]
        expect: Vec<(String, ExpectedVerdict)>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Search restarts (default from FIBERSCALE_BUDGET, else 200).
    #[arg(long)]
    budget: Option<usize>,
    /// Iterations per restart.
    #[arg(long, default_value_t = 2000)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for search restarts (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

fn parse_expect(s: &str) -> Result<(String, ExpectedVerdict), String> {
    let (id, tag) = s.split_once('=').ok_or("expected ID=TAG")?;
    let tag = tag.parse::<ExpectedVerdict>().map_err(|e| e.to_string())?;
    Ok((id.to_string(), tag))
}

impl SearchArgs {
    fn budget(&self) -> Result<Budget, String> {
        let restarts = match self.budget {
            Some(n) => n,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| format!("{BUDGET_ENV} must be an integer, got `{v}`"))?,
                Err(_) => Budget::default().restarts,
            },
        };
        Ok(Budget {
            restarts,
            iterations: self.iterations,
        })
    }

    fn init_threads(&self) {
        if let Some(k) = self.threads {
            // Fails only if a pool already exists, which cannot happen here.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(match cli.command {
        Command::Catalog { action: CatalogAction::List { format } } => catalog_list(format),
        Command::Analyze { id, search, tol, out } => analyze(&id, &search, tol, out),
        Command::Verify { path } => verify(&path),
        Command::Report { suite: Suite::Paper, out, format, expect, search } => report(out, format, &expect, &search),
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn catalog_list(format: ListFormat) -> u8 {
    let entries = list_catalog();
    let mut text = String::new();
    match format {
        ListFormat::Json => {
            text = serde_json::to_string_pretty(&entries).expect("plain data");
            text.push('\n');
        }
        ListFormat::Table => {
            text.push_str(&format!("{:<18} {:<18} {:<9} reference\n", "id", "expected", "status"));
            for e in entries {
                let status = if e.reserved { "reserved" } else { "built" };
                text.push_str(&format!("{:<18} {:<18} {:<9} {}\n", e.id, e.expected.as_str(), status, e.reference));
            }
        }
    }
    emit(&text);
    EXIT_OK
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::UnknownChain(_) | Error::ReservedChain(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn analyze(id: &str, search: &SearchArgs, tol: Option<f64>, out: Option<PathBuf>) -> u8 {
    let budget = match search.budget() {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    search.init_threads();
    let chain = match build_chain(id) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let verdict = match classify_chain(&chain, budget, search.seed) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    println!("chain:    {id}");
    println!("verdict:  {}", verdict.tag());
    println!("taxonomy: {}", verdict.taxonomy);
    for n in &verdict.notes {
        println!("note:     {n}");
    }
    match &verdict.kind {
        VerdictKind::CounterexampleFound(cert) => {
            let dec = match decompose(&chain) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            };
            let mut cert = (**cert).clone();
            if let Some(t) = tol {
                let tols = Tolerances { tau_accept: t, ..cert.tolerances };
                match verify_coords(&dec, &cert.x, &cert.y, tols) {
                    Ok(c) => cert = c.with_provenance(cert.origin, cert.seed),
                    Err(r) => {
                        eprintln!("certificate rejected at --tol {t}: {r}");
                        return EXIT_REJECTED;
                    }
                }
            }
            println!("origin:   {}", cert.origin);
            println!("residual: {:.3e}", cert.residual);
            println!("m-bracket: {:.6}", cert.m_bracket_norm);
            if let Some(path) = out {
                let file = CertificateFile::from_certificate(&cert, &dec);
                if let Err(e) = fs::write(&path, file.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
                println!("wrote:    {}", path.display());
            }
            EXIT_OK
        }
        VerdictKind::NoCounterexampleFound { estimate, restarts_run, best_objective, .. } => {
            if estimate.divergent {
                println!("C estimate: divergent (capped at {:.1e})", estimate.value);
            } else {
                println!("C estimate: {:.6}", estimate.value);
            }
            println!("restarts: {restarts_run}, best penalized objective {best_objective:.3e}");
            EXIT_INCONCLUSIVE
        }
        _ => EXIT_OK,
    }
}

fn verify(path: &PathBuf) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let file = match CertificateFile::parse(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match file.verify() {
        Ok(c) => {
            println!(
                "accepted: {} residual {:.3e}, m-bracket {:.6}",
                c.chain_id, c.residual, c.m_bracket_norm
            );
            EXIT_OK
        }
        Err(e) => {
            println!("rejected: {e}");
            EXIT_REJECTED
        }
    }
}

fn report(out: Option<PathBuf>, format: ReportFormat, expect: &[(String, ExpectedVerdict)], search: &SearchArgs) -> u8 {
    let budget = match search.budget() {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    search.init_threads();
    let rows = run_suite(budget, search.seed, expect);
    let text = match format {
        ReportFormat::Md => to_markdown(&rows),
        ReportFormat::Json => to_json(&rows),
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => emit(&text),
    }
    let bad: Vec<&str> = rows.iter().filter(|r| !r.consistent).map(|r| r.chain_id.as_str()).collect();
    if all_consistent(&rows) {
        eprintln!("{} chains, all consistent", rows.len());
        EXIT_OK
    } else {
        eprintln!("inconsistent: {}", bad.join(", "));
        EXIT_REJECTED
    }
}
