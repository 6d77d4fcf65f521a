//! `decoupler`: synthesize, check, compile and simulate Hadamard control
//! schemes from the command line.
//!
//! Exit status: 0 on success or pass, 1 when a scheme or verification fails
//! its criterion, 2 on usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use decoupler::analyze::{analyze, to_csv};
use decoupler::gh::{compose, gh_for_lambda, sylvester_host};
use decoupler::hadamard::{best_order, Catalog, CatalogOptions};
use decoupler::pulse::{compile_general, compile_zz, simplify};
use decoupler::scheme::{check_scheme, synth, Framework, SchemeBody, TaskKind, TaskSpec};
use decoupler::schur::partition_sylvester;
use decoupler::sim::{random_hamiltonian, verify, VerifyOptions};
use decoupler::{text, SizeCap};

#[derive(Parser)]
#[command(
    name = "decoupler",
    version,
    about = "Hadamard-matrix control schemes for pairwise qubit Hamiltonians"
)]
struct Cli {
    /// Seed for `--ham random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest matrix order any construction may build.
    #[arg(long, global = true, default_value_t = SizeCap::default().0)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scheme for a task.
    Synth {
        /// decouple | reverse | select:l,k[,g,e] | pair:i,j (1-based qubits).
        #[arg(long, default_value = "decouple")]
        task: String,
        #[arg(long, default_value = "zz")]
        framework: String,
        #[arg(long)]
        n: usize,
        /// Shorthand for --task select:l,k[,g,e].
        #[arg(long, value_name = "l,k[,g,e]")]
        select: Option<String>,
        /// Leave single-qubit terms alone instead of removing them.
        #[arg(long)]
        keep_local: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a scheme file against its task; `-` reads stdin.
    Check {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Lower a scheme to a pulse schedule.
    Compile {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        tau: f64,
        /// Emit one conjugating layer pair per interval, without merging.
        #[arg(long)]
        raw: bool,
    },
    /// Simulate a scheme against a Hamiltonian.
    Verify {
        #[arg(default_value = "-")]
        file: String,
        /// Hamiltonian file, `random`, or `random:<seed>`.
        #[arg(long, default_value = "random")]
        ham: String,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Distance threshold; defaults to 1e-10 (zz) or 2e-2 (general).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compose sylvester(r) with a GH(4, λ) and print the resulting matrix.
    Compose {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        lambda: usize,
        /// Print the GH(4, λ) used instead of the composed matrix.
        #[arg(long)]
        gh: bool,
    },
    /// Print the Schur partition of sylvester(r).
    Partition {
        #[arg(long)]
        r: u32,
    },
    /// Smallest catalogued Hadamard order at least n.
    Catalog {
        #[arg(long)]
        n: usize,
        /// Also print the matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// CSV of interval counts and overhead for n = 1..=n_max.
    Analyze {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "general")]
        framework: String,
        #[arg(long)]
        sylvester_only: bool,
    },
}

enum Failure {
    /// A scheme or simulation did not meet its criterion; the report is on stdout.
    Criterion,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{file}: {e}")))
    }
}

fn emit(out: &str) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    if !out.ends_with('\n') {
        stdout.write_all(b"\n")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = SizeCap(cli.cap);
    match cli.command {
        Command::Synth {
            task,
            framework,
            n,
            select,
            keep_local,
            out,
        } => {
            let kind: TaskKind = match select {
                Some(s) => format!("select:{s}").parse()?,
                None => task.parse()?,
            };
            let mut task_spec = TaskSpec::new(kind, framework.parse::<Framework>()?);
            task_spec.remove_local = !keep_local;
            let scheme = synth(&task_spec, n, cap)?;
            let body = text::write_scheme(&scheme);
            match out {
                Some(path) => fs::write(&path, body)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => emit(&body)?,
            }
        }
        Command::Check { file } => {
            let scheme = text::parse_scheme(&read_input(&file)?)?;
            let report = check_scheme(&scheme)?;
            emit(&report.to_string())?;
            if !report.passed() {
                return Err(Failure::Criterion);
            }
        }
        Command::Compile { file, tau, raw } => {
            let scheme = text::parse_scheme(&read_input(&file)?)?;
            let p = match &scheme.body {
                SchemeBody::Zz(s) => compile_zz(s, tau),
                SchemeBody::General(t) => compile_general(t, tau)?,
            };
            let p = if raw { p } else { simplify(&p) };
            emit(&text::write_schedule(&p))?;
        }
        Command::Verify {
            file,
            ham,
            time,
            reps,
            tol,
        } => {
            let scheme = text::parse_scheme(&read_input(&file)?)?;
            let h = match ham.strip_prefix("random") {
                Some(rest) => {
                    let seed = match rest.strip_prefix(':') {
                        Some(s) => s
                            .parse()
                            .map_err(|_| Failure::Usage(format!("invalid seed {s:?}")))?,
                        None if rest.is_empty() => cli.seed,
                        None => return Err(Failure::Usage(format!("invalid --ham {ham:?}"))),
                    };
                    random_hamiltonian(
                        scheme.qubits(),
                        seed,
                        scheme.framework(),
                        scheme.task.remove_local,
                    )?
                }
                None => text::parse_hamiltonian(&read_input(&ham)?)?,
            };
            let report = check_scheme(&scheme)?;
            if !report.passed() {
                emit(&report.to_string())?;
                return Err(Failure::Criterion);
            }
            let result = verify(
                &scheme,
                &h,
                &VerifyOptions {
                    time,
                    reps,
                    tolerance: tol,
                },
            )?;
            emit(&result.to_string())?;
            if !result.passed {
                return Err(Failure::Criterion);
            }
        }
        Command::Compose { r, lambda, gh } => {
            let gamma = gh_for_lambda(lambda, cap)?;
            if gh {
                emit(&text::write_gh(&gamma))?;
            } else {
                let c = compose(&sylvester_host(r, cap)?, &gamma, cap)?;
                emit(&text::write_hadamard(&c.hprime))?;
            }
        }
        Command::Partition { r } => {
            if r > text::MAX_PARTITION_BITS {
                return Err(Failure::Usage(format!(
                    "r={r} exceeds {}",
                    text::MAX_PARTITION_BITS
                )));
            }
            cap.check(1usize << r)?;
            emit(&text::write_partition(&partition_sylvester(r)?))?;
        }
        Command::Catalog { n, matrix } => {
            let entry = if cap == SizeCap::default() {
                best_order(n)?
            } else {
                Catalog::new(CatalogOptions {
                    cap,
                    ..CatalogOptions::default()
                })
                .best(n)?
            };
            emit(&entry.to_string())?;
            if matrix {
                emit(&text::write_hadamard(&entry.recipe.build(cap)?))?;
            }
        }
        Command::Analyze {
            n_max,
            framework,
            sylvester_only,
        } => {
            let rows = analyze(n_max, framework.parse()?, sylvester_only, cap)?;
            emit(&to_csv(&rows))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Criterion) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
