//! Command-line front end: curve loading, computation orchestration, result
//! caching, serialization, and the verification suites.
//!
//! Exit codes: 0 ok, 1 validation error, 2 verification failure, 3 internal
//! invariant breach.

mod envelope;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use envelope::{curve_digest, Cache, ResultEnvelope};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use trxy_core::classical::tr_entry;
use trxy_core::corr::{all_live, euler, Tables};
use trxy_core::curve::{CurveSpec, Side};
use trxy_core::special::{psi_extract, yz_closed_formula};
use trxy_core::swap::{entry, graph_sum_mixed, graph_sum_swap, step_standard};
use trxy_core::symbol;
use trxy_core::{Error, MRat};

#[derive(Parser)]
#[command(
    name = "trxy",
    about = "Exact topological recursion on rational spectral curves, with the universal x-y swap"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Simple,
    Standard,
    Both,
    Graph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classical recursion: every entry with 2g-2+m <= chi.
    Tr {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        chi: u32,
        #[arg(long, default_value = "trxy-cache")]
        cache: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Swapped-side differentials omega_{0,n} through the graph formula.
    Swap {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "trxy-cache")]
        cache: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Mixed differentials omega_{m,n} by the chosen formula.
    Mixed {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "simple")]
        method: Method,
        #[arg(long, default_value = "trxy-cache")]
        cache: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Closed formula for curves with y = z (no residues involved).
    ClosedYz {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "trxy-cache")]
        cache: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Psi-class intersection numbers from the built-in x = z^2/2 curve.
    Psi {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Run the verification suites against a curve.
    Verify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Deliberately corrupt one table entry first (exercises the
        /// failure-reporting path; the run must then fail).
        #[arg(long, default_value_t = false)]
        corrupt: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load_curve(path: &PathBuf) -> Result<CurveSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    CurveSpec::from_json(&text)
}

#[derive(Serialize)]
struct Written {
    g: u32,
    m: u32,
    n: u32,
    method: String,
    cached: bool,
    path: String,
}

fn emit(format: Format, env: &ResultEnvelope, cached: bool, path: &std::path::Path) {
    match format {
        Format::Json => {
            let w = Written {
                g: env.g,
                m: env.m,
                n: env.n,
                method: env.method.clone(),
                cached,
                path: path.display().to_string(),
            };
            println!("{}", serde_json::to_string(&w).unwrap());
        }
        Format::Pretty => {
            let origin = if cached { "cache" } else { &env.method };
            println!(
                "omega[g={}, m={}, n={}] / prod dz  ({})\n  = {}",
                env.g, env.m, env.n, origin, env.body
            );
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Tr {
            curve,
            chi,
            cache,
            format,
            seed,
        } => {
            if chi < 1 {
                return Err(Error::invalid("--chi must be at least 1"));
            }
            let curve = Arc::new(load_curve(&curve)?);
            let hash = curve_digest(&curve);
            let cache = Cache::new(&cache).map_err(io_err)?;
            let tables = Tables::new(curve.clone());
            cache.preseed(&tables, &hash);
            for c in 1..=chi as i64 {
                let mut g = 0i64;
                loop {
                    let m = c + 2 - 2 * g;
                    if m < 1 {
                        break;
                    }
                    let (g32, m32) = (g as u32, m as u32);
                    if let Some(env) = cache.load(&hash, g32, m32, 0) {
                        let path = cache.path_for(&hash, g32, m32, 0);
                        emit(format, &env, true, &path);
                    } else {
                        let body = tr_entry(&tables, g32, m32, &all_live(m as usize))?;
                        let env = ResultEnvelope::new(
                            &curve,
                            g32,
                            m32,
                            0,
                            "classical-recursion",
                            seed,
                            body,
                        );
                        let path = cache.store(&env).map_err(io_err)?;
                        emit(format, &env, false, &path);
                    }
                    g += 1;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Swap {
            curve,
            g,
            n,
            cache,
            format,
            seed,
        } => {
            if n < 1 {
                return Err(Error::invalid("--n must be at least 1"));
            }
            let curve = Arc::new(load_curve(&curve)?);
            let hash = curve_digest(&curve);
            let cache = Cache::new(&cache).map_err(io_err)?;
            let tables = Tables::new(curve.clone());
            cache.preseed(&tables, &hash);
            let body = graph_sum_swap(&tables, g, n)?;
            let env = ResultEnvelope::new(&curve, g, 0, n, "graph-sum-swap", seed, body);
            let path = cache.store(&env).map_err(io_err)?;
            emit(format, &env, false, &path);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mixed {
            curve,
            g,
            m,
            n,
            method,
            cache,
            format,
            seed,
        } => {
            if n < 1 {
                return Err(Error::invalid(
                    "--n must be at least 1 (the n = 0 column belongs to `tr`)",
                ));
            }
            let curve = Arc::new(load_curve(&curve)?);
            let hash = curve_digest(&curve);
            let cache = Cache::new(&cache).map_err(io_err)?;
            let tables = Tables::new(curve.clone());
            cache.preseed(&tables, &hash);
            let bind = all_live((m + n) as usize);
            let run_one = |method: Method| -> Result<(String, MRat), Error> {
                Ok(match method {
                    Method::Simple => ("simple-recursion".into(), entry(&tables, g, m, n, &bind)?),
                    Method::Standard => (
                        "standard-recursion".into(),
                        step_standard(&tables, Side::X, g, m, n, &bind)?,
                    ),
                    Method::Graph => ("graph-sum-mixed".into(), graph_sum_mixed(&tables, g, m, n)?),
                    Method::Both => unreachable!(),
                })
            };
            if method == Method::Both {
                let (tag_a, a) = run_one(Method::Simple)?;
                let (tag_b, b) = run_one(Method::Standard)?;
                if a != b {
                    return Err(Error::internal(
                        "simple and standard recursion disagree; this is an engine defect",
                    ));
                }
                for (tag, body) in [(tag_a, a), (tag_b, b)] {
                    let env = ResultEnvelope::new(&curve, g, m, n, &tag, seed, body);
                    // Distinguish the two files by method suffix.
                    let mut path = cache.path_for(&hash, g, m, n);
                    path.set_file_name(format!(
                        "{}_{}.json",
                        path.file_stem().unwrap().to_string_lossy(),
                        tag
                    ));
                    let text = serde_json::to_string_pretty(&env).unwrap();
                    std::fs::write(&path, text).map_err(io_err)?;
                    emit(format, &env, false, &path);
                }
                println!("attestation: simple and standard recursions agree exactly");
            } else {
                let (tag, body) = run_one(method)?;
                let env = ResultEnvelope::new(&curve, g, m, n, &tag, seed, body);
                let path = cache.store(&env).map_err(io_err)?;
                emit(format, &env, false, &path);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ClosedYz {
            curve,
            g,
            m,
            cache,
            format,
            seed,
        } => {
            if m < 1 {
                return Err(Error::invalid("--m must be at least 1"));
            }
            let curve = Arc::new(load_curve(&curve)?);
            let zc = symbol::intern("z_curve");
            if curve.y_of(zc) != MRat::var(zc) {
                return Err(Error::invalid(
                    "closed-yz applies to curves with y = z; use `mixed` or `tr` otherwise",
                ));
            }
            let cache = Cache::new(&cache).map_err(io_err)?;
            let body = yz_closed_formula(&curve.x_of(zc), zc, g, m)?;
            let env = ResultEnvelope::new(&curve, g, m, 0, "closed-yz", seed, body);
            let path = cache.store(&env).map_err(io_err)?;
            emit(format, &env, false, &path);
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi { g, m, format } => {
            if euler(g, m, 0) <= 0 {
                return Err(Error::invalid("psi extraction needs a stable (g, m)"));
            }
            let tables = Tables::new(Arc::new(trxy_core::curve::airy()));
            let body = tr_entry(&tables, g, m, &all_live(m as usize))?;
            let table = psi_extract(&body, g, m)?;
            match format {
                Format::Json => println!("{}", table.to_json()),
                Format::Pretty => {
                    println!("psi-class intersection numbers, g = {g}, m = {m}:");
                    for (k, v) in &table.entries {
                        println!(
                            "  <{}>_{} = {}",
                            k.iter()
                                .map(|ki| format!("tau_{ki}"))
                                .collect::<Vec<_>>()
                                .join(" "),
                            g,
                            trxy_core::rat::rat_to_string(v)
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            curve,
            seed,
            corrupt,
            format,
        } => {
            let curve = Arc::new(load_curve(&curve)?);
            let report = verify::run_suite(curve, seed, corrupt)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Pretty => {
                    for check in &report.checks {
                        println!(
                            "{} {}{}",
                            if check.pass { "PASS" } else { "FAIL" },
                            check.name,
                            check
                                .detail
                                .as_ref()
                                .map(|d| format!(" ({d})"))
                                .unwrap_or_default()
                        );
                    }
                }
            }
            if report.checks.iter().all(|c| c.pass) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::invalid(format!("io: {e}"))
}
