//! Argument parsing and the command dispatcher.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum, error::ErrorKind};
use kepler_alpha::{
    LookupTable, OrbitPoint, SolveMode, StarterKind, alpha0, alpha_test, build_table,
    evaluate_starter, solve, table_starter,
};

use crate::output::{write_region_csv, write_region_pgm};
use crate::sweep::sweep;
use crate::verify::{Suite, run_suite};

#[derive(Debug, Parser)]
#[command(
    name = "kepler-alpha",
    version,
    about = "Certified Kepler-equation solver: starters that provably make Newton converge quadratically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve E - e sin E = M for any raw mean anomaly.
    Solve {
        #[arg(long)]
        e: f64,
        /// Mean anomaly in radians, any finite value.
        #[arg(long)]
        m_raw: f64,
        /// Stop after the iteration budget for this many decimal digits
        /// (saturates at 15 in binary64).
        #[arg(long, conflicts_with = "tol")]
        digits: Option<u32>,
        /// Iterate until |f(E)| falls below this residual (the default
        /// mode, at 1e-13, when neither flag is given).
        #[arg(long)]
        tol: Option<f64>,
        /// Emit a single-line JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the alpha-test for one starter at one canonical point.
    Alpha {
        #[arg(long)]
        e: f64,
        /// Mean anomaly in radians, already in [0, pi].
        #[arg(long)]
        m: f64,
        #[arg(long, value_enum)]
        starter: StarterArg,
    },
    /// Run the alpha-test on a full grid and write the region map.
    Sweep {
        #[arg(long, value_enum)]
        starter: StarterArg,
        /// Grid resolution: e = i/N (i < N), M = pi j/N (j <= N).
        #[arg(long)]
        grid: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Starter-table management.
    Table {
        #[command(subcommand)]
        command: TableCommand,
    },
    /// Re-run one verification suite; exits 1 on any failed check.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Sample count override (per region for the regions suite).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the certified sweep at a given grid resolution.
    Bench {
        #[arg(long)]
        grid: u32,
    },
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    /// Build a starter table and write the canonical binary format.
    Gen {
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        out: PathBuf,
        /// Also export the table as JSON.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Look one point up in a stored table.
    Query {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        e: f64,
        #[arg(long)]
        m: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Regions,
    Contraction,
    Thm1,
    Corner,
    Lookup,
}

impl From<SuiteArg> for Suite {
    fn from(value: SuiteArg) -> Self {
        match value {
            SuiteArg::Regions => Suite::Regions,
            SuiteArg::Contraction => Suite::Contraction,
            SuiteArg::Thm1 => Suite::Thm1,
            SuiteArg::Corner => Suite::Corner,
            SuiteArg::Lookup => Suite::Lookup,
        }
    }
}

/// CLI-facing starter names; `m-over-1-minus-e` keeps the digit spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StarterArg {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    Zero,
    Pi,
    #[value(name = "two-pi-over-3")]
    TwoPiOver3,
    #[value(name = "pi-over-2")]
    PiOver2,
    #[value(name = "m-over-1-minus-e")]
    MOverOneMinusE,
    CubeRootCorner,
    Thm1,
}

impl From<StarterArg> for StarterKind {
    fn from(value: StarterArg) -> Self {
        match value {
            StarterArg::S1 => StarterKind::S1,
            StarterArg::S2 => StarterKind::S2,
            StarterArg::S3 => StarterKind::S3,
            StarterArg::S4 => StarterKind::S4,
            StarterArg::S5 => StarterKind::S5,
            StarterArg::S6 => StarterKind::S6,
            StarterArg::S7 => StarterKind::S7,
            StarterArg::S8 => StarterKind::S8,
            StarterArg::S9 => StarterKind::S9,
            StarterArg::S10 => StarterKind::S10,
            StarterArg::Zero => StarterKind::Zero,
            StarterArg::Pi => StarterKind::Pi,
            StarterArg::TwoPiOver3 => StarterKind::TwoPiOver3,
            StarterArg::PiOver2 => StarterKind::PiOver2,
            StarterArg::MOverOneMinusE => StarterKind::MOverOneMinusE,
            StarterArg::CubeRootCorner => StarterKind::CubeRootCorner,
            StarterArg::Thm1 => StarterKind::Thm1,
        }
    }
}

/// Parses `argv` and runs the requested command, returning the process
/// exit code instead of exiting, so tests can drive the full surface.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn run(command: Command) -> Result<i32, Box<dyn std::error::Error>> {
    match command {
        Command::Solve {
            e,
            m_raw,
            digits,
            tol,
            json,
        } => {
            let mode = match (digits, tol) {
                (Some(n), None) => SolveMode::Digits(n),
                (None, Some(t)) => SolveMode::ResidualTol(t),
                (None, None) => SolveMode::ResidualTol(1e-13),
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            let result = solve(e, m_raw, mode)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "e": e,
                        "m_raw": m_raw,
                        "E": result.eccentric_anomaly,
                        "iterations": result.iterations,
                        "residual": result.residual,
                        "starter_branch": result.starter.branch.name(),
                        "certified": result.certified,
                    })
                );
            } else {
                println!("E = {:.17}", result.eccentric_anomaly);
                println!("iterations = {}", result.iterations);
                println!("residual = {:e}", result.residual);
                println!(
                    "starter = {:.17} (branch {}, certified = {})",
                    result.starter.value,
                    result.starter.branch.name(),
                    result.certified
                );
                if result.digits_capped {
                    println!("note: digit request saturated at 15 (binary64)");
                }
            }
            Ok(0)
        }
        Command::Alpha { e, m, starter } => {
            let p = OrbitPoint::new(e, m)?;
            let kind = StarterKind::from(starter);
            let value = evaluate_starter(kind, &p)?;
            let report = alpha_test(&p, value.value);
            println!(
                "starter {} = {:.17} (branch {})",
                kind.name(),
                value.value,
                value.branch.name()
            );
            println!("beta = {:.17}", report.beta);
            println!(
                "gamma = {:.17} (argmax k = {})",
                report.gamma, report.gamma_argmax_k
            );
            println!("alpha = {:.17}", report.alpha);
            println!("alpha0 = {:.17}", alpha0());
            println!("passes = {}", report.passes);
            Ok(0)
        }
        Command::Sweep {
            starter,
            grid,
            out,
            format,
        } => {
            if grid < 2 {
                return Err("sweep needs --grid of at least 2".into());
            }
            let map = sweep(StarterKind::from(starter), grid);
            let mut writer = BufWriter::new(File::create(&out)?);
            match format {
                SweepFormat::Csv => write_region_csv(&map, &mut writer)?,
                SweepFormat::Pgm => write_region_pgm(&map, &mut writer)?,
            }
            writer.flush()?;
            let summary = map.summary();
            println!(
                "starter {}: pass fraction {} over {} nodes ({} not applicable, {} corner failures)",
                map.starter().name(),
                summary.pass_fraction,
                map.total_cells(),
                map.not_applicable_count(),
                summary.corner_failures.len()
            );
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Table { command } => run_table(command),
        Command::Verify {
            suite,
            samples,
            seed,
        } => {
            let report = run_suite(suite.into(), samples, seed);
            print!("{}", report.render());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench { grid } => {
            if grid < 2 {
                return Err("bench needs --grid of at least 2".into());
            }
            for kind in [StarterKind::Thm1, StarterKind::S10] {
                let started = Instant::now();
                let map = sweep(kind, grid);
                let elapsed = started.elapsed();
                println!(
                    "sweep {} at grid {}: {:.3}s for {} alpha-tests (pass fraction {})",
                    kind.name(),
                    grid,
                    elapsed.as_secs_f64(),
                    map.total_cells(),
                    map.pass_fraction()
                );
            }
            let started = Instant::now();
            let mut solved = 0u64;
            for i in 0..grid {
                let e = i as f64 / grid as f64;
                for j in 0..=grid {
                    let m_raw = std::f64::consts::PI * (j as f64 / grid as f64);
                    solve(e, m_raw, SolveMode::ResidualTol(1e-13))?;
                    solved += 1;
                }
            }
            let elapsed = started.elapsed().as_secs_f64();
            println!(
                "solve residual 1e-13: {solved} points in {elapsed:.3}s ({:.0} solves/s)",
                solved as f64 / elapsed
            );
            Ok(0)
        }
    }
}

fn run_table(command: TableCommand) -> Result<i32, Box<dyn std::error::Error>> {
    match command {
        TableCommand::Gen { eps, out, json_out } => {
            let started = Instant::now();
            let table = build_table(eps)?;
            let elapsed = started.elapsed();
            table.write_to(&out)?;
            println!(
                "built N = {} (eps = {}) in {:.2}s; wrote {} ({} bytes)",
                table.size(),
                table.eps(),
                elapsed.as_secs_f64(),
                out.display(),
                24 + 8 * table.size() * (table.size() + 1)
            );
            if let Some(path) = json_out {
                let mut writer = BufWriter::new(File::create(&path)?);
                table.write_json(&mut writer)?;
                writer.flush()?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        TableCommand::Query { table, e, m } => {
            let table = LookupTable::read_from(&table)?;
            let p = OrbitPoint::new(e, m)?;
            let starter = table_starter(&table, &p)?;
            let report = alpha_test(&p, starter.value);
            println!(
                "starter = {:.17} (branch {})",
                starter.value,
                starter.branch.name()
            );
            println!("alpha = {:.17}", report.alpha);
            println!("passes = {}", report.passes);
            Ok(0)
        }
    }
}
