//! The `invsat` command line.
//!
//! Exit codes follow the SAT competition convention: 10 for SAT, 20 for
//! UNSAT, 0 for subcommands that do not decide anything, 1 for usage,
//! parse and I/O errors. `verify` exits 0 for a model and 2 otherwise.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::bench::{parse_range, run_sweep, summarize, write_csv, SweepSpec};
use crate::error::Error;
use crate::explain::explain;
use crate::gen::{generate, GenSpec};
use crate::io::{parse_dimacs, parse_model, stats_to_json, write_dimacs, ParseReport};
use crate::model::FillPolicy;
use crate::oracle::Oracle;
use crate::pathsem::{PathSemantics, DEFAULT_MAX_VARS};
use crate::solver::{solve, verify_model, Outcome, ResumeMode, SeedMode, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID_MODEL: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "invsat",
    version,
    about = "Inverse-cover intersection SAT toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a DIMACS CNF file with the inverse-cover search
    Solve {
        /// Input file, `-` for stdin
        file: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        /// Print the JSON stats record only
        #[arg(long)]
        json: bool,
    },
    /// Brute-force decision and model count
    Oracle {
        file: PathBuf,
        /// Also list every model
        #[arg(long)]
        models: bool,
        /// Report the model count (always printed; kept for scripts)
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
        max_pathsem_vars: usize,
    },
    /// Check a model file against a CNF
    Verify { file: PathBuf, model: PathBuf },
    /// Emit a random k-SAT instance as DIMACS
    Gen {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        planted: bool,
        /// Write here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep generated instances and emit CSV stats
    Bench {
        /// Variable range MIN:MAX[:STEP]
        #[arg(long, default_value = "4:12")]
        sweep: String,
        /// Clause widths, comma separated
        #[arg(long, value_delimiter = ',', default_value = "3")]
        width: Vec<usize>,
        /// Clause/variable ratios, comma separated
        #[arg(long, value_delimiter = ',', default_value = "4.26")]
        ratio: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        per_point: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        planted: bool,
        /// Skip the oracle above this many variables
        #[arg(long, default_value_t = 16)]
        oracle_max_vars: usize,
        /// Run all four seed/resume combinations per instance
        #[arg(long)]
        all_configs: bool,
        #[command(flatten)]
        solver: SolverFlags,
        /// CSV destination; stdout when absent
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the matrix, path sets and covers of a small problem
    Explain {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
        max_pathsem_vars: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SolverFlags {
    #[arg(long, default_value = "all")]
    pub seed_mode: SeedMode,
    #[arg(long, default_value = "resume")]
    pub resume_mode: ResumeMode,
    #[arg(long)]
    pub no_dedup: bool,
    /// Value for unassigned variables in the reported model
    #[arg(long, default_value = "true", value_parser = parse_fill)]
    pub fill: FillPolicy,
}

fn parse_fill(s: &str) -> Result<FillPolicy, String> {
    match s {
        "true" => Ok(FillPolicy::True),
        "false" => Ok(FillPolicy::False),
        other => Err(format!("expected true or false, got {other:?}")),
    }
}

impl SolverFlags {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            seed_mode: self.seed_mode,
            resume_mode: self.resume_mode,
            dedup: !self.no_dedup,
            fill: self.fill,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, io::Error),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.to_owned(), e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn load(path: &Path, err: &mut dyn Write) -> Result<ParseReport, CliError> {
    let text = read_input(path)?;
    let report = parse_dimacs(&text)?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(report)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(PathBuf::from("<output>"), e)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Solve { file, solver, json } => {
            let problem = load(&file, err)?.problem;
            let config = solver.config();
            let start = Instant::now();
            let solution = solve(&problem, &config)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let record = stats_to_json(&problem, &solution.outcome, &solution.stats, &config, ms);
            if json {
                writeln!(out, "{record}").map_err(io_err)?;
            } else {
                match &solution.outcome {
                    Outcome::Sat { model, cube } => {
                        writeln!(out, "s SATISFIABLE").map_err(io_err)?;
                        let lits: Vec<String> = model
                            .to_dimacs_literals()
                            .iter()
                            .map(i64::to_string)
                            .collect();
                        writeln!(out, "v {} 0", lits.join(" ")).map_err(io_err)?;
                        writeln!(out, "c model {model}").map_err(io_err)?;
                        writeln!(out, "c cube {cube}").map_err(io_err)?;
                    }
                    Outcome::Unsat => writeln!(out, "s UNSATISFIABLE").map_err(io_err)?,
                }
                writeln!(out, "c stats {record}").map_err(io_err)?;
            }
            Ok(if solution.outcome.is_sat() {
                EXIT_SAT
            } else {
                EXIT_UNSAT
            })
        }
        Command::Oracle {
            file,
            models,
            count: _,
            max_pathsem_vars,
        } => {
            let problem = load(&file, err)?.problem;
            let oracle = Oracle::with_max_vars(max_pathsem_vars);
            let set = oracle.enumerate_models(&problem)?;
            let sat = !set.is_empty();
            writeln!(
                out,
                "s {}",
                if sat { "SATISFIABLE" } else { "UNSATISFIABLE" }
            )
            .map_err(io_err)?;
            writeln!(out, "c models {}", set.len()).map_err(io_err)?;
            if models {
                for m in &set.models {
                    let lits: Vec<String> =
                        m.to_dimacs_literals().iter().map(i64::to_string).collect();
                    writeln!(out, "v {} 0", lits.join(" ")).map_err(io_err)?;
                }
            }
            Ok(if sat { EXIT_SAT } else { EXIT_UNSAT })
        }
        Command::Verify { file, model } => {
            let problem = load(&file, err)?.problem;
            let text = read_input(&model)?;
            let assignment = parse_model(&text, problem.var_count())?;
            if verify_model(&problem, &assignment)? {
                writeln!(out, "valid {assignment}").map_err(io_err)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "invalid {assignment}").map_err(io_err)?;
                Ok(EXIT_INVALID_MODEL)
            }
        }
        Command::Gen {
            vars,
            clauses,
            width,
            seed,
            planted,
            output,
        } => {
            let spec = GenSpec {
                var_count: vars,
                clause_count: clauses,
                width,
                seed,
                planted,
            };
            let (problem, _) = generate(&spec)?;
            let mut text = format!(
                "c invsat gen vars={vars} clauses={clauses} width={width} seed={seed} planted={planted}\n"
            );
            text.push_str(&write_dimacs(&problem));
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| CliError::Io(path, e))?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Bench {
            sweep,
            width,
            ratio,
            per_point,
            seed,
            planted,
            oracle_max_vars,
            all_configs,
            solver,
            csv,
        } => {
            let configs = if all_configs {
                SolverConfig::variants()
                    .into_iter()
                    .map(|c| SolverConfig {
                        dedup: !solver.no_dedup,
                        fill: solver.fill,
                        ..c
                    })
                    .collect()
            } else {
                vec![solver.config()]
            };
            let spec = SweepSpec {
                vars: parse_range(&sweep)?,
                widths: width,
                ratios: ratio,
                per_point,
                seed,
                planted,
                oracle_max_vars,
                configs,
            };
            let rows = run_sweep(&spec)?;
            match &csv {
                Some(path) => {
                    let f = fs::File::create(path).map_err(|e| CliError::Io(path.clone(), e))?;
                    write_csv(&rows, f).map_err(|e| CliError::Io(path.clone(), e))?;
                }
                None => write_csv(&rows, &mut *out).map_err(io_err)?,
            }
            let s = summarize(&rows);
            let _ = writeln!(
                err,
                "instances {} sat {} oracle-checked {} agreed {}",
                s.instances, s.sat, s.checked, s.agreed
            );
            Ok(EXIT_OK)
        }
        Command::Explain {
            file,
            max_pathsem_vars,
        } => {
            let problem = load(&file, err)?.problem;
            let text = explain(&problem, &PathSemantics::with_max_vars(max_pathsem_vars))?;
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}
