//! `repcorr`: character tables, correspondence graphs and their K-theory.

mod job;
mod run;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use job::{Format, Partial, Task};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Verify(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "repcorr", version, about = "Character tables, correspondence graphs and their K-theory")]
struct Args {
    /// Group spec, e.g. `symmetric:3`, `dihedral:4`, `product:[2,3]`, `perm:[(1 2),(1 2 3)]`
    #[arg(long)]
    group: Option<String>,
    /// Representation `NAME=SPEC` (repeatable), e.g. `rho=perm` or `s2=tensor(mult:[0,0,1],mult:[0,0,1])`
    #[arg(long = "rep")]
    reps: Vec<String>,
    /// Comma-separated tasks: table, decompose, egraph, dgraph, ktheory, skew, circle, export
    #[arg(long)]
    task: Option<String>,
    /// Edge convention: paper-min or module-count
    #[arg(long)]
    convention: Option<String>,
    /// Seed for the character-table computation
    #[arg(long)]
    seed: Option<u64>,
    /// Window radius for lattice skew products
    #[arg(long, allow_hyphen_values = true)]
    window: Option<i64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json, dot or text
    #[arg(long)]
    format: Option<String>,
    /// Job file of `key = value` lines; flags take precedence
    #[arg(long)]
    job: Option<PathBuf>,
    /// Skew product, e.g. `finite:[2]; c:[(1),(1)]` or `lattice:1; window:2; c:regular`
    #[arg(long)]
    skew: Option<String>,
    /// Rotation angles for the circle task, e.g. `1/2, 1/3, irr:sqrt2`
    #[arg(long, allow_hyphen_values = true)]
    circle: Option<String>,
    /// Frequencies for the semigroup check, e.g. `1, -sqrt2`
    #[arg(long, allow_hyphen_values = true)]
    freqs: Option<String>,
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn main_inner(args: Args) -> Result<(), CliError> {
    let base = match &args.job {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Partial::from_job_file(&text)?
        }
        None => Partial::default(),
    };
    let flags = Partial {
        group: args.group,
        reps: args.reps,
        tasks: args.task,
        convention: args.convention,
        seed: args.seed,
        window: args.window,
        out: args.out,
        format: args.format,
        skew: args.skew,
        circle: args.circle,
        freqs: args.freqs,
    };
    let job = flags.over(base).into_job()?;
    let outcome = run::run(&job)?;

    let rendered = match job.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n",
        Format::Text => outcome.text.clone(),
        Format::Dot => outcome.dot_bundle(),
    };
    match &job.out {
        None => print!("{rendered}"),
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            write(&dir.join(format!("report.{}", job.format.extension())), &rendered)?;
            if job.tasks.contains(&Task::Export) {
                let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n";
                write(&dir.join("report.json"), &json)?;
                if let Some(doc) = &outcome.table_document {
                    write(&dir.join("table.txt"), doc)?;
                }
                for (name, dot) in &outcome.dots {
                    write(&dir.join(format!("{name}.dot")), dot)?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match main_inner(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("repcorr: {e}");
            ExitCode::from(e.code())
        }
    }
}
