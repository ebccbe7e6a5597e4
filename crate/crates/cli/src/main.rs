use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use vanderkit::table;
use vanderkit::wire::ScalarMode;
use vanderkit::{run, CliError, Command, JobSpec, OutputFormat};

/// Vandermonde and confluent Vandermonde inverses via triangular factors.
#[derive(Debug, Parser)]
#[command(name = "vanderkit", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Read the job document from FILE.
    #[arg(long, value_name = "FILE", conflicts_with = "stdin")]
    input: Option<PathBuf>,

    /// Read the job document from standard input.
    #[arg(long)]
    stdin: bool,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Residual tolerance: ill-conditioning threshold and verify pass bound.
    #[arg(long)]
    tol: Option<f64>,

    /// Series terms for the exponential oracle in verify.
    #[arg(long)]
    terms: Option<usize>,

    /// Scalar mode; defaults to the document's "scalar", then $VANDERKIT_SCALAR, then rational.
    #[arg(long, value_enum)]
    scalar: Option<ScalarMode>,

    /// Matrix orders for bench, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
}

fn read_input(args: &Args) -> Result<Option<String>, CliError> {
    if let Some(path) = &args.input {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())));
    }
    if args.stdin {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Malformed(format!("cannot read standard input: {e}")))?;
        return Ok(Some(text));
    }
    Ok(None)
}

fn execute(args: &Args) -> Result<vanderkit::Outcome, CliError> {
    let text = read_input(args)?;
    let env_scalar = std::env::var("VANDERKIT_SCALAR").ok();
    let job = JobSpec::from_parts(
        args.command,
        text.as_deref(),
        args.scalar,
        env_scalar.as_deref(),
        args.output,
        args.tol,
        args.terms,
        args.sizes.clone(),
    )?;
    run(&job)
}

fn emit(value: &serde_json::Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports are valid JSON")
        ),
        OutputFormat::Table => print!("{}", table::render(value)),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("{w}");
            }
            emit(&outcome.report, args.output);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("vanderkit: {e}");
            emit(&e.to_json(), args.output);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
