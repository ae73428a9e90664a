use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kleinring::commands::{cohomology_report, verify_report};
use kleinring::report::{Config, ReportDocument};
use kleinring::verify::SUITES;

#[derive(Parser)]
#[command(name = "kleinring", version, about = "Lattices and Tate cohomology over Kleinian 4-rings")]
struct Cli {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Working precision N of R = Z/p^N.
    #[arg(long, global = true, default_value_t = 16)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Degree window used by the verification suites.
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tate cohomology table of a lattice, e.g. "A^2" or "tube(f=t^2+t+1,n=3)".
    Cohomology {
        spec: String,
        #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        to: i64,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

fn emit(doc: &ReportDocument, format: Format, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = match format {
        Format::Table => doc.to_table(),
        Format::Json => doc.to_json() + "\n",
    };
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let window = match cli.window.as_deref() {
        Some(&[a, b]) if a <= b => (a, b),
        Some(_) => {
            eprintln!("error: --window needs a <= b");
            return ExitCode::from(2);
        }
        None => (-6, 6),
    };
    let config = Config { p: cli.p, precision: cli.precision, window };
    let result = match &cli.command {
        Command::Cohomology { spec, from, to } => cohomology_report(config, spec, *from, *to),
        Command::Verify { suite } => verify_report(config, suite),
    };
    match result {
        Ok(doc) => {
            if let Err(e) = emit(&doc, cli.format, cli.out.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(1);
            }
            if doc.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
