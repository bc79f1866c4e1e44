use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use stoneworks_cli::{parse, run, Command, Options};

/// Verify lattice-theoretic and support-theoretic properties of the
/// structures in a manifest.
#[derive(Parser)]
#[command(name = "stoneworks", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Manifest of JSON structure descriptions.
    #[arg(long = "in", value_name = "MANIFEST")]
    input: PathBuf,
    /// Directory receiving report.json and any artifacts.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Exit with status 1 on any negative verdict.
    #[arg(long)]
    assert: bool,
    /// Also write Hasse diagrams in DOT format.
    #[arg(long)]
    dot: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut manifest = match parse(&args.input) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("stoneworks: {e}");
            return ExitCode::from(2);
        }
    };
    manifest.commands = vec![args.command];
    let opts = Options {
        assert: args.assert,
        dot: args.dot,
    };
    let report = run(&manifest, &opts);
    if let Err(e) = report.write(&args.out) {
        eprintln!("stoneworks: cannot write to {}: {e}", args.out.display());
        return ExitCode::from(2);
    }
    for r in &report.records {
        println!("{} {} {}: {}", r.command, r.kind, r.target, r.outcome);
    }
    ExitCode::from(report.exit_status())
}
