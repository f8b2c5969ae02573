use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mckay_e8::cli::{run, Command, Format, RunConfig};

/// Exact verification of the extended E8 diagram constructions.
#[derive(Parser, Debug)]
#[command(name = "mckay", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Restrict verify-mckay to these nodes (0..=8); repeat or separate by commas.
    #[arg(long, value_delimiter = ',')]
    node: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Seconds allowed for each rank-24 enumeration.
    #[arg(long, default_value_t = 600)]
    budget: u64,
    /// Also count the norm-4 vectors of the Leech lattice.
    #[arg(long)]
    long: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        command: args.command,
        nodes: args.node,
        format: args.format,
        budget_seconds: args.budget,
        long: args.long,
        data_dir: std::env::var_os("MCKAY_DATA_DIR").map(PathBuf::from),
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let record = serde_json::json!({
                "version": env!("CARGO_PKG_VERSION"),
                "command": config.command.name(),
                "pass": false,
                "failure": { "claim": "configuration", "error": e.to_string() },
            });
            eprintln!("{record}");
            ExitCode::from(2)
        }
    }
}
