use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mukai_cli::{run_batch, schema::schema, Options};

/// Run newline-delimited JSON lattice requests and print one JSON response per line.
#[derive(Debug, Parser)]
#[command(name = "mukai", version)]
struct Args {
    /// Request file; reads stdin when absent.
    file: Option<PathBuf>,

    /// Box bound for enumerations that do not give one.
    #[arg(long, default_value_t = 10)]
    bound: u32,

    /// Worker threads (0 uses every core).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Seed for splitting the batch into parallel work units. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print the request/response schema and exit.
    #[arg(long)]
    schema: bool,
}

fn read_input(file: &Option<PathBuf>) -> io::Result<String> {
    match file {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut out = io::stdout().lock();
    if args.schema {
        let text = serde_json::to_string_pretty(&schema()).expect("schema serializes");
        return match writeln!(out, "{text}") {
            Ok(()) => ExitCode::SUCCESS,
            Err(_) => ExitCode::from(2),
        };
    }
    let input = match read_input(&args.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("mukai: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("mukai: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        default_bound: args.bound,
        seed: args.seed,
    };
    let responses = pool.install(|| run_batch(&input, &opts));
    let mut all_ok = true;
    for r in &responses {
        all_ok &= r.is_ok();
        if writeln!(out, "{}", r.to_line()).is_err() {
            return ExitCode::from(2);
        }
    }
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
