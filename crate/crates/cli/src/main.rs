use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use wittkit_cli::dispatch::{run_line, Defaults};
use wittkit::scalar::Ring;

/// Batch evaluator: newline-delimited JSON requests on stdin (or --file),
/// one JSON response per line on stdout. Exit code 0 iff every request
/// succeeded.
#[derive(Parser, Debug)]
#[command(name = "wittkit", version, about)]
struct Args {
    /// Default truncation order for series results.
    #[arg(long, default_value_t = wittkit::DEFAULT_ORDER)]
    order: usize,

    /// Default coefficient ring (Z or Q).
    #[arg(long, default_value = "Z")]
    ring: String,

    /// Default tolerance for the numeric root-location layer.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Read requests from a file instead of stdin.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Attach wall-clock timings to response metadata (breaks byte-level
    /// response determinism; off by default).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let ring = match args.ring.as_str() {
        "Z" | "z" => Ring::Z,
        "Q" | "q" => Ring::Q,
        other => {
            eprintln!("unknown ring {:?} (expected Z or Q)", other);
            return ExitCode::from(2);
        }
    };
    let defaults = Defaults { order: args.order, ring, tol: args.tol, timings: args.timings };

    let reader: Box<dyn BufRead> = match &args.file {
        Some(path) => match File::open(path) {
            Ok(f) => Box::new(BufReader::new(f)),
            Err(e) => {
                eprintln!("cannot open {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufReader::new(io::stdin())),
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut all_ok = true;
    for line in reader.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("read error: {}", e);
                return ExitCode::from(2);
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let (response, ok) = run_line(&line, &defaults);
        all_ok &= ok;
        if writeln!(out, "{}", response).is_err() {
            return ExitCode::from(2);
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
