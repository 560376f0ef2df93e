use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser};
use qfi::{default_run_id, execute, parse_config_with, write_csv};

/// Compute pair indices and locality diagnostics of BdG models.
#[derive(Debug, Parser)]
#[command(name = "qfi", version)]
struct Args {
    /// Run configuration (TOML subset, see docs/config.md).
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; overrides `output` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `seed` in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; falls back to QFI_THREADS, then to all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Reject unknown keys; `--strict=false` only warns.
    #[arg(long, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    strict: bool,
}

const CONFIG_ERROR: u8 = 1;
const COMPUTE_ERROR: u8 = 2;

fn summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("summary.txt")
}

fn threads(arg: Option<usize>) -> Result<usize, String> {
    if let Some(n) = arg {
        return Ok(n);
    }
    match std::env::var("QFI_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| format!("QFI_THREADS must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qfi: cannot read {}: {e}", args.config.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let mut cfg = match parse_config_with(&text, args.strict) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qfi: {}: {e}", args.config.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    for w in &cfg.warnings {
        eprintln!("qfi: warning: {w}");
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let n = match threads(args.threads) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("qfi: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qfi: cannot start {n} threads: {e}");
            return ExitCode::from(COMPUTE_ERROR);
        }
    };
    let run_id = cfg.run_id.clone().unwrap_or_else(|| default_run_id(&text, cfg.seed));
    let out_path = args.out.or_else(|| cfg.output.clone()).unwrap_or_else(|| PathBuf::from("qfi.csv"));

    let outcome = pool.install(|| execute(&cfg));

    let written = File::create(&out_path).map_err(|e| e.to_string()).and_then(|f| {
        write_csv(BufWriter::new(f), &run_id, cfg.command.name(), &outcome.rows).map_err(|e| e.to_string())
    });
    if let Err(e) = written {
        eprintln!("qfi: cannot write {}: {e}", out_path.display());
        return ExitCode::from(COMPUTE_ERROR);
    }
    let summary = outcome.summary(&run_id, cfg.command);
    if let Err(e) = std::fs::write(summary_path(&out_path), &summary) {
        eprintln!("qfi: cannot write summary: {e}");
        return ExitCode::from(COMPUTE_ERROR);
    }
    print!("{summary}");
    ExitCode::from(outcome.exit_code() as u8)
}
