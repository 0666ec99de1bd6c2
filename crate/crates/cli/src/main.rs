use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use frobex::commands::with_overrides;
use frobex::{read_problem, run, CliError, CliResult, Command, Format, Options};
use frobex_core::MonomialOrder;

/// Groebner bases, Cartier level ideals and Frobenius complexity over F_p.
#[derive(Parser, Debug)]
#[command(name = "frobex", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Problem file
    file: PathBuf,
    /// Monomial order override (grevlex, lex, elimK)
    #[arg(long)]
    order: Option<String>,
    /// Largest level e for cseq, bound-check and validate-fgraded
    #[arg(long)]
    emax: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Directory for cached Groebner bases
    #[arg(long, env = "FROBEX_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Skip the p^e * d(I) size guard
    #[arg(long)]
    force: bool,
    /// Level for bracket and fedder
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Top degree for hf
    #[arg(long, default_value_t = 10)]
    degree: u64,
    /// Tolerance added to the bound in bound-check
    #[arg(long, default_value_t = frobex_core::cartier::DEFAULT_SLACK)]
    slack: f64,
}

fn execute(args: Args) -> CliResult<String> {
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let order = args
        .order
        .as_deref()
        .map(|o| {
            o.parse::<MonomialOrder>()
                .map_err(|_| CliError::Usage(format!("unknown order `{o}`")))
        })
        .transpose()?;
    let problem = with_overrides(read_problem(&args.file)?, order, args.emax)?;
    let opts = Options {
        e: args.e,
        degree: args.degree,
        slack: args.slack,
        force: args.force,
        cache_dir: args.cache_dir,
    };
    Ok(run(args.command, &problem, &opts)?.render(args.format))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("frobex: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
