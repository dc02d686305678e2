use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use thomas_cli::document::{AlgebraicInput, Document, Mode};
use thomas_cli::{render, EXIT_BUDGET, EXIT_PARSE};
use thomas_core::thomas::DecomposeError;
use thomas_core::verify::{random_system, RandomParams, DEFAULT_PRIMES};
use thomas_core::{Options, Ranking, Strategy};

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Algebraic,
    Differential,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    EquationsFirst,
    LeaderFirst,
}

/// Thomas decomposition of algebraic and differential systems.
#[derive(Parser)]
#[command(name = "thomas", version)]
struct Args {
    /// Input document; stdin when absent or '-'.
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "equations-first")]
    strategy: StrategyArg,
    #[arg(long)]
    no_factor: bool,
    #[arg(long)]
    no_coeff_reduce: bool,
    #[arg(long)]
    delay_squarefree: bool,
    /// Abort after this many steps (0 = unlimited).
    #[arg(long, default_value_t = 0)]
    step_budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Check the result modulo these primes.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    verify: Option<Vec<u64>>,
    /// Decompose a random algebraic system generated from this seed instead of reading input.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Write the verification report here as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn fuzz_document(seed: u64) -> Document {
    let params = RandomParams::default();
    let names: Vec<String> = (1..=params.n_vars).map(|i| format!("x{i}")).collect();
    let ranking = Ranking::new(&names).expect("distinct names");
    Document::Algebraic(AlgebraicInput { ranking, relations: random_system(seed, &params) })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let doc = match args.seed {
        Some(seed) => fuzz_document(seed),
        None => {
            let text = match read_input(&args.input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mode = args.mode.map(|m| match m {
                ModeArg::Algebraic => Mode::Algebraic,
                ModeArg::Differential => Mode::Differential,
            });
            match thomas_cli::parse_document(&text, mode) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("parse error at {e}");
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            }
        }
    };
    let opts = Options {
        strategy: match args.strategy {
            StrategyArg::EquationsFirst => Strategy::EquationsFirst,
            StrategyArg::LeaderFirst => Strategy::LeaderFirst,
        },
        factor: !args.no_factor,
        coeff_reduce: !args.no_coeff_reduce,
        delay_squarefree: args.delay_squarefree,
        step_budget: args.step_budget,
        threads: args.threads.max(1),
        ..Options::default()
    };
    let dec = match thomas_cli::decompose(&doc, &opts) {
        Ok(d) => d,
        Err(e @ DecomposeError::BudgetExhausted(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_BUDGET as u8);
        }
    };
    let primes = match (&args.verify, args.seed) {
        (Some(p), _) if !p.is_empty() => Some(p.clone()),
        (Some(_), _) | (None, Some(_)) => Some(DEFAULT_PRIMES[..2].to_vec()),
        (None, None) => None,
    };
    let report = primes.map(|p| thomas_cli::verify(&doc, &dec, &p));
    let code = thomas_cli::exit_code(report.as_ref());
    if let (Some(r), Some(path)) = (&report, &args.report) {
        let text = serde_json::to_string_pretty(r).expect("serializable report");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(1);
        }
    }
    let out = render::output(&doc, &dec, report.clone());
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable output"));
    } else {
        print!("{}", render::pretty(&out));
        if let Some(r) = &report {
            eprintln!("{}", render::verify_summary(r));
            if args.report.is_none() {
                eprintln!("{}", serde_json::to_string(r).expect("serializable report"));
            }
        }
    }
    ExitCode::from(code as u8)
}
