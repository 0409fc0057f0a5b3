use clap::{Parser, Subcommand};
use qsc_core::cyclotomic::{cyclotomic, cyclotomic_neg};
use qsc_core::harness::{emit_report, run, selftest, sweep, Format, Params, Report, StatementId, SweepSpec};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact checker for q-supercongruences and their p-adic counterparts.
#[derive(Parser)]
#[command(name = "qsc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of Phi_n(q), or Phi_n(-q) with --neg.
    Cyclo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        neg: bool,
    },
    /// Check one statement at one parameter set.
    Check {
        #[arg(long)]
        id: StatementId,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        e: Option<u32>,
    },
    /// Check a statement over a grid of cases and write a report.
    Sweep {
        #[arg(long)]
        id: StatementId,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value_t = 3)]
        n_min: i64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
        d_list: Vec<i64>,
        /// Values of r (or of the sign s for T3/T4); all admissible values when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        r_list: Option<Vec<i64>>,
        #[arg(long, default_value_t = 47)]
        p_max: u64,
        /// p-adic precision; each statement's own precision when omitted.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

const USAGE: u8 = 2;

fn exit_for(report: &Report) -> ExitCode {
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Cyclo { n, neg } => {
            let poly = if neg { cyclotomic_neg(n) } else { cyclotomic(n) };
            match poly {
                Ok(p) => {
                    let coeffs = p.to_i64_coeffs().expect("cyclotomic coefficients are small integers");
                    let var = if neg { "-q" } else { "q" };
                    println!("Phi_{n}({var}) = {p}");
                    println!("{}", coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Check { id, n, d, r, s, p, e } => {
            let params = Params { n, d, r, s, p, e };
            match run(id, &params) {
                Ok(record) => {
                    let report = Report::new(id, vec![record], Vec::new());
                    print!("{}", String::from_utf8_lossy(&emit_report(&report, Format::Text)));
                    exit_for(&report)
                }
                Err(err) => usage(err),
            }
        }
        Command::Sweep {
            id,
            n_max,
            n_min,
            d_list,
            r_list,
            p_max,
            e,
            out,
            format,
            jobs,
        } => {
            let spec = SweepSpec {
                statement: id,
                n_min,
                n_max,
                d_list,
                r_list,
                p_max,
                e,
                jobs,
            };
            let report = match sweep(&spec) {
                Ok(r) => r,
                Err(err) => return usage(err),
            };
            if let Err(err) = std::fs::write(&out, emit_report(&report, format)) {
                return usage(format!("cannot write {}: {err}", out.display()));
            }
            let s = &report.summary;
            println!(
                "{id}: checked {}  held {}  failed {}  inapplicable {}  skipped {}",
                s.checked, s.held, s.failed, s.inapplicable, s.skipped
            );
            exit_for(&report)
        }
        Command::Selftest => {
            let items = selftest();
            for item in &items {
                let tag = if item.passed { "ok  " } else { "FAIL" };
                if item.detail.is_empty() {
                    println!("{tag} {}", item.name);
                } else {
                    println!("{tag} {}: {}", item.name, item.detail);
                }
            }
            if items.iter().all(|i| i.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
