use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use degen_core::document::{self, OutputDocument};
use degen_core::suite::{self, CheckResult, SuiteConfig};
use degen_core::{parse_rational, Error, Rational};

mod eval;

#[derive(Parser)]
#[command(name = "degen", version, about = "Exact tables and identities for degenerate special numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a number triangle or Korobov / degenerate Bernoulli sequence.
    Triangle {
        /// s1, s2, s1deg, s2deg, j1, j2, t, korobov or degbernoulli
        #[arg(long)]
        kind: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        /// Order r of the korobov / degbernoulli sequences (default 1).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Emit P_0..P_order of a polynomial family.
    Poly {
        /// degbell, newtypebell, jindalrae or gaenari
        #[arg(long)]
        family: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Option<Rational>,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Check every registered identity exactly.
    Verify {
        #[arg(long, default_value_t = suite::DEFAULT_ORDER)]
        order: usize,
        /// Rational values of λ to check at, in addition to symbolic λ.
        #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
        lambda_list: Vec<Rational>,
        /// Identity ids to run; optional identities run only when named here.
        #[arg(long, value_delimiter = ',')]
        filter: Option<Vec<String>>,
        #[arg(long)]
        include_optional: bool,
        /// Print the identity ids and descriptions instead of checking.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Evaluate one value, e.g. `s2deg(5,2)`, `gaenari(4)`, `korobov(3,2)`.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Option<Rational>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

const USAGE: u8 = 2;

/// Bad input maps to the usage exit code; anything else means a
/// computation disagreed with itself.
fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Parse(_) | Error::Unknown { .. } | Error::Precondition(_) | Error::OutOfRange { .. } => {
            ExitCode::from(USAGE)
        }
        Error::RouteMismatch { .. } | Error::NonzeroConstant { .. } => ExitCode::FAILURE,
    }
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn emit(doc: OutputDocument, format: DocFormat) -> ExitCode {
    match format {
        DocFormat::Json => out(&doc.render_json()),
        DocFormat::Csv => out(&doc.render_csv()),
    }
    ExitCode::SUCCESS
}

fn render_table(results: &[CheckResult]) -> String {
    let id_width = results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let lambda_width = results.iter().map(|r| r.lambda.len()).max().unwrap_or(1).max(1);
    let mut out = format!("{:id_width$}  {:>5}  {:lambda_width$}  status\n", "id", "order", "λ");
    for r in results {
        out.push_str(&format!(
            "{:id_width$}  {:>5}  {:lambda_width$}  {}",
            r.id,
            r.order,
            r.lambda,
            if r.passed() { "pass" } else { "FAIL" }
        ));
        if let Some(w) = &r.witness {
            out.push_str(&format!("  at {}: {} != {}", w.at, w.lhs, w.rhs));
        }
        out.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} checks, {} failed\n", results.len(), failed));
    out
}

fn verify(config: SuiteConfig, list: bool, format: ReportFormat) -> ExitCode {
    if list {
        let mut text = String::new();
        for identity in suite::registry() {
            let flag = if identity.optional { " (optional)" } else { "" };
            text.push_str(&format!("{}{flag}  {}\n", identity.id, identity.description));
        }
        out(&text);
        return ExitCode::SUCCESS;
    }
    let results = match suite::run_suite(&config) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match format {
        ReportFormat::Table => out(&render_table(&results)),
        ReportFormat::Json => {
            let v = serde_json::to_value(&results).expect("report serializes");
            out(&(serde_json::to_string_pretty(&v).expect("report serializes") + "\n"));
        }
    }
    if results.iter().all(CheckResult::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Triangle { kind, order, lambda, r, format } => {
            document::table_document(&kind, order, lambda.as_ref(), r).map(|d| emit(d, format))
        }
        Command::Poly { family, order, lambda, x, format } => {
            document::family_document(&family, order, lambda.as_ref(), x.as_ref()).map(|d| emit(d, format))
        }
        Command::Verify { order, lambda_list, filter, include_optional, list, format } => {
            let config = SuiteConfig {
                order,
                lambda_specializations: lambda_list,
                identity_filter: filter,
                include_optional,
            };
            Ok(verify(config, list, format))
        }
        Command::Eval { expr, lambda, x } => eval::evaluate(&expr, lambda.as_ref(), x.as_ref()).map(|v| {
            out(&format!("{v}\n"));
            ExitCode::SUCCESS
        }),
    };
    result.unwrap_or_else(fail)
}
