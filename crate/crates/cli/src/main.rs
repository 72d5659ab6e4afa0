use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use conic_period::config::{ACCELERATED_TERMS, ENUMERATION_BOUND, EULER_PRODUCT_PRIME_BOUND};
use conic_period::counting::{count_total, scan_primes, CrossCheck, CSV_HEADER};
use conic_period::field_arith::PrimePower;
use conic_period::lseries::{
    euler_product, zeta_accelerated, zeta_hat_closed_form, zeta_hat_partial, zeta_partial, Series,
};
use conic_period::verify::{self, Suite, VerifyOptions};
use conic_period::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "conic-period", version, about = "Point counts, L-type series and period identities for x^2 + y^2 = z^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count points over F_q, or scan all odd primes up to a limit.
    Count {
        /// Field order q = p^n.
        #[arg(required_unless_present = "scan", conflicts_with = "scan")]
        q: Option<String>,
        /// Emit a row for every odd prime p <= LIMIT.
        #[arg(long, value_name = "LIMIT")]
        scan: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        /// Largest q that is enumerated to confirm the formula.
        #[arg(long, default_value_t = ENUMERATION_BOUND)]
        enumeration_bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one of the two series.
    Series {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum)]
        method: SeriesMethod,
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long)]
        primes: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
    },
    /// Run identity checks and write a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Override closed-form tolerances (calibrated floors still apply).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = EULER_PRODUCT_PRIME_BOUND)]
        euler_primes: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    Zeta,
    ZetaHat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SeriesMethod {
    Partial,
    Accelerated,
    EulerProduct,
    ClosedForm,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Counting,
    Lseries,
    Analysis,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Counting => Suite::Counting,
            SuiteArg::Lseries => Suite::Lseries,
            SuiteArg::Analysis => Suite::Analysis,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_count(
    q: Option<String>,
    scan: Option<u64>,
    workers: usize,
    bound: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let (rows, all_agree) = match (q, scan) {
        (Some(q), None) => {
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("malformed q: {q:?}")))?;
            let pp = PrimePower::from_q(q)?;
            match count_total(pp, CrossCheck::IfEnumerable(bound)) {
                Ok(c) => (vec![c], true),
                Err(e @ Error::CrossCheck { .. }) => {
                    eprintln!("{e}");
                    (vec![count_total(pp, CrossCheck::Never)?], false)
                }
                Err(e) => return Err(e.into()),
            }
        }
        (None, Some(limit)) => {
            let entries = scan_primes(limit, workers, bound);
            let agree = entries.iter().all(|e| e.agrees());
            (entries.into_iter().map(|e| e.count).collect(), agree)
        }
        _ => return Err(Failure::Usage("give either q or --scan".into())),
    };

    let mut w = open_output(out.as_ref())?;
    match format {
        Format::Csv => {
            writeln!(w, "{CSV_HEADER}")?;
            for r in &rows {
                writeln!(w, "{}", r.csv_row())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &rows).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Plain => {
            for r in &rows {
                writeln!(
                    w,
                    "q = {} (p = {}, n = {}): affine {}, at infinity {}, total {}",
                    r.q.q, r.q.p, r.q.n, r.affine, r.infinity, r.total
                )?;
            }
        }
    }
    w.flush()?;
    if all_agree {
        Ok(())
    } else {
        Err(Failure::Verification("enumeration disagrees with the formula".into()))
    }
}

fn cmd_series(
    which: Which,
    s: f64,
    method: SeriesMethod,
    terms: Option<u64>,
    primes: Option<u64>,
    workers: usize,
) -> Result<(), Failure> {
    let est = match (which, method) {
        (Which::Zeta, SeriesMethod::Partial) => zeta_partial(s, terms.unwrap_or(1_000_000), workers)?,
        (Which::Zeta, SeriesMethod::Accelerated) => {
            zeta_accelerated(s, terms.unwrap_or(ACCELERATED_TERMS as u64) as usize)?
        }
        (Which::ZetaHat, SeriesMethod::Partial) => zeta_hat_partial(s, terms.unwrap_or(1_000_000), workers)?,
        (Which::ZetaHat, SeriesMethod::ClosedForm) => zeta_hat_closed_form(s)?,
        (w, SeriesMethod::EulerProduct) => {
            let series = match w {
                Which::Zeta => Series::Zeta,
                Which::ZetaHat => Series::ZetaHat,
            };
            euler_product(series, s, primes.unwrap_or(1_000_000), workers)?
        }
        (Which::Zeta, SeriesMethod::ClosedForm) => {
            return Err(Failure::Usage("no closed form for zeta at general s; use accelerated".into()))
        }
        (Which::ZetaHat, SeriesMethod::Accelerated) => {
            return Err(Failure::Usage(
                "zeta-hat is not alternating; use closed-form, partial or euler-product".into(),
            ))
        }
    };
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &est).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    tol: Option<f64>,
    report: Option<PathBuf>,
    euler_primes: u64,
    workers: usize,
) -> Result<(), Failure> {
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Failure::Usage(format!("tolerance must be positive, got {t}")));
        }
    }
    let opts = VerifyOptions {
        tol,
        workers,
        euler_prime_bound: euler_primes,
        ..Default::default()
    };
    let result = verify::run(suite, &opts)?;
    match &report {
        Some(path) => {
            std::fs::write(path, result.to_json() + "\n")?;
            let mut out = io::stdout().lock();
            for c in &result.checks {
                writeln!(out, "{}", c.summary())?;
            }
        }
        None => println!("{}", result.to_json()),
    }
    if result.passed {
        Ok(())
    } else {
        let failed = result.checks.iter().filter(|c| !c.passed).count();
        Err(Failure::Verification(format!("{failed} check(s) failed")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Count {
            q,
            scan,
            workers,
            enumeration_bound,
            format,
            out,
        } => cmd_count(q, scan, workers as usize, enumeration_bound, format, out),
        Command::Series {
            which,
            s,
            method,
            terms,
            primes,
            workers,
        } => cmd_series(which, s, method, terms, primes, workers as usize),
        Command::Verify {
            suite,
            tol,
            report,
            euler_primes,
            workers,
        } => cmd_verify(suite.into(), tol, report, euler_primes, workers as usize),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}
