//! `kresch` - exact hypergeometric evaluation, sequence transforms, Racah
//! tables, conjecture sweeps, and identity verification from the shell.
//!
//! Exit codes, stable across subcommands:
//! * 0  success / all checks passed
//! * 1  a verification suite failed or the sweep found a violation
//! * 2  mathematically rejected input (non-terminating series, pole,
//!   parameter outside its box)
//! * 64 usage error (bad flags, unparsable rationals, unknown suite,
//!   empty range)

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kresch::hypergeom::{classify, evaluate_terminating, HypSeriesSpec};
use kresch::racah::{
    kt_sweep, kt_sweep_with_grid, racah_special, GridCell, RacahSpecialParams, SweepReport,
};
use kresch::suites::{run_suite, SuiteLimits, SuiteStatus, VerificationReport};
use kresch::transforms::{
    binomial_inverse, binomial_transform, inverse_transform, parse_sequence, render_sequence,
    tilde_transform, Sequence,
};
use kresch::{Error, Index, Rational};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "kresch",
    version,
    about = "Exact terminating hypergeometric series, Racah polynomials, \
             the tilde sequence transform, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Readable, unstable format
    Human,
    /// Compact JSON with a stable schema (see docs/formats.md)
    Json,
    /// Comma-separated values with a stable schema
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Alternating binomial-weighted transform (the "tilde" map)
    Forward,
    /// Its two-term-weighted inverse
    Inverse,
    /// Plain signed binomial transform (a self-inverse map)
    Binomial,
    /// Inverse of the plain binomial transform (same map; named for intent)
    BinomialInverse,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a terminating hypergeometric series exactly
    ///
    /// Prints the exact value on stdout; in human format a classification
    /// line (series shape, truncation index) goes to stderr.
    Hyp {
        /// Comma-separated numerator parameters, e.g. -2,1 or -1/2,3/4
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        num: String,
        /// Comma-separated denominator parameters
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        den: String,
        /// Series argument
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Transform a sequence file (one rational per line, # comments)
    Transform {
        /// Input file; omit or pass '-' to read stdin
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Evaluate the Racah polynomial R_n(s, T) exactly
    Racah {
        /// Degree, 0 <= n <= T-1
        #[arg(short, long)]
        n: Index,
        /// Argument index, 0 <= s <= T-1
        #[arg(short, long)]
        s: Index,
        /// Box size, T >= 1
        #[arg(short = 'T', long = "t")]
        t: Index,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Print the full T x T table of R_n(s, T): rows n, columns s
    RacahTable {
        /// Box size, T >= 1
        #[arg(short = 'T', long = "t")]
        t: Index,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Check the conjecture |R_n(s,T)| <= 1 over a range of T
    ///
    /// Exits 0 when no cell violates the bound, 1 when any does; the
    /// report is byte-identical for every worker count.
    Sweep {
        #[arg(long = "t-min")]
        t_min: Index,
        #[arg(long = "t-max")]
        t_max: Index,
        /// Worker threads (affects wall-clock time only, never output)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
        /// Also write every grid cell to this file as CSV (t,n,s,value)
        #[arg(long = "grid-dump")]
        grid_dump: Option<PathBuf>,
    },
    /// Run a verification suite (or all of them)
    Verify {
        /// lemma340, c310a, c310b, kernel, c320, or all
        #[arg(long)]
        suite: String,
        /// Override the index limit of index-limited suites
        #[arg(long = "max-n")]
        max_n: Option<Index>,
        /// Override the T limit of the c320 suite
        #[arg(long = "max-t")]
        max_t: Option<Index>,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Hyp {
            num,
            den,
            z,
            format,
        } => cmd_hyp(&num, &den, &z, format),
        Command::Transform {
            file,
            direction,
            format,
        } => cmd_transform(file.as_deref(), direction, format),
        Command::Racah { n, s, t, format } => cmd_racah(n, s, t, format),
        Command::RacahTable { t, format } => cmd_racah_table(t, format),
        Command::Sweep {
            t_min,
            t_max,
            workers,
            format,
            grid_dump,
        } => cmd_sweep(t_min, t_max, workers as usize, format, grid_dump.as_deref()),
        Command::Verify {
            suite,
            max_n,
            max_t,
            format,
        } => cmd_verify(&suite, max_n, max_t, format),
    };
    ExitCode::from(code)
}

/// Exit code for a library-level rejection: malformed input is a usage
/// error, everything else is a mathematical-domain rejection.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ParseRational { .. }
        | Error::ParseSequence { .. }
        | Error::UnknownSuite { .. }
        | Error::InvalidRange { .. } => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn bail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

fn parse_param_list(text: &str) -> Result<Vec<Rational>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(Rational::parse).collect()
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(value).expect("reports always serialize")
    );
}

#[derive(Serialize)]
struct HypOutput {
    schema_version: u32,
    value: Rational,
    classification: kresch::hypergeom::SeriesClassification,
}

fn cmd_hyp(num: &str, den: &str, z: &str, format: OutputFormat) -> u8 {
    let spec = HypSeriesSpec::new(
        match parse_param_list(num) {
            Ok(v) => v,
            Err(e) => return bail(&e),
        },
        match parse_param_list(den) {
            Ok(v) => v,
            Err(e) => return bail(&e),
        },
        match Rational::parse(z) {
            Ok(v) => v,
            Err(e) => return bail(&e),
        },
    );
    let classification = classify(&spec);
    let value = match evaluate_terminating(&spec) {
        Ok(v) => v,
        Err(e) => return bail(&e),
    };
    match format {
        OutputFormat::Human => {
            let mut notes = vec![format!(
                "{}F{}({})",
                spec.numerator_params.len(),
                spec.denominator_params.len(),
                spec.argument
            )];
            if let Some(idx) = classification.truncation_index {
                notes.push(format!("terminates after index {idx}"));
            }
            if classification.saalschutzian {
                notes.push("Saalschutzian".to_owned());
            }
            eprintln!("{}", notes.join(", "));
            println!("{value}");
        }
        OutputFormat::Json => print_json(&HypOutput {
            schema_version: 1,
            value,
            classification,
        }),
        OutputFormat::Csv => println!("{value}"),
    }
    0
}

fn read_input(file: Option<&Path>) -> std::io::Result<String> {
    match file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

#[derive(Serialize)]
struct TransformOutput {
    schema_version: u32,
    entries: Vec<Rational>,
}

fn cmd_transform(file: Option<&Path>, direction: Direction, format: OutputFormat) -> u8 {
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return EXIT_USAGE;
        }
    };
    let input = match parse_sequence(&text) {
        Ok(s) => s,
        Err(e) => return bail(&e),
    };
    let output: Sequence = match direction {
        Direction::Forward => tilde_transform(&input),
        Direction::Inverse => inverse_transform(&input),
        Direction::Binomial => binomial_transform(&input),
        Direction::BinomialInverse => binomial_inverse(&input),
    };
    match format {
        OutputFormat::Human | OutputFormat::Csv => print!("{}", render_sequence(&output)),
        OutputFormat::Json => print_json(&TransformOutput {
            schema_version: 1,
            entries: output.entries().to_vec(),
        }),
    }
    0
}

#[derive(Serialize)]
struct RacahOutput {
    schema_version: u32,
    n: Index,
    s: Index,
    t: Index,
    value: Rational,
}

fn cmd_racah(n: Index, s: Index, t: Index, format: OutputFormat) -> u8 {
    let params = match RacahSpecialParams::new(n, s, t) {
        Ok(p) => p,
        Err(e) => return bail(&e),
    };
    let value = racah_special(&params);
    match format {
        OutputFormat::Human | OutputFormat::Csv => println!("{value}"),
        OutputFormat::Json => print_json(&RacahOutput {
            schema_version: 1,
            n,
            s,
            t,
            value,
        }),
    }
    0
}

#[derive(Serialize)]
struct RacahTableOutput {
    schema_version: u32,
    t: Index,
    /// `rows[n][s]` in canonical rational text.
    rows: Vec<Vec<Rational>>,
}

fn cmd_racah_table(t: Index, format: OutputFormat) -> u8 {
    if t < 1 {
        return bail(&Error::InvalidParams(
            "T must be at least 1".to_owned(),
        ));
    }
    let rows: Vec<Vec<Rational>> = (0..t)
        .map(|n| {
            (0..t)
                .map(|s| racah_special(&RacahSpecialParams::new(n, s, t).expect("in box")))
                .collect()
        })
        .collect();
    match format {
        OutputFormat::Human => {
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", cells.join(" "));
            }
        }
        OutputFormat::Csv => {
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", cells.join(","));
            }
        }
        OutputFormat::Json => print_json(&RacahTableOutput {
            schema_version: 1,
            t,
            rows,
        }),
    }
    0
}

fn write_grid_dump(path: &Path, grid: &[GridCell]) -> std::io::Result<()> {
    use std::io::Write;
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    writeln!(w, "t,n,s,value")?;
    for cell in grid {
        writeln!(w, "{},{},{},{}", cell.t, cell.n, cell.s, cell.value)?;
    }
    w.flush()
}

fn render_sweep_human(report: &SweepReport) {
    println!(
        "swept T = {}..{}: {} cells",
        report.t_range.min, report.t_range.max, report.cells_checked
    );
    println!(
        "max |R_n(s,T)| = {} at (n={}, s={}, T={})",
        report.max_abs_value,
        report.max_abs_witness.n,
        report.max_abs_witness.s,
        report.max_abs_witness.t
    );
    if report.violations.is_empty() {
        println!("no violations: every cell satisfies |R_n(s,T)| <= 1");
    } else {
        println!("{} VIOLATION(S) of |R_n(s,T)| <= 1:", report.violations.len());
        for v in &report.violations {
            println!("  (n={}, s={}, T={}): R = {}", v.n, v.s, v.t, v.value);
        }
    }
}

fn render_sweep_csv(report: &SweepReport) {
    println!("kind,t,n,s,value");
    for v in &report.violations {
        println!("violation,{},{},{},{}", v.t, v.n, v.s, v.value);
    }
    println!(
        "max,{},{},{},{}",
        report.max_abs_witness.t,
        report.max_abs_witness.n,
        report.max_abs_witness.s,
        report.max_abs_value
    );
    // summary row reuses the columns as t_min,n=t_max,s=cells,value=violations
    println!(
        "summary,{},{},{},{}",
        report.t_range.min,
        report.t_range.max,
        report.cells_checked,
        report.violations.len()
    );
}

fn cmd_sweep(
    t_min: Index,
    t_max: Index,
    workers: usize,
    format: OutputFormat,
    grid_dump: Option<&Path>,
) -> u8 {
    let report = if let Some(path) = grid_dump {
        let (report, grid) = match kt_sweep_with_grid(t_min, t_max, workers) {
            Ok(r) => r,
            Err(e) => return bail(&e),
        };
        if let Err(e) = write_grid_dump(path, &grid) {
            eprintln!("error: cannot write grid dump to {}: {e}", path.display());
            return EXIT_USAGE;
        }
        report
    } else {
        match kt_sweep(t_min, t_max, workers) {
            Ok(r) => r,
            Err(e) => return bail(&e),
        }
    };
    match format {
        OutputFormat::Human => render_sweep_human(&report),
        OutputFormat::Json => print_json(&report),
        OutputFormat::Csv => render_sweep_csv(&report),
    }
    if report.violations.is_empty() {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

fn render_verify_human(reports: &[VerificationReport]) {
    for r in reports {
        match r.status {
            SuiteStatus::Pass => println!(
                "{}: pass ({} cases, {} ms; {})",
                r.suite, r.cases_run, r.elapsed_ms, r.parameter_range
            ),
            SuiteStatus::Fail => {
                println!(
                    "{}: FAIL ({} cases, {} failures; {})",
                    r.suite,
                    r.cases_run,
                    r.failures.len(),
                    r.parameter_range
                );
                for f in &r.failures {
                    println!("  {}: lhs = {}, rhs = {}", f.params, f.lhs, f.rhs);
                }
            }
            SuiteStatus::Error => println!(
                "{}: error - {}",
                r.suite,
                r.error.as_deref().unwrap_or("unknown")
            ),
        }
    }
}

fn render_verify_csv(reports: &[VerificationReport]) {
    println!("suite,status,cases_run,failures,elapsed_ms");
    for r in reports {
        println!(
            "{},{},{},{},{}",
            r.suite,
            r.status,
            r.cases_run,
            r.failures.len(),
            r.elapsed_ms
        );
    }
}

fn cmd_verify(
    suite: &str,
    max_n: Option<Index>,
    max_t: Option<Index>,
    format: OutputFormat,
) -> u8 {
    let mut limits = SuiteLimits::default();
    if let Some(n) = max_n {
        limits.lemma340 = n;
        limits.c310a = n;
        limits.c310b = n;
        limits.kernel = n;
    }
    if let Some(t) = max_t {
        limits.c320 = t;
    }
    let reports = match run_suite(suite, &limits) {
        Ok(r) => r,
        Err(e) => return bail(&e),
    };
    match format {
        OutputFormat::Human => render_verify_human(&reports),
        OutputFormat::Json => print_json(&reports),
        OutputFormat::Csv => render_verify_csv(&reports),
    }
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}
