//! Command-line front end: parameter scans, single-candidate analysis,
//! bound evaluation, and explicit design checking.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tridesign::design::{
    design_strength, fixture, load_design, verify_conjecture_witness, DesignError,
};
use tridesign::exact::{format_rat, parse_rat, Rat};
use tridesign::feasibility::{
    classify, cubic_coefficients, scan_candidate_count, scan_range_with, CandidateReport,
    ScanOptions, Status,
};
use tridesign::ortho::levenshtein_bound_l5;
use tridesign::report::{record_to_json, records_to_csv, scan_report_json, status_name};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_UNRESOLVED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "tridesign", version, about = "Feasibility of spherical 3-distance 5-design parameters, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan all candidate (n, M) in a dimension range
    Scan {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include rejected records
        #[arg(long)]
        verbose: bool,
        /// Scan every M in range, not just n | 2M (slow; consistency sweeps)
        #[arg(long)]
        no_divisibility_filter: bool,
        /// Suppress the timestamp for byte-deterministic output
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Analyze a single candidate in full detail
    Analyze {
        #[arg(long)]
        n: u32,
        /// T with 2M = Tn
        #[arg(long)]
        t: Option<u64>,
        /// Cardinality M (alternative to --t)
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
    /// Evaluate the L_5(n, s) cardinality bound exactly
    Bound {
        #[arg(long)]
        n: u32,
        /// Largest inner product, as a rational like 1/4
        #[arg(long)]
        s: String,
    },
    /// Verify an explicit design file or built-in fixture
    CheckDesign {
        #[arg(long, conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Built-in: hexagon, heptagon, icosahedron, e8_derived_56
        #[arg(long)]
        fixture: Option<String>,
        /// Maximum strength to test
        #[arg(long, default_value_t = 6)]
        strength: u32,
        /// Require exact arithmetic (rejects numeric instances)
        #[arg(long)]
        exact: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Scan {
            n_min,
            n_max,
            jobs,
            format,
            out,
            verbose,
            no_divisibility_filter,
            no_timestamp,
        } => cmd_scan(n_min, n_max, jobs, &format, out, verbose, no_divisibility_filter, no_timestamp),
        Command::Analyze { n, t, m, format } => cmd_analyze(n, t, m, &format),
        Command::Bound { n, s } => cmd_bound(n, &s),
        Command::CheckDesign { file, fixture, strength, exact } => {
            cmd_check_design(file, fixture, strength, exact)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    n_min: u32,
    n_max: u32,
    jobs: Option<usize>,
    format: &str,
    out: Option<PathBuf>,
    verbose: bool,
    no_divisibility_filter: bool,
    no_timestamp: bool,
) -> u8 {
    if n_min < 3 || n_min > n_max {
        eprintln!("error: need 3 <= n-min <= n-max");
        return EXIT_USAGE;
    }
    if let Some(j) = jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("warning: thread pool already initialized; --jobs ignored");
        }
    }
    let opts = ScanOptions { verbose, use_divisibility_filter: !no_divisibility_filter };
    let records = scan_range_with(n_min, n_max, opts);
    let examined = scan_candidate_count(n_min, n_max, opts.use_divisibility_filter);
    eprintln!(
        "scanned n = {n_min}..{n_max}: {examined} candidates examined, {} records",
        records.len()
    );
    let timestamp = if no_timestamp {
        None
    } else {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs().to_string())
    };
    let body = match format {
        "csv" => records_to_csv(&records),
        _ => {
            let v = scan_report_json(&records, n_min, n_max, examined, timestamp);
            let mut s = serde_json::to_string_pretty(&v).expect("serialization cannot fail");
            s.push('\n');
            s
        }
    };
    if let Err(e) = write_output(out.as_deref(), &body) {
        eprintln!("error: cannot write output: {e}");
        return EXIT_IO;
    }
    if records.iter().any(|r| r.status == Status::SurvivorUnresolved) {
        eprintln!("warning: unresolved survivors present");
        return EXIT_UNRESOLVED;
    }
    EXIT_OK
}

fn write_output(path: Option<&std::path::Path>, body: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn cmd_analyze(n: u32, t: Option<u64>, m: Option<u64>, format: &str) -> u8 {
    if n < 2 {
        eprintln!("error: n must be at least 2");
        return EXIT_USAGE;
    }
    let m_big: BigInt = match (t, m) {
        (Some(t), None) => {
            let prod = BigInt::from(t) * BigInt::from(n);
            if &prod % 2 != BigInt::from(0) {
                eprintln!("error: T*n must be even (M = T*n/2)");
                return EXIT_USAGE;
            }
            prod / 2
        }
        (None, Some(m)) => BigInt::from(m),
        _ => {
            eprintln!("error: provide exactly one of --t or --m");
            return EXIT_USAGE;
        }
    };
    let report = classify(n, &m_big);
    if format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&record_to_json(&report)).expect("serialization")
        );
        return EXIT_OK;
    }
    print_analysis(&report, n, &m_big);
    EXIT_OK
}

fn print_analysis(report: &CandidateReport, n: u32, m: &BigInt) {
    println!("(n, M) = ({n}, {m})");
    match &report.parameters.t {
        Some(t) => println!("T = {t} (2M = Tn)"),
        None => println!("T undefined: n does not divide 2M"),
    }
    let [d, c, b, a] = cubic_coefficients(n, m);
    println!("cubic: ({a}) t^3 + ({b}) t^2 + ({c}) t + ({d})");
    if let Some(tr) = &report.inner_products {
        let fmt = |v: &tridesign::feasibility::RootValue| match v {
            tridesign::feasibility::RootValue::Exact(r) => format_rat(r),
            tridesign::feasibility::RootValue::Isolated(iv) => {
                format!("[{}, {}]", format_rat(&iv.lo), format_rat(&iv.hi))
            }
        };
        println!("(a, b, c) = ({}, {}, {})", fmt(&tr.a), fmt(&tr.b), fmt(&tr.c));
    }
    if let Some(dist) = &report.distribution {
        let fmt = |v: &tridesign::feasibility::DistValue| match v {
            tridesign::feasibility::DistValue::Exact(r) => format_rat(r),
            tridesign::feasibility::DistValue::Interval(iv) => {
                format!("[{}, {}]", format_rat(&iv.lo), format_rat(&iv.hi))
            }
        };
        println!("(X, Y, Z) = ({}, {}, {})", fmt(&dist.x), fmt(&dist.y), fmt(&dist.z));
    }
    if let Status::KnownFamilyMatch(fams) = &report.status {
        for f in fams {
            match f {
                tridesign::feasibility::KnownFamily::Tight5 { m: Some(k) } => {
                    println!("family: Tight5 (m = {k})")
                }
                tridesign::feasibility::KnownFamily::Tight5 { m: None } => {
                    println!("family: Tight5 (icosahedron)")
                }
                tridesign::feasibility::KnownFamily::Case3 { m } => {
                    println!("family: Case3 (m = {m})")
                }
            }
        }
    }
    if let Some(derived) = &report.derived {
        for dr in derived {
            let verdict = match &dr.verdict {
                tridesign::derived::DerivedVerdict::Skipped(reason) => {
                    format!("Skipped ({reason})")
                }
                other => format!("{other:?}"),
            };
            let list = |xs: &[Rat]| {
                xs.iter().map(format_rat).collect::<Vec<_>>().join(", ")
            };
            println!(
                "derived {}: cardinality {}, products ({}), values ({}), verdict {}",
                dr.which.as_str(),
                format_rat(&dr.cardinality),
                list(&dr.products),
                list(&dr.values),
                verdict
            );
        }
    }
    println!("status: {}", status_name(&report.status));
}

fn cmd_bound(n: u32, s: &str) -> u8 {
    if n < 2 {
        eprintln!("error: n must be at least 2");
        return EXIT_USAGE;
    }
    let s: Rat = match parse_rat(s) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match levenshtein_bound_l5(n, &s) {
        Ok(v) => {
            println!("{}", format_rat(&v));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
}

fn cmd_check_design(
    file: Option<PathBuf>,
    fixture_name: Option<String>,
    strength: u32,
    exact: bool,
) -> u8 {
    let instance = match (file, fixture_name) {
        (Some(path), None) => match load_design(&path) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_DATA;
            }
        },
        (None, Some(name)) => match fixture(&name) {
            Ok(d) => d,
            Err(e @ DesignError::UnknownFixture(_)) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_DATA;
            }
        },
        _ => {
            eprintln!("error: provide exactly one of --file or --fixture");
            return EXIT_USAGE;
        }
    };
    if exact && !instance.is_exact() {
        eprintln!("error: exact mode requires rational tokens");
        return EXIT_DATA;
    }
    println!("dimension {} size {}", instance.dimension, instance.size);
    let tau = design_strength(&instance, strength);
    println!("strength {tau} (tested up to {strength})");
    let witness = verify_conjecture_witness(&instance);
    for check in &witness.checks {
        println!(
            "{} {}: {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    if witness.all_pass() && tau >= 5 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
