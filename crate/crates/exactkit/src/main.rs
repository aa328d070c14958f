//! `exactkit`: run axiom suites, emit Hall tables and fuzz monads.
//!
//! Exit codes: 0 pass, 1 a mathematical violation was found, 2 usage or
//! input error.

mod category;
mod formats;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exactkit_core::calculus::{check_parabelian_on, check_proto_exact_closure_on, HomTable};
use exactkit_core::category::FiniteCategory;
use exactkit_core::hall::HallTable;
use exactkit_core::monadcalc::{axiom_fuzz, ok_vs_okprime, MonadTag, DEFAULT_SEED};
use exactkit_core::polynorm::ns_axiom_suite;
use exactkit_core::report::Report;
use serde_json::json;

use category::{CategorySpec, Visitor};

const SEED_VAR: &str = "EXACTKIT_SEED";

#[derive(Parser)]
#[command(name = "exactkit", version, about = "Exact checks of kernel/cokernel axioms in finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the parabelian and proto-exact suites on a category.
    Verify(VerifyArgs),
    /// Write the Hall table of a category as CSV.
    Hall(HallArgs),
    /// Fuzz the monad axioms for a tag.
    Fuzz(FuzzArgs),
    /// Validate a JSON object and print its canonical form.
    Fmt(FmtArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// psets, psets-strict, gset:<trivial|mu<r>>, quiver:<file>, precrystal[:<k>],
    /// closure, matroid, cmon, mod:<B|F2|trivial>, polynorm, groups-demo
    #[arg(long)]
    category: String,
    /// Largest object size (base point included); dimension for polynorm.
    #[arg(long)]
    max_size: usize,
    #[arg(long)]
    json: bool,
    /// Sample count for polynorm.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct HallArgs {
    #[arg(long)]
    category: String,
    #[arg(long)]
    max_size: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also check the associativity identities, exiting 1 on a violation.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct FuzzArgs {
    /// d, dstar, zinf, oprime or f1r:<r>
    #[arg(long)]
    monad: String,
    /// Largest arity.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FmtArgs {
    /// Input file, `-` for stdin.
    input: PathBuf,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_VAR}={v:?} is not an integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn emit(report: &Report, json: bool, extra: serde_json::Value) -> ExitCode {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error of the run
    let _ = if json {
        let mut doc = json!({
            "schema": formats::SCHEMA,
            "passed": report.passed(),
            "checked": report.checked(),
            "violations": report.violations(),
            "report": report,
        });
        if let (Some(d), Some(e)) = (doc.as_object_mut(), extra.as_object()) {
            d.extend(e.clone());
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))
    } else {
        write!(out, "{report}").and_then(|_| {
            writeln!(
                out,
                "{} checked={} violations={}",
                if report.passed() { "PASS" } else { "FAIL" },
                report.checked(),
                report.violations()
            )
        })
    };
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

struct RunSuites {
    bound: usize,
}

impl Visitor for RunSuites {
    type Out = Result<Report, String>;

    fn visit<C: FiniteCategory>(self, cat: &C) -> Self::Out {
        let table = HomTable::build(cat, self.bound).map_err(|e| e.to_string())?;
        let mut report = check_parabelian_on(cat, &table).map_err(|e| e.to_string())?;
        report.extend(check_proto_exact_closure_on(cat, &table).map_err(|e| e.to_string())?);
        report.note("bound", self.bound);
        report.note("objects", table.objects.len());
        Ok(report)
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    if args.max_size == 0 {
        return usage("--max-size must be at least 1");
    }
    let spec = match CategorySpec::parse(&args.category) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let seed = match seed(args.seed) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let result = match spec.visit(RunSuites { bound: args.max_size }) {
        Some(r) => r,
        None => ns_axiom_suite(args.max_size, args.samples, seed).map_err(|e| e.to_string()),
    };
    match result {
        Ok(report) => emit(
            &report,
            args.json,
            json!({"category": args.category, "max_size": args.max_size}),
        ),
        Err(e) => usage(e),
    }
}

struct BuildHall {
    bound: usize,
}

impl Visitor for BuildHall {
    type Out = Result<(Vec<[String; 4]>, Report), String>;

    fn visit<C: FiniteCategory>(self, cat: &C) -> Self::Out {
        let table = HallTable::build(cat, self.bound).map_err(|e| e.to_string())?;
        let key = |i: usize| format!("{:?}", table.keys[i]);
        let rows = table
            .rows()
            .into_iter()
            .map(|(z, x, y, c)| [key(z), key(x), key(y), c.to_string()])
            .collect();
        let mut report = table.associativity(&cat.name());
        report.note("bound", self.bound);
        Ok((rows, report))
    }
}

fn write_csv(rows: &[[String; 4]], out: Box<dyn Write>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["z_key", "x_key", "y_key", "count"])?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_hall(args: HallArgs) -> ExitCode {
    let spec = match CategorySpec::parse(&args.category) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let Some(result) = spec.visit(BuildHall { bound: args.max_size }) else {
        return usage(format!("{} has no finite object enumeration", args.category));
    };
    let (rows, report) = match result {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let out: Box<dyn Write> = match &args.out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => return usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Box::new(io::stdout()),
    };
    if let Err(e) = write_csv(&rows, out) {
        return usage(e);
    }
    if args.check {
        eprint!("{report}");
        if !report.passed() {
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_fuzz(args: FuzzArgs) -> ExitCode {
    let tag = match MonadTag::parse(&args.monad) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let seed = match seed(args.seed) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let mut report = match axiom_fuzz(&tag, args.n, args.trials, seed) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if tag == MonadTag::OprimeQ {
        let witness = ok_vs_okprime(args.n.max(1), args.trials, seed);
        report.extend(witness);
    }
    emit(&report, args.json, json!({"monad": args.monad, "seed": seed}))
}

fn cmd_fmt(args: FmtArgs) -> ExitCode {
    let mut text = String::new();
    let read = if args.input.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(&args.input).map(|t| text = t)
    };
    if let Err(e) = read {
        return usage(format!("cannot read {}: {e}", args.input.display()));
    }
    match formats::format_document(&text) {
        Ok(out) => {
            let _ = io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Hall(a) => cmd_hall(a),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Fmt(a) => cmd_fmt(a),
    }
}
