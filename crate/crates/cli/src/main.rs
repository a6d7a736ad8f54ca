//! `apery` — verification, evaluation, and closed-form rediscovery runs
//! over the identity catalog, with human or machine-readable output.
//!
//! Exit codes: 0 all requested checks pass; 1 a verification failed;
//! 2 usage error; 3 numerical non-convergence.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use apery_core::ledger::{
    catalog, verify_all, Evaluator, IdentityId, MethodOverride, Rhs, Status, VerificationReport,
    VerifyOptions,
};
use apery_core::numerics::{make_context_with_ceiling, PrecisionContext};
use apery_core::relation::{discover, RelationStatus};
use apery_core::series::SeriesId;
use apery_core::special::{ClosedForm, Constants, ConstantSymbol};

const USAGE_ERROR: u8 = 2;
const NONCONVERGED: u8 = 3;

/// Environment variable holding the digits ceiling (flags still choose the
/// actual digits; the ceiling only rejects oversized requests).
const CEILING_ENV: &str = "APERY_DIGITS_CEILING";

#[derive(Parser)]
#[command(
    name = "apery",
    version,
    about = "High-precision verification of a catalog of central-binomial series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Args)]
struct CommonOpts {
    /// Certified decimal digits for the run
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Output format: aligned table or JSON lines
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the identity catalog with anchors
    List {
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Verify catalog identities and stream one report per entry
    Verify {
        /// Entry ids (comma-separated), or "all"
        #[arg(long = "id", value_delimiter = ',', required = true)]
        ids: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
        /// Worker threads (default: available cores)
        #[arg(long)]
        parallelism: Option<usize>,
        /// Strategy override for series entries
        #[arg(long)]
        method: Option<String>,
        /// Term budget for summation witnesses / pointwise samples
        #[arg(long)]
        terms: Option<u64>,
        /// Restrict a per-k family to a single member
        #[arg(long)]
        k: Option<u64>,
    },
    /// Evaluate a single value (an entry's integral/series) with an error gauge
    Eval {
        /// Catalog entry id
        #[arg(long)]
        id: Option<String>,
        /// Series id (L1_III, L1_IV, THM_I, THM_II)
        #[arg(long)]
        series: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Rediscover a closed form over the constant basis by PSLQ
    Discover {
        /// Series id (L1_III, L1_IV, THM_I, THM_II)
        #[arg(long)]
        series: String,
        /// Certified decimal digits for the run
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Comma-separated basis symbols (default: the natural basis)
        #[arg(long)]
        basis: Option<String>,
    },
    /// Print the constant basis values
    Constants {
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Serialize)]
struct MachineReport<'a> {
    id: &'a str,
    method: &'a str,
    lhs_value: &'a str,
    rhs_value: &'a str,
    abs_residual: &'a str,
    digits_agreed: i64,
    work: u64,
    elapsed_seconds: f64,
    status: &'a str,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("run `apery --help` for the synopsis");
    ExitCode::from(USAGE_ERROR)
}

fn digits_ceiling() -> u32 {
    std::env::var(CEILING_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(apery_core::numerics::DEFAULT_DIGITS_CEILING)
}

fn build_context(digits: u32) -> Result<PrecisionContext, ExitCode> {
    make_context_with_ceiling(digits, digits_ceiling())
        .map_err(|e| usage_error(&format!("{e} (set {CEILING_ENV} to raise the ceiling)")))
}

fn parse_method(s: Option<&str>) -> Result<Option<MethodOverride>, ExitCode> {
    match s {
        None => Ok(None),
        Some(m) => MethodOverride::parse(m).map(Some).ok_or_else(|| {
            usage_error(&format!(
                "unknown method '{m}' (expected direct|accelerated|integral)"
            ))
        }),
    }
}

fn print_report_machine(r: &VerificationReport) {
    let record = MachineReport {
        id: &r.id,
        method: &r.method,
        lhs_value: &r.lhs_value,
        rhs_value: &r.rhs_value,
        abs_residual: &r.abs_residual,
        digits_agreed: r.digits_agreed,
        work: r.work,
        elapsed_seconds: r.elapsed_seconds,
        status: r.status.as_str(),
    };
    println!("{}", serde_json::to_string(&record).expect("serializable record"));
}

fn run_verify(
    ids: Vec<String>,
    common: CommonOpts,
    parallelism: Option<usize>,
    method: Option<String>,
    terms: Option<u64>,
    k: Option<u64>,
) -> ExitCode {
    // reject unknown ids before any computation
    let selected: Vec<IdentityId> = if ids.iter().any(|s| s == "all") {
        IdentityId::ALL.to_vec()
    } else {
        let mut out = Vec::new();
        for s in &ids {
            match IdentityId::parse(s) {
                Some(id) => out.push(id),
                None => return usage_error(&format!("unknown identity id '{s}'")),
            }
        }
        out
    };
    let method = match parse_method(method.as_deref()) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let ctx = match build_context(common.digits) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let consts = match Constants::compute(&ctx) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(NONCONVERGED);
        }
    };
    let opts = VerifyOptions {
        k,
        method,
        terms,
        witness: true,
    };
    let parallelism = parallelism
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let reports: Vec<VerificationReport> = if selected.len() == IdentityId::ALL.len() {
        verify_all(&ctx, &consts, parallelism, &opts)
    } else {
        // small selections run on one evaluator, ordered by id
        let mut ev = Evaluator::new(&ctx, &consts);
        let mut rs: Vec<VerificationReport> = selected
            .iter()
            .map(|&id| ev.verify_entry(id, &opts))
            .collect();
        rs.sort_by(|a, b| a.id.cmp(&b.id));
        rs
    };

    match common.format {
        Format::Machine => {
            for r in &reports {
                print_report_machine(r);
            }
        }
        Format::Human => {
            println!("{:<10} {:<14} {:>14}", "id", "status", "digits_agreed");
            for r in &reports {
                println!("{:<10} {:<14} {:>14}", r.id, r.status.as_str(), r.digits_agreed);
            }
            let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
            println!("{passed}/{} entries pass at {} digits", reports.len(), common.digits);
        }
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else if reports.iter().any(|r| r.status == Status::NonConverged) {
        ExitCode::from(NONCONVERGED)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_eval(
    id: Option<String>,
    series: Option<String>,
    common: CommonOpts,
    method: Option<String>,
    terms: Option<u64>,
    k: Option<u64>,
) -> ExitCode {
    let method = match parse_method(method.as_deref()) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let entry = match (&id, &series) {
        (Some(_), Some(_)) | (None, None) => {
            return usage_error("eval takes exactly one of --id or --series")
        }
        (Some(s), None) => match IdentityId::parse(s) {
            Some(id) => id,
            None => return usage_error(&format!("unknown identity id '{s}'")),
        },
        (None, Some(s)) => match SeriesId::parse(s) {
            Some(sid) => match sid {
                SeriesId::L1III => IdentityId::L1III,
                SeriesId::L1IV => IdentityId::L1IV,
                SeriesId::ThmI => IdentityId::ThmI,
                SeriesId::ThmII => IdentityId::ThmII,
            },
            None => return usage_error(&format!("unknown series id '{s}'")),
        },
    };
    let ctx = match build_context(common.digits) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let consts = match Constants::compute(&ctx) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(NONCONVERGED);
        }
    };
    let opts = VerifyOptions {
        k,
        method,
        terms,
        witness: false,
    };
    let mut ev = Evaluator::new(&ctx, &consts);
    match ev.eval_entry(entry, &opts) {
        Ok(out) => {
            let digits = common.digits as usize;
            match common.format {
                Format::Human => {
                    println!("id:     {}", entry.name());
                    println!("value:  {}", out.value.to_sci_string(digits));
                    println!("method: {}", out.method);
                    println!("gauge:  {}", out.gauge.to_sci_string(3));
                    println!("work:   {}", out.work);
                }
                Format::Machine => {
                    #[derive(Serialize)]
                    struct EvalRecord<'a> {
                        id: &'a str,
                        value: String,
                        method: &'a str,
                        error_gauge: String,
                        work: u64,
                    }
                    let rec = EvalRecord {
                        id: entry.name(),
                        value: out.value.to_sci_string(digits),
                        method: &out.method,
                        error_gauge: out.gauge.to_sci_string(3),
                        work: out.work,
                    };
                    println!("{}", serde_json::to_string(&rec).expect("serializable record"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(NONCONVERGED)
        }
    }
}

fn default_basis(series: SeriesId) -> Vec<ConstantSymbol> {
    match series {
        SeriesId::L1III => vec![ConstantSymbol::Zeta2],
        SeriesId::L1IV => vec![
            ConstantSymbol::Zeta4,
            ConstantSymbol::Li4Half,
            ConstantSymbol::Ln2SqZeta2,
            ConstantSymbol::Ln2P4,
        ],
        SeriesId::ThmI | SeriesId::ThmII => vec![
            ConstantSymbol::GSq,
            ConstantSymbol::Zeta4,
            ConstantSymbol::Li4Half,
            ConstantSymbol::Ln2SqZeta2,
            ConstantSymbol::Ln2P4,
        ],
    }
}

fn closed_form_display(cf: &ClosedForm) -> String {
    format!("{cf}")
}

fn run_discover(series: String, digits: u32, format: Format, basis: Option<String>) -> ExitCode {
    let sid = match SeriesId::parse(&series) {
        Some(s) => s,
        None => return usage_error(&format!("unknown series id '{series}'")),
    };
    let basis_syms: Vec<ConstantSymbol> = match basis {
        None => default_basis(sid),
        Some(spec) => {
            let mut out = Vec::new();
            for name in spec.split(',') {
                match ConstantSymbol::parse(name.trim()) {
                    Some(s) => out.push(s),
                    None => return usage_error(&format!("unknown basis symbol '{name}'")),
                }
            }
            out
        }
    };
    let ctx = match build_context(digits) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if ctx.target_digits() < 50 {
        return usage_error("discovery needs --digits of at least 50");
    }
    let consts = match Constants::compute(&ctx) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(NONCONVERGED);
        }
    };
    match discover(sid, &basis_syms, &ctx, &consts) {
        Ok(d) => {
            debug_assert_eq!(d.relation.status, RelationStatus::Found);
            match format {
                Format::Human => {
                    println!("series:     {}", sid.name());
                    println!("candidate:  {}", closed_form_display(&d.candidate));
                    let coeffs: Vec<String> =
                        d.relation.coefficients.iter().map(|c| c.to_string()).collect();
                    println!("relation:   [{}] over [value, {}]",
                        coeffs.join(", "),
                        basis_syms.iter().map(|s| s.name()).collect::<Vec<_>>().join(", "));
                    println!("residual:   {}", d.relation.residual.to_sci_string(3));
                    println!(
                        "re-verified at {} digits, residual {}",
                        d.reverify_digits,
                        d.reverify_residual.to_sci_string(3)
                    );
                }
                Format::Machine => {
                    #[derive(Serialize)]
                    struct DiscoverRecord {
                        series: String,
                        relation: Vec<String>,
                        candidate: Vec<(String, String)>,
                        residual: String,
                        reverify_digits: u32,
                        reverify_residual: String,
                    }
                    let rec = DiscoverRecord {
                        series: sid.name().into(),
                        relation: d.relation.coefficients.iter().map(|c| c.to_string()).collect(),
                        candidate: d
                            .candidate
                            .terms()
                            .iter()
                            .map(|(c, s)| (c.to_string(), s.name().into()))
                            .collect(),
                        residual: d.relation.residual.to_sci_string(3),
                        reverify_digits: d.reverify_digits,
                        reverify_residual: d.reverify_residual.to_sci_string(3),
                    };
                    println!("{}", serde_json::to_string(&rec).expect("serializable record"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(NONCONVERGED)
        }
    }
}

fn run_constants(common: CommonOpts) -> ExitCode {
    let ctx = match build_context(common.digits) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let consts = match Constants::compute(&ctx) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(NONCONVERGED);
        }
    };
    let digits = common.digits as usize;
    for sym in ConstantSymbol::ALL {
        let v = consts.value(sym).to_sci_string(digits);
        match common.format {
            Format::Human => println!("{:<14} {}", sym.name(), v),
            Format::Machine => {
                #[derive(Serialize)]
                struct ConstRecord<'a> {
                    symbol: &'a str,
                    value: String,
                }
                println!(
                    "{}",
                    serde_json::to_string(&ConstRecord {
                        symbol: sym.name(),
                        value: v
                    })
                    .expect("serializable record")
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_list(format: Format) -> ExitCode {
    match format {
        Format::Human => {
            println!("{:<10} {:<10} {:<20} description", "id", "param", "anchor");
            for e in catalog() {
                let param = match e.param {
                    Some((lo, hi)) => format!("k={lo}..{hi}"),
                    None => String::from("-"),
                };
                println!("{:<10} {:<10} {:<20} {}", e.id.name(), param, e.anchor, e.description);
            }
        }
        Format::Machine => {
            #[derive(Serialize)]
            struct ListRecord<'a> {
                id: &'a str,
                anchor: &'a str,
                description: &'a str,
                strategy: &'a str,
                param_lo: Option<u64>,
                param_hi: Option<u64>,
                rhs: String,
            }
            for e in catalog() {
                let rhs = match &e.rhs {
                    Rhs::Form(cf) => format!("{cf}"),
                    Rhs::Alternate(d) => (*d).into(),
                    Rhs::PerParameter(d) => (*d).into(),
                };
                let rec = ListRecord {
                    id: e.id.name(),
                    anchor: e.anchor,
                    description: e.description,
                    strategy: e.lhs.name(),
                    param_lo: e.param.map(|p| p.0),
                    param_hi: e.param.map(|p| p.1),
                    rhs,
                };
                println!("{}", serde_json::to_string(&rec).expect("serializable record"));
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `apery list | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::List { format } => run_list(format),
        Command::Verify {
            ids,
            common,
            parallelism,
            method,
            terms,
            k,
        } => run_verify(ids, common, parallelism, method, terms, k),
        Command::Eval {
            id,
            series,
            common,
            method,
            terms,
            k,
        } => run_eval(id, series, common, method, terms, k),
        Command::Discover {
            series,
            digits,
            format,
            basis,
        } => run_discover(series, digits, format, basis),
        Command::Constants { common } => run_constants(common),
    }
}
