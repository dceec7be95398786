//! `lpo`: orientation checks, certificates and derivation-height tables for
//! `.trs` files.
//!
//! Exit codes: 0 success, 1 not orientable, 2 parse or input error,
//! 3 too many symbols for synthesis, 4 non-termination, 5 budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use lpo_core::approx::{predecessors_with_budget, DEFAULT_NODE_BUDGET};
use lpo_core::ordinal::default_budget;
use lpo_core::rewrite::DEFAULT_STEP_CAP;
use lpo_core::term::ground_terms_up_to_size;
use lpo_core::trs_file::parse_term_with;
use lpo_core::{
    certify, dh_complexity, fast_f, orient, parse_trs, slow_g, static_p_r, synthesize_precedence,
    CertifyOptions, Error, OrdinalCnf, Signature, Term, TrsError, TrsFile, WpHeights,
};

const NOT_ORIENTABLE: u8 = 1;
const INPUT: u8 = 2;
const TOO_MANY_SYMBOLS: u8 = 3;
const NON_TERMINATING: u8 = 4;
const BUDGET: u8 = 5;

/// Node budget for the lower-bound fallback in `measure` when the exact
/// height does not fit the regular budget.
const FALLBACK_NODE_BUDGET: u64 = 200_000_000;

#[derive(Parser)]
#[command(
    name = "lpo",
    version,
    about = "Lexicographic path order termination and complexity certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every rule decreases in the lpo; synthesize a precedence
    /// when none is given.
    Check {
        file: PathBuf,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Emit a termination and complexity certificate.
    Classify {
        file: PathBuf,
        #[arg(long)]
        prec: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 8)]
        containment_bound: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
    /// Tabulate dh_R(n) with a witness and its height at p_R.
    Measure {
        file: PathBuf,
        #[arg(long)]
        prec: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
    /// Evaluate F_a(n), G_n(a), predecessor sets or heights.
    Hierarchy(HierarchyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "query")]
struct Query {
    /// F_ALPHA(N)
    #[arg(long, num_args = 2, value_names = ["ALPHA", "N"])]
    fast: Option<Vec<String>>,
    /// G_N(ALPHA)
    #[arg(long, num_args = 2, value_names = ["ALPHA", "N"])]
    slow: Option<Vec<String>>,
    /// Every ground s with s <P TERM, by size then name
    #[arg(long, num_args = 2, value_names = ["TERM", "P"])]
    pred: Option<Vec<String>>,
    /// Height of TERM in the well-founded part of <P
    #[arg(long, num_args = 2, value_names = ["TERM", "P"])]
    height: Option<Vec<String>>,
}

#[derive(Args)]
struct HierarchyArgs {
    #[command(flatten)]
    query: Query,
    /// Signature for --pred and --height
    #[arg(long)]
    sig: Option<PathBuf>,
    #[arg(long)]
    prec: Option<String>,
    /// Value budget for --fast, node budget for --pred and --height
    #[arg(long)]
    budget: Option<String>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: INPUT,
            message: message.into(),
        }
    }
}

impl From<TrsError> for Failure {
    fn from(e: TrsError) -> Self {
        Failure::input(format!("parse error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::TooManySymbols(_) => TOO_MANY_SYMBOLS,
            Error::NonTerminating(_) => NON_TERMINATING,
            Error::BudgetExceeded { .. } | Error::ValueBudgetExceeded => BUDGET,
            _ => INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { file, prec } => check(&file, prec.as_deref()),
        Command::Classify {
            file,
            prec,
            json,
            containment_bound,
            max_size,
            step_cap,
        } => {
            let opts = CertifyOptions {
                containment_bound,
                curve_max_size: max_size,
                step_cap,
            };
            classify(&file, prec.as_deref(), json, &opts)
        }
        Command::Measure {
            file,
            prec,
            max_size,
            step_cap,
        } => measure(&file, prec.as_deref(), max_size, step_cap),
        Command::Hierarchy(args) => hierarchy(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lpo: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(path: &Path) -> Result<TrsFile, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(parse_trs(&text)?)
}

/// Reads `0<s<A, 0<f` into a precedence over the symbols of `sig`.
fn with_chains(sig: &Signature, chains: &str) -> Result<Signature, Failure> {
    let mut pairs = Vec::new();
    for chain in chains.split(',') {
        let names: Vec<&str> = chain.split('<').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Failure::input(format!("bad precedence `{chains}`")));
        }
        let syms = names
            .iter()
            .map(|n| {
                sig.sym(n)
                    .ok_or_else(|| Failure::input(format!("precedence names unknown symbol `{n}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        pairs.extend(syms.windows(2).map(|w| (w[0], w[1])));
    }
    Ok(sig.with_precedence(pairs)?)
}

fn chain_text(sig: &Signature, order: &[lpo_core::Sym]) -> String {
    order
        .iter()
        .map(|&f| sig.name(f))
        .collect::<Vec<_>>()
        .join(" < ")
}

fn check(path: &Path, prec: Option<&str>) -> Outcome {
    let file = load(path)?;
    let (result, sig) = match prec {
        Some(chains) => {
            let sig = with_chains(&file.signature, chains)?;
            (orient(&file.trs, &sig)?, sig)
        }
        None => {
            let r = synthesize_precedence(&file.trs, &file.signature)?;
            (r, file.signature.clone())
        }
    };
    for (i, (rule, ok)) in file.trs.rules().iter().zip(&result.per_rule).enumerate() {
        let verdict = if *ok { "decreasing" } else { "not decreasing" };
        println!(
            "rule {}: {} -> {}  {verdict}",
            i + 1,
            rule.lhs.display(&sig),
            rule.rhs.display(&sig)
        );
    }
    if result.orientable {
        let order = result.precedence_used.as_deref().unwrap_or(&[]);
        println!("orientable with precedence {}", chain_text(&sig, order));
        return Ok(0);
    }
    let rule = result.first_failure().map(|i| i + 1).unwrap_or(0);
    match prec {
        Some(_) => println!("the given precedence does not orient rule {rule}"),
        None => println!("no precedence orients rule {rule}"),
    }
    Ok(NOT_ORIENTABLE)
}

fn classify(path: &Path, prec: Option<&str>, json: bool, opts: &CertifyOptions) -> Outcome {
    let file = load(path)?;
    let given = prec
        .map(|chains| with_chains(&file.signature, chains))
        .transpose()?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let cert = certify(&name, &file, given.as_ref(), opts)?;
    if json {
        let text =
            serde_json::to_string_pretty(&cert).map_err(|e| Failure::input(e.to_string()))?;
        println!("{text}");
    } else {
        println!("system: {}", cert.system_name);
        println!("orientable: {}", cert.orientable);
        if let Some(p) = &cert.precedence {
            println!("precedence: {}", p.join(" < "));
        }
        if let Some(e) = &cert.classification_error {
            println!("classification: {e}");
        }
        if let (Some(k), Some(m), Some(b)) = (cert.k, cert.m, &cert.bound_index) {
            println!(
                "k = {k}, m = {m}, max arity = {}",
                cert.max_arity.unwrap_or(0)
            );
            println!("dh_R is elementary in F_({b} + q) for some finite q");
        }
        if let Some(p) = cert.p_r {
            match cert.containment_checked_to {
                Some(n) => println!("p_R = {p} (every ground step from size <= {n} checked)"),
                None => println!("p_R = {p} (containment not confirmed)"),
            }
        }
        if let Some(curve) = &cert.curve {
            for pt in &curve.points {
                println!("dh_R({}) = {}  witness {}", pt.n, pt.dh, pt.witness);
            }
            if let Some(e) = &curve.error {
                println!("curve: {e}");
            }
        }
    }
    Ok(if cert.orientable { 0 } else { NOT_ORIENTABLE })
}

/// Height column of `measure`: exact when it fits the node budget, otherwise
/// the largest lower bound up to `dh` that could be confirmed.
fn height_cell(sig: &Signature, p: u32, t: &Term, dh: u64) -> String {
    if let Ok(h) = WpHeights::new(sig, p, DEFAULT_NODE_BUDGET).height(t) {
        return h.to_string();
    }
    match WpHeights::new(sig, p, FALLBACK_NODE_BUDGET).capped(t, dh) {
        Ok(h) => format!(">={h}"),
        Err(_) => "?".to_string(),
    }
}

fn measure(path: &Path, prec: Option<&str>, max_size: usize, step_cap: u64) -> Outcome {
    let file = load(path)?;
    let sig = match prec {
        Some(chains) => with_chains(&file.signature, chains)?,
        None => match synthesize_precedence(&file.trs, &file.signature) {
            Ok(r) => match &r.precedence_used {
                Some(order) => file.signature.with_ascending(order)?,
                None => file.signature.clone(),
            },
            Err(Error::TooManySymbols(_)) => file.signature.clone(),
            Err(e) => return Err(e.into()),
        },
    };
    if ground_terms_up_to_size(&sig, 1).is_empty() {
        eprintln!("lpo: warning: the signature has no constants, so there are no ground terms");
    }
    let curve = dh_complexity(&file.trs, &sig, max_size, step_cap).map_err(|e| match e {
        Error::NonTerminating(t) => Failure {
            code: NON_TERMINATING,
            message: format!(
                "rewriting does not terminate: cycle through {}",
                t.display(&sig)
            ),
        },
        Error::BudgetExceeded {
            budget,
            term: Some(t),
        } => Failure {
            code: BUDGET,
            message: format!("step cap of {budget} exceeded from {}", t.display(&sig)),
        },
        e => e.into(),
    })?;
    let p = static_p_r(&file.trs);
    println!("n\tdh\twitness\twp_height(p={p})");
    for e in &curve.entries {
        println!(
            "{}\t{}\t{}\t{}",
            e.n,
            e.dh,
            e.witness.display(&sig),
            height_cell(&sig, p, &e.witness, e.dh)
        );
    }
    Ok(0)
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, Failure> {
    text.parse()
        .map_err(|_| Failure::input(format!("bad {what} `{text}`")))
}

fn ordinal(text: &str) -> Result<OrdinalCnf, Failure> {
    Ok(text.parse::<OrdinalCnf>()?)
}

fn ground_term(sig: &Signature, text: &str) -> Result<Term, Failure> {
    let t = parse_term_with(sig, text)?;
    if !t.is_ground() {
        return Err(Failure::input(format!(
            "`{text}` is not a ground term over the signature"
        )));
    }
    Ok(t)
}

fn hierarchy(args: &HierarchyArgs) -> Outcome {
    let q = &args.query;
    if let Some(v) = &q.fast {
        let alpha = ordinal(&v[0])?;
        let n: BigUint = number(&v[1], "argument")?;
        let budget = match &args.budget {
            Some(b) => number(b, "budget")?,
            None => default_budget(),
        };
        println!("{}", fast_f(&alpha, &n, &budget)?);
        return Ok(0);
    }
    if let Some(v) = &q.slow {
        let alpha = ordinal(&v[0])?;
        let n: u64 = number(&v[1], "argument")?;
        println!("{}", slow_g(&alpha, n));
        return Ok(0);
    }
    let (v, want_height) = match (&q.pred, &q.height) {
        (Some(v), _) => (v, false),
        (_, Some(v)) => (v, true),
        _ => unreachable!("clap requires exactly one query"),
    };
    let sig_path = args
        .sig
        .as_deref()
        .ok_or_else(|| Failure::input("--pred and --height need --sig FILE"))?;
    let file = load(sig_path)?;
    let sig = match &args.prec {
        Some(chains) => with_chains(&file.signature, chains)?,
        None => file.signature.clone(),
    };
    let t = ground_term(&sig, &v[0])?;
    let p: u32 = number(&v[1], "level")?;
    let budget = match &args.budget {
        Some(b) => number(b, "budget")?,
        None => DEFAULT_NODE_BUDGET,
    };
    if want_height {
        println!("{}", WpHeights::new(&sig, p, budget).height(&t)?);
    } else {
        for s in predecessors_with_budget(&t, p, &sig, budget)?.sorted(&sig) {
            println!("{}", s.display(&sig));
        }
    }
    Ok(0)
}
