//! `arborlat`: Ehrhart data, parking statistics and conjecture sweeps for
//! arbor polytopes, printed as JSON.
//!
//! Exit codes: 0 success, 1 a conjecture check failed, 2 usage error,
//! 3 invalid arbor file, 4 two computations of the same object disagree.

use std::path::PathBuf;
use std::process::ExitCode;

use arborlat_core::arbor::Arbor;
use arborlat_core::checker::{self, Conjecture, SweepOptions};
use arborlat_core::closedform;
use arborlat_core::combin::factorial;
use arborlat_core::lattice::{self, HPolytope};
use arborlat_core::parking::{park_on, Word};
use arborlat_core::poly::json;
use arborlat_core::polyalg::{hstar_checked, hstar_from_ehrhart, to_gamma_basis, to_magic_basis, GammaVector};
use arborlat_core::{Error, IntPolynomial, RatPolynomial};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

const DEFAULT_MAX_POINTS: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "arborlat", version, about = "Exact Ehrhart data and parking statistics for arbor polytopes")]
struct Cli {
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ehrhart polynomial, coefficients as exact rationals.
    Ehrhart(PolyArgs),
    /// h*-polynomial.
    Hstar(PolyArgs),
    /// Lattice points of the polytope graded by support size.
    Hvector(PolyArgs),
    /// Gamma vector of the h-vector.
    Gamma(PolyArgs),
    /// Coefficients of n! Ehr in the basis t^i (1+t)^(n-i).
    Magic(PolyArgs),
    /// Run the largest-available parking protocol on one word.
    Park(ParkArgs),
    /// Check conjectures on one arbor or on all arbors of a size.
    Check(CheckArgs),
    /// The polynomials f_{n,k} for n up to --max-n.
    Table1(TableArgs),
    /// List the lattice points of a dilate.
    Points(PointsArgs),
}

#[derive(Args, Clone)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// Octopus polytope Q_{n,k}, given as n,k.
    #[arg(long, value_name = "N,K", group = "source")]
    octopus: Option<String>,
    /// Polytope Q_{n,d,k}, given as n,d,k.
    #[arg(long, value_name = "N,D,K", group = "source")]
    qndk: Option<String>,
    /// Arbor in JSON form.
    #[arg(long, value_name = "FILE", group = "source")]
    arbor: Option<PathBuf>,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Closed form, lattice point enumeration, or both compared.
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Interp,
    Both,
}

#[derive(Args)]
struct ParkArgs {
    /// Preferences as comma-separated letters.
    #[arg(long, value_name = "CSV")]
    word: String,
    #[arg(long)]
    spaces: usize,
    /// Alphabet size; defaults to the number of spaces.
    #[arg(long)]
    alphabet: Option<usize>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["size", "arbor"])))]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    conjecture: ConjectureArg,
    /// Sweep every arbor of this size.
    #[arg(long)]
    size: Option<usize>,
    /// Check a single arbor.
    #[arg(long, value_name = "FILE")]
    arbor: Option<PathBuf>,
    /// Sweep beyond the default size cap.
    #[arg(long)]
    force: bool,
    /// Include the slowest per-arbor runtime (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    Hstar,
    Hvector,
    Roots,
    All,
}

impl From<ConjectureArg> for Conjecture {
    fn from(c: ConjectureArg) -> Self {
        match c {
            ConjectureArg::Hstar => Conjecture::Hstar,
            ConjectureArg::Hvector => Conjecture::Hvector,
            ConjectureArg::Roots => Conjecture::Roots,
            ConjectureArg::All => Conjecture::All,
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Emit JSON instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PointsArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Dilation factor.
    #[arg(long, default_value_t = 1)]
    dilate: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Arbor(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Arbor(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Arbor(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArbor(_) => CliError::Arbor(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// JSON to print and the exit code to return afterwards.
struct Output {
    value: Value,
    code: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

enum Source {
    Octopus(usize, usize),
    Qndk(usize, usize, usize),
    Arbor(Arbor),
}

fn parse_tuple(s: &str, len: usize, flag: &str) -> CliResult<Vec<usize>> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == len => Ok(v),
        _ => Err(CliError::Usage(format!("--{flag} expects {len} comma-separated nonnegative integers, got {s:?}"))),
    }
}

fn read_arbor(path: &PathBuf) -> CliResult<Arbor> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Arbor::from_json(&text).map_err(|e| CliError::Arbor(format!("{}: {e}", path.display())))
}

impl Source {
    fn from_args(a: &SourceArgs) -> CliResult<Self> {
        let src = if let Some(s) = &a.octopus {
            let v = parse_tuple(s, 2, "octopus")?;
            Source::Octopus(v[0], v[1])
        } else if let Some(s) = &a.qndk {
            let v = parse_tuple(s, 3, "qndk")?;
            Source::Qndk(v[0], v[1], v[2])
        } else if let Some(p) = &a.arbor {
            Source::Arbor(read_arbor(p)?)
        } else {
            unreachable!("clap requires one source")
        };
        // reject bad parameters before any enumeration starts
        src.polytope()?;
        Ok(src)
    }

    fn n(&self) -> usize {
        match self {
            Source::Octopus(n, _) | Source::Qndk(n, _, _) => *n,
            Source::Arbor(a) => a.n(),
        }
    }

    fn polytope(&self) -> CliResult<HPolytope> {
        Ok(match self {
            Source::Octopus(n, k) => lattice::polytope_qndk(*n, *n, *k)?,
            Source::Qndk(n, d, k) => lattice::polytope_qndk(*n, *d, *k)?,
            Source::Arbor(a) => lattice::polytope_of_arbor(a)?,
        })
    }

    /// `(n, k)` when the polytope is an octopus polytope `Q_{n,k}`.
    fn as_octopus(&self) -> Option<(usize, usize)> {
        match self {
            Source::Octopus(n, k) => Some((*n, *k)),
            Source::Qndk(n, d, k) if n == d => Some((*n, *k)),
            _ => None,
        }
    }

    fn closed_ehrhart(&self) -> Option<CliResult<RatPolynomial>> {
        match self {
            Source::Octopus(n, k) => Some(closedform::ehrhart_qnk(*n, *k).map_err(Into::into)),
            Source::Qndk(n, d, k) => Some(closedform::ehrhart_qndk(*n, *d, *k).map_err(Into::into)),
            Source::Arbor(_) => None,
        }
    }

    fn interp_ehrhart(&self) -> CliResult<RatPolynomial> {
        lattice::ehrhart_interpolated(&self.polytope()?).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Runs the closed form, the enumeration, or both, returning the reported
/// value alongside the output. With both, the closed form is reported under
/// `key` and a disagreement exits with code 4.
fn by_method<T: PartialEq>(
    method: Option<Method>,
    key: &str,
    closed: Option<CliResult<T>>,
    interp: impl FnOnce() -> CliResult<T>,
    render: impl Fn(&T) -> Value,
) -> CliResult<(Output, T)> {
    let method = method.unwrap_or(if closed.is_some() { Method::Closed } else { Method::Interp });
    let no_closed = || CliError::Usage("no closed form for this source; use --method interp".into());
    match method {
        Method::Closed => {
            let c = closed.ok_or_else(no_closed)??;
            Ok((Output::ok(json!({ key: render(&c) })), c))
        }
        Method::Interp => {
            let i = interp()?;
            Ok((Output::ok(json!({ key: render(&i) })), i))
        }
        Method::Both => {
            let c = closed.ok_or_else(no_closed)??;
            let i = interp()?;
            let agree = c == i;
            let out = Output {
                value: json!({ key: render(&c), "interpolated": render(&i), "match": agree }),
                code: if agree { 0 } else { 4 },
            };
            Ok((out, c))
        }
    }
}

fn rat_json(p: &RatPolynomial) -> Value {
    json::rats(p.coeffs())
}

fn int_json(p: &IntPolynomial) -> Value {
    json::ints(p.coeffs())
}

fn cmd_ehrhart(a: &PolyArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    Ok(by_method(a.method, "ehrhart", src.closed_ehrhart(), || src.interp_ehrhart(), rat_json)?.0)
}

fn cmd_hstar(a: &PolyArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    let n = src.n();
    let closed = src
        .closed_ehrhart()
        .map(|e| e.and_then(|e| hstar_from_ehrhart(&e, Some(n)).map_err(Into::into)));
    let interp = || Ok(hstar_checked(&src.interp_ehrhart()?, Some(n))?);
    Ok(by_method(a.method, "hstar", closed, interp, int_json)?.0)
}

fn counted_h(src: &Source) -> CliResult<IntPolynomial> {
    Ok(lattice::h_vector(&src.polytope()?).to_polynomial())
}

fn padded_json(p: &IntPolynomial, len: usize) -> Value {
    json::ints(&p.padded(len))
}

fn cmd_hvector(a: &PolyArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    let n = src.n();
    let closed = src.as_octopus().map(|(n, k)| closedform::h_poly_qnk(n, k).map_err(Into::into));
    Ok(by_method(a.method, "h", closed, || counted_h(&src), |p| padded_json(p, n + 1))?.0)
}

fn cmd_gamma(a: &PolyArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    let n = src.n();
    let closed = src
        .as_octopus()
        .map(|(n, k)| closedform::gamma_vector_qnk(n, k).map(Some).map_err(Into::into));
    let interp = || Ok(to_gamma_basis(&counted_h(&src)?, n).ok());
    let render = |g: &Option<GammaVector>| match g {
        Some(g) => json::ints(&g.gammas),
        None => json!("undefined"),
    };
    let (mut out, gamma) = by_method(a.method, "gamma", closed, interp, render)?;
    out.value["gamma_nonnegative"] = match gamma {
        Some(g) => json!(g.is_nonnegative()),
        None => json!("undefined"),
    };
    Ok(out)
}

fn cmd_magic(a: &PolyArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    let n = src.n();
    let closed = match &src {
        Source::Octopus(n, k) => Some(closedform::f_poly(*n, *k).map_err(Into::into)),
        Source::Qndk(n, d, k) => Some(closedform::f_poly_general(*n, *d, *k).map_err(Into::into)),
        Source::Arbor(_) => None,
    };
    let interp = || {
        let nfact = BigRational::from_integer(factorial(n as u64));
        let m = to_magic_basis(&src.interp_ehrhart()?.scale(&nfact), n)?;
        RatPolynomial::new(m.cs)
            .to_integer()
            .ok_or_else(|| CliError::Usage("n! * Ehr has non-integral magic coefficients".into()))
    };
    let closed = closed.map(|c| c.map(|p| p.padded(n + 1)));
    let interp = || interp().map(|p| p.padded(n + 1));
    let (mut out, c) = by_method(a.method, "c", closed, interp, |v| json::ints(v))?;
    out.value["magic_positive"] = json!(c.iter().all(|x| !x.is_negative()));
    Ok(out)
}

fn cmd_park(a: &ParkArgs) -> CliResult<Output> {
    let letters: Vec<usize> = a
        .word
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--word expects comma-separated positive integers, got {:?}", a.word)))?;
    let d = a.alphabet.unwrap_or(a.spaces);
    let word = Word::new(letters, d)?;
    let out = park_on(word.letters(), a.spaces)?;
    let lucky: Vec<usize> = (1..).zip(&out.lucky).filter(|(_, l)| **l).map(|(i, _)| i).collect();
    Ok(Output::ok(json!({
        "spots": out.spot,
        "lucky": lucky,
        "unlucky": out.unlucky_count,
    })))
}

fn cmd_check(a: &CheckArgs) -> CliResult<Output> {
    let which = Conjecture::from(a.conjecture);
    if let Some(path) = &a.arbor {
        let arbor = read_arbor(path)?;
        let reports = checker::check_arbor(&arbor, which)?;
        let pass = reports.iter().all(|r| r.pass);
        let value = json!({
            "conjecture": which.name(),
            "pass": pass,
            "reports": serde_json::to_value(&reports).expect("reports serialize"),
        });
        return Ok(Output { value, code: if pass { 0 } else { 1 } });
    }
    let size = a.size.expect("clap requires a target");
    if size == 0 {
        return Err(CliError::Usage("--size must be positive".into()));
    }
    let report = checker::sweep(size, which, SweepOptions { force: a.force, timing: a.timing })?;
    let code = if report.all_pass() { 0 } else { 1 };
    Ok(Output { value: serde_json::to_value(&report).expect("report serializes"), code })
}

fn table_entries(max_n: usize) -> CliResult<Vec<(usize, usize, IntPolynomial)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 0..=n {
            out.push((n, k, closedform::f_poly(n, k)?));
        }
    }
    Ok(out)
}

fn cmd_table1(a: &TableArgs) -> CliResult<(Option<Output>, String)> {
    let entries = table_entries(a.max_n)?;
    if a.json {
        let rows: Vec<Value> = entries
            .iter()
            .map(|(n, k, f)| json!({"n": n, "k": k, "f": f.to_string(), "coeffs": int_json(f)}))
            .collect();
        return Ok((Some(Output::ok(json!({ "table": rows }))), String::new()));
    }
    let width = entries.iter().map(|(_, _, f)| f.to_string().len()).max().unwrap_or(1).max(5);
    let mut text = format!("{:<6}", "");
    for k in 0..=a.max_n {
        text.push_str(&format!(" | {:<width$}", format!("k={k}")));
    }
    text.truncate(text.trim_end().len());
    text.push('\n');
    for n in 1..=a.max_n {
        text.push_str(&format!("{:<6}", format!("n={n}")));
        for k in 0..=a.max_n {
            let cell = entries
                .iter()
                .find(|(en, ek, _)| *en == n && *ek == k)
                .map(|(_, _, f)| f.to_string())
                .unwrap_or_default();
            text.push_str(&format!(" | {cell:<width$}"));
        }
        text.truncate(text.trim_end().len());
        text.push('\n');
    }
    Ok((None, text))
}

fn max_points() -> CliResult<u64> {
    match std::env::var("ARBORLAT_MAX_POINTS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("ARBORLAT_MAX_POINTS must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_POINTS),
    }
}

fn cmd_points(a: &PointsArgs) -> CliResult<Output> {
    let src = Source::from_args(&a.source)?;
    let cap = max_points()?;
    let points = lattice::lattice_points(&src.polytope()?, a.dilate, cap)?;
    let coords: Vec<&Vec<u64>> = points.iter().map(|p| &p.coords).collect();
    Ok(Output::ok(json!({
        "dilate": a.dilate,
        "count": points.len(),
        "points": coords,
    })))
}

fn emit(v: &Value, pretty: bool) {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    println!("{}", s.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Ehrhart(a) => cmd_ehrhart(a),
        Command::Hstar(a) => cmd_hstar(a),
        Command::Hvector(a) => cmd_hvector(a),
        Command::Gamma(a) => cmd_gamma(a),
        Command::Magic(a) => cmd_magic(a),
        Command::Park(a) => cmd_park(a),
        Command::Check(a) => cmd_check(a),
        Command::Points(a) => cmd_points(a),
        Command::Table1(a) => match cmd_table1(a) {
            Ok((Some(out), _)) => Ok(out),
            Ok((None, text)) => {
                print!("{text}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(out) => {
            emit(&out.value, cli.pretty);
            if out.code == 4 {
                eprintln!("error: closed form and enumeration disagree");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
