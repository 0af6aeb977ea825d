//! `f1q`: batch front end for F1-representations of quivers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use f1q::gradings::{nice_length, sufficient_conditions_report, NiceCertificate, NiceLength};
use f1q::grassmannian::{self, chi_table, euler_characteristic, interpolated_chi_with_budget};
use f1q::hall::{self, HallAlgebra, HallElement, Mode};
use f1q::json;
use f1q::quiver::{classify_shape, cycle_rank};
use f1q::{named, Error, F1Rep, Quiver, ShapeClass};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "f1q", version, about = "F1-representations of quivers")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Enumeration budget for point counts and Hall products.
    #[arg(long, global = true, env = "F1Q_BUDGET")]
    budget: Option<u64>,
    /// Hall algebra of all representations or of nilpotent ones only.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,
    /// Proceed with Euler characteristics even if niceness is not certified.
    #[arg(long, global = true)]
    assume_nice: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    All,
    Nilpotent,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver inspection.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Analyses of a single representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Hall algebra computations.
    #[command(subcommand)]
    Hall(HallCmd),
    /// Random test corpora.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Shape class, cycle rank and central cycle.
    Check { path: PathBuf },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Dimension vector, summands, nice length and sufficient conditions.
    Analyze { path: PathBuf },
    /// Euler characteristics of quiver Grassmannians.
    Euler {
        path: PathBuf,
        #[command(flatten)]
        dims: DimChoice,
        /// Cross-check every value by finite-field point counting.
        #[arg(long)]
        oracle: bool,
    },
    /// Point-count polynomial and its value at 1.
    Oracle {
        path: PathBuf,
        #[command(flatten)]
        dims: DimChoice,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DimChoice {
    /// Dimension vector, comma separated in vertex order.
    #[arg(long, value_delimiter = ',')]
    dim: Option<Vec<usize>>,
    /// All dimension vectors.
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum HallCmd {
    Product { left: PathBuf, right: PathBuf },
    Bracket { left: PathBuf, right: PathBuf },
    Coproduct { path: PathBuf },
    /// Projection to the nice quotient of a class, or of a product of two.
    NiceQuotient { left: PathBuf, right: Option<PathBuf> },
    /// Orientation-reversal isomorphism of the bracket over a tree.
    VerifyTreeIso {
        /// Quiver file or standard quiver name.
        quiver: String,
        #[arg(long)]
        arrow: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Commutator identity over a cycle quiver.
    VerifyAffine {
        /// Quiver file or standard quiver name.
        quiver: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Verification(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Verification(_) => 4,
            Failure::Lib(e) => match e {
                Error::SizeBudgetExceeded(_) | Error::TooLarge(_) => 3,
                Error::NicenessUnverified => 5,
                _ => 2,
            },
        }
    }
}

/// A report in both output formats.
struct Report {
    json: Value,
    text: String,
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (report, code) = match result {
        Ok(r) => (Some(r), 0),
        Err(Failure::Verification(r)) => (Some(r), 4),
        Err(f) => {
            let msg = match &f {
                Failure::Lib(e) => e.to_string(),
                Failure::Io(m) => m.clone(),
                Failure::Verification(_) => unreachable!(),
            };
            eprintln!("error: {msg}");
            (None, f.exit_code())
        }
    };
    if let Some(r) = report {
        let body = match cli.opts.format {
            Format::Json => json::to_text(&r.json),
            Format::Text => r.text,
        };
        let written = match &cli.opts.output {
            Some(p) => std::fs::write(p, body).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                print!("{body}");
                Ok(())
            }
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    match &cli.command {
        Command::Quiver(QuiverCmd::Check { path }) => quiver_check(&read(path)?),
        Command::Rep(RepCmd::Analyze { path }) => rep_analyze(&load_rep(path)?),
        Command::Rep(RepCmd::Euler { path, dims, oracle }) => {
            rep_euler(&load_rep(path)?, dims, *oracle, opts)
        }
        Command::Rep(RepCmd::Oracle { path, dims }) => rep_oracle(&load_rep(path)?, dims, opts),
        Command::Hall(cmd) => hall_cmd(cmd, opts),
        Command::Corpus(CorpusCmd::Generate { seed, count }) => corpus(*seed, *count),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path) -> std::result::Result<F1Rep, Failure> {
    Ok(json::parse_rep(&read(path)?)?)
}

/// A quiver from a file, or a standard name when no such file exists.
fn load_quiver(arg: &str) -> std::result::Result<Quiver, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        Ok(json::parse_quiver_ref(&read(path)?)?)
    } else {
        Ok(named::by_name(arg)?)
    }
}

fn quiver_check(text: &str) -> Outcome {
    let q = json::parse_quiver(text)?;
    let rank = cycle_rank(&q);
    let (shape, central) = match classify_shape(&q) {
        Ok(ShapeClass::Tree) => ("Tree".to_string(), None),
        Ok(ShapeClass::TypeATilde { equioriented }) => (
            if equioriented {
                "TypeATilde (equioriented)".to_string()
            } else {
                "TypeATilde".to_string()
            },
            Some(q.clone()),
        ),
        Ok(ShapeClass::ProperPseudotree { central_cycle }) => {
            ("ProperPseudotree".to_string(), Some(central_cycle))
        }
        Ok(ShapeClass::Other { .. }) => ("Other".to_string(), None),
        Err(Error::Disconnected) => ("Disconnected".to_string(), None),
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("{shape}, rank {rank}\n");
    if let Some(c) = &central {
        let vs: Vec<&str> = c.vertices().iter().map(String::as_str).collect();
        let _ = writeln!(text, "central cycle: {}", vs.join(" "));
    }
    Ok(Report {
        json: json!({
            "shape": shape,
            "cycle_rank": rank,
            "central_cycle": central.as_ref().map(json::quiver_value),
        }),
        text,
    })
}

fn rep_analyze(m: &F1Rep) -> Outcome {
    let summands: Vec<String> = m.decompose().iter().map(F1Rep::key).collect();
    let (len, cert) = nice_length(m);
    let conditions = sufficient_conditions_report(m);
    let mut text = String::new();
    let _ = writeln!(text, "dim: {:?}", m.dim());
    let _ = writeln!(text, "nilpotent: {}", m.is_nilpotent());
    let _ = writeln!(text, "summands: {}", summands.len());
    match (&len, &cert) {
        (NiceLength::Infinite, NiceCertificate::Infinite { pairs, .. }) => {
            let shown: Vec<String> = pairs
                .iter()
                .map(|&(u, v)| format!("({},{})", m.elements()[u], m.elements()[v]))
                .collect();
            let _ = writeln!(text, "nice_length: infinite; pairs: {}", shown.join(","));
        }
        _ => {
            let _ = writeln!(text, "nice_length: {len}");
        }
    }
    for c in &conditions.checks {
        let verdict = c
            .verdict
            .map(|v| format!("{v:?}"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "({}) {}: applies={} verdict={}",
            c.label, c.name, c.applies, verdict
        );
    }
    let nice = match len {
        NiceLength::Finite(n) => json!(n),
        NiceLength::Infinite => json!("infinite"),
    };
    Ok(Report {
        json: json!({
            "dim": m.dim(),
            "nilpotent": m.is_nilpotent(),
            "summands": summands,
            "nice_length": nice,
            "certificate": json::certificate_value(m, &cert),
            "sufficient_conditions": serde_json::to_value(&conditions).expect("serializable"),
        }),
        text,
    })
}

fn dim_vectors(m: &F1Rep, dims: &DimChoice) -> Vec<Vec<usize>> {
    match &dims.dim {
        Some(d) => vec![d.clone()],
        None => {
            let top = m.dim();
            let mut out = Vec::new();
            let mut d = vec![0; top.len()];
            loop {
                out.push(d.clone());
                let mut k = 0;
                loop {
                    if k == d.len() {
                        return out;
                    }
                    d[k] += 1;
                    if d[k] <= top[k] {
                        break;
                    }
                    d[k] = 0;
                    k += 1;
                }
            }
        }
    }
}

fn grass_budget(opts: &Opts) -> u64 {
    opts.budget.unwrap_or(grassmannian::DEFAULT_BUDGET)
}

fn rep_euler(m: &F1Rep, dims: &DimChoice, oracle: bool, opts: &Opts) -> Outcome {
    let mut ds = dim_vectors(m, dims);
    ds.sort();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut disagree = false;
    let niceness = if dims.table {
        let t = chi_table(m, opts.assume_nice)?;
        t.niceness
    } else {
        euler_characteristic(m, &ds[0], opts.assume_nice)?.1
    };
    for d in &ds {
        let (chi, _) = euler_characteristic(m, d, opts.assume_nice)?;
        let mut row = json!({"dim": d, "chi": chi});
        let _ = write!(text, "{d:?}: {chi}");
        if oracle {
            let p = interpolated_chi_with_budget(m, d, grass_budget(opts))?;
            let agrees = p.value_at_one() == BigInt::from(chi);
            disagree |= !agrees;
            row["oracle"] = json::count_polynomial_value(&p);
            row["agrees"] = json!(agrees);
            let _ = write!(text, " oracle={} agrees={agrees}", p.value_at_one());
        }
        text.push('\n');
        rows.push(row);
    }
    let report = Report {
        json: json!({"niceness": json::niceness_value(&niceness), "values": rows}),
        text,
    };
    if disagree {
        Err(Failure::Verification(report))
    } else {
        Ok(report)
    }
}

fn rep_oracle(m: &F1Rep, dims: &DimChoice, opts: &Opts) -> Outcome {
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in dim_vectors(m, dims) {
        let p = interpolated_chi_with_budget(m, &d, grass_budget(opts))?;
        let coeffs: Vec<String> = p.coefficients.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            text,
            "{d:?}: coefficients [{}] value_at_one {}",
            coeffs.join(", "),
            p.value_at_one()
        );
        rows.push(json!({"dim": d, "polynomial": json::count_polynomial_value(&p)}));
    }
    Ok(Report {
        json: Value::Array(rows),
        text,
    })
}

fn hall_budget(opts: &Opts) -> u64 {
    opts.budget.unwrap_or(hall::DEFAULT_BUDGET)
}

fn algebra(base: &Arc<Quiver>, opts: &Opts) -> HallAlgebra {
    let mode = match opts.mode {
        ModeArg::All => Mode::All,
        ModeArg::Nilpotent => Mode::Nilpotent,
    };
    HallAlgebra::new(base.clone(), mode, hall_budget(opts))
}

fn element_report(a: &HallElement) -> Report {
    let mut text = String::new();
    for (c, x) in a.terms() {
        let _ = writeln!(text, "{} {:?} {}", json::rational_string(x), c.dim, c.key);
    }
    if a.is_zero() {
        text.push_str("0\n");
    }
    Report {
        json: json::hall_element_value(a),
        text,
    }
}

fn check_report(r: &hall::CheckReport) -> Outcome {
    let mut text = format!("checked: {}\nholds: {}\n", r.checked, r.holds());
    for c in &r.counterexamples {
        let _ = writeln!(text, "counterexample: {c}");
    }
    let report = Report {
        json: json!({
            "checked": r.checked,
            "holds": r.holds(),
            "counterexamples": r.counterexamples,
        }),
        text,
    };
    if r.holds() {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

fn pair(left: &Path, right: &Path, opts: &Opts) -> std::result::Result<(HallAlgebra, HallElement, HallElement), Failure> {
    let a = load_rep(left)?;
    let b = load_rep(right)?;
    if a.base() != b.base() {
        return Err(Error::BaseMismatch.into());
    }
    let alg = algebra(a.base(), opts);
    let x = alg.element(&a)?;
    let y = alg.element(&b)?;
    Ok((alg, x, y))
}

fn hall_cmd(cmd: &HallCmd, opts: &Opts) -> Outcome {
    match cmd {
        HallCmd::Product { left, right } => {
            let (alg, x, y) = pair(left, right, opts)?;
            Ok(element_report(&alg.product(&x, &y)?))
        }
        HallCmd::Bracket { left, right } => {
            let (alg, x, y) = pair(left, right, opts)?;
            Ok(element_report(&alg.bracket(&x, &y)?))
        }
        HallCmd::Coproduct { path } => {
            let m = load_rep(path)?;
            let alg = algebra(m.base(), opts);
            let t = alg.coproduct(&alg.element(&m)?)?;
            let mut text = String::new();
            for ((a, b), x) in t.terms() {
                let _ = writeln!(text, "{} [{}] (x) [{}]", json::rational_string(x), a.key, b.key);
            }
            Ok(Report {
                json: json::tensor_value(&t),
                text,
            })
        }
        HallCmd::NiceQuotient { left, right } => {
            let full = match right {
                Some(r) => {
                    let (alg, x, y) = pair(left, r, opts)?;
                    alg.product(&x, &y)?
                }
                None => {
                    let m = load_rep(left)?;
                    algebra(m.base(), opts).element(&m)?
                }
            };
            Ok(element_report(&hall::nice_quotient(&full)))
        }
        HallCmd::VerifyTreeIso {
            quiver,
            arrow,
            bound,
        } => {
            let q = Arc::new(load_quiver(quiver)?);
            let a = q
                .arrow_index(arrow)
                .ok_or_else(|| Error::BadParameters(format!("unknown arrow `{arrow}`")))?;
            check_report(&hall::verify_tree_orientation_iso(&q, a, *bound, hall_budget(opts))?)
        }
        HallCmd::VerifyAffine { quiver, bound } => {
            let q = Arc::new(load_quiver(quiver)?);
            check_report(&hall::verify_affine_commutator(&q, *bound, hall_budget(opts))?)
        }
    }
}

fn corpus(seed: u64, count: usize) -> Outcome {
    let entries = f1q::corpus::generate(seed, count)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for e in &entries {
        let _ = writeln!(
            text,
            "{} dim={:?} nice_length={} {}",
            e.base,
            e.rep.dim(),
            e.nice_length,
            e.rep.key()
        );
        out.push(json!({
            "base": e.base,
            "nice_length": e.nice_length,
            "rep": json::rep_value(&e.rep),
        }));
    }
    Ok(Report {
        json: Value::Array(out),
        text,
    })
}
