mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use modsat::brauer::{satake_matrix, SatakeSetup};
use modsat::dualhom::{canonical_embedding_cocycle, inner_case_dual_hom, toral_parameter};
use modsat::grcombi::{dl_tate_multiset, fixed_stratum, iwahori_orbit_dimension, pariversity, relative_pariversity, StratumLabel};
use modsat::rootdata::{bad_prime_table, inner_torsion_automorphism, validate_fixed_datum, RootDatum};
use modsat::suite::{run_suite, SuiteOptions, SCHEMA_VERSION};
use modsat::tate::{is_good, tate_cohomology, Coeff, SigmaModule, SigmaModuleSpec};
use modsat::Error;

use input::{datum_arg, parse_ints, parse_word, parse_words, read_json, AutoInput, SetupInput, ThetaInput};

/// Failure with its process exit code: 1 input, 2 hypothesis, 3 internal.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError { code: 1, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Hypothesis { .. } => 2,
            Error::Internal(_) | Error::Overflow(_) => 3,
            _ => 1,
        };
        CliError { code, msg: e.to_string() }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(name = "modsat", version, about = "Mod-l Satake transfer and Tate cohomology computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Largest bad prime for each simple type.
    BadPrimes(OutArg),
    /// Root datum summary for a label or datum file.
    Group {
        /// Label such as `B3:adjoint`, or a JSON file.
        datum: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build an automorphism and validate it.
    Auto(AutoArgs),
    /// Fixed datum and embedding of an automorphism.
    Fold(AutoArgs),
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Tate cohomology of a module file.
    Tate {
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    #[command(subcommand)]
    Dl(DlCmd),
    #[command(subcommand)]
    Gr(GrCmd),
    #[command(subcommand)]
    Param(ParamCmd),
    /// Seeded property suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0: rayon default).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Negative control: use a wrong folding table.
        #[arg(long)]
        corrupt_folding_table: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AutoArgs {
    /// Label or datum file; the factor for `block_cyclic` recipes.
    #[arg(long)]
    datum: String,
    /// Automorphism file (full or recipe).
    #[arg(long, conflicts_with_all = ["kind"])]
    auto: Option<PathBuf>,
    #[arg(long, requires = "ell")]
    kind: Option<String>,
    #[arg(long)]
    ell: Option<u64>,
    /// Torsion values on the simple roots, e.g. `1,1`.
    #[arg(long)]
    t: Option<String>,
    /// Diagram permutation, 0-based, e.g. `1,0`.
    #[arg(long)]
    perm: Option<String>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Subcommand)]
enum BrauerCmd {
    /// Mod-l matrix of the transfer on Weyl-character bases.
    Matrix {
        #[arg(long)]
        setup: PathBuf,
        #[arg(long, default_value_t = 8)]
        weight_bound: i64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum DlCmd {
    /// Multiset of characters indexed by Frobenius-fixed Weyl elements.
    Tate {
        /// Generators of the finite Weyl group, `;`-separated words.
        #[arg(long, default_value = "")]
        wx: String,
        /// Weyl element twisting Frobenius.
        #[arg(long, default_value = "")]
        twist: String,
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, default_value_t = 0)]
        degree: u8,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum GrCmd {
    /// Iwahori orbit dimension and its fixed points.
    Fixed {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        auto: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum ParamCmd {
    /// Toral parameter transported along a dual homomorphism.
    Toral {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, default_value = "")]
        w: String,
        /// Inner case at this prime (torus map multiplied by l).
        #[arg(long, conflicts_with = "ell")]
        inner_ell: Option<u64>,
        /// Prime for the canonical embedding.
        #[arg(long)]
        ell: Option<u64>,
        /// Torsion values for the inner case (default all 1).
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn emit(body: Value, out: &OutArg) -> CliResult {
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    match body {
        Value::Object(m) => doc.extend(m),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let text = serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| CliError { code: 3, msg: e.to_string() })? + "\n";
    match &out.out {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(p: &Path, text: &str) -> CliResult {
    std::fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn build_auto(a: &AutoArgs) -> Result<(RootDatum, modsat::rootdata::DatumAutomorphism), CliError> {
    let d = datum_arg(&a.datum)?;
    let recipe = match (&a.auto, &a.kind) {
        (Some(p), _) => read_json::<AutoInput>(p)?,
        (None, Some(kind)) => AutoInput::Recipe {
            kind: kind.clone(),
            order: a.ell.expect("clap requires ell"),
            t: a.t.as_deref().map(parse_ints).transpose()?,
            perm: a
                .perm
                .as_deref()
                .map(|s| parse_ints(s).map(|v| v.into_iter().map(|x| x.max(0) as usize).collect()))
                .transpose()?,
        },
        (None, None) => return Err(CliError::input("give --auto FILE or --kind with --ell")),
    };
    let auto = recipe.build(&d)?;
    Ok((d, auto))
}

fn cmd_bad_primes(out: &OutArg) -> CliResult {
    let table: Vec<Value> = bad_prime_table().into_iter().map(|(t, b)| json!({"types": t, "bound": b})).collect();
    emit(json!({ "table": table }), out)
}

fn cmd_group(datum: &str, out: &OutArg) -> CliResult {
    let d = datum_arg(datum)?;
    let types: Vec<String> = d.components().iter().map(|(t, _)| t.to_string()).collect();
    emit(
        json!({
            "label": d.label(),
            "rank": d.rank(),
            "semisimple_rank": d.semisimple_rank(),
            "types": types,
            "num_roots": d.num_roots(),
            "bad_prime_bound": d.bad_prime_bound(),
            "dual_label": d.dual().label(),
            "datum": to_value(&d.to_spec()),
        }),
        out,
    )
}

fn cmd_auto(a: &AutoArgs, fold: bool) -> CliResult {
    let (_, auto) = build_auto(a)?;
    let report = validate_fixed_datum(&auto);
    let body = if fold {
        json!({
            "fixed_label": auto.fixed_datum.label(),
            "fixed_datum": to_value(&auto.fixed_datum.to_spec()),
            "embedding": auto.embedding.to_rows(),
            "validation": to_value(&report),
        })
    } else {
        json!({ "automorphism": to_value(&auto.to_spec()), "validation": to_value(&report) })
    };
    emit(body, &a.out)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::input(format!("validation failed: {}", report.failed().join(", "))))
    }
}

fn cmd_brauer_matrix(setup: &Path, bound: i64, out: &OutArg) -> CliResult {
    if bound < 0 {
        return Err(CliError::input("weight bound must be nonnegative"));
    }
    let input: SetupInput = read_json(setup)?;
    let d = input.group.build()?;
    let auto = input.automorphism.build(&d)?;
    let s = SatakeSetup::new(&auto)?;
    let m = satake_matrix(&s, bound)?;
    let mut body = to_value(&m);
    if let Value::Object(map) = &mut body {
        map.insert("group".into(), json!(s.g_datum.label()));
        map.insert("fixed_group".into(), json!(s.h_datum.label()));
        map.insert("kind".into(), json!(auto.kind.name()));
    }
    emit(body, out)
}

fn cmd_tate(module: &Path, out: &OutArg) -> CliResult {
    let spec: SigmaModuleSpec = read_json(module)?;
    let m = SigmaModule::from_spec(&spec)?;
    let t0 = tate_cohomology(&m, 0)?;
    let t1 = tate_cohomology(&m, 1)?;
    let mut body = json!({ "coeff": spec.coeff, "ell": spec.ell, "t0": to_value(&t0), "t1": to_value(&t1) });
    if m.coeff == Coeff::Zl && m.presentation.cols() == 0 {
        body["goodness"] = to_value(&is_good(&m)?);
    }
    emit(body, out)
}

fn cmd_dl(wx: &str, twist: &str, theta: &Path, degree: u8, out: &OutArg) -> CliResult {
    let input: ThetaInput = read_json(theta)?;
    let d = input.datum.build()?;
    let gens = parse_words(wx, d.rank())?
        .iter()
        .map(|w| d.weyl_from_word(w))
        .collect::<modsat::Result<Vec<_>>>()?;
    let w = d.weyl_from_word(&parse_word(twist, d.rank())?)?;
    let r = dl_tate_multiset(&d, &gens, &w, None, &input.normalized()?, degree, 100_000)?;
    emit(to_value(&r), out)
}

fn cmd_gr_fixed(datum: &str, auto: &Path, lambda: &str, out: &OutArg) -> CliResult {
    let d = datum_arg(datum)?;
    let a = read_json::<AutoInput>(auto)?.build(&d)?;
    let d = a.base.clone();
    let s = StratumLabel::new(&d, parse_ints(lambda)?)?;
    let fixed = fixed_stratum(&s, &a)?;
    let rel = match &fixed {
        Some(_) => Some(relative_pariversity(&s, &a)?),
        None => None,
    };
    emit(
        json!({
            "lambda": s.lambda,
            "dim": iwahori_orbit_dimension(&s),
            "pariversity": pariversity(&s),
            "fixed": to_value(&fixed),
            "relative_pariversity": rel,
        }),
        out,
    )
}

fn cmd_param(theta: &Path, w: &str, inner_ell: Option<u64>, ell: Option<u64>, t: Option<&str>, out: &OutArg) -> CliResult {
    let input: ThetaInput = read_json(theta)?;
    let g = input.datum.build()?;
    let (dh, ell) = match (inner_ell, ell) {
        (Some(l), _) => {
            let t = match t {
                Some(t) => parse_ints(t)?,
                None => vec![1; g.semisimple_rank()],
            };
            let s = SatakeSetup::new(&inner_torsion_automorphism(&g, &t, l)?)?;
            let w = s.g_datum.weyl_from_word(&parse_word(w, s.g_datum.rank())?)?;
            (inner_case_dual_hom(&s, &w)?, l)
        }
        (None, Some(l)) => {
            let dual = Arc::new(g.dual());
            let w = dual.weyl_from_word(&parse_word(w, dual.rank())?)?;
            (canonical_embedding_cocycle(&dual, &w)?, l)
        }
        (None, None) => return Err(CliError::input("give --inner-ell or --ell")),
    };
    let rho = toral_parameter(&input.normalized()?, &dh, ell)?;
    let (nf_torus, nf_word) = rho.normal_form(100_000)?;
    let mut body = to_value(&rho.to_spec()?);
    body["elliptic"] = json!(dh.elliptic);
    body["normal_form"] = json!({
        "torus_part": to_value(&nf_torus),
        "weyl_part": nf_word.iter().map(|i| i + 1).collect::<Vec<_>>(),
    });
    emit(body, out)
}

fn cmd_suite(seed: u64, threads: usize, corrupt: bool, out: &OutArg) -> CliResult {
    let opts = SuiteOptions { seed, corrupt_folding_table: corrupt, only: None };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError { code: 3, msg: e.to_string() })?;
    let report = pool.install(|| run_suite(&opts));
    for c in &report.criteria {
        eprintln!("[{}] {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail);
    }
    let text = report.to_json() + "\n";
    match &out.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(CliError { code: 3, msg: format!("failed: {}", failed.join(", ")) })
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::BadPrimes(out) => cmd_bad_primes(&out),
        Cmd::Group { datum, out } => cmd_group(&datum, &out),
        Cmd::Auto(a) => cmd_auto(&a, false),
        Cmd::Fold(a) => cmd_auto(&a, true),
        Cmd::Brauer(BrauerCmd::Matrix { setup, weight_bound, out }) => cmd_brauer_matrix(&setup, weight_bound, &out),
        Cmd::Tate { module, out } => cmd_tate(&module, &out),
        Cmd::Dl(DlCmd::Tate { wx, twist, theta, degree, out }) => cmd_dl(&wx, &twist, &theta, degree, &out),
        Cmd::Gr(GrCmd::Fixed { datum, auto, lambda, out }) => cmd_gr_fixed(&datum, &auto, &lambda, &out),
        Cmd::Param(ParamCmd::Toral { theta, w, inner_ell, ell, t, out }) => {
            cmd_param(&theta, &w, inner_ell, ell, t.as_deref(), &out)
        }
        Cmd::Suite { seed, threads, corrupt_folding_table, out } => cmd_suite(seed, threads, corrupt_folding_table, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("modsat: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
