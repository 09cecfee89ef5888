//! Batch command-line front end: instance selection, element I/O, products
//! and decompositions, relation audits, Hecke tables, the operator oracle,
//! and machine-readable JSON reports.
//!
//! Exit status: 0 when every requested check passes, 1 on audit failures or
//! computation errors, 2 on schema or usage errors. Identical invocations
//! produce byte-identical reports.

mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigInt;
use serde_json::{json, Value};

use cosetalg::conditions::standing_conditions;
use cosetalg::duality::{duality_audit, SelfDualSystem};
use cosetalg::gens;
use cosetalg::hecke::{
    hecke_consistency_audit, hecke_pair_index, left_coset_decomposition, DoubleCoset,
};
use cosetalg::jsonio;
use cosetalg::relations::{audit_family, Family};
use cosetalg::report::{full_audit, Report};
use cosetalg::repr::{intertwining_check, oracle_check_words, random_words, ReprOp};
use cosetalg::system::{CosetError, CosetSystem};
use cosetalg::{D0Elem, LamplighterSystem, NumberFieldSystem, RationalSystem};

use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "cosetalg",
    version,
    about = "Exact coset-algebra computations and audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Instance: rational | numberfield | lamplighter
    #[arg(long, default_value = "rational")]
    instance: String,
    /// Reduction coefficients a0,..,a_{n-1} of the monic minimal polynomial
    /// (numberfield; default "2,0" is Q(sqrt 2))
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    minpoly: Option<Vec<i64>>,
    /// Lamp value modulus (lamplighter)
    #[arg(long, default_value_t = 2)]
    modulus: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Run condition and relation audits over the default samples
    Audit {
        #[command(flatten)]
        instance: InstanceArgs,
        /// all | conditions | sp | su | pn | pnh | duality | hecke | repr
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply two indicator-algebra elements
    Mul {
        #[command(flatten)]
        instance: InstanceArgs,
        /// D0 element as JSON (or @file)
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Apply a group element to a coset
    Act {
        #[command(flatten)]
        instance: InstanceArgs,
        /// group element as {"n":..,"h":..} or "n,h"
        #[arg(long)]
        g: String,
        /// coset as {"rep":..,"sub":..}
        #[arg(long)]
        coset: String,
    },
    /// Partition a coset into cosets of a smaller subgroup
    Refine {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        coset: String,
        /// subgroup literal (conjugator or explicit lattice)
        #[arg(long)]
        sub: String,
    },
    /// Index of a nested subgroup pair [u : w]
    Index {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Factor a coset indicator through the corner projection
    Corner {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        coset: String,
    },
    /// Extend a projection family: PN via --a (in H+), PNH via --h (any h)
    Extend {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        a: Option<String>,
        #[arg(long = "h")]
        h_elem: Option<String>,
        #[arg(long)]
        n: String,
    },
    /// Hecke-algebra operations
    Hecke {
        #[command(subcommand)]
        cmd: HeckeCmd,
    },
    /// Bicharacter symmetry and self-duality audit
    Duality {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operator-oracle operations
    Repr {
        #[command(subcommand)]
        cmd: ReprCmd,
    },
    /// Execute a TOML run manifest
    Run {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Convolution of two Hecke elements
    Mul {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Left-coset decomposition of the double coset of g
    Decompose {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        g: String,
    },
    /// [M : M ∩ gMg⁻¹]
    Index {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand)]
enum ReprCmd {
    /// Apply an operator word to a finitely supported vector
    Apply {
        #[command(flatten)]
        instance: InstanceArgs,
        /// word as a JSON list of {"op": shift|trans|mult|incl|restr, ...}
        #[arg(long)]
        word: String,
        /// vector as a JSON list of [point, scalar]
        #[arg(long)]
        vec: String,
    },
    /// Oracle equivalence and intertwining audit
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// Computation failure: exit 1.
    Run(String),
}

impl From<CosetError> for CliError {
    fn from(e: CosetError) -> Self {
        match e {
            CosetError::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Run(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Read an argument that is inline text, `@path`, or `@-` for stdin.
fn read_arg(arg: &str) -> Result<String, CliError> {
    if arg == "@-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
        Ok(buf)
    } else if let Some(path) = arg.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn parse_json(arg: &str) -> Result<Value, CliError> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad JSON: {e}")))
}

/// Group elements accept `{"n":..,"h":..}` or the short `n,h` form split at
/// the last comma.
fn parse_group<S: CosetSystem>(sys: &S, arg: &str) -> Result<cosetalg::GroupElem<S>, CliError> {
    let text = read_arg(arg)?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        if v.is_object() {
            return Ok(jsonio::group_from_json(sys, &v)?);
        }
    }
    let (n_part, h_part) = text
        .rsplit_once(',')
        .ok_or_else(|| CliError::Usage(format!("bad group element {text:?}")))?;
    let parse_side = |side: &str| -> Result<Value, CliError> {
        let side = side.trim();
        serde_json::from_str::<Value>(side)
            .or_else(|_| Ok::<Value, serde_json::Error>(Value::String(side.to_string())))
            .map_err(|e| CliError::Usage(format!("bad element {side:?}: {e}")))
    };
    let n = sys.n_from_json(&parse_side(n_part)?)?;
    let h = sys.h_from_json(&parse_side(h_part)?)?;
    Ok(sys.g_of(n, h))
}

fn parse_sub<S: CosetSystem>(sys: &S, arg: &str) -> Result<S::Sub, CliError> {
    let text = read_arg(arg)?;
    let v = serde_json::from_str::<Value>(&text)
        .unwrap_or_else(|_| Value::String(text.trim().to_string()));
    Ok(sys.sub_from_json(&v)?)
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<ExitCode, CliError> {
    let text = report.to_json_string();
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            println!(
                "{}: {} checks, {} failed -> {}",
                report.operation,
                report.total,
                report.failed,
                path.display()
            );
        }
        None => println!("{text}"),
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_value(v: &Value) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON output"));
    ExitCode::SUCCESS
}

macro_rules! dispatch {
    ($args:expr, |$sys:ident| $body:expr) => {{
        let args = $args;
        match args.instance.as_str() {
            "rational" => {
                let $sys = RationalSystem::new();
                $body
            }
            "numberfield" => {
                let alphas: Vec<BigInt> = args
                    .minpoly
                    .clone()
                    .unwrap_or_else(|| vec![2, 0])
                    .into_iter()
                    .map(BigInt::from)
                    .collect();
                let $sys =
                    NumberFieldSystem::new(alphas).map_err(|e| CliError::Usage(e.to_string()))?;
                $body
            }
            "lamplighter" => {
                let $sys = LamplighterSystem::new(args.modulus)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                $body
            }
            other => Err(CliError::Usage(format!("unknown instance {other:?}"))),
        }
    }};
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Audit {
            instance,
            family,
            seed,
            out,
        } => {
            dispatch!(&instance, |sys| {
                let report = build_audit(&sys, &family, seed)?;
                emit(&report, out.as_ref())
            })
        }
        Command::Mul { instance, lhs, rhs } => {
            dispatch!(&instance, |sys| {
                let a: D0Elem<_> = jsonio::d0_from_json(&sys, &parse_json(&lhs)?)?;
                let b = jsonio::d0_from_json(&sys, &parse_json(&rhs)?)?;
                let prod = a.mul(&sys, &b)?;
                Ok(print_value(&jsonio::d0_to_json(&sys, &prod)))
            })
        }
        Command::Act { instance, g, coset } => {
            dispatch!(&instance, |sys| {
                let g = parse_group(&sys, &g)?;
                let c = jsonio::coset_from_json(&sys, &parse_json(&coset)?)?;
                Ok(print_value(&jsonio::coset_to_json(&sys, &sys.act(&g, &c))))
            })
        }
        Command::Refine {
            instance,
            coset,
            sub,
        } => {
            dispatch!(&instance, |sys| {
                let c = jsonio::coset_from_json(&sys, &parse_json(&coset)?)?;
                let w = parse_sub(&sys, &sub)?;
                let pieces = sys.refine(&c, &w)?;
                let arr: Vec<Value> = pieces
                    .iter()
                    .map(|p| jsonio::coset_to_json(&sys, p))
                    .collect();
                Ok(print_value(&Value::Array(arr)))
            })
        }
        Command::Index { instance, u, w } => {
            dispatch!(&instance, |sys| {
                let u = parse_sub(&sys, &u)?;
                let w = parse_sub(&sys, &w)?;
                let idx = sys.sub_index(&u, &w)?;
                Ok(print_value(&json!({ "index": idx })))
            })
        }
        Command::Corner { instance, coset } => {
            dispatch!(&instance, |sys| {
                let c = jsonio::coset_from_json(&sys, &parse_json(&coset)?)?;
                let pairs = gens::corner_factorization(&sys, &c)?;
                if !gens::factorization_reconstructs(&sys, &c, &pairs)? {
                    return Err(CliError::Run("factorization failed to reconstruct".into()));
                }
                let arr: Vec<Value> = pairs
                    .iter()
                    .map(|(l, r)| {
                        Ok(json!({
                            "left": jsonio::a0_to_json(&sys, l)?,
                            "right": jsonio::a0_to_json(&sys, r)?,
                        }))
                    })
                    .collect::<Result<_, CosetError>>()?;
                Ok(print_value(&json!({ "pairs": arr, "verified": true })))
            })
        }
        Command::Extend {
            instance,
            a,
            h_elem,
            n,
        } => {
            dispatch!(&instance, |sys| {
                let cfg = sys.default_config();
                let n = sys.n_from_json(&parse_json(&n)?)?;
                let result = match (&a, &h_elem) {
                    (Some(a), None) => {
                        let a = sys.h_from_json(&parse_json(a)?)?;
                        gens::extend_pn(&sys, &cfg, &a, &n)?
                    }
                    (None, Some(h)) => {
                        let h = sys.h_from_json(&parse_json(h)?)?;
                        gens::extend_pnh(&sys, &cfg, &h, &n)?
                    }
                    _ => {
                        return Err(CliError::Usage(
                            "extend needs exactly one of --a or --h".into(),
                        ))
                    }
                };
                Ok(print_value(&jsonio::d0_to_json(&sys, &result)))
            })
        }
        Command::Hecke { cmd } => match cmd {
            HeckeCmd::Mul { instance, lhs, rhs } => {
                dispatch!(&instance, |sys| {
                    let a = jsonio::hecke_from_json(&sys, &parse_json(&lhs)?)?;
                    let b = jsonio::hecke_from_json(&sys, &parse_json(&rhs)?)?;
                    let prod = a.mul(&sys, &b)?;
                    Ok(print_value(&jsonio::hecke_to_json(&sys, &prod)))
                })
            }
            HeckeCmd::Decompose { instance, g } => {
                dispatch!(&instance, |sys| {
                    let g = parse_group(&sys, &g)?;
                    let d = DoubleCoset::canonical(&sys, &g);
                    let reps = left_coset_decomposition(&sys, &d)?;
                    let arr: Vec<Value> = reps
                        .iter()
                        .map(|r| jsonio::group_to_json(&sys, r))
                        .collect();
                    Ok(print_value(&json!({
                        "class": jsonio::group_to_json(&sys, d.rep()),
                        "count": reps.len(),
                        "representatives": arr,
                    })))
                })
            }
            HeckeCmd::Index { instance, g } => {
                dispatch!(&instance, |sys| {
                    let g = parse_group(&sys, &g)?;
                    let idx = hecke_pair_index(&sys, &g)?;
                    Ok(print_value(&json!({ "index": idx })))
                })
            }
        },
        Command::Duality { instance, out } => {
            dispatch!(&instance, |sys| {
                let cfg = sys.default_config();
                let checks = duality_audit(&sys, &cfg);
                let report = Report::from_checks(sys.name(), "duality", 0, checks);
                emit(&report, out.as_ref())
            })
        }
        Command::Repr { cmd } => match cmd {
            ReprCmd::Apply {
                instance,
                word,
                vec,
            } => {
                dispatch!(&instance, |sys| {
                    let word = parse_word(&sys, &parse_json(&word)?)?;
                    let v = jsonio::finvec_from_json(&sys, &parse_json(&vec)?)?;
                    let out = cosetalg::repr::apply_word(&sys, &word, &v);
                    Ok(print_value(&jsonio::finvec_to_json(&sys, &out)))
                })
            }
            ReprCmd::Check {
                instance,
                seed,
                out,
            } => {
                dispatch!(&instance, |sys| {
                    let report = repr_check_report(&sys, seed)?;
                    emit(&report, out.as_ref())
                })
            }
        },
        Command::Run { manifest } => {
            let text = std::fs::read_to_string(&manifest)?;
            let m = RunManifest::from_toml(&text)
                .map_err(|e| CliError::Usage(format!("bad manifest: {e}")))?;
            let instance = InstanceArgs {
                instance: m.instance.clone(),
                minpoly: m.minpoly.clone(),
                modulus: m.modulus.unwrap_or(2),
            };
            let out = m.out.as_ref().map(PathBuf::from);
            dispatch!(&instance, |sys| {
                let report = match m.operation.as_str() {
                    "audit" => build_audit(&sys, "all", m.seed)?,
                    "conditions" => build_audit(&sys, "conditions", m.seed)?,
                    "audit-sp" => build_audit(&sys, "sp", m.seed)?,
                    "audit-su" => build_audit(&sys, "su", m.seed)?,
                    "audit-pn" => build_audit(&sys, "pn", m.seed)?,
                    "audit-pnh" => build_audit(&sys, "pnh", m.seed)?,
                    "duality" => build_audit(&sys, "duality", m.seed)?,
                    "hecke" => build_audit(&sys, "hecke", m.seed)?,
                    "repr" => repr_check_report(&sys, m.seed)?,
                    other => return Err(CliError::Usage(format!("unknown operation {other:?}"))),
                };
                emit(&report, out.as_ref())
            })
        }
    }
}

fn build_audit<S: SelfDualSystem>(sys: &S, family: &str, seed: u64) -> Result<Report, CliError> {
    let cfg = sys.default_config();
    let report = match family {
        "all" => full_audit(sys, &cfg, seed)?,
        "conditions" => Report::from_checks(
            sys.name(),
            "audit-conditions",
            seed,
            standing_conditions(sys, &cfg),
        ),
        "duality" => {
            Report::from_checks(sys.name(), "audit-duality", seed, duality_audit(sys, &cfg))
        }
        "hecke" => Report::from_checks(
            sys.name(),
            "audit-hecke",
            seed,
            hecke_consistency_audit(sys, &cfg, seed),
        ),
        "repr" => repr_check_report(sys, seed)?,
        name => match Family::parse(name) {
            Some(f) => Report::from_checks(
                sys.name(),
                format!("audit-{}", f.name()),
                seed,
                audit_family(sys, &cfg, f, false),
            ),
            None => return Err(CliError::Usage(format!("unknown family {name:?}"))),
        },
    };
    Ok(report)
}

fn repr_check_report<S: CosetSystem>(sys: &S, seed: u64) -> Result<Report, CliError> {
    let cfg = sys.default_config();
    let mut checks = intertwining_check(sys, &cfg, false);
    let words = random_words(sys, &cfg, 50, 5, seed);
    checks.extend(oracle_check_words(sys, &cfg.m_samples, &words));
    Ok(Report::from_checks(sys.name(), "repr-check", seed, checks))
}

fn parse_word<S: CosetSystem>(sys: &S, v: &Value) -> Result<Vec<ReprOp<S>>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::Usage("word must be a JSON list of ops".into()))?;
    let mut out = Vec::new();
    for entry in arr {
        let obj = entry
            .as_object()
            .ok_or_else(|| CliError::Usage("each op must be an object".into()))?;
        let op = obj
            .get("op")
            .and_then(|o| o.as_str())
            .ok_or_else(|| CliError::Usage("each op needs an op field".into()))?;
        out.push(match op {
            "shift" => ReprOp::Shift(sys.h_from_json(obj.get("h").unwrap_or(&Value::Null))?),
            "trans" => ReprOp::Trans(sys.n_from_json(obj.get("n").unwrap_or(&Value::Null))?),
            "mult" => ReprOp::Mult(jsonio::d0_from_json(
                sys,
                obj.get("f").unwrap_or(&Value::Null),
            )?),
            "incl" => ReprOp::Incl,
            "restr" => ReprOp::Restr,
            other => return Err(CliError::Usage(format!("unknown op {other:?}"))),
        });
    }
    Ok(out)
}
