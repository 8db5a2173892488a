//! `sopq`: component atlas, pluricanonical bases, Hitchin round trips and
//! exotic model files from the command line.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on usage or
//! input errors.

mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sopq_core::atlas::{component_report, exotic_dimension, AtlasQuery};
use sopq_core::curve::{pluri_basis, pluri_dim, PluriSection};
use sopq_core::exact::{format_rational, Rational};
use sopq_core::hitchin::{hitchin_roundtrip, seeded_input, HitchinInput};
use sopq_core::model::{
    build_exotic_model, deserialize_model, model_charpoly, serialize_model, verify_model,
    TwistedPair,
};
use sopq_core::{curve, Error};

#[derive(Parser)]
#[command(
    name = "sopq",
    version,
    about = "Exotic SO(p,q)-Higgs bundle models and component atlas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Component counts and dimensions for M(SO(p,q))
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Pluricanonical sections of a hyperelliptic curve
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Hitchin section and fibration for SO(p,p-1)
    #[command(subcommand)]
    Hitchin(HitchinCmd),
    /// Build, verify and inspect exotic model files
    #[command(subcommand)]
    Model(ModelCmd),
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    genus: usize,
    /// Canonical JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Component report with counts per family
    Count(GroupArgs),
    /// Expected dimension of the exotic pieces
    Dims(GroupArgs),
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Monomial basis of H^0(K^m)
    Basis {
        #[arg(long)]
        genus: usize,
        /// Curve file {"genus": g, "f": ["c0", ...]}
        #[arg(long)]
        f: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiffSource {
    /// JSON array of basis coordinates for q_2, q_4, ..., q_{2p-2}
    #[arg(long)]
    diffs: Option<PathBuf>,
    /// Draw the differentials from the seeded generator instead
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum HitchinCmd {
    /// Apply the fibration to the section and compare coordinates
    Roundtrip {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        f: PathBuf,
        #[command(flatten)]
        source: DiffSource,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Assemble (V, W, eta) from (W0, eta_p) and differentials
    Build {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        f: PathBuf,
        /// {"hyperbolic_twists": [..], "trivial_count": n, "torsion_label": "00.."}
        #[arg(long)]
        w0: PathBuf,
        /// JSON array with one coordinate vector per summand of W0
        #[arg(long = "eta-p")]
        eta_p: PathBuf,
        #[command(flatten)]
        source: DiffSource,
        /// Output file; stdout when omitted
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Structural checks on a model file
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Invariant polynomial coordinates of a model file
    Charpoly {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn canonical(v: &Value) -> String {
    // serde_json keeps object keys sorted, so this is canonical.
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn vec_text(v: &[Rational]) -> String {
    format!("[{}]", strings(v).join(", "))
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Atlas(AtlasCmd::Count(a)) => {
            let report = component_report(&AtlasQuery::new(a.p, a.q, a.genus)?)?;
            if a.json {
                print!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(Outcome::Ok)
        }
        Command::Atlas(AtlasCmd::Dims(a)) => {
            let query = AtlasQuery::new(a.p, a.q, a.genus)?;
            let (dim, ok) = exotic_dimension(&query);
            let expected = (a.genus - 1) * (a.p + a.q) * (a.p + a.q - 1) / 2;
            if a.json {
                print!(
                    "{}",
                    canonical(&json!({
                        "query": query,
                        "dimension": dim,
                        "expected": expected,
                        "identity_ok": ok,
                    }))
                );
            } else {
                println!("dimension {dim}");
                println!(
                    "(g-1)(p+q)(p+q-1)/2 = {expected}: {}",
                    if ok { "ok" } else { "MISMATCH" }
                );
            }
            Ok(if ok {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Curve(CurveCmd::Basis { genus, f, m, json }) => {
            let c = input::curve(&f, genus)?;
            let basis = pluri_basis(&c, m);
            if json {
                let items: Vec<Value> = basis
                    .iter()
                    .map(|s| json!({"a": strings(s.a().coeffs()), "b": strings(s.b().coeffs())}))
                    .collect();
                print!(
                    "{}",
                    canonical(&json!({
                        "genus": genus,
                        "m": m,
                        "dimension": pluri_dim(genus, m),
                        "basis": items,
                    }))
                );
            } else {
                println!("dim H^0(K^{m}) = {}", basis.len());
                for (i, s) in basis.iter().enumerate() {
                    println!("{i:>3}  {s}");
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Hitchin(HitchinCmd::Roundtrip {
            p,
            genus,
            f,
            source,
            json,
        }) => {
            let c = input::curve(&f, genus)?;
            let diffs = diff_input(&c, p, &source)?;
            let before = diffs.coords();
            let after = hitchin_roundtrip(&diffs)?;
            let pass = before == after;
            if json {
                let show = |v: &[Vec<Rational>]| v.iter().map(|x| strings(x)).collect::<Vec<_>>();
                print!(
                    "{}",
                    canonical(&json!({
                        "p": p,
                        "genus": genus,
                        "input": show(&before),
                        "output": show(&after),
                        "pass": pass,
                    }))
                );
            } else {
                for (j, (x, y)) in before.iter().zip(&after).enumerate() {
                    let k = 2 * (j + 1);
                    println!("q{k:<3} in  {}", vec_text(x));
                    println!("q{k:<3} out {}", vec_text(y));
                }
                println!("{}", if pass { "PASS" } else { "FAIL" });
            }
            Ok(if pass {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Model(ModelCmd::Build {
            p,
            q,
            genus,
            f,
            w0,
            eta_p,
            source,
            out,
        }) => {
            let c = input::curve(&f, genus)?;
            let w0 = input::w0(&w0, genus)?;
            let twists = TwistedPair::component_twists(p, &w0);
            let coords = input::coordinate_vectors(&eta_p)?;
            if coords.len() != twists.len() {
                return Err(Error::LengthMismatch(coords.len(), twists.len()));
            }
            let sections = twists
                .iter()
                .zip(&coords)
                .map(|(&m, v)| curve::from_coords(&c, m, v))
                .collect::<Result<Vec<PluriSection>, _>>()?;
            let pair = TwistedPair::new(&c, p, w0, sections)?;
            let model = build_exotic_model(&pair, &diff_input(&c, p, &source)?, q)?;
            let text = serialize_model(&model);
            match out {
                Some(path) => fs::write(&path, &text)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            let report = verify_model(&model);
            if report.all_passed() {
                Ok(Outcome::Ok)
            } else {
                eprint!("{report}");
                Ok(Outcome::CheckFailed)
            }
        }
        Command::Model(ModelCmd::Verify { file, json }) => {
            let model = deserialize_model(&input::read(&file)?)?;
            let report = verify_model(&model);
            if json {
                let v = serde_json::to_value(&report).expect("report serializes");
                print!(
                    "{}",
                    canonical(&json!({"checks": v["checks"], "passed": report.all_passed()}))
                );
            } else {
                print!("{report}");
                let failed = report.failed();
                if failed.is_empty() {
                    println!("all checks passed");
                } else {
                    println!("failed: {}", failed.join(", "));
                }
            }
            Ok(if report.all_passed() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Model(ModelCmd::Charpoly { file, json }) => {
            let model = deserialize_model(&input::read(&file)?)?;
            let inv = model_charpoly(&model)?;
            if json {
                let coeffs: Vec<Value> = inv
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(k, v)| json!({"twist": 2 * (k + 1), "coords": strings(v)}))
                    .collect();
                let pf = inv
                    .pfaffian
                    .as_ref()
                    .map(|v| json!({"twist": (model.p() + model.q()) / 2, "coords": strings(v)}));
                print!(
                    "{}",
                    canonical(&json!({"coefficients": coeffs, "pfaffian": pf}))
                );
            } else {
                let n = model.p() + model.q();
                for (k, v) in inv.coefficients.iter().enumerate() {
                    println!(
                        "lambda^{:<3} K^{:<3} {}",
                        n - 2 * (k + 1),
                        2 * (k + 1),
                        vec_text(v)
                    );
                }
                if let Some(v) = &inv.pfaffian {
                    println!("pfaffian   K^{:<3} {}", n / 2, vec_text(v));
                }
            }
            Ok(Outcome::Ok)
        }
    }
}

fn diff_input(c: &curve::CurveModel, p: usize, source: &DiffSource) -> Result<HitchinInput, Error> {
    match (&source.diffs, source.seed) {
        (Some(path), _) => HitchinInput::from_coords(c, p, &input::coordinate_vectors(path)?),
        (None, Some(seed)) => seeded_input(c, p, seed),
        (None, None) => Err(Error::Invalid(
            "one of --diffs or --seed is required".into(),
        )),
    }
}
