//! Command-line front end for the weylkit library.  Exit codes:
//! 0 success / all checks pass, 1 verification failure, 2 usage or parse
//! error, 3 resource cap hit or certificate inconclusive.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use weylkit::induction::{pushforward_fixed_points, restrict, symmetrize};
use weylkit::rep::{character_dimension, weyl_character};
use weylkit::root_datum::{datum_from_preset, SubDatum};
use weylkit::suites::{run_suite, suite_presets, SuiteConfig, SUITE_NAMES};
use weylkit::{
    Error, LaurentPoly, RootDatum, TorsionPoint, VerificationReport,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Exact character computations on root data")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct DatumArgs {
    /// Built-in root datum label (SL2, A2, B2, Sp4, G2, A1xA1, GL2, GL3)
    #[arg(long, conflicts_with = "datum")]
    preset: Option<String>,
    /// Path to a JSON root-datum file {name, rank, roots, coroots, simple_indices}
    #[arg(long)]
    datum: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Summarize a root datum: rank, roots, Weyl order, fundamental data
    Info(InfoCmd),
    /// Irreducible character of a dominant weight
    Char(CharCmd),
    /// Induce a character from a torus or Levi subgroup
    Ind(SubCmd),
    /// Restrict a character to a torus or Levi subgroup
    Res(SubCmd),
    /// Fixed-point pushforward from a torus or Levi subgroup
    Push(SubCmd),
    /// Twisted Chern character of a class at a torsion point
    Tau(TauCmd),
    /// Run a named verification suite
    Verify(VerifyCmd),
}

#[derive(Args)]
struct InfoCmd {
    #[command(flatten)]
    datum: DatumArgs,
}

#[derive(Args)]
struct CharCmd {
    #[command(flatten)]
    datum: DatumArgs,
    /// Dominant weight, comma-separated integer coordinates
    #[arg(long)]
    weight: String,
}

#[derive(Args)]
struct SubCmd {
    #[command(flatten)]
    datum: DatumArgs,
    /// Subgroup: "torus" or "levi:i,j,..." (simple-root positions)
    #[arg(long, default_value = "torus")]
    sub: String,
    /// Input class as a Laurent polynomial, e.g. "x1 + x1^-1"
    #[arg(long)]
    input: String,
    /// Symmetrize the input over the subgroup Weyl group first
    #[arg(long)]
    symmetrize: bool,
}

#[derive(Args)]
struct TauCmd {
    #[command(flatten)]
    datum: DatumArgs,
    /// Torsion point, comma-separated rationals, e.g. "1/4" or "1/2,0"
    #[arg(long)]
    q: String,
    /// Dominant weight of the irreducible class to evaluate
    #[arg(long)]
    weight: String,
    /// Truncation order of the output series
    #[arg(long, default_value_t = 3)]
    order: usize,
}

#[derive(Args)]
struct VerifyCmd {
    #[command(flatten)]
    datum: DatumArgs,
    /// Suite name, or "all" for every suite on its default presets
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Height bound for sampled weights and monomials
    #[arg(long, default_value_t = 3)]
    height: i64,
    /// Truncation order N for graded checks
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Jet order k for completion checks
    #[arg(long, default_value_t = 3)]
    jet: usize,
    /// Monomial box bound B for rank certificates (default k + max root height)
    #[arg(long = "box")]
    box_bound: Option<i64>,
    /// Seeded samples per property
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let out = run(&cli.verb);
    match out {
        Ok((code, report)) => {
            emit(&report, format_of(&cli.verb), start.elapsed().as_millis());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for_error(&e)
        }
    }
}

fn format_of(verb: &Verb) -> Format {
    match verb {
        Verb::Info(c) => c.datum.format,
        Verb::Char(c) => c.datum.format,
        Verb::Ind(c) | Verb::Res(c) | Verb::Push(c) => c.datum.format,
        Verb::Tau(c) => c.datum.format,
        Verb::Verify(c) => c.datum.format,
    }
}

fn exit_for_error(e: &Error) -> ExitCode {
    match e {
        Error::UnknownPreset { .. }
        | Error::InvalidDatum(_)
        | Error::Parse(_)
        | Error::Precondition(_) => ExitCode::from(2),
        Error::ResourceCap(_) | Error::Inconclusive(_) => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

/// Everything below `payload` is byte-identical for identical argv + seed;
/// the wall-clock duration is attached outside the payload at emit time.
#[derive(Serialize)]
struct Report {
    schema: u32,
    version: &'static str,
    command: String,
    datum: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    payload: Value,
    /// plain-text rendering used by text mode; not part of the JSON payload
    #[serde(skip)]
    text: String,
}

fn load_datum(args: &DatumArgs) -> Result<RootDatum, Error> {
    match (&args.preset, &args.datum) {
        (Some(p), _) => datum_from_preset(p),
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            let d: RootDatum = serde_json::from_str(&raw)
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            d.validate()?;
            Ok(d)
        }
        (None, None) => Err(Error::Parse(
            "one of --preset or --datum is required".into(),
        )),
    }
}

fn datum_summary(d: &RootDatum) -> Result<Value, Error> {
    Ok(json!({
        "name": d.name,
        "rank": d.rank,
        "num_roots": d.roots.len(),
        "weyl_order": d.weyl_elements()?.len(),
        "max_root_height": d.max_root_height(),
        "pi1_torsion_free": d.simply_connected_commutator(),
    }))
}

fn parse_weight(s: &str, rank: usize) -> Result<Vec<i64>, Error> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|e| Error::Parse(format!("bad weight `{s}`: {e}")))?;
    if coords.len() != rank {
        return Err(Error::Parse(format!(
            "weight `{s}` has {} coordinates, datum has rank {rank}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn parse_sub(datum: &RootDatum, s: &str) -> Result<SubDatum, Error> {
    if s == "torus" {
        return Ok(SubDatum::torus(datum));
    }
    if let Some(rest) = s.strip_prefix("levi:") {
        let idx: Result<Vec<usize>, _> =
            rest.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let idx = idx.map_err(|e| Error::Parse(format!("bad levi spec `{s}`: {e}")))?;
        return SubDatum::levi(datum, &idx);
    }
    Err(Error::Parse(format!(
        "unknown subgroup `{s}`; expected `torus` or `levi:i,j,...`"
    )))
}

fn run(verb: &Verb) -> Result<(ExitCode, Report), Error> {
    match verb {
        Verb::Info(c) => {
            let d = load_datum(&c.datum)?;
            let summary = datum_summary(&d)?;
            let payload = json!({
                "roots": d.roots,
                "coroots": d.coroots,
                "simple_indices": d.simple_indices,
                "two_rho": d.two_rho(),
                "fundamental_generators": d.fundamental_generators(),
            });
            let mut text = String::new();
            let _ = writeln!(text, "{} : rank {}, {} roots, |W| = {}",
                d.name, d.rank, d.roots.len(), summary["weyl_order"]);
            let _ = writeln!(text, "simple roots    {:?}", d.simple_roots());
            let _ = writeln!(text, "simple coroots  {:?}", d.simple_coroots());
            let _ = writeln!(text, "2*rho           {:?}", d.two_rho());
            let _ = writeln!(text, "pi_1 torsion-free: {}", summary["pi1_torsion_free"]);
            Ok((ExitCode::SUCCESS, report("info", summary, None, payload, text)))
        }
        Verb::Char(c) => {
            let d = load_datum(&c.datum)?;
            let lam = parse_weight(&c.weight, d.rank)?;
            let chi = weyl_character(&d, &lam)?;
            let dim = character_dimension(&chi);
            let payload = json!({
                "weight": lam,
                "character": chi.to_string(),
                "dimension": dim.to_string(),
            });
            let text = format!("chi{lam:?} = {chi}\ndim = {dim}\n");
            Ok((ExitCode::SUCCESS, report("char", datum_summary(&d)?, None, payload, text)))
        }
        Verb::Ind(c) | Verb::Res(c) | Verb::Push(c) => {
            let d = load_datum(&c.datum)?;
            let sub = parse_sub(&d, &c.sub)?;
            let mut a = LaurentPoly::parse(&c.input, d.rank)?;
            if c.symmetrize {
                a = symmetrize(sub.weyl_group(), &a);
            }
            let (name, value) = match verb {
                Verb::Ind(_) => ("ind", weylkit::induction::induce(&sub, &a)?),
                Verb::Res(_) => ("res", restrict(&a, &sub)?),
                _ => ("push", pushforward_fixed_points(&sub, &a)?),
            };
            let payload = json!({
                "sub": c.sub,
                "input": a.to_string(),
                "result": value.to_string(),
            });
            let text = format!("{name}({a}) = {value}\n");
            Ok((ExitCode::SUCCESS, report(name, datum_summary(&d)?, None, payload, text)))
        }
        Verb::Tau(c) => {
            let d = load_datum(&c.datum)?;
            let q = TorsionPoint::parse(&c.q, d.rank)?;
            let lam = parse_weight(&c.weight, d.rank)?;
            let chi = weyl_character(&d, &lam)?;
            let series = weylkit::completion::tau_point(&d, &q, &chi, c.order)?;
            let payload = json!({
                "q": q.to_string(),
                "weight": lam,
                "order": c.order,
                "tau": series.to_string(),
            });
            let text = format!("tau(chi{lam:?}) at q = {q}: {series}\n");
            Ok((ExitCode::SUCCESS, report("tau", datum_summary(&d)?, None, payload, text)))
        }
        Verb::Verify(c) => {
            let cfg = SuiteConfig {
                seed: c.seed,
                height: c.height,
                jet_order: c.jet,
                trunc_order: c.order,
                box_bound: c.box_bound,
                sample_count: c.samples,
            };
            let suites: Vec<&str> = if c.suite == "all" {
                SUITE_NAMES.to_vec()
            } else {
                vec![c.suite.as_str()]
            };
            let mut reports: Vec<(String, VerificationReport)> = Vec::new();
            let mut datum_field = Value::Null;
            for suite in suites {
                let presets: Vec<RootDatum> =
                    if c.datum.preset.is_some() || c.datum.datum.is_some() {
                        vec![load_datum(&c.datum)?]
                    } else {
                        suite_presets(suite)
                            .iter()
                            .map(|p| datum_from_preset(p))
                            .collect::<Result<_, _>>()?
                    };
                for d in presets {
                    if datum_field.is_null() {
                        datum_field = datum_summary(&d)?;
                    }
                    let rep = run_suite(suite, &d, &cfg)?;
                    reports.push((d.name.clone(), rep));
                }
            }
            let failed = reports.iter().any(|(_, r)| !r.all_pass());
            let inconclusive = reports.iter().any(|(_, r)| r.inconclusive);
            let mut text = String::new();
            let mut total = 0usize;
            for (name, r) in &reports {
                let _ = writeln!(text, "== suite {} on {} ==", r.suite, name);
                for case in &r.cases {
                    total += 1;
                    let verdict = if case.pass { "PASS" } else { "FAIL" };
                    if case.lhs.is_empty() && case.rhs.is_empty() {
                        let _ = writeln!(text, "  {verdict}  {}", case.label);
                    } else if case.pass {
                        let _ = writeln!(text, "  {verdict}  {}  [{}]", case.label, case.lhs);
                    } else {
                        let _ = writeln!(
                            text,
                            "  {verdict}  {}  lhs = {}  rhs = {}",
                            case.label, case.lhs, case.rhs
                        );
                    }
                    if !case.note.is_empty() {
                        let _ = writeln!(text, "        note: {}", case.note);
                    }
                }
                for n in &r.notes {
                    let _ = writeln!(text, "  note: {n}");
                }
            }
            let verdict = if total == 0 {
                "0 cases, PASS (vacuous)".to_string()
            } else if failed {
                format!("{total} cases, FAIL")
            } else if inconclusive {
                format!("{total} cases, INCONCLUSIVE")
            } else {
                format!("{total} cases, PASS")
            };
            let _ = writeln!(text, "{verdict}");
            let payload = json!({
                "suites": reports
                    .iter()
                    .map(|(name, r)| json!({ "preset": name, "report": r }))
                    .collect::<Vec<_>>(),
                "verdict": verdict,
            });
            let mut rep = report("verify", datum_field, Some(c.seed), payload, text);
            rep.command = format!("verify --suite {}", c.suite);
            let code = if failed {
                ExitCode::from(1)
            } else if inconclusive {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
            Ok((code, rep))
        }
    }
}

fn report(command: &str, datum: Value, seed: Option<u64>, payload: Value, text: String) -> Report {
    Report {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        datum,
        seed,
        payload,
        text,
    }
}

fn emit(report: &Report, format: Format, duration_ms: u128) {
    match format {
        Format::Text => {
            print!("{}", report.text);
            println!("({duration_ms} ms)");
        }
        Format::Json => {
            let mut doc = serde_json::to_value(report).expect("report serializes");
            doc["duration_ms"] = json!(duration_ms);
            println!("{}", serde_json::to_string_pretty(&doc).expect("json renders"));
        }
    }
}
