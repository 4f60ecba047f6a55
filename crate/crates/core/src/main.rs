use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use frobcurves::classify::{classify, wronskian_frobenius_oracle, LinearSystem, OracleMode};
use frobcurves::count::{
    self, bounds, bruteforce_report, certify_maximal, count_formula, fibersum_report,
};
use frobcurves::curve::CurveFamily;
use frobcurves::doc::{parse, CurveDoc, FieldDoc, FieldFormDoc, FormDoc, Quartic, QuarticDoc};
use frobcurves::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "frobcurves",
    version,
    about = "Frobenius classicality and point counts for curves G(x^n, y^n, z^n)"
)]
struct Cli {
    /// Worker threads (FROBCURVES_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print an indented key/value summary instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Smoothness and (Frobenius) classicality verdicts.
    Classify { curve: PathBuf },
    /// Number of rational points.
    Count(CountArgs),
    /// Hasse-Weil and Stöhr-Voloch bounds.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: Option<u64>,
    },
    /// Lift a form over F_{p^v} to G(x^n, y^n, z^n) over F_{p^h}.
    Lift {
        conic: PathBuf,
        #[arg(long)]
        h: u32,
    },
    /// Check that the lifted curve attains the line bound.
    CertifyMaximal {
        conic: PathBuf,
        #[arg(long)]
        h: u32,
    },
    /// Reducibility and collinearity diagnostics for the quartic families.
    Quartic { quartic: PathBuf },
    /// Decide whether the Frobenius determinant vanishes on the curve.
    Oracle {
        curve: PathBuf,
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    curve: PathBuf,
    /// Run the closed formula and brute force and require agreement.
    #[arg(long)]
    verify: bool,
    /// Count over F_{q^r}.
    #[arg(short = 'r', default_value_t = 1)]
    r: u32,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Maximum number of candidate points for brute force.
    #[arg(long, default_value_t = count::DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Auto,
    Formula,
    BruteForce,
    FiberSum,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SystemArg {
    D1,
    D2,
    D2Classical,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    Symbolic,
    Sample,
}

/// A successful run: the result document and whether assumptions were violated.
struct Outcome {
    field: Option<FieldDoc>,
    result: Value,
    violated: bool,
}

impl Outcome {
    fn ok(field: Option<FieldDoc>, result: impl Serialize) -> Result<Outcome> {
        let result = serde_json::to_value(result).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Outcome {
            field,
            result,
            violated: false,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<CurveFamily> {
    parse::<CurveDoc>(&read(path)?)?.build()
}

fn run(verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Classify { curve } => {
            let c = load_curve(curve)?;
            let report = classify(&c);
            let violated = !report.assumption_violations.is_empty();
            let mut out = Outcome::ok(Some(FieldDoc::of(c.field())), report)?;
            out.violated = violated;
            Ok(out)
        }
        Verb::Count(args) => run_count(args),
        Verb::Bounds { d, q, s } => Outcome::ok(None, bounds(*d, *q, *s)?),
        Verb::Lift { conic, h } => {
            let g = parse::<FieldFormDoc>(&read(conic)?)?.build()?;
            let lifted = CurveFamily::lift_conic(&g, *h)?;
            let doc = CurveDoc::of(&lifted);
            Outcome::ok(
                Some(doc.field.clone()),
                json!({ "curve": doc, "degree": lifted.degree() }),
            )
        }
        Verb::CertifyMaximal { conic, h } => {
            let g = parse::<FieldFormDoc>(&read(conic)?)?.build()?;
            let m = certify_maximal(&g, *h)?;
            Outcome::ok(Some(FieldDoc::of(g.field())), m)
        }
        Verb::Quartic { quartic } => run_quartic(&parse::<QuarticDoc>(&read(quartic)?)?),
        Verb::Oracle {
            curve,
            system,
            mode,
            budget,
        } => {
            let c = load_curve(curve)?;
            let system = match system {
                SystemArg::D1 => LinearSystem::D1,
                SystemArg::D2 => LinearSystem::D2,
                SystemArg::D2Classical => LinearSystem::D2Classical,
            };
            let mode = match mode {
                ModeArg::Symbolic => OracleMode::SymbolicModCurve,
                ModeArg::Sample => OracleMode::PointSampling,
            };
            let v = wronskian_frobenius_oracle(&c, system, mode, *budget)?;
            Outcome::ok(Some(FieldDoc::of(c.field())), v)
        }
    }
}

fn run_count(args: &CountArgs) -> Result<Outcome> {
    let c = load_curve(&args.curve)?;
    let field = Some(FieldDoc::of(c.field()));
    if args.r != 1
        && (args.verify || matches!(args.method, MethodArg::Formula | MethodArg::FiberSum))
    {
        return Err(Error::AssumptionViolated(vec![format!(
            "only brute force counts over F_(q^{})",
            args.r
        )]));
    }
    if args.verify {
        let formula = count_formula(&c)?;
        let brute = bruteforce_report(&c, 1, args.budget)?;
        if formula.n_points != brute.n_points {
            return Err(Error::Internal(format!(
                "formula gives {} but brute force gives {}",
                formula.n_points, brute.n_points
            )));
        }
        return Outcome::ok(
            field,
            json!({ "verified": true, "formula": formula, "brute_force": brute }),
        );
    }
    let report = match args.method {
        MethodArg::Formula => count_formula(&c)?,
        MethodArg::BruteForce => bruteforce_report(&c, args.r, args.budget)?,
        MethodArg::FiberSum => fibersum_report(&c),
        MethodArg::Auto if args.r == 1 => match count_formula(&c) {
            Ok(r) => r,
            Err(Error::HypothesisNotCertified(_)) => bruteforce_report(&c, 1, args.budget)?,
            Err(e) => return Err(e),
        },
        MethodArg::Auto => bruteforce_report(&c, args.r, args.budget)?,
    };
    Outcome::ok(field, report)
}

fn run_quartic(doc: &QuarticDoc) -> Result<Outcome> {
    let coeffs = match doc {
        QuarticDoc::Sym { coeffs, .. } => serde_json::to_value(coeffs),
        QuarticDoc::Bde { coeffs, .. } => serde_json::to_value(coeffs),
    }
    .map_err(|e| Error::Internal(e.to_string()))?;
    match doc.build()? {
        Quartic::Sym(q) => Outcome::ok(
            Some(FieldDoc::of(q.field())),
            json!({
                "family": "sym",
                "coeffs": coeffs,
                "reducible": !q.cremona_irreducible(),
                "factors": Value::Null,
                "collinear": Value::Null,
            }),
        ),
        Quartic::Bde(q) => {
            let collinear = q.collinear()?;
            let (factors, factor_field) = if let Some(c) = q.square_root() {
                (
                    Some(vec![FormDoc::of(&c), FormDoc::of(&c)]),
                    Some(FieldDoc::of(q.field())),
                )
            } else if q.reducible() {
                let fac = q.factorization()?;
                (
                    Some(fac.factors.iter().map(FormDoc::of).collect()),
                    Some(FieldDoc::of(&fac.ext.big)),
                )
            } else {
                (None, None)
            };
            Outcome::ok(
                Some(FieldDoc::of(q.field())),
                json!({
                    "family": "bde",
                    "coeffs": coeffs,
                    "reducible": q.reducible(),
                    "invariant": frobcurves::doc::Elem::of(q.field(), q.invariant()),
                    "factors": factors,
                    "factor_field": factor_field,
                    "collinear": collinear,
                }),
            )
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Internal(_) => "internal",
        Error::Schema(_) => "schema",
        Error::AssumptionViolated(_) => "assumption_violated",
        Error::HypothesisFails(_) => "hypothesis_fails",
        Error::HypothesisNotCertified(_) => "hypothesis_not_certified",
        Error::BudgetExceeded { .. } | Error::BudgetTooSmall { .. } => "budget",
        _ => "invalid_input",
    }
}

fn echo(verb: &Verb) -> Value {
    match verb {
        Verb::Classify { curve } => json!({ "verb": "classify", "input": curve }),
        Verb::Count(a) => json!({
            "verb": "count", "input": a.curve, "verify": a.verify, "r": a.r,
            "method": a.method, "budget": a.budget.to_string(),
        }),
        Verb::Bounds { d, q, s } => json!({ "verb": "bounds", "d": d, "q": q, "s": s }),
        Verb::Lift { conic, h } => json!({ "verb": "lift", "input": conic, "h": h }),
        Verb::CertifyMaximal { conic, h } => {
            json!({ "verb": "certify-maximal", "input": conic, "h": h })
        }
        Verb::Quartic { quartic } => json!({ "verb": "quartic", "input": quartic }),
        Verb::Oracle {
            curve,
            system,
            mode,
            budget,
        } => {
            json!({ "verb": "oracle", "input": curve, "system": system, "mode": mode, "budget": budget })
        }
    }
}

fn table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                table(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{prefix:<40} [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                table(x, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => out.push_str(&format!("{prefix:<40} {v}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("FROBCURVES_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .or(cli.threads);
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }

    let started = Instant::now();
    let outcome = run(&cli.verb);
    let mut manifest = json!({
        "tool": "frobcurves",
        "version": env!("CARGO_PKG_VERSION"),
        "command": echo(&cli.verb),
    });
    let code = match outcome {
        Ok(o) => {
            manifest["field"] = serde_json::to_value(&o.field).unwrap_or(Value::Null);
            manifest["result"] = o.result;
            if o.violated {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut err = json!({ "kind": error_kind(&e), "message": e.to_string() });
            if let Error::AssumptionViolated(list) = &e {
                err["violations"] = json!(list);
            }
            manifest["error"] = err;
            if matches!(e, Error::Internal(_)) {
                1
            } else {
                2
            }
        }
    };
    manifest["runtime_ms"] = json!(started.elapsed().as_millis() as u64);

    if cli.table {
        let mut s = String::new();
        table(&manifest, "", &mut s);
        print!("{s}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&manifest).expect("serializable")
        );
    }
    ExitCode::from(code)
}
