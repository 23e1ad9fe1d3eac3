use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dickson_do::claims::{planar_checklist, ChecklistOptions};
use dickson_do::classify::{appendix_table, classify_sweep, verify_appendix, SweepRow};
use dickson_do::dickson::{dickson_symbolic, frak_d, parse_parameter, DicksonSpec};
use dickson_do::planarity::{is_planar, planar_set_sweep};
use dickson_do::weil::{count_bivariate_zeros, min_e_exceeding, weil_interval};
use dickson_do::{BivariatePoly, Error, FieldSpec, ParametricPoly, SparsePoly};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "dickson-do", version, about = "Dickson polynomials, DO classification and planarity over odd-characteristic fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Worker threads for sweeps (default: machine parallelism).
    #[arg(long, env = "DICKSON_DO_WORKERS", global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print a Dickson polynomial, symbolically and over a field.
    Dickson(DicksonArgs),
    /// Compare the DO test with the classification over a grid.
    Classify(ClassifyArgs),
    /// Planarity of a polynomial or of a one-parameter family.
    Planar(PlanarArgs),
    /// Weil interval, thresholds and zero counts.
    Weil {
        #[command(subcommand)]
        cmd: WeilCmd,
    },
    /// Render the list of DO families and optionally verify it.
    Appendix(AppendixArgs),
}

#[derive(Args)]
struct DicksonArgs {
    /// Spec string such as `k=5,m=2,d=2,p=3,a=1`; overrides the flags.
    spec: Option<String>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value_t = 0)]
    m: u64,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long)]
    p: Option<u64>,
    /// Parameter: integer, coordinate tuple `(c0,c1,..)` or `g^n`.
    #[arg(long)]
    a: Option<String>,
    /// Field for instantiation, e.g. `3^2`; defaults to `F_p`.
    #[arg(long)]
    field: Option<String>,
    /// Drop the constant term even when `d = 1`.
    #[arg(long)]
    constant_free: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 40)]
    kmax: u64,
    #[arg(long, default_value_t = 200)]
    dmax: u64,
    /// A single `m`, a comma list, or `all` for `0..p`.
    #[arg(long, default_value = "all")]
    m: String,
    /// Emit every row, not only the summary and mismatches.
    #[arg(long)]
    rows: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reproduce {
    /// The list of planar DO polynomials with a parameter.
    PlanarList,
}

#[derive(Args)]
struct PlanarArgs {
    /// Field such as `3^4` or `3^4/x^4+2x^3+2`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    poly: Option<String>,
    /// Parameter value for a polynomial mentioning `a`.
    #[arg(long)]
    a: Option<String>,
    /// Sweep `a` over the nonzero field elements.
    #[arg(long)]
    sweep_a: bool,
    #[arg(long, value_enum)]
    reproduce: Option<Reproduce>,
    #[arg(long, default_value_t = 5)]
    max_e: u32,
    /// Add the sampled `e = 9` run to the reproduction.
    #[arg(long)]
    sample_e9: bool,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Subcommand)]
enum WeilCmd {
    /// Smallest `e` where the lower Weil bound exceeds the boundary count.
    MinE {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        deg: u64,
        #[arg(long)]
        boundary: u64,
    },
    /// Exact interval for `q` and degree.
    Interval {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        deg: u64,
    },
    /// Count affine zeros of `h(x, y)` and compare with the interval.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        a: Option<String>,
        /// Degree for the interval; defaults to the total degree.
        #[arg(long)]
        deg: Option<u64>,
    },
}

#[derive(Args)]
struct AppendixArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 2)]
    nmax: u32,
}

/// Result of one command before rendering.
struct Outcome {
    command: &'static str,
    parameters: Value,
    field: Option<String>,
    results: Value,
    text: String,
    csv: Option<String>,
    mismatch: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let outcome = match run(cli.cmd) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let runtime_ms = start.elapsed().as_millis() as u64;
    match cli.out {
        Format::Json => {
            let report = json!({
                "schema": SCHEMA,
                "version": env!("CARGO_PKG_VERSION"),
                "command": outcome.command,
                "parameters": outcome.parameters,
                "field": outcome.field,
                "results": outcome.results,
                "runtime_ms": runtime_ms,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
        }
        Format::Csv => match &outcome.csv {
            Some(c) => print!("{c}"),
            None => println!("{}", outcome.text),
        },
        Format::Text => println!("{}", outcome.text),
    }
    if outcome.mismatch {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cmd: Command) -> dickson_do::Result<Outcome> {
    match cmd {
        Command::Dickson(a) => cmd_dickson(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Planar(a) => cmd_planar(a),
        Command::Weil { cmd } => cmd_weil(cmd),
        Command::Appendix(a) => cmd_appendix(a),
    }
}

fn cmd_dickson(args: DicksonArgs) -> dickson_do::Result<Outcome> {
    let spec = match &args.spec {
        Some(s) => DicksonSpec::parse(s)?,
        None => DicksonSpec {
            k: args.k.ok_or_else(|| Error::syntax(0, "missing --k"))?,
            m: args.m,
            d: args.d,
            p: args.p,
            a: args.a.clone(),
        },
    };
    let poly = if spec.d > 1 || args.constant_free {
        frak_d(spec.k, spec.m, spec.d)?
    } else {
        dickson_symbolic(spec.k, spec.m)
    };
    let symbolic = poly.to_string();
    let field = match (&args.field, spec.p) {
        (Some(f), _) => Some(FieldSpec::from_description(f)?),
        (None, Some(p)) => Some(FieldSpec::new(p, 1, None)?),
        (None, None) => None,
    };
    let mut reduced = None;
    let mut instantiated = None;
    if let Some(field) = &field {
        reduced = Some(poly.reduce_mod(field.p()));
        if let Some(a) = &spec.a {
            let a = parse_parameter(field, a)?;
            instantiated = Some(poly.instantiate(field, a)?.to_string());
        }
    }
    let text = instantiated.clone().unwrap_or_else(|| symbolic.clone());
    Ok(Outcome {
        command: "dickson",
        parameters: json!({"k": spec.k, "m": spec.m, "d": spec.d, "p": spec.p, "a": spec.a}),
        field: field.as_ref().map(FieldSpec::describe),
        results: json!({
            "symbolic": symbolic,
            "coefficients": poly.terms.iter().map(|t| json!({
                "i": t.a_power, "coeff": t.coeff.to_string(), "exponent": t.exponent,
            })).collect::<Vec<_>>(),
            "reduced": reduced,
            "instantiated": instantiated,
        }),
        text,
        csv: None,
        mismatch: false,
    })
}

fn parse_ms(s: &str, p: u64) -> dickson_do::Result<Vec<u64>> {
    if s.trim() == "all" {
        return Ok((0..p).collect());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::syntax(0, format!("bad m {t:?}")))
        })
        .collect()
}

fn cmd_classify(args: ClassifyArgs) -> dickson_do::Result<Outcome> {
    let ms = parse_ms(&args.m, args.p)?;
    let rows = classify_sweep(args.p, args.kmax, &ms, args.dmax)?;
    let mismatches: Vec<&SweepRow> = rows.iter().filter(|r| r.is_mismatch()).collect();
    let do_rows = rows.iter().filter(|r| r.is_do).count();
    let mut csv = String::from(SweepRow::csv_header());
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }
    let text = format!(
        "{} mismatches ({} cells, {} DO)",
        mismatches.len(),
        rows.len(),
        do_rows
    );
    let listed: Vec<&SweepRow> = if args.rows {
        rows.iter().collect()
    } else {
        mismatches.clone()
    };
    Ok(Outcome {
        command: "classify",
        parameters: json!({"p": args.p, "kmax": args.kmax, "dmax": args.dmax, "m": ms}),
        field: None,
        results: json!({
            "cells": rows.len(),
            "do_cells": do_rows,
            "mismatch_count": mismatches.len(),
            "rows": listed,
        }),
        mismatch: !mismatches.is_empty(),
        text,
        csv: Some(csv),
    })
}

fn cmd_planar(args: PlanarArgs) -> dickson_do::Result<Outcome> {
    if let Some(Reproduce::PlanarList) = args.reproduce {
        let opts = ChecklistOptions {
            max_e: args.max_e,
            sample_e9: args.sample_e9,
            seed: args.seed,
            ..Default::default()
        };
        let checks = planar_checklist(&opts)?;
        let failed = checks.iter().filter(|c| !c.passed).count();
        let text = checks
            .iter()
            .map(|c| {
                let tag = match (c.passed, c.partial) {
                    (true, false) => "PASS",
                    (true, true) => "PASS (partial)",
                    (false, _) => "FAIL",
                };
                format!("{tag:<15} {:<15} {}", c.id, c.statement)
            })
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Outcome {
            command: "planar",
            parameters: json!({"reproduce": "planar-list", "max_e": args.max_e, "sample_e9": args.sample_e9, "seed": args.seed}),
            field: None,
            results: json!({"failed": failed, "checks": checks}),
            text,
            csv: None,
            mismatch: failed > 0,
        });
    }
    let field_s = args
        .field
        .as_deref()
        .ok_or_else(|| Error::syntax(0, "missing --field"))?;
    let poly_s = args
        .poly
        .as_deref()
        .ok_or_else(|| Error::syntax(0, "missing --poly"))?;
    let field = FieldSpec::from_description(field_s)?;
    let params = json!({"field": field_s, "poly": poly_s, "a": args.a, "sweep_a": args.sweep_a});
    if args.sweep_a {
        let family = ParametricPoly::parse(poly_s, &field)?;
        let set = planar_set_sweep(&family)?;
        let text = format!(
            "{} of {} parameters planar: [{}]",
            set.elements.len(),
            set.tested,
            set.elements
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        return Ok(Outcome {
            command: "planar",
            parameters: params,
            field: Some(field.describe()),
            results: set.to_json(),
            text,
            csv: None,
            mismatch: false,
        });
    }
    let a = args
        .a
        .as_deref()
        .map(|s| parse_parameter(&field, s))
        .transpose()?;
    let f = SparsePoly::parse(poly_s, &field, a)?;
    let report = is_planar(&f)?;
    Ok(Outcome {
        command: "planar",
        parameters: params,
        field: Some(field.describe()),
        text: format!("{}: {}", f, if report.planar { "planar" } else { "not planar" }),
        results: report.to_json(),
        csv: None,
        mismatch: false,
    })
}

fn cmd_weil(cmd: WeilCmd) -> dickson_do::Result<Outcome> {
    match cmd {
        WeilCmd::MinE { p, deg, boundary } => {
            let t = min_e_exceeding(p, deg, boundary)?;
            Ok(Outcome {
                command: "weil min-e",
                parameters: json!({"p": p, "deg": deg, "boundary": boundary}),
                field: None,
                text: t.min_e.to_string(),
                results: serde_json::to_value(&t).expect("serialisable"),
                csv: None,
                mismatch: false,
            })
        }
        WeilCmd::Interval { q, deg } => {
            let w = weil_interval(q, deg);
            Ok(Outcome {
                command: "weil interval",
                parameters: json!({"q": q, "deg": deg}),
                field: None,
                text: format!("[{}, {}]", w.lower, w.upper),
                results: w.to_json(),
                csv: None,
                mismatch: false,
            })
        }
        WeilCmd::Count { field, h, a, deg } => {
            let fs = FieldSpec::from_description(&field)?;
            let a_el = a.as_deref().map(|s| parse_parameter(&fs, s)).transpose()?;
            let poly = BivariatePoly::parse(&h, &fs, a_el)?;
            let n = count_bivariate_zeros(&poly)?;
            let deg = deg.or(poly.total_degree()).unwrap_or(0);
            let mut w = weil_interval(fs.q(), deg);
            w.measured = Some(n);
            Ok(Outcome {
                command: "weil count",
                parameters: json!({"field": field, "h": h, "a": a, "deg": deg}),
                field: Some(fs.describe()),
                text: format!("{n} zeros; interval [{}, {}]", w.lower, w.upper),
                results: w.to_json(),
                csv: None,
                mismatch: false,
            })
        }
    }
}

fn cmd_appendix(args: AppendixArgs) -> dickson_do::Result<Outcome> {
    let table = appendix_table(args.p)?;
    let families: Vec<Value> = table
        .iter()
        .map(|f| {
            json!({
                "label": f.label(),
                "m_residue": f.m_residue,
                "k": f.k_pattern,
                "d": f.d_pattern,
                "polynomial": f.to_string(),
                "parameters": f.parameters,
            })
        })
        .collect();
    let mut text = table
        .iter()
        .map(|f| format!("{}: {}", f.label(), f))
        .collect::<Vec<_>>()
        .join("\n");
    let mut results = json!({"families": families});
    let mut mismatch = false;
    if args.verify {
        let checks = verify_appendix(args.p, args.nmax)?;
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        mismatch = !failed.is_empty();
        text.push_str(&format!(
            "\n{} instantiations, {} failed",
            checks.len(),
            failed.len()
        ));
        results["verification"] = json!({
            "instantiations": checks.len(),
            "failed": failed,
        });
    }
    Ok(Outcome {
        command: "appendix",
        parameters: json!({"p": args.p, "verify": args.verify, "nmax": args.nmax}),
        field: None,
        results,
        text,
        csv: None,
        mismatch,
    })
}
