use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewrank::cauchy::{
    cauchy_product_formula, factorial_cauchy, fc_det, inverse_binomial, omega, rc_det, restricted_cauchy, ZeroPattern,
};
use skewrank::dschur::{double_schur_comb, double_schur_det, fc_det_via_double_schur};
use skewrank::exact::{parse_rationals, Matrix, Rational};
use skewrank::giambelli::{
    enumerate_outside_decompositions, grank, hg_det_spec, hg_matrix, lowest_order_matrix, parse_cut, pq_sets, HgEntry,
};
use skewrank::rank::{
    jrank, jt_matrix, min_strip_decomposition, min_strip_rank, rank_code, rank_diagonal, BorderStrip, JtEntry,
    SearchBounds,
};
use skewrank::schur::{skew_schur_spec, zrank};
use skewrank::verify::{self, Params, Suite};
use skewrank::{Error, Partition, SkewShape};

#[derive(Parser)]
#[command(name = "skewrank", version, about = "Ranks, zranks and Cauchy-type determinants of skew shapes")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All rank characterizations and the zrank of a shape.
    Rank {
        shape: String,
        /// Cell bound for the minimal strip search.
        #[arg(long, default_value_t = 16)]
        max_cells: usize,
    },
    /// s(1^t) and its t-adic valuation.
    Zrank { shape: String },
    /// Reduced code of a shape.
    Code { shape: String },
    /// Jacobi-Trudi subscript matrix.
    Jt { shape: String },
    /// Determinant of a restricted Cauchy, factorial Cauchy or inverse binomial matrix.
    Det {
        kind: DetKind,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Matrix of the outside decomposition cut by a direction word.
    Hg {
        shape: String,
        /// One letter (U or R) per diagonal except the last.
        #[arg(long)]
        cut: String,
    },
    /// grank of one outside decomposition, or of all of them.
    Grank {
        shape: String,
        #[arg(long)]
        cut: Option<String>,
    },
    /// Endpoint content multisets P and Q (minimal decomposition unless --cut).
    Pq {
        shape: String,
        #[arg(long)]
        cut: Option<String>,
    },
    /// S_lambda(X, Y) by the alternant and by tableaux.
    DoubleSchur {
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Run a verification campaign.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DetKind {
    Cauchy,
    Factorial,
    Binomial,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// Largest shape size for shape families.
    #[arg(long)]
    max_cells: Option<usize>,
    /// Largest matrix order for exhaustive Cauchy-type families.
    #[arg(long)]
    n: Option<usize>,
    /// Entry range `lo..hi` (inclusive) for restricted Cauchy families.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Random rational pairs per order.
    #[arg(long)]
    random: Option<usize>,
    /// Largest order of the random pairs.
    #[arg(long)]
    random_n: Option<usize>,
    /// Factorial families: bound on the a-values.
    #[arg(long)]
    max_a: Option<i64>,
    /// Factorial families: bound on the b-values.
    #[arg(long)]
    max_b: Option<i64>,
    /// Random evaluation points per partition (double Schur).
    #[arg(long)]
    points: Option<usize>,
    /// Longest ribbon for the lowest-coefficient suite.
    #[arg(long)]
    max_ribbon: Option<usize>,
}

/// What a command produced and whether it found a violation.
struct Output {
    text: String,
    json: Value,
    violation: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&out.json).expect("json") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(e) => {
            let code = if matches!(e, Error::TheoremViolation(_)) { 1 } else { 2 };
            if cli.json {
                println!("{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn run(cli: &Cli) -> skewrank::Result<Output> {
    match &cli.command {
        Command::Rank { shape, max_cells } => cmd_rank(&parse_shape(shape)?, *max_cells),
        Command::Zrank { shape } => cmd_zrank(&parse_shape(shape)?),
        Command::Code { shape } => cmd_code(&parse_shape(shape)?),
        Command::Jt { shape } => cmd_jt(&parse_shape(shape)?),
        Command::Det { kind, a, b } => cmd_det(*kind, a, b),
        Command::Hg { shape, cut } => cmd_hg(&parse_shape(shape)?, cut),
        Command::Grank { shape, cut } => cmd_grank(&parse_shape(shape)?, cut.as_deref()),
        Command::Pq { shape, cut } => cmd_pq(&parse_shape(shape)?, cut.as_deref()),
        Command::DoubleSchur { lambda, x, y } => cmd_double_schur(lambda, x, y),
        Command::Verify(args) => cmd_verify(args, cli.seed, cli.jobs),
    }
}

fn parse_shape(text: &str) -> skewrank::Result<SkewShape> {
    text.parse()
}

fn ok(text: String, json: Value) -> skewrank::Result<Output> {
    Ok(Output { text, json, violation: false })
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    json!((0..m.rows()).map(|i| strings(m.row(i))).collect::<Vec<_>>())
}

fn shape_json(s: &SkewShape) -> Value {
    json!({
        "shape": s.to_string(),
        "outer": s.outer().parts(),
        "inner": s.inner().parts(),
        "cells": s.size(),
    })
}

fn cmd_rank(s: &SkewShape, max_cells: usize) -> skewrank::Result<Output> {
    let bounds = SearchBounds { min_strip_cells: max_cells, ..SearchBounds::default() };
    let values = [
        ("diagonal", rank_diagonal(s)),
        ("code", rank_code(s)),
        ("jt", jrank(s)),
        ("min_strips", min_strip_rank(s, &bounds)?),
        ("zrank", zrank(s)),
    ];
    let agree = values.iter().all(|&(_, v)| v == values[0].1);
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    let mut text = format!("shape      {s}\n");
    for (name, v) in values {
        let _ = writeln!(text, "{name:<10} {v}");
    }
    let _ = writeln!(text, "verdict    {verdict}");
    let mut j = shape_json(s);
    for (name, v) in values {
        j[name] = json!(v);
    }
    j["verdict"] = json!(verdict);
    Ok(Output { text, json: j, violation: !agree })
}

fn cmd_zrank(s: &SkewShape) -> skewrank::Result<Output> {
    let f = skew_schur_spec(s);
    let z = f.valuation().expect("nonzero");
    let text = format!("shape  {s}\ns(1^t) {}\nzrank  {z}\n", f.pretty());
    let mut j = shape_json(s);
    j["coefficients"] = json!(strings(f.coeffs()));
    j["zrank"] = json!(z);
    ok(text, j)
}

fn cmd_code(s: &SkewShape) -> skewrank::Result<Output> {
    let c = s.reduced_code();
    let cols = c.one_over_zero_columns();
    let text = format!(
        "shape   {s}\ntop     {}\nbottom  {}\nlength  {}\n1/0     {:?}\nrank    {}\n",
        c.top_string(),
        c.bottom_string(),
        c.len(),
        cols,
        cols.len()
    );
    let mut j = shape_json(s);
    j["top"] = json!(c.top_string());
    j["bottom"] = json!(c.bottom_string());
    j["length"] = json!(c.len());
    j["one_over_zero_columns"] = json!(cols);
    j["rank"] = json!(cols.len());
    ok(text, j)
}

fn cmd_jt(s: &SkewShape) -> skewrank::Result<Output> {
    let jt = jt_matrix(s);
    let n = jt.order();
    let classes: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match jt.entry(i, j) {
                    JtEntry::Zero => "0".to_string(),
                    JtEntry::One => "1".to_string(),
                    JtEntry::H(k) => format!("h{k}"),
                })
                .collect()
        })
        .collect();
    let r = jrank(s);
    let text = format!("shape {s}\n{jt}\njrank {r}\n");
    let mut j = shape_json(s);
    j["subscripts"] = json!((0..n).map(|i| jt.subscripts().row(i).to_vec()).collect::<Vec<_>>());
    j["entries"] = json!(classes);
    j["jrank"] = json!(r);
    ok(text, j)
}

fn sign_word(s: i32) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

fn parse_naturals(text: &str) -> skewrank::Result<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("expected a nonnegative integer, got {t:?}"))))
        .collect()
}

fn cmd_det(kind: DetKind, a: &str, b: &str) -> skewrank::Result<Output> {
    let mut text = String::new();
    let mut j = json!({});
    match kind {
        DetKind::Cauchy => {
            let m = restricted_cauchy(parse_rationals(a)?, parse_rationals(b)?)?;
            let d = rc_det(&m)?;
            let _ = writeln!(text, "matrix\n{}", m.entries());
            j["kind"] = json!("cauchy");
            j["matrix"] = matrix_json(m.entries());
            j["irreducible"] = json!(m.pair().is_irreducible());
            if omega(&m) == 0 {
                let closed = cauchy_product_formula(m.pair().a(), m.pair().b())?;
                let _ = writeln!(text, "product formula {closed}");
                j["product_formula"] = json!(closed.to_string());
            }
            push_det(&mut text, &mut j, &d.value, d.omega, d.sign(), d.predicted_sign());
        }
        DetKind::Factorial => {
            let m = factorial_cauchy(parse_rationals(a)?, parse_rationals(b)?)?;
            let d = fc_det(&m)?;
            let _ = writeln!(text, "matrix\n{}", m.entries());
            j["kind"] = json!("factorial");
            j["matrix"] = matrix_json(m.entries());
            if d.omega == 0 {
                let via = fc_det_via_double_schur(m.pair().a().to_vec(), m.pair().b().to_vec())?;
                let _ = writeln!(text, "double Schur form {via}");
                j["via_double_schur"] = json!(via.to_string());
                if via != d.value {
                    return Err(Error::TheoremViolation(format!("det F = {} but double Schur form {via}", d.value)));
                }
            }
            push_det(&mut text, &mut j, &d.value, d.omega, d.sign(), d.predicted_sign());
        }
        DetKind::Binomial => {
            let r = inverse_binomial(&parse_naturals(a)?, &parse_naturals(b)?)?;
            let _ = writeln!(text, "matrix\n{}", r.entries());
            let _ = writeln!(text, "det F  {}", r.factorial_det);
            j["kind"] = json!("binomial");
            j["matrix"] = matrix_json(r.entries());
            j["factorial_det"] = json!(r.factorial_det.to_string());
            push_det(&mut text, &mut j, &r.det.value, r.det.omega, r.det.sign(), r.det.predicted_sign());
        }
    }
    ok(text, j)
}

fn push_det(text: &mut String, j: &mut Value, value: &Rational, omega: usize, sign: i32, predicted: i32) {
    let _ = writeln!(text, "det    {value}\nomega  {omega}\nsign   {} (expected {}) OK", sign_word(sign), sign_word(predicted));
    j["det"] = json!(value.to_string());
    j["omega"] = json!(omega);
    j["sign"] = json!(sign);
    j["expected_sign"] = json!(predicted);
    j["verdict"] = json!("OK");
}

fn strip_json(st: &BorderStrip) -> Value {
    json!({
        "start": [st.start().row, st.start().col],
        "end": [st.end().row, st.end().col],
        "p": st.start().content(),
        "q": st.end().content(),
        "cells": st.cells().iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
        "steps": st.to_string(),
    })
}

fn cmd_hg(s: &SkewShape, cut: &str) -> skewrank::Result<Output> {
    let d = parse_cut(s, cut)?;
    let hg = hg_matrix(&d);
    let g = grank(&d);
    let spec = hg_det_spec(&d);
    let target = skew_schur_spec(s);
    let low = lowest_order_matrix(&d)?;
    let agree = spec == target;

    let mut text = format!("shape  {s}\ncut    {}\nstrips\n", d.cutting().word());
    for st in d.strips() {
        let _ = writeln!(text, "  {st}  p={} q={}", st.start().content(), st.end().content());
    }
    let _ = writeln!(text, "matrix\n{hg}");
    let _ = writeln!(text, "grank  {g}\ndet    {}\ns(1^t) {}\nidentity {}", spec.pretty(), target.pretty(), if agree { "OK" } else { "FAIL" });
    let _ = writeln!(text, "lowest-order matrix (det {})\n{}", low.det, low.matrix);

    let n = hg.order();
    let entries: Vec<Vec<Value>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| match hg.entry(i, k) {
                    HgEntry::Zero => json!(0),
                    HgEntry::One => json!(1),
                    HgEntry::Ribbon(r) => json!({ "from": hg.p[i], "to": hg.q[k], "ribbon": r.to_string() }),
                })
                .collect()
        })
        .collect();
    let mut j = shape_json(s);
    j["cut"] = json!(d.cutting().word());
    j["strips"] = json!(d.strips().iter().map(strip_json).collect::<Vec<_>>());
    j["matrix"] = json!(entries);
    j["grank"] = json!(g);
    j["det"] = json!(strings(spec.coeffs()));
    j["skew_schur"] = json!(strings(target.coeffs()));
    j["identity"] = json!(agree);
    j["lowest_order"] = matrix_json(&low.matrix);
    j["lowest_order_det"] = json!(low.det.to_string());
    Ok(Output { text, json: j, violation: !agree })
}

fn cmd_grank(s: &SkewShape, cut: Option<&str>) -> skewrank::Result<Output> {
    let r = rank_diagonal(s);
    let granks: Vec<(String, usize)> = match cut {
        Some(w) => {
            let d = parse_cut(s, w)?;
            vec![(d.cutting().word(), grank(&d))]
        }
        None => enumerate_outside_decompositions(s, &SearchBounds::default())?
            .iter()
            .map(|d| (d.cutting().word(), grank(d)))
            .collect(),
    };
    let bad: Vec<&(String, usize)> = granks.iter().filter(|(_, g)| *g != r).collect();
    let mut text = format!("shape  {s}\nrank   {r}\n");
    if let [(w, g)] = granks.as_slice() {
        let _ = writeln!(text, "cut    {w}\ngrank  {g}");
    } else {
        let _ = writeln!(text, "decompositions {}\nmismatches {}", granks.len(), bad.len());
    }
    let mut j = shape_json(s);
    j["rank"] = json!(r);
    j["granks"] = json!(granks.iter().map(|(w, g)| json!({ "cut": w, "grank": g })).collect::<Vec<_>>());
    j["mismatches"] = json!(bad.len());
    Ok(Output { text, json: j, violation: !bad.is_empty() })
}

fn cmd_pq(s: &SkewShape, cut: Option<&str>) -> skewrank::Result<Output> {
    let (label, strips) = match cut {
        Some(w) => (format!("cut {w}"), parse_cut(s, w)?.strips().to_vec()),
        None => ("minimal".to_string(), min_strip_decomposition(s, &SearchBounds::default())?.strips().to_vec()),
    };
    let pq = pq_sets(&strips);
    let text = format!(
        "shape  {s}\nstrips {label}: {}\nP      {:?}\nQ      {:?}\nP-Q    {:?}\nQ-P    {:?}\nP&Q    {:?}\n",
        strings(&strips).join(" "),
        pq.p,
        pq.q,
        pq.p_minus_q(),
        pq.q_minus_p(),
        pq.intersection()
    );
    let mut j = shape_json(s);
    j["decomposition"] = json!(label);
    j["strips"] = json!(strips.iter().map(strip_json).collect::<Vec<_>>());
    j["P"] = json!(pq.p);
    j["Q"] = json!(pq.q);
    j["P_minus_Q"] = json!(pq.p_minus_q());
    j["Q_minus_P"] = json!(pq.q_minus_p());
    j["intersection"] = json!(pq.intersection());
    ok(text, j)
}

fn cmd_double_schur(lambda: &str, x: &str, y: &str) -> skewrank::Result<Output> {
    let lambda: Partition = lambda.parse()?;
    let (x, y) = (parse_rationals(x)?, parse_rationals(y)?);
    let det = double_schur_det(&lambda, &x, &y)?;
    let comb = double_schur_comb(&lambda, &x, &y)?;
    let agree = det == comb;
    let text = format!("alternant {det}\ntableaux  {comb}\nverdict   {}\n", if agree { "AGREE" } else { "DISAGREE" });
    let j = json!({
        "lambda": lambda.parts(),
        "x": strings(&x),
        "y": strings(&y),
        "alternant": det.to_string(),
        "tableaux": comb.to_string(),
        "agree": agree,
    });
    Ok(Output { text, json: j, violation: !agree })
}

fn parse_range(text: &str) -> skewrank::Result<(i64, i64)> {
    let bad = || Error::Parse(format!("expected a range lo..hi, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn params_for(suite: Suite, args: &VerifyArgs, seed: u64) -> skewrank::Result<Params> {
    let mut p = Params::for_suite(suite);
    p.seed = seed;
    if let Some(v) = args.max_cells {
        p.max_cells = v;
    }
    if let Some(v) = args.n {
        p.n = v;
    }
    if let Some(r) = &args.range {
        (p.lo, p.hi) = parse_range(r)?;
    }
    if let Some(v) = args.random {
        p.random = v;
    }
    if let Some(v) = args.random_n {
        p.random_n = v;
    }
    if let Some(v) = args.max_a {
        p.max_a = v;
    }
    if let Some(v) = args.max_b {
        p.max_b = v;
    }
    if let Some(v) = args.points {
        p.points = v;
    }
    if let Some(v) = args.max_ribbon {
        p.max_ribbon = v;
    }
    Ok(p)
}

fn cmd_verify(args: &VerifyArgs, seed: u64, jobs: usize) -> skewrank::Result<Output> {
    let suites: Vec<Suite> = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse()?] };
    let mut reports = Vec::new();
    for suite in suites {
        reports.push(verify::run(suite, &params_for(suite, args, seed)?, jobs)?);
    }
    let mut text = String::new();
    for r in &reports {
        let bounds: Vec<String> = r.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            text,
            "{:<19} {:>9} instances  {:>9} passed  {:>4} failed  {:>8.2}s  [{}]",
            r.suite,
            r.instances,
            r.passed,
            r.failed,
            r.wall_time_secs,
            bounds.join(" ")
        );
        for f in r.failures.iter().take(20) {
            let _ = writeln!(text, "  FAIL {}: {}", f.instance, f.detail);
        }
    }
    let violation = reports.iter().any(|r| !r.ok());
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("json")
    } else {
        serde_json::to_value(&reports).expect("json")
    };
    Ok(Output { text, json, violation })
}
