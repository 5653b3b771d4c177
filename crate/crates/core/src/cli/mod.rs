//! The `rq` command line: parses arguments into a [`JobConfig`], runs it, and writes
//! line-delimited JSON (or plain text) reports.
//!
//! Exit status is 0 on success, 2 when a verification fails (an identity, a check or a
//! mining candidate), and 1 on usage errors.

use crate::characters::{tau_relation_scan, RQSpec, TauTable};
use crate::error::{Error, Result};
use crate::modeq::{catalogue, mine, BivariatePolynomial, MiningJob, SeriesRecipe, Shape};
use crate::numerics::{
    agile_algebraicity_probe, decimal, eval_rq, eval_rq_derivative, eval_rq_exp_sum, eval_rq_theta, nome,
    recognize_algebraic, run_check, PrecisionContext, CHECK_IDS,
};
use crate::quantities::registry::{self, Standing};
use crate::quantities::{m_series, n_series, rq_series, rq_star_series};
use crate::report::{parse_report, JobConfig, ReportLine};
use clap::{Args, Parser, Subcommand};
use rug::{Float, Rational};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "rq",
    version,
    about = "Ramanujan quantities: exact q-series, mined modular equations, numeric checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Line-delimited JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a truncated q-series in canonical text form.
    Series(SeriesArgs),
    /// List tau(1..=nmax).
    Tau(TauArgs),
    /// Search for linear relations among tau(n), tau(2n), ..., tau(Jn).
    TauScan(TauScanArgs),
    /// Mine a polynomial relation P(u, v) = 0 between two series.
    Mine(MineArgs),
    /// Check the identity registry coefficientwise.
    VerifyIdentities(VerifyArgs),
    /// Evaluate R(a,b,p;q) numerically by several routes.
    Eval(EvalArgs),
    /// Run a named high-precision check.
    Check(CheckArgs),
    /// Search for an integer polynomial annihilating a number.
    Recognize(RecognizeArgs),
    /// Rerun the job embedded in an earlier report.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long)]
    spec: String,
    /// One of r, star, m, n.
    #[arg(long, default_value = "r")]
    quantity: String,
    /// Substitute q -> q^alpha.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value = "20")]
    order: String,
}

#[derive(Args, Debug)]
struct TauArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 100)]
    nmax: usize,
}

#[derive(Args, Debug)]
struct TauScanArgs {
    #[arg(long)]
    spec: String,
    /// Largest multiplier j in tau(jn).
    #[arg(long = "J", visible_alias = "j-max", default_value_t = 16)]
    j_max: usize,
    #[arg(long, default_value_t = 2000)]
    nmax: usize,
}

#[derive(Args, Debug)]
struct MineArgs {
    /// A catalogued job name; other flags are ignored when given.
    #[arg(long)]
    id: Option<String>,
    /// Spec for u (and for v unless --spec-v is given).
    #[arg(long, required_unless_present = "id")]
    spec: Option<String>,
    /// Spec for v.
    #[arg(long)]
    spec_v: Option<String>,
    /// r or n.
    #[arg(long, default_value = "r")]
    quantity: String,
    /// u = quantity(spec; q^alpha).
    #[arg(long, default_value = "1")]
    alpha: String,
    /// v = quantity(spec_v; q^beta).
    #[arg(long, default_value = "2")]
    beta: String,
    /// Monomials u^i v^j with i, j <= s.
    #[arg(long = "box", conflicts_with = "total")]
    box_size: Option<u32>,
    /// Monomials with i + j <= d.
    #[arg(long)]
    total: Option<u32>,
    #[arg(long, default_value = "60")]
    order: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    id: Option<String>,
    #[arg(long, default_value = "30")]
    order: String,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    spec: String,
    /// Evaluate at q = exp(-pi sqrt r).
    #[arg(long, conflicts_with = "q")]
    r: Option<String>,
    /// Evaluate at this decimal q.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = 30)]
    digits: u32,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Check name; see `--id list`.
    #[arg(long)]
    id: String,
    #[arg(long, default_value = "1")]
    r: String,
    #[arg(long)]
    spec: Option<String>,
    /// Nome for checks that run at a plain q.
    #[arg(long, default_value = "0.2")]
    q: String,
    #[arg(long, default_value_t = 40)]
    digits: u32,
}

#[derive(Args, Debug)]
struct RecognizeArgs {
    /// A decimal number.
    #[arg(long, conflicts_with_all = ["spec", "agile"])]
    value: Option<String>,
    /// Recognise R(spec; exp(-pi sqrt r)).
    #[arg(long, conflicts_with = "agile")]
    spec: Option<String>,
    /// Recognise the normalised agile value for "a,p" at exp(-pi sqrt r).
    #[arg(long)]
    agile: Option<String>,
    #[arg(long, default_value = "1")]
    r: String,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 60)]
    digits: u32,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// A report written by an earlier run.
    report: PathBuf,
}

/// Results of one job.
pub struct Outcome {
    pub results: Vec<Value>,
    /// A verification inside the job failed.
    pub failed: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_rational(s: &str, what: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("{what} {s:?}: {e}")))
}

fn parse_spec(s: &str) -> Result<RQSpec> {
    s.parse()
}

fn need<'a>(v: &'a Option<String>, what: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| usage(format!("missing {what}")))
}

fn parse_float(s: &str, ctx: &PrecisionContext) -> Result<Float> {
    let p = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("number {s:?}: {e}")))?;
    Ok(Float::with_val(ctx.bits(), p))
}

fn config_from(cli: &Cli) -> Result<JobConfig> {
    let mut c = JobConfig::default();
    match &cli.command {
        Command::Series(a) => {
            c.subcommand = "series".into();
            c.spec = Some(a.spec.clone());
            c.quantity = Some(a.quantity.clone());
            c.alpha = a.alpha.clone();
            c.order = Some(a.order.clone());
        }
        Command::Tau(a) => {
            c.subcommand = "tau".into();
            c.spec = Some(a.spec.clone());
            c.n_max = Some(a.nmax);
        }
        Command::TauScan(a) => {
            c.subcommand = "tau-scan".into();
            c.spec = Some(a.spec.clone());
            c.j_max = Some(a.j_max);
            c.n_max = Some(a.nmax);
        }
        Command::Mine(a) => {
            c.subcommand = "mine".into();
            if let Some(id) = &a.id {
                c.id = Some(id.clone());
            } else {
                c.spec = a.spec.clone();
                c.spec_v = a.spec_v.clone();
                c.quantity = Some(a.quantity.clone());
                c.alpha = Some(a.alpha.clone());
                c.beta = Some(a.beta.clone());
                c.shape = Some(match (a.box_size, a.total) {
                    (Some(s), None) => Shape::Box(s).to_string(),
                    (None, Some(d)) => Shape::Total(d).to_string(),
                    _ => return Err(usage("mine needs --box or --total")),
                });
                c.order = Some(a.order.clone());
            }
        }
        Command::VerifyIdentities(a) => {
            c.subcommand = "verify-identities".into();
            c.id = a.id.clone();
            c.order = Some(a.order.clone());
        }
        Command::Eval(a) => {
            c.subcommand = "eval".into();
            c.spec = Some(a.spec.clone());
            c.r = a.r.clone();
            c.q = a.q.clone();
            if c.r.is_none() && c.q.is_none() {
                return Err(usage("eval needs --r or --q"));
            }
            c.digits = Some(a.digits);
        }
        Command::Check(a) => {
            c.subcommand = "check".into();
            c.id = Some(a.id.clone());
            c.r = Some(a.r.clone());
            c.spec = a.spec.clone();
            c.q = Some(a.q.clone());
            c.digits = Some(a.digits);
        }
        Command::Recognize(a) => {
            c.subcommand = "recognize".into();
            c.value = a.value.clone();
            c.spec = a.spec.clone();
            c.agile = a.agile.clone();
            if c.value.is_none() && c.spec.is_none() && c.agile.is_none() {
                return Err(usage("recognize needs --value, --spec or --agile"));
            }
            if c.value.is_none() {
                c.r = Some(a.r.clone());
            }
            c.degree = Some(a.degree);
            c.digits = Some(a.digits);
        }
        Command::Replay(_) => unreachable!("replay carries its own config"),
    }
    Ok(c)
}

fn parse_shape(s: &str) -> Result<Shape> {
    let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|t| t.strip_suffix(')')).map(str::parse::<u32>);
    match (inner("box("), inner("total(")) {
        (Some(Ok(n)), _) => Ok(Shape::Box(n)),
        (_, Some(Ok(n))) => Ok(Shape::Total(n)),
        _ => Err(Error::Parse(format!("shape {s:?}"))),
    }
}

fn recipe(quantity: &str, spec: RQSpec, power: Rational) -> Result<SeriesRecipe> {
    match quantity {
        "r" => Ok(SeriesRecipe::r(spec, power)),
        "n" => Ok(SeriesRecipe::n(spec, power)),
        other => Err(usage(format!("quantity must be r or n, got {other:?}"))),
    }
}

fn run_series(c: &JobConfig) -> Result<Outcome> {
    let spec = parse_spec(need(&c.spec, "--spec")?)?;
    let order = parse_rational(need(&c.order, "--order")?, "order")?;
    let alpha = match &c.alpha {
        Some(a) => parse_rational(a, "alpha")?,
        None => Rational::from(1),
    };
    if alpha <= 0 {
        return Err(usage("alpha must be positive"));
    }
    let inner = Rational::from(&order / &alpha);
    let quantity = c.quantity.as_deref().unwrap_or("r");
    let base = match quantity {
        "r" => rq_series(&spec, &inner)?,
        "star" => rq_star_series(&spec, &inner)?,
        "n" => n_series(&spec, &inner)?,
        "m" => {
            let n = inner.clone().ceil().numer().to_usize().ok_or_else(|| usage("order out of range"))?;
            m_series(&spec, n)?
        }
        other => return Err(usage(format!("quantity must be r, star, m or n, got {other:?}"))),
    };
    let s = base.substitute_power(&alpha)?.truncated(&order);
    Ok(Outcome {
        results: vec![json!({
            "quantity": quantity,
            "spec": spec.to_string(),
            "power": alpha.to_string(),
            "order": s.order().to_string(),
            "series": s.to_string(),
        })],
        failed: false,
    })
}

fn run_tau(c: &JobConfig) -> Result<Outcome> {
    let spec = parse_spec(need(&c.spec, "--spec")?)?;
    let n = c.n_max.unwrap_or(100);
    let table = TauTable::new(&spec)?;
    Ok(Outcome { results: vec![json!({ "spec": spec.to_string(), "tau": table.prefix(n) })], failed: false })
}

fn run_tau_scan(c: &JobConfig) -> Result<Outcome> {
    let spec = parse_spec(need(&c.spec, "--spec")?)?;
    let (j, n) = (c.j_max.unwrap_or(16), c.n_max.unwrap_or(2000));
    let rels = tau_relation_scan(&spec, j, n)?;
    let list: Vec<Value> = rels
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("relation serialises");
            v["text"] = Value::String(r.to_text());
            v
        })
        .collect();
    Ok(Outcome {
        results: vec![json!({ "spec": spec.to_string(), "j_max": j, "n_max": n, "relations": list })],
        failed: false,
    })
}

fn run_mine(c: &JobConfig) -> Result<Outcome> {
    let (job, expected) = match &c.id {
        Some(id) => {
            let k = catalogue::find(id).ok_or_else(|| usage(format!("no catalogued job {id:?}")))?;
            (k.job, Some(k.expected))
        }
        None => {
            let spec = parse_spec(need(&c.spec, "--spec")?)?;
            let spec_v = match &c.spec_v {
                Some(s) => parse_spec(s)?,
                None => spec.clone(),
            };
            let q = c.quantity.as_deref().unwrap_or("r");
            let u = recipe(q, spec, parse_rational(need(&c.alpha, "--alpha")?, "alpha")?)?;
            let v = recipe(q, spec_v, parse_rational(need(&c.beta, "--beta")?, "beta")?)?;
            let shape = parse_shape(need(&c.shape, "--box or --total")?)?;
            let order = parse_rational(need(&c.order, "--order")?, "order")?;
            let name = format!("{u} vs {v}");
            (MiningJob::new(&name, u, v, shape, order), None)
        }
    };
    let report = mine(&job)?;
    let mut v = serde_json::to_value(&report).expect("mining report serialises");
    v["shape"] = Value::String(job.shape.to_string());
    v["order"] = Value::String(job.order.to_string());
    let mut failed = !report.dropped_candidates.is_empty();
    if let Some(e) = expected {
        let want: BivariatePolynomial = e.parse()?;
        let found = report.polynomials.iter().any(|p| p.polynomial == want.canonical());
        v["expected"] = Value::String(e.to_string());
        v["expected_found"] = Value::Bool(found);
        failed |= !found;
    }
    Ok(Outcome { results: vec![v], failed })
}

fn run_verify(c: &JobConfig) -> Result<Outcome> {
    let order = parse_rational(need(&c.order, "--order")?, "order")?;
    let outcomes = match &c.id {
        Some(id) => vec![registry::find(id).ok_or_else(|| usage(format!("no identity {id:?}")))?.verify(&order)?],
        None => registry::verify_all(&order)?,
    };
    let failed = outcomes.iter().any(|o| o.standing == Standing::Proved && !o.verified);
    Ok(Outcome {
        results: outcomes.iter().map(|o| serde_json::to_value(o).expect("outcome serialises")).collect(),
        failed,
    })
}

fn nome_from(c: &JobConfig, ctx: &PrecisionContext) -> Result<(Float, Option<Float>)> {
    match (&c.r, &c.q) {
        (Some(r), _) => {
            let r = parse_rational(r, "r")?;
            if r <= 0 {
                return Err(usage("r must be positive"));
            }
            let x = ctx.pi() * Float::with_val(ctx.bits(), &r).sqrt();
            Ok((nome(&r, ctx), Some(x)))
        }
        (None, Some(q)) => {
            let q = parse_float(q, ctx)?;
            let x = if q > 0 { Some(-Float::with_val(ctx.bits(), q.ln_ref())) } else { None };
            Ok((q, x))
        }
        _ => Err(usage("need --r or --q")),
    }
}

fn run_eval(c: &JobConfig) -> Result<Outcome> {
    let spec = parse_spec(need(&c.spec, "--spec")?)?;
    let ctx = PrecisionContext::new(c.digits.unwrap_or(30));
    let (q, x) = nome_from(c, &ctx)?;
    let d = ctx.digits;
    let mut v = json!({
        "spec": spec.to_string(),
        "q": decimal(&q, d),
        "digits": d,
        "product": decimal(&eval_rq(&spec, &q, &ctx)?, d),
        "derivative": decimal(&eval_rq_derivative(&spec, &q, &ctx)?, d),
    });
    if let Some(x) = x {
        if let Ok(t) = eval_rq_theta(&spec, &x, &ctx) {
            v["theta"] = Value::String(decimal(&t, d));
        }
        if let Ok(t) = eval_rq_exp_sum(&spec, &x, &ctx) {
            v["cosh_sum"] = Value::String(decimal(&t, d));
        }
    }
    if let Some(r) = &c.r {
        v["r"] = Value::String(r.clone());
    }
    Ok(Outcome { results: vec![v], failed: false })
}

fn run_check_cmd(c: &JobConfig) -> Result<Outcome> {
    let id = need(&c.id, "--id")?;
    if id == "list" {
        return Ok(Outcome { results: vec![json!({ "checks": CHECK_IDS })], failed: false });
    }
    let ctx = PrecisionContext::new(c.digits.unwrap_or(40));
    let r = parse_rational(need(&c.r, "--r")?, "r")?;
    let spec = c.spec.as_deref().map(parse_spec).transpose()?;
    let q = parse_float(need(&c.q, "--q")?, &ctx)?;
    let reports = run_check(id, &r, spec.as_ref(), &q, &ctx)?;
    let failed = reports.iter().any(|r| !r.passed());
    Ok(Outcome {
        results: reports.iter().map(|r| serde_json::to_value(r).expect("check serialises")).collect(),
        failed,
    })
}

fn run_recognize(c: &JobConfig) -> Result<Outcome> {
    let ctx = PrecisionContext::new(c.digits.unwrap_or(60));
    let degree = c.degree.unwrap_or(4);
    if let Some(a) = &c.agile {
        let parts: Vec<&str> = a.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("--agile wants a,p; got {a:?}")));
        }
        let (a, p) = (parse_rational(parts[0], "a")?, parse_rational(parts[1], "p")?);
        let r = parse_rational(need(&c.r, "--r")?, "r")?;
        let rep = agile_algebraicity_probe(&a, &p, &r, degree, &ctx)?;
        return Ok(Outcome { results: vec![serde_json::to_value(rep).expect("probe serialises")], failed: false });
    }
    let (x, label) = match (&c.value, &c.spec) {
        (Some(v), _) => (parse_float(v, &ctx)?, format!("value {v}")),
        (None, Some(s)) => {
            let spec = parse_spec(s)?;
            let r = parse_rational(need(&c.r, "--r")?, "r")?;
            (eval_rq(&spec, &nome(&r, &ctx), &ctx)?, format!("R({spec}) at r = {r}"))
        }
        _ => return Err(usage("recognize needs --value, --spec or --agile")),
    };
    let rec = recognize_algebraic(&x, degree, &ctx)?;
    Ok(Outcome {
        results: vec![json!({
            "input": label,
            "value": decimal(&x, ctx.digits),
            "digits": ctx.digits,
            "max_degree": degree,
            "recognition": rec,
        })],
        failed: false,
    })
}

/// Runs a job described by its config.
pub fn execute(c: &JobConfig) -> Result<Outcome> {
    match c.subcommand.as_str() {
        "series" => run_series(c),
        "tau" => run_tau(c),
        "tau-scan" => run_tau_scan(c),
        "mine" => run_mine(c),
        "verify-identities" => run_verify(c),
        "eval" => run_eval(c),
        "check" => run_check_cmd(c),
        "recognize" => run_recognize(c),
        other => Err(usage(format!("unknown subcommand {other:?}"))),
    }
}

fn text_line(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

/// Renders the report, one JSON object per line (or text blocks).
pub fn render(config: &JobConfig, outcome: &Outcome, text: bool) -> String {
    let mut out = String::new();
    for r in &outcome.results {
        if text {
            out.push_str(&text_line(r));
            out.push_str("\n\n");
        } else {
            out.push_str(&ReportLine::new(config, r.clone()).to_json_line());
            out.push('\n');
        }
    }
    out
}

fn emit(body: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

/// Parses `argv` (including the program name), runs the job and returns the exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let config = match &cli.command {
        Command::Replay(a) => {
            let text = match std::fs::read_to_string(&a.report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", a.report.display());
                    return 1;
                }
            };
            match parse_report(&text).and_then(|l| l.into_iter().next().ok_or_else(|| usage("empty report"))) {
                Ok(line) => line.config,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
        }
        _ => match config_from(&cli) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        },
    };
    let outcome = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Err(e) = emit(&render(&config, &outcome, cli.text), &cli.out) {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    if outcome.failed {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests;
