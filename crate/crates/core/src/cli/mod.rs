//! Command-line front end. [`run`] does all the work and returns the exit
//! code, so the binary is a one-liner and tests can drive it in process.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error.

mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{group_algebra_max_period, make_group_algebra};
use crate::error::Error;
use crate::field::{FieldCtx, FieldElement};
use crate::order::{ord_bruteforce, ord_seeded, unit_group_order};
use crate::period_set::{closed_form, lower_bound, order_set_bruteforce_with_progress, PeriodSet};
use crate::poly::DEFAULT_SEED;
use crate::product::{
    component_recurrence, max_period_bound, period_over_ring, period_set_over_ring,
    project_sequence, ProductRingCtx, RingElement, RingMethod,
};
use crate::ring::FiniteRing;
use crate::sequence::{generate, minimal_poly, period_bruteforce, trajectory, Recurrence};
use crate::text::{
    format_element, format_field, format_poly, parse_element, parse_element_list, parse_poly,
    split_top_level,
};

pub use verify::{run_verify, Check, Scope, VerifyReport};

/// Value of the top-level `"schema"` key in every JSON document.
pub const SCHEMA: &str = "period-lab/1";

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "period-lab",
    version,
    about = "Periods of linear recurrence sequences over finite fields and products of finite fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized polynomial factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Upper limit on enumerated polynomials or ring states.
    #[arg(long, global = true, env = "PERIOD_LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for enumerations (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order of a polynomial.
    Ord(OrdArgs),
    /// Generate terms of a recurrence sequence.
    Simulate(SimulateArgs),
    /// Minimal polynomial of a sequence prefix.
    Minpoly(MinpolyArgs),
    /// Period set of degree-k recurrences over a field.
    PeriodSet(PeriodSetArgs),
    /// Recurrences over a product of fields.
    #[command(subcommand)]
    Ring(RingCommand),
    /// The cyclic group algebra F_p[t]/(t^n - 1).
    Algebra(AlgebraArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

fn parse_field_arg(s: &str) -> Result<FieldCtx, String> {
    crate::text::parse_field(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrdMethod {
    Pipeline,
    Bruteforce,
    Both,
}

#[derive(Debug, Args)]
pub struct OrdArgs {
    /// Field: `p`, `q`, `p^e` or `p^e/<modulus>`.
    #[arg(long, value_parser = parse_field_arg)]
    pub field: FieldCtx,
    #[arg(long)]
    pub poly: String,
    #[arg(long, value_enum, default_value_t = OrdMethod::Pipeline)]
    pub method: OrdMethod,
    /// Include the per-factor ledger as JSON.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_field_arg)]
    pub field: FieldCtx,
    /// Coefficients `c_0,...,c_{k-1}`.
    #[arg(long)]
    pub rec: String,
    /// Initial terms `a_0,...,a_{k-1}`.
    #[arg(long)]
    pub init: String,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// Also measure the period.
    #[arg(long)]
    pub period: bool,
    /// Also print the state vectors.
    #[arg(long)]
    pub trajectory: bool,
}

#[derive(Debug, Args)]
pub struct MinpolyArgs {
    #[arg(long, value_parser = parse_field_arg)]
    pub field: FieldCtx,
    /// Sequence prefix, comma separated.
    #[arg(long)]
    pub terms: String,
    /// Bound on the linear complexity; needs at least twice as many terms.
    #[arg(long)]
    pub bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetMethod {
    Closed,
    Bound,
    Bruteforce,
    All,
}

#[derive(Debug, Args)]
pub struct PeriodSetArgs {
    #[arg(long, value_parser = parse_field_arg)]
    pub field: FieldCtx,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = SetMethod::Closed)]
    pub method: SetMethod,
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    /// Period set over the product ring, by lcm-closure.
    PeriodSet(RingPeriodSetArgs),
    /// Period of one sequence over the product ring.
    Period(RingPeriodArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingMethodArg {
    Auto,
    Closed,
    Bruteforce,
}

#[derive(Debug, Args)]
pub struct RingPeriodSetArgs {
    /// Component fields, comma separated.
    #[arg(long, value_parser = parse_field_arg, value_delimiter = ',', required = true)]
    pub components: Vec<FieldCtx>,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = RingMethodArg::Auto)]
    pub method: RingMethodArg,
}

#[derive(Debug, Args)]
pub struct RingPeriodArgs {
    #[arg(long, value_parser = parse_field_arg, value_delimiter = ',', required = true)]
    pub components: Vec<FieldCtx>,
    /// Coefficients as ring tuples, e.g. `(1,1),(1,1)`.
    #[arg(long)]
    pub rec: String,
    #[arg(long)]
    pub init: String,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Also compute the largest period of a degree-k recurrence.
    #[arg(long)]
    pub max_period: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub scope: Scope,
}

/// Why a command failed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
    /// Verification ran but some check failed; the report is still printed.
    Verify(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Maps input-interpretation errors to usage errors.
fn usage<T>(r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

/// A command result in all three formats.
#[derive(Debug)]
struct Output {
    json: Value,
    text: String,
    csv: String,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

fn with_schema(mut v: Value) -> Value {
    v.as_object_mut()
        .expect("object")
        .insert("schema".into(), Value::String(SCHEMA.into()));
    v
}

fn set_csv(header: &str, s: &PeriodSet) -> String {
    let mut out = format!("{header}\n");
    for n in s.iter() {
        out.push_str(&format!("{n}\n"));
    }
    out
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let format = cli.format;
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(output) => {
            let _ = out.write_all(output.render(format).as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Verify(output)) => {
            let _ = out.write_all(output.render(format).as_bytes());
            let _ = writeln!(err, "error: verification failed");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Ord(a) => cmd_ord(a, cli.seed),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Minpoly(a) => cmd_minpoly(a, cli.seed),
        Command::PeriodSet(a) => cmd_period_set(a, cli.budget),
        Command::Ring(RingCommand::PeriodSet(a)) => cmd_ring_period_set(a, cli.budget),
        Command::Ring(RingCommand::Period(a)) => cmd_ring_period(a),
        Command::Algebra(a) => cmd_algebra(a, cli.budget),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn cmd_ord(a: &OrdArgs, seed: u64) -> Result<Output, Failure> {
    let f = usage(parse_poly(&a.field, &a.poly))?;
    let text_poly = format_poly(&f, 'x');
    let field = format_field(&a.field);
    let mut json = json!({ "field": field, "poly": text_poly });
    let mut ledger = None;
    let order = match a.method {
        OrdMethod::Pipeline | OrdMethod::Both => {
            let res = ord_seeded(&f, seed)?;
            let order = res.order;
            ledger = Some(res);
            if a.method == OrdMethod::Both {
                let brute = ord_bruteforce(&f, None)?;
                json["bruteforce_order"] = json!(brute);
                if brute != order {
                    return Err(Failure::Compute(Error::InvalidArgument(format!(
                        "pipeline order {order} disagrees with bruteforce order {brute}"
                    ))));
                }
            }
            order
        }
        OrdMethod::Bruteforce => ord_bruteforce(&f, None)?,
    };
    let method = match a.method {
        OrdMethod::Pipeline => "pipeline",
        OrdMethod::Bruteforce => "bruteforce",
        OrdMethod::Both => "both",
    };
    json["method"] = json!(method);
    json["order"] = json!(order);
    let mut text = format!("ord({text_poly}) over F_{} = {order}\n", a.field.q());
    if a.explain {
        if let Some(res) = &ledger {
            let value = serde_json::to_value(res).expect("serializable");
            text.push_str(&serde_json::to_string_pretty(&value).expect("serializable"));
            text.push('\n');
            json["ledger"] = value;
        }
    }
    Ok(Output {
        csv: format!("field,poly,method,order\n{field},{text_poly},{method},{order}\n"),
        json: with_schema(json),
        text,
    })
}

fn field_recurrence(field: &FieldCtx, rec: &str) -> Result<Recurrence<FieldCtx>, Failure> {
    let coeffs = usage(parse_element_list(field, rec))?;
    Ok(Recurrence::new(field, coeffs)?)
}

fn fmt_elems(field: &FieldCtx, v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|&x| format_element(field, x)).collect()
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Output, Failure> {
    let f = &a.field;
    let rec = field_recurrence(f, &a.rec)?;
    let init = usage(parse_element_list(f, &a.init))?;
    let terms = fmt_elems(f, &generate(&rec, &init, a.terms)?);
    let mut json = json!({
        "field": format_field(f),
        "rec": fmt_elems(f, rec.coeffs()),
        "init": fmt_elems(f, &init),
        "terms": terms,
    });
    let mut text = format!("{}\n", terms.join(","));
    let mut csv = String::from("n,a_n\n");
    for (i, t) in terms.iter().enumerate() {
        csv.push_str(&format!("{i},\"{t}\"\n"));
    }
    if a.period {
        let rho = period_bruteforce(&rec, &init)?;
        json["period"] = json!(rho);
        text.push_str(&format!("period: {rho}\n"));
    }
    if a.trajectory {
        let states: Vec<Vec<String>> = trajectory(&rec, &init, a.terms)?
            .iter()
            .map(|s| fmt_elems(f, s))
            .collect();
        for (i, s) in states.iter().enumerate() {
            text.push_str(&format!("s_{i} = ({})\n", s.join(",")));
        }
        json["trajectory"] = json!(states);
    }
    Ok(Output {
        json: with_schema(json),
        text,
        csv,
    })
}

fn cmd_minpoly(a: &MinpolyArgs, seed: u64) -> Result<Output, Failure> {
    let f = &a.field;
    let prefix = usage(parse_element_list(f, &a.terms))?;
    let m = minimal_poly(f, &prefix, a.bound)?;
    let order = ord_seeded(&m, seed)?.order;
    let text_poly = format_poly(&m, 'x');
    let degree = m.deg().unwrap_or(0);
    Ok(Output {
        json: with_schema(json!({
            "field": format_field(f),
            "minimal_poly": text_poly,
            "degree": degree,
            "order": order,
        })),
        text: format!("m(x) = {text_poly}\ndegree: {degree}\norder: {order}\n"),
        csv: format!("minimal_poly,degree,order\n{text_poly},{degree},{order}\n"),
    })
}

/// Large enumerations report progress on standard error in 10% steps.
fn bruteforce_with_progress(field: &FieldCtx, k: usize, budget: u64) -> crate::Result<PeriodSet> {
    let total = field.q().saturating_pow(k as u32);
    if total < 100_000 {
        return order_set_bruteforce_with_progress(field, k, budget, &|_, _| {});
    }
    let tenth = total / 10;
    let reported = std::sync::atomic::AtomicU64::new(0);
    order_set_bruteforce_with_progress(field, k, budget, &|done, total| {
        let decile = done / tenth;
        if reported.fetch_max(decile, std::sync::atomic::Ordering::Relaxed) < decile {
            eprintln!("progress: {done}/{total} polynomials");
        }
    })
}

fn cmd_period_set(a: &PeriodSetArgs, budget: u64) -> Result<Output, Failure> {
    let f = &a.field;
    let (q, k) = (f.q(), a.degree);
    if k == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let mut json = json!({ "q": q, "p": f.p(), "e": f.e(), "k": k });
    let label = format!("P({k}, F_{q})");
    let out = match a.method {
        SetMethod::Closed | SetMethod::Bound | SetMethod::Bruteforce => {
            let (name, set) = match a.method {
                SetMethod::Closed => ("closed", closed_form(k, q)?),
                SetMethod::Bound => ("bound", lower_bound(k, q)?),
                _ => ("bruteforce", bruteforce_with_progress(f, k, budget)?),
            };
            json["method"] = json!(name);
            json["period_set"] = json!(set.elems());
            Output {
                text: format!("{label} [{name}] = {set}\n"),
                csv: set_csv("period", &set),
                json,
            }
        }
        SetMethod::All => {
            let bound = lower_bound(k, q)?;
            let brute = bruteforce_with_progress(f, k, budget)?;
            let closed = if k <= 4 {
                Some(closed_form(k, q)?)
            } else {
                None
            };
            let extra = brute.difference(&bound);
            let mut text = String::new();
            let mut csv = String::from("method,period\n");
            let mut by_method = serde_json::Map::new();
            let mut rows = vec![("bound", &bound), ("bruteforce", &brute)];
            if let Some(c) = &closed {
                rows.insert(0, ("closed", c));
            }
            for (name, set) in rows {
                text.push_str(&format!("{label} [{name}] = {set}\n"));
                for n in set.iter() {
                    csv.push_str(&format!("{name},{n}\n"));
                }
                by_method.insert(name.into(), json!(set.elems()));
            }
            text.push_str(&format!("beyond the lower bound: {extra}\n"));
            json["method"] = json!("all");
            json["period_set"] = json!(brute.elems());
            json["by_method"] = Value::Object(by_method);
            json["strict_extra"] = json!(extra.elems());
            if let Some(c) = &closed {
                let agree = *c == brute;
                json["closed_matches_bruteforce"] = json!(agree);
                if !agree {
                    text.push_str("closed form and enumeration DISAGREE\n");
                }
            }
            Output { json, text, csv }
        }
    };
    Ok(Output {
        json: with_schema(out.json),
        ..out
    })
}

fn ring_method(m: RingMethodArg) -> RingMethod {
    match m {
        RingMethodArg::Auto => RingMethod::Auto,
        RingMethodArg::Closed => RingMethod::Closed,
        RingMethodArg::Bruteforce => RingMethod::Bruteforce,
    }
}

fn cmd_ring_period_set(a: &RingPeriodSetArgs, budget: u64) -> Result<Output, Failure> {
    let ring = ProductRingCtx::new(a.components.clone())?;
    let k = a.degree;
    if k == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let sets = period_set_over_ring(k, &ring, ring_method(a.method), budget)?;
    let specs: Vec<String> = ring.components().iter().map(format_field).collect();
    let qs: Vec<String> = ring
        .components()
        .iter()
        .map(|f| format!("F_{}", f.q()))
        .collect();
    let label = format!("P({k}, {})", qs.join(" + "));
    let max = sets.period_set.max().unwrap_or(1);
    let bound = max_period_bound(k, &ring)?;
    let size_bound = ring
        .size()
        .ok_or(Error::Overflow("ring size"))
        .and_then(|s| unit_group_order(s, k))?;
    let mut text = String::new();
    for (q, s) in qs.iter().zip(&sets.components) {
        text.push_str(&format!("P({k}, {q}) = {s}\n"));
    }
    text.push_str(&format!("{label} = {}\n", sets.period_set));
    text.push_str(&format!(
        "max period {max}, bound {bound}, |R|^k-1 = {size_bound}\n"
    ));
    let components: Vec<Value> = specs
        .iter()
        .zip(&sets.components)
        .map(|(f, s)| json!({ "field": f, "period_set": s.elems() }))
        .collect();
    Ok(Output {
        json: with_schema(json!({
            "components": components,
            "k": k,
            "period_set": sets.period_set.elems(),
            "max_period": max,
            "max_period_bound": bound,
            "ring_size_pow_minus_one": size_bound,
            "achieved": max == size_bound,
        })),
        text,
        csv: set_csv("period", &sets.period_set),
    })
}

fn parse_ring_element(ring: &ProductRingCtx, s: &str) -> crate::Result<RingElement> {
    let s = s.trim();
    let parts = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) => split_top_level(inner, ',')?,
        None if ring.rank() == 1 => vec![s.to_string()],
        None => {
            return Err(Error::Parse(format!(
                "expected a tuple (a,b,...), got {s:?}"
            )))
        }
    };
    if parts.len() != ring.rank() {
        return Err(Error::Parse(format!(
            "expected {} components, got {s:?}",
            ring.rank()
        )));
    }
    let parts = ring
        .components()
        .iter()
        .zip(&parts)
        .map(|(f, p)| parse_element(f, p))
        .collect::<crate::Result<Vec<_>>>()?;
    ring.element(parts)
}

fn parse_ring_list(ring: &ProductRingCtx, s: &str) -> crate::Result<Vec<RingElement>> {
    split_top_level(s, ',')?
        .iter()
        .map(|p| parse_ring_element(ring, p))
        .collect()
}

fn cmd_ring_period(a: &RingPeriodArgs) -> Result<Output, Failure> {
    let ring = ProductRingCtx::new(a.components.clone())?;
    let coeffs = usage(parse_ring_list(&ring, &a.rec))?;
    let init = usage(parse_ring_list(&ring, &a.init))?;
    let rec = Recurrence::new(&ring, coeffs)?;
    let period = period_over_ring(&rec, &init)?;
    let mut per_component = Vec::new();
    let mut text = String::new();
    for i in 1..=ring.rank() {
        let f = &ring.components()[i - 1];
        let comp = component_recurrence(&rec, i)?;
        let rho = period_bruteforce(&comp, &project_sequence(&ring, &init, i)?)?;
        text.push_str(&format!("component {i} (F_{}): period {rho}\n", f.q()));
        per_component.push(json!({ "field": format_field(f), "period": rho }));
    }
    text.push_str(&format!("period: {period}\n"));
    Ok(Output {
        json: with_schema(json!({
            "components": per_component,
            "period": period,
        })),
        text,
        csv: format!("period\n{period}\n"),
    })
}

fn cmd_algebra(a: &AlgebraArgs, budget: u64) -> Result<Output, Failure> {
    let spec = make_group_algebra(a.p, a.n)?;
    let factors: Vec<Value> = spec
        .factorization
        .factors
        .iter()
        .map(|(f, m)| json!({ "factor": format_poly(f, 't'), "multiplicity": m }))
        .collect();
    let factor_text: Vec<String> = spec
        .factorization
        .factors
        .iter()
        .map(|(f, m)| match m {
            1 => format!("({})", format_poly(f, 't')),
            _ => format!("({})^{m}", format_poly(f, 't')),
        })
        .collect();
    let components: Option<Vec<String>> = spec
        .decomposition
        .as_ref()
        .map(|r| r.components().iter().map(format_field).collect());
    let mut text = format!(
        "A_{n} = F_{p}[t]/(t^{n}-1)\nt^{n}-1 = {}\nsemisimple: {}\n",
        factor_text.join(""),
        spec.semisimple,
        n = a.n,
        p = a.p
    );
    if let Some(r) = &spec.decomposition {
        let qs: Vec<String> = r
            .components()
            .iter()
            .map(|f| format!("F_{}", f.q()))
            .collect();
        text.push_str(&format!("decomposition: {}\n", qs.join(" + ")));
    }
    let mut json = json!({
        "p": a.p,
        "n": a.n,
        "factors": factors,
        "factor_count": spec.factor_count(),
        "semisimple": spec.semisimple,
        "is_field": spec.is_field(),
        "components": components,
    });
    let mut csv = String::from("p,n,factor_count,semisimple");
    let mut row = format!(
        "{},{},{},{}",
        a.p,
        a.n,
        spec.factor_count(),
        spec.semisimple
    );
    if a.max_period {
        let k = a.degree;
        let (max, method) = group_algebra_max_period(&spec, k, budget)?;
        let size = spec.algebra.size().ok_or(Error::Overflow("algebra size"))?;
        let top = unit_group_order(size, k)?;
        text.push_str(&format!("max period (k={k}): {max} (|A|^k-1 = {top})\n"));
        json["k"] = json!(k);
        json["max_period"] = json!(max);
        json["max_period_method"] = json!(method);
        json["ring_size_pow_minus_one"] = json!(top);
        csv.push_str(",k,max_period");
        row.push_str(&format!(",{k},{max}"));
    }
    Ok(Output {
        json: with_schema(json),
        text,
        csv: format!("{csv}\n{row}\n"),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let report = run_verify(a.scope);
    let mut text = String::new();
    let mut csv = String::from("name,topic,expected,computed,pass,elapsed_ms\n");
    for c in &report.checks {
        text.push_str(&format!(
            "{} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.computed
        ));
        if !c.pass {
            text.push_str(&format!("     expected {}\n", c.expected));
        }
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            quote(&c.name),
            quote(&c.topic),
            quote(&c.expected),
            quote(&c.computed),
            c.pass,
            c.elapsed_ms
        ));
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    text.push_str(&format!(
        "{} of {} checks passed\n",
        report.checks.len() - failed,
        report.checks.len()
    ));
    let output = Output {
        json: with_schema(serde_json::to_value(&report).expect("serializable")),
        text,
        csv,
    };
    if report.pass {
        Ok(output)
    } else {
        Err(Failure::Verify(output))
    }
}
