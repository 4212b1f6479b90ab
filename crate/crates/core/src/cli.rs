//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage, parse and parameter errors, 3 for
//! domain errors such as asking to decompose a polynomial of prime degree.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::collisions::{collide, CollisionParams, CollisionVariant};
use crate::decompose::{divisor_plan, is_decomposable, try_decompose, DecompositionRecord};
use crate::density::{EstimateReport, Field, Mode, Target, TubeSpec};
use crate::error::Error;
use crate::poly::MonicOriginal;
use crate::scalar::{Complex64, Rational, Scalar};

pub const THREADS_ENV: &str = "POLYDECOMP_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "polydecomp",
    version,
    about = "Polynomial decomposition and tube density experiments"
)]
pub struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print g o h.
    Compose {
        g: String,
        h: String,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// List the decompositions of f as a JSON array of {d, g, h}.
    Decompose {
        f: String,
        /// Only try this left degree.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Build a collision from JSON parameters ("-" reads stdin) and verify it.
    Collide {
        params: String,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Closed-form density bracket.
    Bounds {
        #[command(flatten)]
        tube: TubeArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte Carlo density estimate with the closed-form bracket.
    Estimate {
        #[command(flatten)]
        tube: TubeArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Estimates over a grid of epsilon values and divisors, one row each.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Divisors to sweep; all proper divisors when omitted.
        #[arg(long, value_delimiter = ',', conflicts_with = "union")]
        d: Vec<usize>,
        #[arg(long)]
        union: bool,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long = "B", default_value_t = 1.0)]
        bound: f64,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct TubeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "union", required_unless_present = "union")]
    pub d: Option<usize>,
    /// Tube around the union of the two largest components.
    #[arg(long)]
    pub union: bool,
    #[arg(long)]
    pub eps: f64,
    #[arg(long = "B", default_value_t = 1.0)]
    pub bound: f64,
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Rational,
    Real64,
    Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Conditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotComposite(_) => Failure::domain(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match configure_threads().and_then(|()| execute(&cli)) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::usage(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // a pool may already exist when embedded; the cap then does not apply
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    let output = match &cli.command {
        Command::Compose { g, h, field } => {
            match field.unwrap_or(FieldArg::Rational) {
                FieldArg::Rational => compose_text::<Rational>(g, h),
                FieldArg::Real64 => compose_text::<f64>(g, h),
                FieldArg::Complex64 => compose_text::<Complex64>(g, h),
            }? + "\n"
        }
        Command::Decompose { f, d, field } => match field.unwrap_or(FieldArg::Rational) {
            FieldArg::Rational => decompose_json::<Rational>(f, *d),
            FieldArg::Real64 => decompose_json::<f64>(f, *d),
            FieldArg::Complex64 => decompose_json::<Complex64>(f, *d),
        }?,
        Command::Collide { params, field } => {
            let text = if params == "-" {
                read_stdin()?
            } else {
                params.clone()
            };
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("invalid JSON parameters: {e}")))?;
            match field.unwrap_or(FieldArg::Rational) {
                FieldArg::Rational => collide_json::<Rational>(&value),
                FieldArg::Real64 => collide_json::<f64>(&value),
                FieldArg::Complex64 => collide_json::<Complex64>(&value),
            }?
        }
        Command::Bounds { tube, format } => bounds_output(&tube_spec(tube)?, *format)?,
        Command::Estimate { tube, run, format } => {
            let spec = tube_spec(tube)?;
            let report = EstimateReport::run(&spec, run.samples, run.seed, run.mode.into())?;
            render_reports(&[report], *format, false)?
        }
        Command::Sweep {
            n,
            d,
            union,
            eps,
            bound,
            field,
            run,
            format,
        } => {
            let field = estimation_field(*field)?;
            let targets: Vec<Target> = if *union {
                vec![Target::Union]
            } else if d.is_empty() {
                divisor_plan(*n)?
                    .proper_divisors
                    .into_iter()
                    .map(Target::Divisor)
                    .collect()
            } else {
                d.iter().copied().map(Target::Divisor).collect()
            };
            let specs = eps
                .iter()
                .flat_map(|&e| targets.iter().map(move |&t| (e, t)))
                .map(|(e, t)| TubeSpec::new(*n, t, e, *bound, field))
                .collect::<crate::Result<Vec<_>>>()?;
            let reports = specs
                .iter()
                .map(|spec| EstimateReport::run(spec, run.samples, run.seed, run.mode.into()))
                .collect::<crate::Result<Vec<_>>>()?;
            render_reports(&reports, *format, true)?
        }
    };
    write_output(cli.out.as_ref(), &output)
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Conditional => Mode::Conditional,
        }
    }
}

fn read_stdin() -> CliResult<String> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text)?;
    Ok(text)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })
}

fn compose_text<S: Scalar>(g: &str, h: &str) -> CliResult<String> {
    let g = MonicOriginal::<S>::from_text(g)?;
    let h = MonicOriginal::<S>::from_text(h)?;
    Ok(g.compose(&h).to_text())
}

fn decompose_json<S: Scalar>(f: &str, d: Option<usize>) -> CliResult<String> {
    let f = MonicOriginal::<S>::from_text(f)?;
    let n = f.degree();
    let records: Vec<DecompositionRecord> = match d {
        Some(d) => try_decompose(&f, d)?
            .iter()
            .map(|dec| dec.to_record())
            .collect(),
        None => {
            if divisor_plan(n).is_err() {
                return Err(Failure::domain(format!(
                    "degree {n} is not composite, so f has no nontrivial decomposition; pass --d to force a check"
                )));
            }
            is_decomposable(&f)
                .iter()
                .map(|(_, dec)| dec.to_record())
                .collect()
        }
    };
    to_json(&records)
}

#[derive(Serialize)]
struct CollideReport {
    variant: &'static str,
    n: usize,
    d: usize,
    e: usize,
    f: String,
    decomposes_d: bool,
    decomposes_e: bool,
    verified: bool,
}

fn scalar_field<S: Scalar>(value: &Value, key: &str) -> CliResult<S> {
    match value {
        Value::Number(x) => Ok(S::parse_text(&x.to_string())?),
        Value::String(s) => Ok(S::parse_text(s)?),
        _ => Err(Failure::usage(format!(
            "{key} must be a number or a string"
        ))),
    }
}

fn usize_field(params: &Value, key: &str) -> CliResult<usize> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Failure::usage(format!("missing or invalid integer field {key:?}")))
}

fn poly_field<S: Scalar>(params: &Value, key: &str, i: usize) -> CliResult<MonicOriginal<S>> {
    match params.get(key) {
        None | Some(Value::Null) if i == 1 => Ok(MonicOriginal::identity()),
        None | Some(Value::Null) => Err(Failure::usage(format!(
            "{key} is required when gcd(d, e) = {i}"
        ))),
        Some(Value::String(s)) => Ok(MonicOriginal::from_text(s)?),
        Some(_) => Err(Failure::usage(format!("{key} must be a polynomial string"))),
    }
}

/// Reads `{variant, n, d, u, v, a, w|z}`. `u` and `v` default to `x` when
/// `gcd(d, e) = 1`, `a` and `z` default to 0. `w` lists the lower
/// coefficients `[w_{s-1}, ..., w_0]`.
pub fn collision_params<S: Scalar>(params: &Value) -> CliResult<CollisionParams<S>> {
    let variant = params
        .get("variant")
        .and_then(Value::as_str)
        .unwrap_or_default();
    let n = usize_field(params, "n")?;
    let d = usize_field(params, "d")?;
    if d == 0 || n % d != 0 {
        return Err(Failure::usage(format!("d = {d} must divide n = {n}")));
    }
    let i = num_integer::gcd(d, n / d);
    let a = match params.get("a") {
        None | Some(Value::Null) => S::zero(),
        Some(v) => scalar_field(v, "a")?,
    };
    let variant = match variant {
        "exp" => {
            let w = match params.get("w") {
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| scalar_field(v, "w"))
                    .collect::<CliResult<Vec<S>>>()?,
                Some(Value::String(s)) if s.trim().is_empty() => Vec::new(),
                Some(Value::String(s)) => s
                    .split(',')
                    .map(S::parse_text)
                    .collect::<crate::Result<Vec<S>>>()?,
                None | Some(Value::Null) => vec![S::zero(); (n / d).checked_div(d).unwrap_or(0)],
                Some(_) => return Err(Failure::usage("w must be an array of coefficients")),
            };
            CollisionVariant::Exp { w }
        }
        "trig" => {
            let z = match params.get("z") {
                None | Some(Value::Null) => S::zero(),
                Some(v) => scalar_field(v, "z")?,
            };
            CollisionVariant::Trig { z }
        }
        other => {
            return Err(Failure::usage(format!(
                "variant must be \"exp\" or \"trig\", got {other:?}"
            )))
        }
    };
    let params = CollisionParams {
        n,
        d,
        u: poly_field(params, "u", i)?,
        v: poly_field(params, "v", i)?,
        a,
        variant,
    };
    params.validate()?;
    Ok(params)
}

fn collide_json<S: Scalar>(value: &Value) -> CliResult<String> {
    let params = collision_params::<S>(value)?;
    let f = collide(&params)?;
    let (d, e) = (params.d, params.e());
    let decomposes_d = try_decompose(&f, d)?.is_some();
    let decomposes_e = try_decompose(&f, e)?.is_some();
    to_json(&CollideReport {
        variant: match params.variant {
            CollisionVariant::Exp { .. } => "exp",
            CollisionVariant::Trig { .. } => "trig",
        },
        n: params.n,
        d,
        e,
        f: f.to_text(),
        decomposes_d,
        decomposes_e,
        verified: decomposes_d && decomposes_e,
    })
}

fn estimation_field(field: Option<FieldArg>) -> CliResult<Field> {
    match field.unwrap_or(FieldArg::Real64) {
        FieldArg::Real64 => Ok(Field::Real),
        FieldArg::Complex64 => Ok(Field::Complex),
        FieldArg::Rational => Err(Failure::usage("densities need --field real64 or complex64")),
    }
}

fn tube_spec(args: &TubeArgs) -> CliResult<TubeSpec> {
    let target = match (args.union, args.d) {
        (true, _) => Target::Union,
        (false, Some(d)) => Target::Divisor(d),
        (false, None) => return Err(Failure::usage("pass --d or --union")),
    };
    Ok(TubeSpec::new(
        args.n,
        target,
        args.eps,
        args.bound,
        estimation_field(args.field)?,
    )?)
}

#[derive(Serialize)]
struct BoundsReport {
    n: usize,
    d: Target,
    field: Field,
    epsilon: f64,
    #[serde(rename = "B")]
    bound: f64,
    lower_bound: f64,
    upper_bound: f64,
    cheng_bound: f64,
    upper_bound_raw: f64,
    capped: bool,
}

fn bounds_output(spec: &TubeSpec, format: Format) -> CliResult<String> {
    let b = spec.bounds()?;
    let report = BoundsReport {
        n: spec.n,
        d: spec.target,
        field: spec.field,
        epsilon: spec.epsilon,
        bound: spec.bound,
        lower_bound: b.lower,
        upper_bound: b.upper,
        cheng_bound: spec.cheng(),
        upper_bound_raw: b.raw_upper,
        capped: b.capped,
    };
    match format {
        Format::Json => to_json(&report),
        Format::Csv => to_csv(std::slice::from_ref(&report)),
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    String::from_utf8(bytes).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })
}

fn render_reports(reports: &[EstimateReport], format: Format, many: bool) -> CliResult<String> {
    match format {
        Format::Csv => to_csv(reports),
        Format::Json if many => to_json(reports),
        Format::Json => to_json(&reports[0]),
    }
}
