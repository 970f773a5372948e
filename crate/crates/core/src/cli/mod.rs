//! The `ddyck` command line. [`run`] parses arguments, dispatches to the
//! library and writes text or JSON. Exit codes: 0 on success, 1 on a domain
//! error, 2 on a usage error.

pub mod methods;
pub mod schema;
mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{self, AsymptoticsError, LADDER};
use crate::bijection::{phi, phi_inverse, BijectionError, Encoding};
use crate::enumerate::{EnumerateError, Enumerator, PathFilter};
use crate::path::{DParam, Path, PathError};
use crate::recurrences::{ground_area_seq, RecurrenceError};
use crate::series::{
    lagrange_le, narayana_limit, pyramid_series, series_b, series_l_closed_minus1, series_l_nonneg,
    series_l_univariate_minus1, series_v, solve_area_system, solve_le_system, BivariateSeries,
    SeriesError,
};
use methods::{agreed, Evaluated, Selection};
use schema::number;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error("invalid encoding JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("unknown method {name:?} (available: {available})")]
    UnknownMethod { name: String, available: String },
    #[error("{0}")]
    Invalid(String),
    #[error("methods disagree")]
    Disagreement,
    #[error("self-test failed")]
    SelftestFailed,
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ddyck",
    version,
    about = "Exact enumeration of d-Dyck paths",
    propagate_version = true
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest semi-length the exhaustive oracle may enumerate [env: DDYCK_MAX_EXHAUSTIVE]
    #[arg(long = "max-exhaustive", global = true, value_name = "INT")]
    max_exhaustive: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DArg {
    /// Valley-difference bound: an integer or -inf
    #[arg(
        long = "d",
        default_value = "-1",
        allow_hyphen_values = true,
        value_name = "INT|-inf"
    )]
    d: DParam,
}

#[derive(Debug, Args)]
struct NMethod {
    #[command(flatten)]
    d: DArg,
    /// Semi-length
    #[arg(long)]
    n: usize,
    /// A method name, or all
    #[arg(long, value_name = "NAME|all")]
    method: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// Paths by semi-length and peaks
    #[value(name = "L")]
    L,
    /// The auxiliary series S_e (d <= -1)
    #[value(name = "S")]
    S,
    /// Paths whose last valley is at a given level (d <= -1)
    #[value(name = "Q")]
    Q,
    /// b(n)
    #[value(name = "b")]
    SmallB,
    /// Total area a(n) over the (-1)-Dyck paths
    #[value(name = "V")]
    V,
    /// (-1)-Dyck paths by semi-length and area
    #[value(name = "A")]
    A,
    /// As A, restricted to paths with last valley at ground level
    #[value(name = "B")]
    B,
    /// Pyramids by semi-length and area
    #[value(name = "E")]
    E,
    /// L_e(x, 1) from the Lagrange-inversion sum (d <= -1)
    #[value(name = "lagrange")]
    Lagrange,
    /// L(x, 1) for d = -1 from its univariate closed form
    #[value(name = "univariate")]
    Univariate,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of d-Dyck paths of semi-length n, by every available method
    Count(NMethod),
    /// Distribution of the number of peaks
    Peaks(NMethod),
    /// Total area, optionally with the full area histogram
    Area {
        #[command(flatten)]
        args: NMethod,
        #[arg(long)]
        histogram: bool,
    },
    /// Coefficients of a generating function
    Series {
        #[arg(long, value_enum)]
        what: SeriesKind,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        d: DArg,
        /// Valley level for Q (default |d| - 1)
        #[arg(long)]
        level: Option<usize>,
    },
    /// Test whether a path is d-Dyck
    Check {
        #[arg(long)]
        path: String,
        #[command(flatten)]
        d: DArg,
    },
    /// List every d-Dyck path of semi-length n
    Enumerate {
        #[command(flatten)]
        d: DArg,
        #[arg(long)]
        n: usize,
    },
    /// Encode or decode (-1)-Dyck paths
    Bijection {
        #[command(subcommand)]
        action: BijectionAction,
    },
    /// Dominant singularity and accuracy of the asymptotic estimate of r(n)
    Asymptote {
        /// Semi-lengths to tabulate (repeatable; default 25 50 100 200 400)
        #[arg(long)]
        n: Vec<u64>,
        /// Decimal digits of working precision
        #[arg(long, default_value_t = asymptotics::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Cross-validate every method against each other up to n
    Selftest {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum BijectionAction {
    /// Path to encoding
    Encode {
        #[arg(long)]
        path: String,
    },
    /// Encoding (JSON) to path
    Decode {
        /// For example {"components":["UD",""],"exponents":[1,1,1]}
        #[arg(long)]
        encoding: String,
    },
}

struct Context<'a> {
    format: Format,
    enumerator: Enumerator,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *self.out, value).map_err(std::io::Error::from)?;
        writeln!(self.out)?;
        Ok(())
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(err, "{e}");
                    return 2;
                }
                _ => {}
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let enumerator = cli
        .max_exhaustive
        .map(Enumerator::with_bound)
        .unwrap_or_else(Enumerator::from_env);
    let mut ctx = Context {
        format: cli.format,
        enumerator,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(ctx: &mut Context<'_>, command: Command) -> Result<(), CliError> {
    match command {
        Command::Count(args) => count(ctx, args),
        Command::Peaks(args) => peaks(ctx, args),
        Command::Area { args, histogram } => area(ctx, args, histogram),
        Command::Series {
            what,
            order,
            d,
            level,
        } => series(ctx, what, order, d.d, level),
        Command::Check { path, d } => check(ctx, &path, d.d),
        Command::Enumerate { d, n } => enumerate(ctx, d.d, n),
        Command::Bijection { action } => bijection(ctx, action),
        Command::Asymptote { n, digits } => asymptote(ctx, n, digits),
        Command::Selftest { n } => selftest::run(ctx, n),
    }
}

fn require_positive(n: usize) -> Result<(), CliError> {
    if n == 0 {
        Err(CliError::Invalid("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn to_json_methods<T, U>(
    results: &[Evaluated<T>],
    convert: impl Fn(&T) -> U,
) -> Vec<schema::MethodValue<U>> {
    results
        .iter()
        .map(|r| schema::MethodValue {
            method: r.name.to_string(),
            value: r.outcome.as_ref().ok().map(&convert),
            skipped: r.outcome.as_ref().err().cloned(),
        })
        .collect()
}

fn write_method_lines<T>(
    out: &mut dyn Write,
    results: &[Evaluated<T>],
    render: impl Fn(&T) -> String,
) -> Result<(), CliError> {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in results {
        match &r.outcome {
            Ok(v) => writeln!(out, "  {:<width$}  {}", r.name, render(v))?,
            Err(reason) => writeln!(out, "  {:<width$}  skipped: {reason}", r.name)?,
        }
    }
    Ok(())
}

fn agreement_line(
    out: &mut dyn Write,
    results: &[Evaluated<impl PartialEq + Clone>],
) -> Result<bool, CliError> {
    let ran = results.iter().filter(|r| r.outcome.is_ok()).count();
    let agree = agreed(results).is_some();
    if agree {
        if ran > 1 {
            writeln!(out, "all {ran} methods agree")?;
        }
    } else {
        writeln!(out, "METHODS DISAGREE")?;
    }
    Ok(agree)
}

fn count(ctx: &mut Context<'_>, args: NMethod) -> Result<(), CliError> {
    require_positive(args.n)?;
    let d = args.d.d;
    let methods = methods::count_methods(d, ctx.enumerator);
    let results = methods::evaluate(
        &methods,
        &Selection::parse(args.method.as_deref()),
        args.n,
        &ctx.enumerator,
    )?;
    let value = agreed(&results);
    match ctx.format {
        Format::Json => {
            let report = schema::CountReport {
                d: d.to_string(),
                n: args.n,
                value: number(value.as_ref().unwrap_or(&BigInt::from(0))),
                methods: to_json_methods(&results, number),
                agree: value.is_some(),
            };
            ctx.json(&report)?;
        }
        Format::Text => {
            if let Some(v) = &value {
                writeln!(ctx.out, "{v}")?;
            }
            write_method_lines(ctx.out, &results, BigInt::to_string)?;
            agreement_line(ctx.out, &results)?;
        }
    }
    value.map(|_| ()).ok_or(CliError::Disagreement)
}

fn peaks(ctx: &mut Context<'_>, args: NMethod) -> Result<(), CliError> {
    require_positive(args.n)?;
    let d = args.d.d;
    let methods = methods::peak_methods(d, ctx.enumerator);
    let results = methods::evaluate(
        &methods,
        &Selection::parse(args.method.as_deref()),
        args.n,
        &ctx.enumerator,
    )?;
    let value = agreed(&results);
    let render = |v: &Vec<BigInt>| {
        crate::series::MarkerPoly::from_coeffs(
            v.iter()
                .map(|c| num_rational::BigRational::from_integer(c.clone()))
                .collect(),
        )
        .to_string()
    };
    match ctx.format {
        Format::Json => {
            let counts = value.clone().unwrap_or_default();
            let report = schema::PeaksReport {
                d: d.to_string(),
                n: args.n,
                polynomial: render(&counts),
                counts: counts.iter().map(number).collect(),
                methods: to_json_methods(&results, |v| v.iter().map(number).collect()),
                agree: value.is_some(),
            };
            ctx.json(&report)?;
        }
        Format::Text => {
            if let Some(v) = &value {
                writeln!(ctx.out, "{}", render(v))?;
                for (k, c) in v.iter().enumerate().skip(1) {
                    writeln!(ctx.out, "  {k} peaks: {c}")?;
                }
            }
            write_method_lines(ctx.out, &results, render)?;
            agreement_line(ctx.out, &results)?;
        }
    }
    value.map(|_| ()).ok_or(CliError::Disagreement)
}

fn area(ctx: &mut Context<'_>, args: NMethod, histogram: bool) -> Result<(), CliError> {
    require_positive(args.n)?;
    let (d, n) = (args.d.d, args.n);
    let methods = methods::area_methods(d, ctx.enumerator);
    let results = methods::evaluate(
        &methods,
        &Selection::parse(args.method.as_deref()),
        n,
        &ctx.enumerator,
    )?;
    let value = agreed(&results);
    let ground = (d == DParam::Finite(-1)).then(|| ground_area_seq(n));
    let hist = if histogram {
        Some(methods::area_histogram(d, n, &ctx.enumerator)?)
    } else {
        None
    };
    match ctx.format {
        Format::Json => {
            let report = schema::AreaReport {
                d: d.to_string(),
                n,
                total: number(value.as_ref().unwrap_or(&BigInt::from(0))),
                methods: to_json_methods(&results, number),
                ground_total: ground.as_ref().map(number),
                histogram: hist.map(|h| {
                    h.iter()
                        .map(|(area, count)| schema::AreaBin {
                            area: *area,
                            count: number(count),
                        })
                        .collect()
                }),
                agree: value.is_some(),
            };
            ctx.json(&report)?;
        }
        Format::Text => {
            if let Some(v) = &value {
                writeln!(ctx.out, "{v}")?;
            }
            write_method_lines(ctx.out, &results, BigInt::to_string)?;
            agreement_line(ctx.out, &results)?;
            if let Some(g) = ground {
                writeln!(ctx.out, "area over paths with last valley at ground: {g}")?;
            }
            if let Some(h) = hist {
                writeln!(ctx.out, "area  count")?;
                for (a, c) in h {
                    writeln!(ctx.out, "{a:>4}  {c}")?;
                }
            }
        }
    }
    value.map(|_| ()).ok_or(CliError::Disagreement)
}

fn negative_e(d: DParam, what: &str) -> Result<u32, CliError> {
    match d {
        DParam::Finite(v) if v < 0 => Ok(d.e().expect("finite")),
        _ => Err(CliError::Invalid(format!(
            "{what} needs a negative finite d"
        ))),
    }
}

fn series(
    ctx: &mut Context<'_>,
    what: SeriesKind,
    order: usize,
    d: DParam,
    level: Option<usize>,
) -> Result<(), CliError> {
    require_positive(order)?;
    let uses_d = matches!(
        what,
        SeriesKind::L | SeriesKind::S | SeriesKind::Q | SeriesKind::Lagrange
    );
    let minus1_only = !uses_d && what != SeriesKind::E;
    if minus1_only && d != DParam::Finite(-1) {
        return Err(CliError::Invalid(format!(
            "{what:?} is only defined for d = -1"
        )));
    }
    let (s, marker): (BivariateSeries, Option<char>) = match what {
        SeriesKind::L => {
            let s = match d {
                DParam::Finite(-1) => series_l_closed_minus1(order),
                DParam::Finite(v) if v >= 0 => series_l_nonneg(v as u32, order),
                DParam::Unrestricted => narayana_limit(order),
                _ => solve_le_system(negative_e(d, "L")?, order)?.l,
            };
            (s, Some('y'))
        }
        SeriesKind::S => (solve_le_system(negative_e(d, "S")?, order)?.s, Some('y')),
        SeriesKind::Q => {
            let e = negative_e(d, "Q")?;
            let level = level.unwrap_or(e as usize - 1);
            if level >= e as usize {
                return Err(CliError::Invalid(format!("level must be below |d| = {e}")));
            }
            (solve_le_system(e, order)?.q.swap_remove(level), Some('y'))
        }
        SeriesKind::SmallB => (series_b(order), None),
        SeriesKind::V => (series_v(order), None),
        SeriesKind::A => (solve_area_system(order)?.a, Some('q')),
        SeriesKind::B => (solve_area_system(order)?.b, Some('q')),
        SeriesKind::E => (pyramid_series(order), Some('q')),
        SeriesKind::Lagrange => (lagrange_le(negative_e(d, "lagrange")?, order)?, None),
        SeriesKind::Univariate => (series_l_univariate_minus1(order), None),
    };
    let name = what
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    match marker {
        None => {
            let coeffs = s.integers_at_one()?;
            match ctx.format {
                Format::Json => ctx.json(&schema::SeriesReport {
                    what: name,
                    d: uses_d.then(|| d.to_string()),
                    order,
                    marker: None,
                    coefficients: Some(coeffs.iter().map(number).collect()),
                    rows: None,
                })?,
                Format::Text => {
                    let line: Vec<String> = coeffs[1..].iter().map(BigInt::to_string).collect();
                    writeln!(ctx.out, "{}", line.join(" "))?;
                }
            }
        }
        Some(var) => match ctx.format {
            Format::Json => {
                let rows = s
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, p)| {
                        p.to_integers()
                            .map(|v| v.iter().map(number).collect())
                            .ok_or(CliError::Series(SeriesError::NonIntegral { index: n }))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ctx.json(&schema::SeriesReport {
                    what: name,
                    d: uses_d.then(|| d.to_string()),
                    order,
                    marker: Some(var.to_string()),
                    coefficients: None,
                    rows: Some(rows),
                })?
            }
            Format::Text => {
                for (n, p) in s.coeffs().iter().enumerate().skip(1) {
                    writeln!(ctx.out, "x^{n}: {}", p.render(var))?;
                }
            }
        },
    }
    Ok(())
}

fn check(ctx: &mut Context<'_>, text: &str, d: DParam) -> Result<(), CliError> {
    let path = Path::parse(text)?;
    let nu = path.valley_vector();
    let ok = path.is_d_dyck(d);
    let min = nu.min_difference();
    match ctx.format {
        Format::Json => ctx.json(&schema::CheckReport {
            semi_length: path.semi_length(),
            peaks: path.peaks(),
            area: path.area(),
            valley_levels: nu.levels().to_vec(),
            min_difference: min,
            is_d_dyck: ok,
            d: d.to_string(),
            path,
        })?,
        Format::Text => {
            let levels = nu
                .levels()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let reason = match (min, d) {
                (None, _) => "at most one valley".to_string(),
                (Some(m), DParam::Unrestricted) => format!("min difference {m}, d = -inf"),
                (Some(m), DParam::Finite(v)) if ok => format!("min difference {m} >= {v}"),
                (Some(m), DParam::Finite(v)) => format!("min difference {m} < {v}"),
            };
            let verdict = if ok { "d-Dyck" } else { "not d-Dyck" };
            writeln!(ctx.out, "{verdict}: valley levels ({levels}), {reason}")?;
        }
    }
    Ok(())
}

fn enumerate(ctx: &mut Context<'_>, d: DParam, n: usize) -> Result<(), CliError> {
    let filter = PathFilter::d_dyck(d);
    let paths = ctx.enumerator.paths(n, &filter)?;
    let mut count = 0u64;
    match ctx.format {
        Format::Json => {
            write!(ctx.out, "{{\"d\":\"{d}\",\"n\":{n},\"paths\":[")?;
            for p in paths {
                if count > 0 {
                    write!(ctx.out, ",")?;
                }
                write!(ctx.out, "\"{p}\"")?;
                count += 1;
            }
            writeln!(ctx.out, "],\"count\":{count}}}")?;
        }
        Format::Text => {
            for p in paths {
                writeln!(ctx.out, "{p}")?;
                count += 1;
            }
            writeln!(
                ctx.out,
                "# {count} paths (exhaustive bound {})",
                ctx.enumerator.bound()
            )?;
        }
    }
    Ok(())
}

/// `(C_1, P_1, C_2, ..., C_{i+1})` with `λ` for the empty block.
pub fn render_encoding(enc: &Encoding) -> String {
    let mut parts = Vec::new();
    for (k, c) in enc.exponents.iter().enumerate() {
        parts.push(c.to_string());
        if let Some(p) = enc.components.get(k) {
            parts.push(if p.is_empty() {
                "λ".to_string()
            } else {
                p.to_string()
            });
        }
    }
    format!("({})", parts.join(", "))
}

fn bijection(ctx: &mut Context<'_>, action: BijectionAction) -> Result<(), CliError> {
    let (path, encoding) = match action {
        BijectionAction::Encode { path } => {
            let path = Path::parse(&path)?;
            let enc = phi_inverse(&path)?;
            (path, enc)
        }
        BijectionAction::Decode { encoding } => {
            let enc: Encoding = serde_json::from_str(&encoding)?;
            (phi(&enc)?, enc)
        }
    };
    match ctx.format {
        Format::Json => ctx.json(&schema::BijectionReport { path, encoding })?,
        Format::Text => {
            writeln!(ctx.out, "path: {path}")?;
            writeln!(ctx.out, "encoding: {}", render_encoding(&encoding))?;
        }
    }
    Ok(())
}

fn asymptote(ctx: &mut Context<'_>, ns: Vec<u64>, digits: usize) -> Result<(), CliError> {
    let ns = if ns.is_empty() { LADDER.to_vec() } else { ns };
    let data = asymptotics::compute_rho(digits)?;
    let rows = asymptotics::accuracy_table(&data, &ns)?;
    let rho = asymptotics::to_fixed(&data.rho, digits)?;
    let amplitude = asymptotics::to_fixed(&data.amplitude, digits)?;
    match ctx.format {
        Format::Json => ctx.json(&schema::AsymptoteReport {
            digits,
            rho,
            amplitude,
            rows: rows
                .into_iter()
                .map(|r| schema::AccuracyRow {
                    n: r.n,
                    exact: number(&r.exact),
                    estimate: r.estimate,
                    ratio: r.ratio,
                    relative_error: r.relative_error,
                })
                .collect(),
        })?,
        Format::Text => {
            writeln!(ctx.out, "rho       = {rho}")?;
            writeln!(ctx.out, "amplitude = {amplitude}")?;
            let header = ["n", "estimate", "ratio", "relative_error", "exact"];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        r.estimate.clone(),
                        r.ratio.clone(),
                        r.relative_error.clone(),
                        r.exact.to_string(),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..4)
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([header[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[&str]| {
                let mut cols: Vec<String> = row[..4]
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect();
                cols.push(row[4].to_string());
                cols.join("  ")
            };
            writeln!(ctx.out, "{}", line(&header))?;
            for r in &cells {
                let refs: Vec<&str> = r.iter().map(String::as_str).collect();
                writeln!(ctx.out, "{}", line(&refs))?;
            }
        }
    }
    Ok(())
}
