//! Command-line front end. `run` takes the argument list and the output
//! streams so that it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fusion::{builtins, io as fusion_io, FusionSystem};
use crate::modular::io::{fmt_number, to_canonical_json};
use crate::modular::{conjugate, io as modular_io, ModularData};
use crate::scalar::C;
use crate::surgery::{
    brieskorn_invariant, chain_invariant, continued_fraction, lens_invariant, star_invariant,
    InvariantValue, Presentation,
};
use crate::tables::{compare, Table};
use crate::tube::{build_tube, center, dump_json, modular_data_from_tube};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISSING_FIXTURE: i32 = 3;

const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Debug, Parser)]
#[command(
    name = "tvo",
    version,
    about = "Tube algebras, modular data and surgery invariants"
)]
struct Cli {
    /// Numerical tolerance for validation and comparison.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Treat warnings as errors.
    #[arg(long, global = true)]
    strict: bool,
    /// Complex-conjugate loaded modular data (mirror orientation).
    #[arg(long, global = true)]
    conjugate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a fusion system file (or builtin:NAME).
    ValidateSystem { file: String },
    /// Fusion system to tube algebra to modular data.
    DeriveModular {
        file: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write a diagnostic description of the tube algebra.
        #[arg(long)]
        dump_tube: Option<PathBuf>,
    },
    /// Check a modular data file.
    ValidateModular { file: String },
    /// Evaluate one surgery invariant.
    Invariant {
        #[command(subcommand)]
        kind: InvariantKind,
    },
    /// Emit a table of invariants.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Compare modular data against a value table.
    Compare {
        #[arg(long)]
        data: String,
        /// Shipped table name or path to a table file.
        #[arg(long)]
        fixture: String,
    },
}

#[derive(Debug, Subcommand)]
enum InvariantKind {
    /// Lens space L(p,q).
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        data: String,
    },
    /// Brieskorn sphere Sigma(p,q,r).
    Brieskorn {
        p: i64,
        q: i64,
        r: i64,
        #[arg(long)]
        data: String,
    },
    /// Star link: hub framing followed by leg framings.
    Star {
        #[arg(allow_negative_numbers = true)]
        hub: i64,
        #[arg(required = true, allow_negative_numbers = true)]
        legs: Vec<i64>,
        #[arg(long)]
        data: String,
    },
    /// Linear chain with the given framings.
    Chain {
        #[arg(required = true, allow_negative_numbers = true)]
        coefficients: Vec<i64>,
        #[arg(long)]
        data: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Subcommand)]
enum TableKind {
    /// Lens spaces L(p,q) over a range of p.
    Lens {
        /// `N` or `A..B` (inclusive).
        #[arg(long, default_value = "2..12")]
        p: String,
        /// `all` or a comma separated list.
        #[arg(long, default_value = "all")]
        q: String,
        #[arg(long)]
        data: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    tol: f64,
    strict: bool,
    conjugate: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        tol: cli.tol,
        strict: cli.strict,
        conjugate: cli.conjugate,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::BadInput(_) | Error::BadCongruence(_) | Error::EmptyChain => EXIT_USAGE,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Result<i32> {
    match command {
        Command::ValidateSystem { file } => {
            let fs = load_system(&file)?;
            let report = fs.validate()?;
            writeln!(ctx.out, "{report}")?;
            Ok(verdict(
                report.is_valid() && !(ctx.strict && !report.warnings.is_empty()),
            ))
        }
        Command::DeriveModular {
            file,
            output,
            seed,
            dump_tube,
        } => {
            let fs = load_system(&file)?;
            let tube = build_tube(&fs)?;
            if let Some(path) = dump_tube {
                std::fs::write(path, dump_json(&tube))?;
            }
            let c = center(&tube, seed, fs.tolerance())?;
            let mut md = modular_data_from_tube(&tube, &c)?;
            md.provenance.insert("seed".into(), seed.into());
            let text = to_canonical_json(&md);
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    writeln!(
                        ctx.err,
                        "wrote {} (rank {}, lambda {})",
                        path.display(),
                        md.rank(),
                        fmt_number(md.lambda)
                    )?;
                }
                None => write!(ctx.out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::ValidateModular { file } => {
            let md = modular_io::load::<f64>(Path::new(&file), false)?;
            let mut report = crate::modular::validate_verlinde_axioms(
                &md,
                ctx.tol,
                crate::modular::INTEGER_TOLERANCE,
            );
            report.subject = format!("modular data {file}");
            writeln!(ctx.out, "{report}")?;
            Ok(verdict(
                report.is_valid() && !(ctx.strict && !report.warnings.is_empty()),
            ))
        }
        Command::Invariant { kind } => invariant(ctx, kind),
        Command::Table { kind } => table(ctx, kind),
        Command::Compare { data, fixture } => {
            let md = match load_modular_or_skip(ctx, &data)? {
                Some(md) => md,
                None => return Ok(EXIT_MISSING_FIXTURE),
            };
            let table = match Table::resolve(&fixture) {
                Ok(t) => t,
                Err(Error::BadInput(msg)) => {
                    writeln!(ctx.err, "SKIP: {msg}")?;
                    return Ok(EXIT_MISSING_FIXTURE);
                }
                Err(e) => return Err(e),
            };
            let cmp = compare(&md, &table)?;
            for row in &cmp.rows {
                writeln!(
                    ctx.out,
                    "{:<18} computed {}  expected {}  deviation {:.3e}",
                    row.label,
                    fmt_pair(row.computed),
                    fmt_pair(row.expected),
                    row.deviation
                )?;
            }
            writeln!(
                ctx.out,
                "table {}: {} rows, convention {}, max deviation {:.3e} (other convention {:.3e})",
                cmp.table,
                cmp.rows.len(),
                if cmp.conjugated {
                    "conjugated"
                } else {
                    "as-is"
                },
                cmp.max_deviation,
                cmp.other_deviation
            )?;
            Ok(verdict(cmp.passes(ctx.tol)))
        }
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

/// Rounds for display without printing `-0.000000`.
fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6 + 0.0
}

fn fmt_pair(z: C<f64>) -> String {
    format!("[{}, {}]", fmt_number(z.re), fmt_number(z.im))
}

fn invariant(ctx: &mut Ctx<'_>, kind: InvariantKind) -> Result<i32> {
    let (data, manifold, presentation) = match &kind {
        InvariantKind::Lens { p, q, data } => {
            let pres = match (p, q) {
                (1, 0) => Presentation::Chain(vec![1]),
                (0, 1) => Presentation::Chain(vec![0]),
                _ => Presentation::Chain(continued_fraction(*p, *q)?),
            };
            (data, format!("L({p},{q})"), pres)
        }
        InvariantKind::Brieskorn { p, q, r, data } => (
            data,
            format!("Sigma({p},{q},{r})"),
            Presentation::Star {
                hub: 1,
                legs: vec![*p, *q, *r],
            },
        ),
        InvariantKind::Star { hub, legs, data } => (
            data,
            "star".to_string(),
            Presentation::Star {
                hub: *hub,
                legs: legs.clone(),
            },
        ),
        InvariantKind::Chain { coefficients, data } => (
            data,
            "chain".to_string(),
            Presentation::Chain(coefficients.clone()),
        ),
    };
    let md = load_modular(ctx, data)?;
    let value = match &kind {
        InvariantKind::Lens { p, q, .. } => lens_invariant(&md, *p, *q)?,
        InvariantKind::Brieskorn { p, q, r, .. } => brieskorn_invariant(&md, *p, *q, *r)?,
        InvariantKind::Star { hub, legs, .. } => star_invariant(&md, *hub, legs)?,
        InvariantKind::Chain { coefficients, .. } => chain_invariant(&md, coefficients)?,
    };
    let record = InvariantValue {
        manifold,
        presentation,
        value,
        data: md.name.clone(),
        conjugated: ctx.conjugate,
    };
    writeln!(ctx.out, "{}", record.to_json())?;
    Ok(EXIT_OK)
}

fn parse_p_range(spec: &str) -> Result<(i64, i64)> {
    let bad = || Error::BadInput(format!("--p expects N or A..B, got '{spec}'"));
    match spec.split_once("..") {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let p = spec.trim().parse().map_err(|_| bad())?;
            Ok((p, p))
        }
    }
}

fn parse_q_list(spec: &str) -> Result<Option<Vec<i64>>> {
    if spec.trim() == "all" {
        return Ok(None);
    }
    spec.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::BadInput(format!("--q expects 'all' or a list, got '{spec}'")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn table(ctx: &mut Ctx<'_>, kind: TableKind) -> Result<i32> {
    let TableKind::Lens { p, q, data, format } = kind;
    let (from, to) = parse_p_range(&p)?;
    let qs = parse_q_list(&q)?;
    let md = load_modular(ctx, &data)?;
    let mut rows = Vec::new();
    for p in from.max(2)..=to {
        let candidates: Vec<i64> = match &qs {
            None => (1..p).collect(),
            Some(list) => list.clone(),
        };
        for q in candidates {
            if q < 1 || q >= p || num_integer::gcd(p, q) != 1 {
                continue;
            }
            rows.push((p, q, lens_invariant(&md, p, q)?));
        }
    }
    match format {
        Format::Json => {
            writeln!(ctx.out, "[")?;
            for (k, &(p, q, z)) in rows.iter().enumerate() {
                let record = InvariantValue {
                    manifold: format!("L({p},{q})"),
                    presentation: Presentation::Chain(continued_fraction(p, q)?),
                    value: z,
                    data: md.name.clone(),
                    conjugated: ctx.conjugate,
                };
                let sep = if k + 1 < rows.len() { "," } else { "" };
                writeln!(ctx.out, "  {}{sep}", record.to_json())?;
            }
            writeln!(ctx.out, "]")?;
        }
        Format::Csv => {
            writeln!(ctx.out, "p,q,re,im")?;
            for (p, q, z) in rows {
                writeln!(ctx.out, "{p},{q},{},{}", fmt_number(z.re), fmt_number(z.im))?;
            }
        }
        Format::Markdown => {
            writeln!(ctx.out, "| manifold | Re Z | Im Z |")?;
            writeln!(ctx.out, "|---|---:|---:|")?;
            for (p, q, z) in rows {
                writeln!(
                    ctx.out,
                    "| L({p},{q}) | {:.6} | {:.6} |",
                    round6(z.re),
                    round6(z.im)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Fusion system from a JSON file or `builtin:NAME`.
pub fn load_system(spec: &str) -> Result<FusionSystem<f64>> {
    match spec.strip_prefix(BUILTIN_PREFIX) {
        Some(name) => builtins::by_name(name),
        None => fusion_io::load(Path::new(spec)),
    }
}

/// Modular data from a JSON file, or derived on the fly from `builtin:NAME`.
fn load_modular(ctx: &mut Ctx<'_>, spec: &str) -> Result<ModularData<f64>> {
    let md = match spec.strip_prefix(BUILTIN_PREFIX) {
        Some(name) => {
            let fs = builtins::by_name::<f64>(name)?;
            let tube = build_tube(&fs)?;
            let c = center(&tube, 1, fs.tolerance())?;
            modular_data_from_tube(&tube, &c)?
        }
        None => {
            let md = modular_io::load::<f64>(Path::new(spec), ctx.strict)?;
            if let Some(report) = &md.load_report {
                if !report.is_valid() {
                    writeln!(ctx.err, "warning: {spec} fails validation:\n{report}")?;
                }
            }
            md
        }
    };
    Ok(if ctx.conjugate { conjugate(&md) } else { md })
}

fn load_modular_or_skip(ctx: &mut Ctx<'_>, spec: &str) -> Result<Option<ModularData<f64>>> {
    if !spec.starts_with(BUILTIN_PREFIX) && !Path::new(spec).exists() {
        writeln!(ctx.err, "SKIP: fixture {spec} is not present")?;
        return Ok(None);
    }
    load_modular(ctx, spec).map(Some)
}
