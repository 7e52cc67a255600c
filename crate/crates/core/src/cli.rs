//! Command-line front end.
//!
//! Exit codes: `0` success or a true verdict, `1` a false verdict or a
//! failed verification, `2` a usage, parse or range error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::counting::{self, Count};
use crate::error::{Error, Result};
use crate::relations::{self, Method, RelationKind};
use crate::semigroup::{self, Filter};
use crate::structure;
use crate::transformation::Transformation;
use crate::universe::Universe;
use crate::verify::{Suite, Verifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "restricted-range",
    version,
    about = "Compute in T(X,Y,Z) = {α ∈ T(X) : Yα ⊆ Z} on X = {0..n}, Y = {0..m}, Z = {0..k}"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct UniverseArgs {
    /// |X|
    #[arg(long)]
    pub n: usize,
    /// |Y|
    #[arg(long)]
    pub m: usize,
    /// |Z|
    #[arg(long)]
    pub k: usize,
}

impl UniverseArgs {
    fn universe(&self) -> Result<Universe> {
        Universe::new(self.n, self.m, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountWhat {
    Order,
    Regular,
    Idempotent,
    Stratum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Member,
    Regular,
    Idempotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Lstar,
    Rstar,
    Lambda,
}

impl From<RelationArg> for RelationKind {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Lstar => RelationKind::LStar,
            RelationArg::Rstar => RelationKind::RStar,
            RelationArg::Lambda => RelationKind::Lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    Regular,
    Idempotent,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::Regular => Filter::Regular,
            FilterArg::Idempotent => Filter::Idempotent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Counts,
    Relations,
    Regularity,
    Abundance,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::Regularity => Suite::Regularity,
            SuiteArg::Abundance => Suite::Abundance,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact cardinality of the semigroup, a stratum, its regular elements or its idempotents.
    Count {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, value_enum)]
        what: CountWhat,
        /// Stratum |Yα| = r; required with --what stratum.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Test one map for membership, regularity or idempotency.
    Check {
        #[command(flatten)]
        universe: UniverseArgs,
        /// Comma-separated 0-based image list, e.g. 0,0,2.
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Decide whether two members are related.
    Related {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum)]
        relation: RelationArg,
        /// Use the cancellation oracle instead of the characterization.
        #[arg(long)]
        oracle: bool,
    },
    /// Partition the semigroup into relation classes.
    Classes {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, value_enum)]
        relation: RelationArg,
        #[arg(long)]
        oracle: bool,
        /// Largest semigroup to materialize.
        #[arg(long, default_value_t = semigroup::DEFAULT_MATERIALIZATION_BOUND)]
        bound: usize,
    },
    /// Left and right abundance verdicts.
    Abundance {
        #[command(flatten)]
        universe: UniverseArgs,
        /// Compute from the classes and report idempotent-free witness classes.
        #[arg(long)]
        empirical: bool,
    },
    /// Stream members in lexicographic order of image lists.
    Enumerate {
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Only members with |Yα| = r.
        #[arg(long)]
        stratum: Option<usize>,
        /// Maximum number of members printed; 0 prints all.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Cross-check formulas and characterizations against brute force.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest |X| to cover; defaults to 5 for counts and 4 otherwise.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: Option<u64>,
    },
}

fn parse_map(u: &Universe, literal: &str) -> Result<Transformation> {
    let a: Transformation = literal.parse()?;
    if a.n() != u.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: a.n(),
        });
    }
    Ok(a)
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

fn verdict_code(v: bool) -> i32 {
    if v {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn execute(
    cli: Cli,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Count { universe, what, r } => {
            let u = universe.universe()?;
            let value: Count = match (what, r) {
                (CountWhat::Stratum, Some(r)) => counting::order_stratum(&u, r)?,
                (CountWhat::Stratum, None) => {
                    return Err(CliError::Usage("--what stratum requires --r".into()))
                }
                (_, Some(_)) => {
                    return Err(CliError::Usage(
                        "--r is only valid with --what stratum".into(),
                    ))
                }
                (CountWhat::Order, None) => counting::order(&u),
                (CountWhat::Regular, None) => counting::regular_count(&u),
                (CountWhat::Idempotent, None) => counting::idempotent_count(&u),
            };
            let what_name = serde_json::to_value(what).expect("plain enum");
            match format {
                OutputFormat::Table => writeln!(out, "{value}")?,
                OutputFormat::Json => {
                    let mut obj = json!({
                        "n": u.n(), "m": u.m(), "k": u.k(),
                        "what": what_name, "value": value.to_string(),
                    });
                    if let Some(r) = r {
                        obj["r"] = json!(r);
                    }
                    writeln!(out, "{obj}")?
                }
                OutputFormat::Csv => csv_rows(
                    out,
                    &["n", "m", "k", "what", "r", "value"],
                    &[vec![
                        u.n().to_string(),
                        u.m().to_string(),
                        u.k().to_string(),
                        what_name.as_str().unwrap_or_default().to_string(),
                        r.map(|r| r.to_string()).unwrap_or_default(),
                        value.to_string(),
                    ]],
                )?,
            }
            Ok(EXIT_OK)
        }

        Command::Check {
            universe,
            map,
            property,
        } => {
            let u = universe.universe()?;
            let a = parse_map(&u, &map)?;
            let value = match property {
                Property::Member => semigroup::is_member(&u, &a)?,
                Property::Regular => structure::is_regular_element(&u, &a)?,
                Property::Idempotent => structure::is_idempotent(&u, &a)?,
            };
            let property_name = serde_json::to_value(property).expect("plain enum");
            match format {
                OutputFormat::Table => writeln!(out, "{value}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({"n": u.n(), "m": u.m(), "k": u.k(), "map": a, "property": property_name, "value": value})
                )?,
                OutputFormat::Csv => csv_rows(
                    out,
                    &["n", "m", "k", "map", "property", "value"],
                    &[vec![
                        u.n().to_string(),
                        u.m().to_string(),
                        u.k().to_string(),
                        a.to_string(),
                        property_name.as_str().unwrap_or_default().to_string(),
                        value.to_string(),
                    ]],
                )?,
            }
            Ok(verdict_code(value))
        }

        Command::Related {
            universe,
            a,
            b,
            relation,
            oracle,
        } => {
            let u = universe.universe()?;
            let a = parse_map(&u, &a)?;
            let b = parse_map(&u, &b)?;
            let kind = RelationKind::from(relation);
            let method = if oracle {
                Method::Oracle
            } else {
                Method::Characterization
            };
            let value = match (kind, method) {
                (RelationKind::Lambda, Method::Oracle) => {
                    return Err(CliError::Usage("lambda has no oracle".into()))
                }
                (RelationKind::Lambda, _) => relations::lambda_related(&u, &a, &b)?,
                (RelationKind::LStar, Method::Characterization) => {
                    relations::lstar_related(&u, &a, &b)?
                }
                (RelationKind::LStar, Method::Oracle) => relations::lstar_oracle(&u, &a, &b)?,
                (RelationKind::RStar, Method::Characterization) => {
                    relations::rstar_related(&u, &a, &b)?
                }
                (RelationKind::RStar, Method::Oracle) => relations::rstar_oracle(&u, &a, &b)?,
            };
            match format {
                OutputFormat::Table => writeln!(out, "{value}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "n": u.n(), "m": u.m(), "k": u.k(), "a": a, "b": b,
                        "relation": kind, "method": method, "value": value,
                    })
                )?,
                OutputFormat::Csv => csv_rows(
                    out,
                    &["n", "m", "k", "a", "b", "relation", "method", "value"],
                    &[vec![
                        u.n().to_string(),
                        u.m().to_string(),
                        u.k().to_string(),
                        a.to_string(),
                        b.to_string(),
                        kind.to_string(),
                        method.to_string(),
                        value.to_string(),
                    ]],
                )?,
            }
            Ok(verdict_code(value))
        }

        Command::Classes {
            universe,
            relation,
            oracle,
            bound,
        } => {
            let u = universe.universe()?;
            let kind = RelationKind::from(relation);
            let method = if oracle {
                Method::Oracle
            } else {
                Method::Characterization
            };
            let classes = relations::relation_classes_bounded(&u, kind, method, bound)?;
            match format {
                OutputFormat::Table => {
                    for class in &classes.classes {
                        let line: Vec<String> = class.iter().map(ToString::to_string).collect();
                        writeln!(out, "{}", line.join(" "))?;
                    }
                }
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "n": u.n(), "m": u.m(), "k": u.k(),
                        "relation": kind, "method": method, "classes": classes.classes,
                    })
                )?,
                OutputFormat::Csv => {
                    let rows: Vec<Vec<String>> = classes
                        .classes
                        .iter()
                        .enumerate()
                        .flat_map(|(i, c)| {
                            c.iter().map(move |a| vec![i.to_string(), a.to_string()])
                        })
                        .collect();
                    csv_rows(out, &["class", "element"], &rows)?
                }
            }
            Ok(EXIT_OK)
        }

        Command::Abundance {
            universe,
            empirical,
        } => {
            let u = universe.universe()?;
            let v = relations::abundance(&u, empirical)?;
            let fmt_class = |c: &Option<Vec<Transformation>>| {
                c.as_ref().map(|c| {
                    c.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
            };
            match format {
                OutputFormat::Table => {
                    writeln!(out, "{v}")?;
                    if let Some(w) = fmt_class(&v.left_witness) {
                        writeln!(out, "left witness L*-class: {w}")?;
                    }
                    if let Some(w) = fmt_class(&v.right_witness) {
                        writeln!(out, "right witness R*-class: {w}")?;
                    }
                }
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "n": u.n(), "m": u.m(), "k": u.k(),
                        "left": v.left, "right": v.right,
                        "left_witness": v.left_witness, "right_witness": v.right_witness,
                    })
                )?,
                OutputFormat::Csv => csv_rows(
                    out,
                    &[
                        "n",
                        "m",
                        "k",
                        "left",
                        "right",
                        "left_witness",
                        "right_witness",
                    ],
                    &[vec![
                        u.n().to_string(),
                        u.m().to_string(),
                        u.k().to_string(),
                        v.left.to_string(),
                        v.right.to_string(),
                        fmt_class(&v.left_witness).unwrap_or_default(),
                        fmt_class(&v.right_witness).unwrap_or_default(),
                    ]],
                )?,
            }
            Ok(EXIT_OK)
        }

        Command::Enumerate {
            universe,
            filter,
            stratum,
            limit,
        } => {
            let u = universe.universe()?;
            let stream = match stratum {
                Some(r) => semigroup::enumerate_stratum(&u, r)?,
                None => semigroup::enumerate(&u),
            }
            .with_filter(filter.into());
            let limit = if limit == 0 { usize::MAX } else { limit };
            let mut stream = stream.take(limit);
            match format {
                OutputFormat::Table => {
                    for a in stream {
                        writeln!(out, "{a}")?;
                    }
                }
                OutputFormat::Json => {
                    let elements: Vec<Transformation> = stream.collect();
                    writeln!(
                        out,
                        "{}",
                        json!({"n": u.n(), "m": u.m(), "k": u.k(), "elements": elements})
                    )?
                }
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["element"])?;
                    for a in &mut stream {
                        w.write_record([a.to_string()])?;
                    }
                    w.flush()?;
                }
            }
            Ok(EXIT_OK)
        }

        Command::Verify { suite, max_n } => {
            let suite = Suite::from(suite);
            let max_n = match max_n {
                Some(n) => n as usize,
                None if suite == Suite::Counts => Verifier::DEFAULT_COUNT_BOUND,
                None => Verifier::DEFAULT_STRUCTURE_BOUND,
            };
            let report = Verifier::new().run(suite, max_n)?;
            match format {
                OutputFormat::Table => write!(out, "{}", report.to_table())?,
                OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
                OutputFormat::Csv => {
                    let rows: Vec<Vec<String>> = report
                        .cells
                        .iter()
                        .map(|c| {
                            vec![
                                c.universe.n().to_string(),
                                c.universe.m().to_string(),
                                c.universe.k().to_string(),
                                c.check.clone(),
                                c.expected.to_string(),
                                c.actual.to_string(),
                                c.pass.to_string(),
                            ]
                        })
                        .collect();
                    csv_rows(
                        out,
                        &["n", "m", "k", "check", "expected", "actual", "pass"],
                        &rows,
                    )?
                }
            }
            let _ = writeln!(
                err,
                "{} cells, {} failed, {:.2?}",
                report.cells.len(),
                report.failures().count(),
                report.elapsed
            );
            Ok(verdict_code(report.overall))
        }
    }
}

/// Parses `args` and runs the command. Clap usage errors exit with 2.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                // --help / --version
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            }
        }
    }
}
