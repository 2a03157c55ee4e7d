//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource limit.

use std::ffi::OsString;
use std::time::Duration;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::graph::{build_cube, fib_table};
use crate::packing::{max_packing, verify_packing, SolverConfig};
use crate::poly::{derive_poly_with, format_rational, table1};
use crate::selftest::{self, SelftestOptions};
use crate::sequences::{rational_to_decimal, SequenceTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

const RATIO_PLACES: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "fibcube", version, about = "Hypercube packings of Fibonacci cubes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqKind {
    /// Uncovered vertices P_k(n).
    P,
    /// Packing number q_k(n).
    Q,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fibonacci numbers F_n.
    #[command(group(ArgGroup::new("range").required(true).args(["n", "n_max"])))]
    Fib {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Vertices of the Fibonacci cube of dimension n.
    Vertices {
        #[arg(long)]
        n: u32,
    },
    /// Rows (n, value) for n = 0..=n_max.
    Seq {
        #[arg(value_enum)]
        kind: SeqKind,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Closed-form polynomials of P_k on each residue class mod 3.
    Poly {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..3))]
        r: Option<u32>,
        /// Compare against the published table (k <= 4).
        #[arg(long)]
        check_table1: bool,
    },
    /// Maximum packing of disjoint Q_k in the cube of dimension n.
    Pack {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        witness: bool,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Use branch-and-bound even for k = 1.
        #[arg(long)]
        no_fast_path: bool,
    },
    /// Exact coverage ratios for n = 0..=n_max.
    Ratio {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Replay the acceptance checks.
    Selftest {
        /// Halve the dimension caps.
        #[arg(long)]
        quick: bool,
    },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Layout {
    Table,
    /// A single record shown as `key=value` lines.
    Record,
}

struct Report {
    command: &'static str,
    params: Map<String, Value>,
    layout: Layout,
    columns: Vec<&'static str>,
    /// Columns left out of the aligned table.
    table_hidden: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    /// Extra result fields, shown after the table.
    summary: Vec<(&'static str, Value)>,
    details: Vec<String>,
    code: i32,
}

impl Report {
    fn new(command: &'static str, params: Value, columns: Vec<&'static str>) -> Self {
        let Value::Object(params) = params else {
            unreachable!("params are built as objects")
        };
        Report {
            command,
            params,
            layout: Layout::Table,
            columns,
            table_hidden: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
            details: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn result_json(&self) -> Value {
        let record = |row: &Vec<Value>| -> Map<String, Value> {
            self.columns
                .iter()
                .map(|c| c.to_string())
                .zip(row.iter().cloned())
                .collect()
        };
        let mut out = match self.layout {
            Layout::Record => record(&self.rows[0]),
            Layout::Table => {
                let mut m = Map::new();
                m.insert(
                    "rows".into(),
                    Value::Array(self.rows.iter().map(|r| Value::Object(record(r))).collect()),
                );
                m
            }
        };
        for (key, value) in &self.summary {
            out.insert(key.to_string(), value.clone());
        }
        Value::Object(out)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "params": self.params,
                    "result": self.result_json(),
                });
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut out = self.columns.join(",") + "\n";
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| plain(v, ";").replace(',', ";")).collect();
                    out += &(cells.join(",") + "\n");
                }
                out
            }
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        match self.layout {
            Layout::Record => {
                for (col, value) in self.columns.iter().zip(&self.rows[0]) {
                    match value {
                        Value::Array(items) => {
                            out += &format!("{col}:\n");
                            for item in items {
                                out += &format!("  {}\n", plain(item, " "));
                            }
                        }
                        _ => out += &format!("{col}={}\n", plain(value, " ")),
                    }
                }
            }
            Layout::Table => {
                let shown: Vec<usize> = (0..self.columns.len())
                    .filter(|&i| !self.table_hidden.contains(&self.columns[i]))
                    .collect();
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| shown.iter().map(|&i| plain(&r[i], " ")).collect())
                    .collect();
                let widths: Vec<usize> = shown
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| {
                        let header = self.columns[i].len();
                        cells.iter().map(|r| r[j].len()).chain([header]).max().unwrap_or(0)
                    })
                    .collect();
                let line = |items: Vec<&str>| {
                    let padded: Vec<String> = items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                out += &line(shown.iter().map(|&i| self.columns[i]).collect());
                for row in &cells {
                    out += &line(row.iter().map(String::as_str).collect());
                }
            }
        }
        for (key, value) in &self.summary {
            out += &format!("{key}: {}\n", plain(value, " "));
        }
        for d in &self.details {
            out += &format!("{d}\n");
        }
        out
    }
}

fn plain(value: &Value, sep: &str) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(|v| plain(v, sep)).collect::<Vec<_>>().join(sep),
        other => other.to_string(),
    }
}

fn big(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

fn num(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::PolynomialMismatch { .. } | Error::Inconsistent(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(command: Command) -> crate::error::Result<Report> {
    match command {
        Command::Fib { n, n_max } => cmd_fib(n, n_max),
        Command::Vertices { n } => cmd_vertices(n),
        Command::Seq { kind, k, n_max } => cmd_seq(kind, k, n_max),
        Command::Poly { k, r, check_table1 } => cmd_poly(k, r, check_table1),
        Command::Pack {
            n,
            k,
            witness,
            time_limit,
            node_limit,
            no_fast_path,
        } => cmd_pack(n, k, witness, time_limit, node_limit, no_fast_path),
        Command::Ratio { k, n_max } => cmd_ratio(k, n_max),
        Command::Selftest { quick } => Ok(cmd_selftest(quick)),
    }
}

fn cmd_fib(n: Option<u32>, n_max: Option<u32>) -> crate::error::Result<Report> {
    let (lo, hi) = match (n, n_max) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (0, m),
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let fib = fib_table(hi);
    let mut report = Report::new("fib", json!({ "n": n, "n_max": n_max }), vec!["n", "F_n"]);
    report.rows = (lo..=hi).map(|i| vec![num(i), big(&fib[i as usize])]).collect();
    Ok(report)
}

fn cmd_vertices(n: u32) -> crate::error::Result<Report> {
    let cube = build_cube(n)?;
    let mut report = Report::new("vertices", json!({ "n": n }), vec!["index", "vertex", "weight"]);
    report.rows = cube
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| vec![num(i), num(v), num(v.weight())])
        .collect();
    report.summary.push(("count", num(cube.len())));
    Ok(report)
}

fn cmd_seq(kind: SeqKind, k: u32, n_max: u32) -> crate::error::Result<Report> {
    let table = SequenceTable::new(k, n_max)?;
    let name = match kind {
        SeqKind::P => "p",
        SeqKind::Q => "q",
    };
    let mut report = Report::new("seq", json!({ "kind": name, "k": k, "n_max": n_max }), vec!["n", "value"]);
    for n in 0..=n_max {
        let value = match kind {
            SeqKind::P => table.p(k, n)?,
            SeqKind::Q => table.q(k, n)?,
        };
        report.rows.push(vec![num(n), big(value)]);
    }
    Ok(report)
}

fn cmd_poly(k: u32, r: Option<u32>, check: bool) -> crate::error::Result<Report> {
    let classes: Vec<u32> = r.map_or_else(|| vec![0, 1, 2], |r| vec![r]);
    let check_k = if check { k.min(4) } else { 0 };
    let table = SequenceTable::new(k, 6 * k)?;
    let mut report = Report::new(
        "poly",
        json!({ "k": k, "r": r, "check_table1": check }),
        vec!["k", "r", "degree", "polynomial", "coeffs"],
    );
    report.table_hidden = vec!["coeffs"];
    for &class in &classes {
        let poly = derive_poly_with(&table, k, class)?;
        let degree = poly.degree().map_or_else(|| "-inf".to_string(), |d| d.to_string());
        let coeffs: Vec<Value> = poly.coeffs().iter().map(|c| Value::String(format_rational(c))).collect();
        report.rows.push(vec![
            num(k),
            num(class),
            Value::String(degree),
            Value::String(poly.to_string()),
            Value::Array(coeffs),
        ]);
    }
    if check {
        let mut mismatches = Vec::new();
        for kk in 1..=check_k {
            for &class in &classes {
                let derived = derive_poly_with(&table, kk, class)?;
                if table1(kk, class).ok().as_ref() != Some(&derived) {
                    mismatches.push(format!("(k={kk} r={class})"));
                }
            }
        }
        let status = if mismatches.is_empty() { "PASS" } else { "FAIL" };
        report.summary.push(("table1", Value::String(status.into())));
        if !mismatches.is_empty() {
            report.code = EXIT_VERIFY;
            report.details.push(format!("mismatch at {}", mismatches.join(" ")));
        }
    }
    Ok(report)
}

fn cmd_pack(
    n: u32,
    k: u32,
    witness: bool,
    time_limit: Option<f64>,
    node_limit: Option<u64>,
    no_fast_path: bool,
) -> crate::error::Result<Report> {
    let time_limit = match time_limit {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return Err(Error::InvalidConfig("time limit must be a positive number of seconds".into()))
        }
        t => t.map(Duration::from_secs_f64),
    };
    let config = SolverConfig {
        time_limit,
        node_limit,
        matching_fast_path: !no_fast_path,
        ..SolverConfig::default()
    };
    config.validate()?;
    let result = max_packing(n, k, &config)?;
    let cube = build_cube(n)?;
    let expected = SequenceTable::new(k, n)?.p(k, n)?.clone();
    let status = if !result.optimal {
        "PARTIAL"
    } else if BigUint::from(result.uncovered_count()) == expected {
        "CONSISTENT"
    } else {
        "INCONSISTENT"
    };

    let mut columns = vec!["n", "k", "q", "uncovered", "p_value", "status", "optimal", "nodes"];
    let mut row = vec![
        num(n),
        num(k),
        num(result.size()),
        num(result.uncovered_count()),
        big(&expected),
        Value::String(status.into()),
        Value::Bool(result.optimal),
        num(result.nodes_explored),
    ];
    if witness {
        columns.push("witness");
        row.push(Value::Array(result.chosen.iter().map(|p| Value::String(p.to_string())).collect()));
    }
    let mut report = Report::new(
        "pack",
        json!({
            "n": n,
            "k": k,
            "witness": witness,
            "time_limit": time_limit.map(|t| t.as_secs_f64()),
            "node_limit": node_limit,
            "no_fast_path": no_fast_path,
        }),
        columns,
    );
    report.layout = Layout::Record;
    report.rows.push(row);
    report.code = if !verify_packing(&cube, &result) {
        report.details.push("witness failed verification".into());
        EXIT_VERIFY
    } else {
        match status {
            "PARTIAL" => EXIT_LIMIT,
            "INCONSISTENT" => EXIT_VERIFY,
            _ => EXIT_OK,
        }
    };
    Ok(report)
}

fn cmd_ratio(k: u32, n_max: u32) -> crate::error::Result<Report> {
    let table = SequenceTable::new(k, n_max)?;
    let mut report = Report::new(
        "ratio",
        json!({ "k": k, "n_max": n_max }),
        vec!["n", "uncovered_ratio", "covered_ratio", "uncovered_decimal", "covered_decimal"],
    );
    for n in 0..=n_max {
        let (uncovered, covered) = table.coverage_ratio(k, n)?;
        report.rows.push(vec![
            num(n),
            Value::String(format_rational(&uncovered)),
            Value::String(format_rational(&covered)),
            Value::String(rational_to_decimal(&uncovered, RATIO_PLACES)),
            Value::String(rational_to_decimal(&covered, RATIO_PLACES)),
        ]);
    }
    Ok(report)
}

fn cmd_selftest(quick: bool) -> Report {
    run_selftest(&SelftestOptions {
        quick,
        ..SelftestOptions::default()
    })
}

fn run_selftest(options: &SelftestOptions) -> Report {
    let outcomes = selftest::run(options);
    let mut report = Report::new(
        "selftest",
        json!({ "quick": options.quick }),
        vec!["id", "check", "status", "seconds", "failures", "notes"],
    );
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        report.rows.push(vec![
            num(o.id),
            Value::String(o.name.into()),
            Value::String(status.into()),
            Value::String(format!("{:.3}", o.elapsed.as_secs_f64())),
            Value::Array(o.failures.iter().cloned().map(Value::String).collect()),
            Value::Array(o.notes.iter().cloned().map(Value::String).collect()),
        ]);
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    report.summary.push(("failed", num(failed)));
    if failed > 0 {
        report.code = EXIT_VERIFY;
    }
    report.table_hidden = vec!["failures", "notes"];
    for o in &outcomes {
        report.details.extend(o.failures.iter().map(|f| format!("FAIL {}: {f}", o.id)));
        report.details.extend(o.notes.iter().map(|n| format!("note {}: {n}", o.id)));
    }
    report
}
