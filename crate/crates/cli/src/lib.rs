//! Command-line front end for `dynzeta`: an expression parser for rational
//! maps and JSON reports for each computation.

pub mod parse;
pub mod report;

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dynzeta::attractor::{certify_attracting, AttractorOptions};
use dynzeta::cohomop::{transfer_matrix, zeta_closed};
use dynzeta::dynmap::RationalMap;
use dynzeta::series::{crosscheck_with_table, expand_closed, zeta_series};
use dynzeta::spectra::{check_transversal_levels, count_minimal_periodic, SpectrumTable};
use serde_json::{json, Map, Value};

use crate::parse::{parse_map, ParseError};

#[derive(Parser, Debug)]
#[command(
    name = "dynzeta",
    version,
    about = "Dynamical zeta functions of rational maps over Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Include wall-clock timing (makes the output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// ζ_m as a closed form, a series, or both compared.
    Zeta {
        /// Map expression in z, or `-` to read it from stdin.
        #[arg(long)]
        map: String,
        #[arg(long)]
        m: usize,
        /// Truncation order; defaults to 6 for degree 2, 5 for degree 3, 4 above.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Squarefree test of the fixed-point polynomial of each iterate.
    Transversality {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Look for 2d − 2 distinct attracting cycles along critical orbits.
    Certify {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, default_value_t = 64)]
        max_period: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iterations: usize,
    },
    /// The transfer matrix Φ_m and det(1 − tΦ_m).
    Matrix {
        #[arg(long)]
        map: String,
        #[arg(long)]
        m: usize,
    },
    /// Tables of multiplier power sums S and trace sums T.
    Spectrum {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        mmax: usize,
    },
}

/// Parameters echo, result and the parsed map of a successful run.
type Outcome = (Value, Value, RationalMap);

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Closed,
    Series,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Series => "series",
            Method::Both => "both",
        }
    }
}

/// Failure of a command; `exit_code` is 1 for bad input or a domain
/// condition and 2 for a broken internal invariant.
#[derive(Debug)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    /// Numeric context such as the failing level or the parse position.
    pub details: Vec<(&'static str, usize)>,
    pub exit_code: i32,
}

impl From<dynzeta::Error> for Failure {
    fn from(e: dynzeta::Error) -> Self {
        let details = match &e {
            dynzeta::Error::NotTransversal { level } => vec![("level", *level)],
            dynzeta::Error::MissingEntry { n, m } => vec![("n", *n), ("m", *m)],
            _ => Vec::new(),
        };
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
            details,
            exit_code: if e.is_internal() { 2 } else { 1 },
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let details = match &e {
            ParseError::Syntax { position, .. } => vec![("position", *position)],
            ParseError::NotARationalMap(_) => Vec::new(),
        };
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
            details,
            exit_code: 1,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        kind: "UsageError".into(),
        message: message.into(),
        details: Vec::new(),
        exit_code: 1,
    }
}

fn read_map(text: &str, stdin: &mut dyn Read) -> Result<RationalMap, Failure> {
    if text == "-" {
        let mut buf = String::new();
        stdin
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read map from stdin: {e}")))?;
        Ok(parse_map(buf.trim())?)
    } else {
        Ok(parse_map(text)?)
    }
}

fn default_order(degree: usize) -> usize {
    match degree {
        0..=2 => 6,
        3 => 5,
        _ => 4,
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zeta { .. } => "zeta",
            Command::Transversality { .. } => "transversality",
            Command::Certify { .. } => "certify",
            Command::Matrix { .. } => "matrix",
            Command::Spectrum { .. } => "spectrum",
        }
    }

    /// Runs the command; the map expression `-` is read from `stdin`.
    fn run(&self, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
        match self {
            Command::Zeta { map, m, order, method } => {
                let phi = read_map(map, stdin)?;
                let order = order.unwrap_or_else(|| default_order(phi.degree()));
                let params = json!({ "m": m, "order": order, "method": method.name() });
                let mut result = Map::new();
                let table = match method {
                    Method::Closed => None,
                    _ => Some(SpectrumTable::build(&phi, order, *m)?),
                };
                match (method, &table) {
                    (Method::Both, Some(table)) => {
                        let r = crosscheck_with_table(table, *m, order)?;
                        result.insert("closed".into(), report::rational_function(&r.closed));
                        result.insert("closed_expansion".into(), report::series(&r.expanded));
                        result.insert("series".into(), report::series(&r.series));
                        result.insert("crosscheck".into(), report::crosscheck(&r));
                    }
                    (Method::Series, Some(table)) => {
                        result.insert("series".into(), report::series(&zeta_series(table, *m, order)?));
                    }
                    _ => {
                        let closed = zeta_closed(&phi, *m)?;
                        result.insert("closed".into(), report::rational_function(&closed));
                        result.insert(
                            "closed_expansion".into(),
                            report::series(&expand_closed(&closed, order)?),
                        );
                    }
                }
                Ok((params, Value::Object(result), phi))
            }
            Command::Transversality { map, nmax } => {
                let phi = read_map(map, stdin)?;
                if *nmax == 0 {
                    return Err(usage("--nmax must be at least 1"));
                }
                let r = check_transversal_levels(&phi, *nmax)?;
                Ok((json!({ "nmax": nmax }), report::transversality(&r), phi))
            }
            Command::Certify {
                map,
                tolerance,
                max_period,
                max_iterations,
            } => {
                let phi = read_map(map, stdin)?;
                if !tolerance.is_finite() || *tolerance <= 0.0 {
                    return Err(usage("--tolerance must be a positive number"));
                }
                let opts = AttractorOptions {
                    tolerance: *tolerance,
                    max_period: *max_period,
                    max_iterations: *max_iterations,
                    ..AttractorOptions::default()
                };
                let r = certify_attracting(&phi, &opts)?;
                let params = json!({
                    "tolerance": report::float(opts.tolerance),
                    "max_period": opts.max_period,
                    "max_iterations": opts.max_iterations,
                    "margin": report::float(opts.margin),
                });
                Ok((params, report::certificate(&r), phi))
            }
            Command::Matrix { map, m } => {
                let phi = read_map(map, stdin)?;
                let t = transfer_matrix(&phi, *m)?;
                Ok((json!({ "m": m }), report::transfer(&t), phi))
            }
            Command::Spectrum { map, nmax, mmax } => {
                let phi = read_map(map, stdin)?;
                if *nmax == 0 {
                    return Err(usage("--nmax must be at least 1"));
                }
                let table = SpectrumTable::build(&phi, *nmax, *mmax)?;
                let mut result = report::spectrum(&table);
                let counts = (1..=*nmax)
                    .map(|n| count_minimal_periodic(&phi, n).map(Value::from))
                    .collect::<Result<Vec<_>, _>>()?;
                result["minimal_period_counts"] = Value::Array(counts);
                Ok((json!({ "nmax": nmax, "mmax": mmax }), result, phi))
            }
        }
    }
}

/// Runs `cli` and returns the exit code with the report text (one JSON
/// document followed by a newline).
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> (i32, String) {
    let start = Instant::now();
    let outcome = cli.command.run(stdin);
    let mut doc = Map::new();
    doc.insert("command".into(), Value::from(cli.command.name()));
    let code = match outcome {
        Ok((params, result, phi)) => {
            doc.insert("map".into(), report::map(&phi));
            doc.insert("parameters".into(), params);
            doc.insert("result".into(), result);
            0
        }
        Err(f) => {
            doc.insert("error".into(), error_object(&f));
            f.exit_code
        }
    };
    if cli.timing {
        doc.insert(
            "timing".into(),
            json!({ "elapsed_ms": report::float(start.elapsed().as_secs_f64() * 1e3) }),
        );
    }
    (code, render(&Value::Object(doc)))
}

fn error_object(f: &Failure) -> Value {
    let details = if f.details.is_empty() {
        Value::Null
    } else {
        Value::Object(
            f.details
                .iter()
                .map(|(k, v)| ((*k).to_string(), Value::from(*v)))
                .collect(),
        )
    };
    json!({ "kind": f.kind, "message": f.message, "details": details })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Report for a command line that clap rejected.
pub fn usage_error(message: &str) -> String {
    render(&json!({ "command": Value::Null, "error": error_object(&usage(message.trim())) }))
}
