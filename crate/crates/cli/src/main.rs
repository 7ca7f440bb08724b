//! `mixint`: decide, represent, plot and census mixed unit interval graphs.
//!
//! Exit codes: 0 yes / ok, 1 no, 2 not an interval graph, 64 bad input or
//! usage, 65 invalid JSON, 70 internal failure.

mod plot;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mixint::forbidden::complete_k;
use mixint::format::{parse_edge_list, parse_graph6_lines};
use mixint::oracle::{census, census_graphs, count_by_n, write_csv, CensusReport, ORACLE_BOUND};
use mixint::{decide, find_forbidden, Decision, Error, Graph, Rational, Representation, SweepConfig, Verdict};

const EXIT_NO: u8 = 1;
const EXIT_NOT_INTERVAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_JSON: u8 = 65;
const EXIT_INTERNAL: u8 = 70;
const MAX_CENSUS_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// `n m` header, then one `u v` line per edge.
    Edges,
    /// One graph6 string.
    Graph6,
}

#[derive(Parser, Debug)]
#[command(name = "mixint", version, about = "Mixed unit interval graph recognition")]
struct Cli {
    /// Graph input format.
    #[arg(long, value_enum, global = true, default_value = "edges")]
    format: InputFormat,
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is a unit mixed interval graph.
    Recognize {
        /// Graph file; stdin when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Print a strict mixed representation as JSON.
    Represent {
        input: Option<PathBuf>,
        /// Convert to a unit representation.
        #[arg(long)]
        unit: bool,
        /// Append the sweep trace as JSON lines after the representation.
        #[arg(long)]
        trace: bool,
    },
    /// Check the equivalence over all small graphs and write CSV rows.
    Census {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = ORACLE_BOUND)]
        oracle_max: usize,
        /// CSV file; existing rows are kept and skipped.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Classify the graphs in this graph6 file instead of enumerating.
        #[arg(long)]
        graph6: Option<PathBuf>,
    },
    /// Render representation JSON (optionally followed by trace lines) as SVG.
    Plot { input: Option<PathBuf> },
    /// Search for an induced member of the forbidden set.
    Forbidden {
        input: Option<PathBuf>,
        /// Largest family parameter tried; complete by default.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Check that a representation matches a graph.
    Verify { graph: PathBuf, representation: PathBuf },
}

/// A failure that ends the run with a message and an exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownVertex(_) | Error::DuplicateLabel(_) | Error::SelfLoop(_) => EXIT_USAGE,
            Error::TooLarge { .. } | Error::Precondition(_) => EXIT_USAGE,
            Error::Json(_) | Error::InvalidInterval(_) | Error::CoverMismatch { .. } => EXIT_JSON,
            _ => EXIT_INTERNAL,
        };
        Fail(code, e.to_string())
    }
}

fn io_fail(what: &str, e: io::Error) -> Fail {
    Fail(EXIT_USAGE, format!("{what}: {e}"))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Fail> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| io_fail(&p.display().to_string(), e)),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| io_fail("stdin", e))?;
            Ok(s)
        }
    }
}

fn parse_graph(text: &str, format: InputFormat) -> Result<Graph, Fail> {
    match format {
        InputFormat::Edges => Ok(parse_edge_list(text)?),
        InputFormat::Graph6 => {
            let mut gs = parse_graph6_lines(text)?;
            if gs.len() != 1 {
                return Err(Fail(EXIT_USAGE, format!("expected one graph6 line, found {}", gs.len())));
            }
            Ok(gs.remove(0))
        }
    }
}

struct Out(Option<PathBuf>);

impl Out {
    fn write(&self, text: &str) -> Result<(), Fail> {
        match &self.0 {
            Some(p) => fs::write(p, text).map_err(|e| io_fail(&p.display().to_string(), e)),
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| io_fail("stdout", e)),
        }
    }
}

fn twin_classes(g: &Graph, d: &Decision) -> Option<String> {
    let classes = d.reduction.nontrivial_classes(g);
    (!classes.is_empty()).then(|| serde_json::to_string(&classes).expect("labels serialize"))
}

fn ensure_verified(g: &Graph, r: &Representation, what: &str) -> Result<(), Fail> {
    if r.verify(g)? {
        Ok(())
    } else {
        Err(Fail(EXIT_INTERNAL, format!("{what} representation failed verification")))
    }
}

fn cmd_recognize(g: &Graph, out: &Out) -> Result<u8, Fail> {
    let d = decide(g, SweepConfig::default())?;
    let mut text = String::new();
    if let Some(c) = twin_classes(g, &d) {
        text.push_str(&format!("has-twins:{c}\n"));
    }
    let code = match &d.verdict {
        Verdict::NotInterval => {
            text.push_str("not-interval\n");
            EXIT_NOT_INTERVAL
        }
        Verdict::UnitMixed(acc) => {
            ensure_verified(g, &acc.strict, "strict")?;
            text.push_str("unit-mixed:yes\n");
            0
        }
        Verdict::NotUnitMixed(cert) => {
            text.push_str("unit-mixed:no\n");
            text.push_str(&cert.to_json(g));
            text.push('\n');
            EXIT_NO
        }
    };
    out.write(&text)?;
    Ok(code)
}

fn cmd_represent(g: &Graph, unit: bool, trace: bool, out: &Out) -> Result<u8, Fail> {
    let d = decide(g, SweepConfig::default())?;
    if let Some(c) = twin_classes(g, &d) {
        eprintln!("note: twins share intervals: {c}");
    }
    match &d.verdict {
        Verdict::NotInterval => {
            eprintln!("not-interval");
            Ok(EXIT_NOT_INTERVAL)
        }
        Verdict::NotUnitMixed(cert) => {
            eprintln!("unit-mixed:no");
            eprintln!("{}", cert.to_json(g));
            Ok(EXIT_NO)
        }
        Verdict::UnitMixed(acc) => {
            let rep = if unit { &acc.unit } else { &acc.strict };
            ensure_verified(g, rep, if unit { "unit" } else { "strict" })?;
            let mut text = rep.to_json(g.labels());
            text.push('\n');
            if trace {
                for t in &acc.traces {
                    text.push_str(&t.to_json_lines(d.reduction.reduced.labels()));
                }
            }
            out.write(&text)?;
            Ok(0)
        }
    }
}

fn cmd_census(n_max: usize, oracle_max: usize, csv: Option<&PathBuf>, graph6: Option<&PathBuf>, out: &Out) -> Result<u8, Fail> {
    if oracle_max > ORACLE_BOUND {
        return Err(Fail(EXIT_USAGE, format!("--oracle-max is at most {ORACLE_BOUND}")));
    }
    let report: CensusReport = match graph6 {
        Some(p) => {
            let graphs = parse_graph6_lines(&read_input(Some(p))?)?;
            census_graphs(&graphs, oracle_max, csv.map(PathBuf::as_path))?
        }
        None => {
            if n_max == 0 || n_max > MAX_CENSUS_N {
                return Err(Fail(EXIT_USAGE, format!("--n-max must be in 1..={MAX_CENSUS_N}")));
            }
            census(n_max, oracle_max, csv.map(PathBuf::as_path))?
        }
    };
    if csv.is_none() {
        let mut buf = Vec::new();
        write_csv(&report.rows, &mut buf)?;
        out.write(&String::from_utf8(buf).expect("csv is utf-8"))?;
    }
    let counts: Vec<String> = count_by_n(&report.rows).iter().map(|(n, c)| format!("n={n}:{c}")).collect();
    eprintln!(
        "classes {} ({}), resumed {}, violations {}",
        report.rows.len(),
        counts.join(" "),
        report.resumed,
        report.violations.len()
    );
    for v in &report.violations {
        eprintln!("violation {}: {}", v.canonical, v.detail);
    }
    Ok(if report.violations.is_empty() { 0 } else { EXIT_NO })
}

/// Zone lines are the positions of endpoints a trace turned red.
fn zones_from_trace(lines: &[&str]) -> Result<Vec<Rational>, Fail> {
    let bad = |i: usize, msg: String| Fail(EXIT_JSON, format!("trace line {}: {msg}", i + 2));
    let mut zones = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| bad(i, e.to_string()))?;
        let ends = v["reddened"].as_array().ok_or_else(|| bad(i, "missing `reddened`".into()))?;
        for e in ends {
            let key = match e.as_str() {
                Some("L") => "l",
                Some("R") => "r",
                _ => return Err(bad(i, format!("bad end {e}"))),
            };
            let s = v["to"][key].as_str().ok_or_else(|| bad(i, format!("missing `to.{key}`")))?;
            zones.push(s.parse::<Rational>().map_err(|e| bad(i, e.to_string()))?);
        }
    }
    zones.sort_unstable();
    zones.dedup();
    Ok(zones)
}

fn cmd_plot(text: &str, out: &Out) -> Result<u8, Fail> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    // A whole-document array, or an array line followed by trace lines.
    let (records, zones) = match Representation::parse_records(text) {
        Ok(r) => (r, Vec::new()),
        Err(_) if lines.len() > 1 => (Representation::parse_records(lines[0])?, zones_from_trace(&lines[1..])?),
        Err(e) => return Err(e.into()),
    };
    out.write(&plot::render(&records, &zones))?;
    Ok(0)
}

fn cmd_forbidden(g: &Graph, max_k: Option<usize>, out: &Out) -> Result<u8, Fail> {
    match find_forbidden(g, max_k.unwrap_or_else(|| complete_k(g))) {
        Some(c) => {
            out.write(&format!("{}\n", c.to_json(g)))?;
            Ok(EXIT_NO)
        }
        None => {
            out.write("forbidden:none\n")?;
            Ok(0)
        }
    }
}

fn cmd_verify(g: &Graph, json: &str, out: &Out) -> Result<u8, Fail> {
    let r = Representation::from_json(json, g)?;
    match r.first_mismatch(g) {
        None => {
            out.write(&format!("verify:ok strict:{} unit:{}\n", r.is_strict(), r.is_unit()))?;
            Ok(0)
        }
        Some((u, v)) => {
            let how = if g.has_edge(u, v) { "adjacent but disjoint" } else { "intersect but not adjacent" };
            out.write(&format!("verify:fail {} {} {how}\n", g.label(u), g.label(v)))?;
            Ok(EXIT_NO)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let out = Out(cli.output);
    let graph = |input: Option<&PathBuf>| parse_graph(&read_input(input)?, cli.format);
    match &cli.command {
        Command::Recognize { input } => cmd_recognize(&graph(input.as_ref())?, &out),
        Command::Represent { input, unit, trace } => cmd_represent(&graph(input.as_ref())?, *unit, *trace, &out),
        Command::Census { n_max, oracle_max, out: csv, graph6 } => {
            cmd_census(*n_max, *oracle_max, csv.as_ref(), graph6.as_ref(), &out)
        }
        Command::Plot { input } => cmd_plot(&read_input(input.as_ref())?, &out),
        Command::Forbidden { input, max_k } => cmd_forbidden(&graph(input.as_ref())?, *max_k, &out),
        Command::Verify { graph: gp, representation } => {
            let g = graph(Some(gp))?;
            cmd_verify(&g, &read_input(Some(representation))?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
