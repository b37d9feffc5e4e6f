//! Command line front end: reads `.tgl` words, prints ν and Φ, and runs the
//! verification suites. [`run`] is the whole program minus process exit.

pub mod dsl;
pub mod json;
pub mod pool;
pub mod random;
pub mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use flagtangle_core::functor::{compare_nu_phi, flag_oracle_verify, hecke_verify, Phi, PhiError, Report};
use flagtangle_core::tangle::{bend, enumerate_tangle_rulings, nu, TangleError, TangleWord};
use serde_json::{json, Value};

use crate::dsl::ParseError;
use crate::suites::{run_suite, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "flagtangle", version, about = "Ruling invariants of Legendrian tangle words and their images in the flagged complex category")]
struct Cli {
    /// Print results and diagnostics as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the grading and print both boundaries.
    Grade { file: PathBuf },
    /// List the normal rulings with their weights.
    Rulings { file: PathBuf },
    /// Print ν of a word with empty left boundary.
    Nu { file: PathBuf },
    /// Print Φ of a word over F_q.
    Phi {
        file: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Compare ν at q with Φ; words with a left boundary are bent first.
    Compare {
        file: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Check the Hecke relations on n+1 strands of degree 0.
    Hecke {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        /// Also compare with operators on complete flags of F_q^{n+1}.
        #[arg(long)]
        oracle: bool,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        q: u32,
        /// Degree labels as `a..b`, inclusive.
        #[arg(long = "deg-range", value_parser = parse_range, allow_hyphen_values = true)]
        deg_range: (i32, i32),
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random configurations per randomized suite.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn parse_range(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{}`", s))?;
    let a = a.trim().parse::<i32>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<i32>().map_err(|e| e.to_string())?;
    if a > b {
        return Err(format!("empty range {}..{}", a, b));
    }
    Ok((a, b))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Grading { path: String, source: TangleError },
    #[error(transparent)]
    Compute(#[from] PhiError),
}

impl CliError {
    fn to_json(&self) -> Value {
        match self {
            CliError::Io { path, msg } => json!({ "error": "io", "file": path, "message": msg }),
            CliError::Parse { path, source } => {
                json!({ "error": "parse", "file": path, "line": source.line(), "message": source.to_string() })
            }
            CliError::Grading { path, source } => json!({ "error": "grading", "file": path, "message": source.to_string() }),
            CliError::Compute(e) => json!({ "error": "compute", "message": e.to_string() }),
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load(path: &Path) -> Result<TangleWord, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: name.clone(), msg: e.to_string() })?;
    let w = dsl::parse_word(&text).map_err(|source| CliError::Parse { path: name.clone(), source })?;
    w.strand_degrees().map_err(|source| CliError::Grading { path: name, source })?;
    Ok(w)
}

fn grading(path: &Path, e: PhiError) -> CliError {
    match e {
        PhiError::Tangle(source) => CliError::Grading { path: path.display().to_string(), source },
        other => CliError::Compute(other),
    }
}

/// Text form of a report: a status line, then up to five failures.
pub fn report_text(r: &Report) -> String {
    let mut s = String::new();
    if r.passed() {
        let _ = writeln!(s, "{}: pass ({} instances)", r.check, r.instances);
        return s;
    }
    let _ = writeln!(s, "{}: FAIL ({} of {} instances)", r.check, r.failures.len(), r.instances);
    for f in r.failures.iter().take(5) {
        let _ = writeln!(s, "  input: {}\n  lhs: {}\n  rhs: {}", f.input, f.lhs, f.rhs);
    }
    s
}

struct Printed {
    text: String,
    json: Value,
    ok: bool,
}

fn reports(rs: Vec<Report>, extra: &str) -> Printed {
    let ok = rs.iter().all(Report::passed);
    let mut text: String = rs.iter().map(report_text).collect();
    text.push_str(extra);
    Printed { text, json: Value::Array(rs.iter().map(json::report).collect()), ok }
}

fn execute(cmd: Command) -> Result<Printed, CliError> {
    match cmd {
        Command::Grade { file } => {
            let w = load(&file)?;
            let right = w.right().map_err(|source| CliError::Grading { path: file.display().to_string(), source })?;
            Ok(Printed {
                text: format!("left: {}\nright: {}\n", w.left, right),
                json: json!({ "left": json::set(&w.left), "right": json::set(&right) }),
                ok: true,
            })
        }
        Command::Rulings { file } => {
            let w = load(&file)?;
            let rs = enumerate_tangle_rulings(&w).map_err(|e| grading(&file, e.into()))?;
            let mut text = String::new();
            for r in &rs {
                let roles: Vec<&str> = r.roles.iter().map(|&x| json::role_name(x)).collect();
                let _ = writeln!(text, "{} * {}  [{}]", r.weight, r.boundary, roles.join(","));
            }
            if rs.is_empty() {
                text.push_str("no rulings\n");
            }
            Ok(Printed { text, json: Value::Array(rs.iter().map(json::tangle_ruling).collect()), ok: true })
        }
        Command::Nu { file } => {
            let w = load(&file)?;
            let v = nu(&w).map_err(|e| grading(&file, e.into()))?;
            Ok(Printed { text: format!("{}\n", v), json: json::skein_vector(&v), ok: true })
        }
        Command::Phi { file, q } => {
            let w = load(&file)?;
            let phi = Phi::new(q)?;
            let m = phi.word(&w).map_err(|e| grading(&file, e))?;
            Ok(Printed { text: format!("{}\n", m), json: json::morphism(&m), ok: true })
        }
        Command::Compare { file, q } => {
            let w = load(&file)?;
            let w = if w.left.is_empty() { w } else { bend(&w).map_err(|e| grading(&file, e.into()))? };
            let phi = Phi::new(q)?;
            Ok(reports(vec![compare_nu_phi(&phi, &w).map_err(|e| grading(&file, e))?], ""))
        }
        Command::Hecke { rank, q, oracle } => {
            let phi = Phi::new(q)?;
            let mut rs = vec![hecke_verify(&phi, rank)?];
            if oracle {
                rs.push(flag_oracle_verify(rank, q)?);
            }
            let extra = if rank >= 1 { format!("T_i^2 = {}*T_i + {}*1\n", q - 1, q) } else { String::new() };
            Ok(reports(rs, &extra))
        }
        Command::Verify { suite, q, deg_range, seed, count } => {
            let cfg = SuiteConfig { q, lo: deg_range.0, hi: deg_range.1, seed, count };
            Ok(reports(run_suite(suite, &cfg)?, ""))
        }
    }
}

/// Runs one invocation. `args` starts with the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_flag = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else if json_flag {
                let diag = json!({ "error": "usage", "message": text.trim_end() });
                Outcome { code, stdout: String::new(), stderr: format!("{}\n", diag) }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.cmd) {
        Ok(p) => Outcome {
            code: if p.ok { 0 } else { 1 },
            stdout: if cli.json { format!("{}\n", p.json) } else { p.text },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: if cli.json { format!("{}\n", e.to_json()) } else { format!("error: {}\n", e) },
        },
    }
}
