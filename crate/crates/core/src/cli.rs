//! Command-line front end.
//!
//! Exit codes: 0 success (or agreement), 1 I/O or parse failure, 2 invalid
//! input, 3 internal invariant breach (including engine disagreement).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::document::{parse, render};
use crate::flag::f8_z3;
use crate::fuchsian::{
    derivative_at_fixed_points, derivatives_avoid_unit, fixed_points, is_hyperbolic, FixedPoints,
    MoebiusMatrix, QuadraticSurd,
};
use crate::graded_rep::{trivial_rep, validate_with, Validation, DEFAULT_MAX_ORDER};
use crate::koszul::borel_total;
use crate::mapping_torus::recurse;
use crate::report::{dense, stage_reports, Engine, Report, Verdict};
use crate::{QGradedRep, Rational, Scalar};

pub const BUILTINS: &[(&str, &str)] = &[
    (
        "f8-z3",
        "Z^3 acting on H^0, H^2 of F_8 by (1,2)(3,4), (1,3)(2,4), (5,8,6)",
    ),
    ("point-zN", "Z^N acting trivially on a point, e.g. point-z3"),
    (
        "circle-rot",
        "Z acting trivially on the cohomology of a circle",
    ),
];

#[derive(Debug, Parser)]
#[command(
    name = "borel",
    version,
    about = "Exact equivariant cohomology of Z^n-actions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a representation is well formed
    Validate {
        /// JSON document path or builtin name
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Iterated mapping-torus engine
    Recurse(RunArgs),
    /// Koszul-complex group cohomology engine
    Koszul(RunArgs),
    /// Run both engines and compare their Betti numbers
    Crosscheck(RunArgs),
    /// Run the engine(s) selected with --engine
    Run {
        #[command(flatten)]
        args: RunArgs,
        #[arg(long, value_enum, default_value_t = EngineChoice::Both)]
        engine: EngineChoice,
    },
    /// Fixed points and derivatives of the Moebius map (at+b)/(ct+d)
    Fuchsian {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// List builtin representations
    Builtins,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON document path or builtin name
    pub input: String,
    /// Only report total degree k
    #[arg(long)]
    pub degree: Option<usize>,
    /// Write the input representation as a JSON document
    #[arg(long, value_name = "PATH")]
    pub emit_json: Option<PathBuf>,
    /// Print the representation produced by every mapping-torus step
    #[arg(long)]
    pub stages: bool,
    /// Bound for the finite-order warning
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Recurse,
    Koszul,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("invalid input:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Resolves a builtin name.
pub fn builtin(name: &str) -> Option<QGradedRep> {
    match name {
        "f8-z3" => Some(f8_z3()),
        "circle-rot" => Some(trivial_rep(1, &[(0, 1), (1, 1)].into_iter().collect())),
        _ => {
            let n: usize = name.strip_prefix("point-z")?.parse().ok()?;
            Some(trivial_rep(n, &[(0, 1)].into_iter().collect()))
        }
    }
}

/// Reads a document from disk, falling back to builtin names.
pub fn load_input(input: &str) -> Result<QGradedRep, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {input}: {e}")))?;
        return parse(&text).map_err(|e| CliError::Parse(format!("{input}: {e}")));
    }
    builtin(input).ok_or_else(|| CliError::Io(format!("no such file or builtin: {input}")))
}

fn checked(rep: &QGradedRep, max_order: usize) -> Result<Validation, CliError> {
    let v = validate_with(rep, max_order);
    if v.is_valid() {
        Ok(v)
    } else {
        Err(CliError::Validation(
            v.violations.iter().map(ToString::to_string).collect(),
        ))
    }
}

fn render_stages(rep_stages: &[QGradedRep], degree: Option<usize>) -> String {
    let mut out = String::new();
    for (i, stage) in rep_stages.iter().enumerate() {
        out.push_str(&format!("stage {i} ({} operators):\n", stage.n_ops()));
        for (&q, piece) in stage.pieces() {
            if degree.is_some_and(|k| k != q) {
                continue;
            }
            out.push_str(&format!("  H^{q}: dim {}\n", piece.dim()));
            for (j, m) in piece.operators().iter().enumerate() {
                out.push_str(&format!("    operator {}:\n", j + 1));
                for line in m.to_string().lines() {
                    out.push_str(&format!("      {line}\n"));
                }
            }
        }
    }
    out
}

fn run_engines(args: &RunArgs, choice: EngineChoice) -> Result<(String, i32), CliError> {
    let rep = load_input(&args.input)?;
    if let Some(path) = &args.emit_json {
        std::fs::write(path, render(&rep))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let validation = checked(&rep, args.max_order)?;
    let connected = rep.is_connected_shape();

    let recursion = match choice {
        EngineChoice::Recurse | EngineChoice::Both => {
            Some(recurse(&rep).map_err(|e| CliError::Internal(e.to_string()))?)
        }
        EngineChoice::Koszul => None,
    };
    let breakdown = match choice {
        EngineChoice::Koszul | EngineChoice::Both => {
            Some(borel_total(&rep).map_err(|e| CliError::Internal(e.to_string()))?)
        }
        EngineChoice::Recurse => None,
    };

    let mut report = match (&recursion, &breakdown) {
        (Some(r), None) => Report::new(Engine::Recurse, &args.input, rep.n_ops(), &r.betti)
            .with_lower_bound(connected, &r.betti),
        (None, Some(b)) => {
            let totals = b.totals();
            Report::new(Engine::Koszul, &args.input, rep.n_ops(), &totals)
                .with_lower_bound(connected, &totals)
                .with_breakdown(b)
        }
        (Some(r), Some(b)) => {
            let totals = b.totals();
            let mut report = Report::new(Engine::Crosscheck, &args.input, rep.n_ops(), &r.betti)
                .with_lower_bound(connected, &r.betti)
                .with_breakdown(b);
            report.recurse_betti = Some(dense(&r.betti));
            report.koszul_betti = Some(dense(&totals));
            report.verdict = Some(if r.betti == totals {
                Verdict::Agree
            } else {
                Verdict::Disagree
            });
            report
        }
        (None, None) => unreachable!("at least one engine runs"),
    };
    if let Some(r) = &recursion {
        report.stages = Some(stage_reports(r));
    }
    report.warnings = validation
        .warnings
        .iter()
        .map(ToString::to_string)
        .collect();
    report.degree_filter = args.degree;

    let mut out = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    if args.stages {
        if let Some(r) = &recursion {
            out.push_str(&render_stages(&r.stages, args.degree));
        }
    }
    let code = match report.verdict {
        Some(Verdict::Disagree) => 3,
        _ => 0,
    };
    Ok((out, code))
}

fn cmd_validate(input: &str, max_order: usize) -> Result<String, CliError> {
    let rep = load_input(input)?;
    let v = checked(&rep, max_order)?;
    let mut out = String::new();
    for w in &v.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    let dims: Vec<String> = rep
        .dims()
        .iter()
        .map(|(q, d)| format!("H^{q}:{d}"))
        .collect();
    out.push_str(&format!(
        "valid: {} operators, {}\n",
        rep.n_ops(),
        if dims.is_empty() {
            "zero".to_string()
        } else {
            dims.join(" ")
        }
    ));
    Ok(out)
}

fn cmd_fuchsian(entries: [&str; 4]) -> Result<String, CliError> {
    let parsed = entries
        .iter()
        .map(|s| Rational::parse_exact(s).map_err(CliError::Parse))
        .collect::<Result<Vec<_>, _>>()?;
    let [a, b, c, d]: [Rational; 4] = parsed.try_into().expect("four entries");
    let m =
        MoebiusMatrix::new(a, b, c, d).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let mut out = format!(
        "matrix: a={} b={} c={} d={}\ntrace: {}\ndiscriminant: {}\n",
        m.a,
        m.b,
        m.c,
        m.d,
        m.trace(),
        m.discriminant()
    );
    if !is_hyperbolic(&m) {
        return Err(CliError::Validation(vec![
            "transformation is not hyperbolic (|trace| <= 2)".into(),
        ]));
    }
    out.push_str("hyperbolic: yes\n");
    let fixed = fixed_points(&m).map_err(|e| CliError::Internal(e.to_string()))?;
    let derivs = derivative_at_fixed_points(&m).map_err(|e| CliError::Internal(e.to_string()))?;
    let points: [String; 2] = match &fixed {
        FixedPoints::Finite([x, y]) => [x.to_string(), y.to_string()],
        FixedPoints::FiniteAndInfinity(x) => [x.to_string(), "infinity".to_string()],
    };
    for (i, (x, l)) in points.iter().zip(&derivs).enumerate() {
        out.push_str(&format!("fixed point {}: {x}  derivative: {l}\n", i + 1));
    }
    let product = &derivs[0] * &derivs[1];
    out.push_str(&format!("derivative product: {product}\n"));
    if product != QuadraticSurd::rational(Rational::from_int(1)) {
        return Err(CliError::Internal(format!(
            "derivative product is {product}"
        )));
    }
    let avoids = derivatives_avoid_unit(&m).map_err(|e| CliError::Internal(e.to_string()))?;
    out.push_str(&format!(
        "derivative equals +-1: {}\n",
        if avoids { "no" } else { "yes" }
    ));
    if !avoids {
        return Err(CliError::Internal(
            "hyperbolic derivative equals +-1".into(),
        ));
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    match &cli.command {
        Command::Validate { input, max_order } => Ok((cmd_validate(input, *max_order)?, 0)),
        Command::Recurse(args) => run_engines(args, EngineChoice::Recurse),
        Command::Koszul(args) => run_engines(args, EngineChoice::Koszul),
        Command::Crosscheck(args) => run_engines(args, EngineChoice::Both),
        Command::Run { args, engine } => run_engines(args, *engine),
        Command::Fuchsian { a, b, c, d } => Ok((cmd_fuchsian([a, b, c, d])?, 0)),
        Command::Builtins => {
            let lines: Vec<String> = BUILTINS
                .iter()
                .map(|(name, about)| format!("{name:<12} {about}\n"))
                .collect();
            Ok((lines.concat(), 0))
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
