//! Command-line grammar and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use divsum_core::{Domain, GSpec, Method};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "divsum",
    version,
    about = "Evaluate and verify finite Ramanujan-sum identities for divisor sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one function for a single n (or a range)
    Compute {
        function: String,
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate a function with its oracle over a range
    Table {
        function: String,
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the identity against divisor enumeration for every n in a range
    Verify {
        #[command(flatten)]
        g: GArgs,
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Time the oracle and both identity forms over a range
    Bench {
        #[command(flatten)]
        g: GArgs,
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run Robin's or Lagarias' inequality over a range
    Check {
        inequality: Inequality,
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SpanArgs {
    /// Single argument n
    #[arg(long, conflicts_with = "range")]
    pub n: Option<u64>,
    /// Inclusive range A..B
    #[arg(long)]
    pub range: Option<Span>,
}

#[derive(Debug, Args)]
pub struct GArgs {
    /// Inner function: power:<gamma>, log or mobius
    #[arg(long)]
    pub g: String,
    /// Value domain: exact, float or log (default depends on g)
    #[arg(long)]
    pub domain: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// oracle, eq8, eq9 or series
    #[arg(long, default_value = "eq9")]
    pub method: String,
    /// Exponent for sigma-gamma
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Number of series terms for the sigma series
    #[arg(long = "k", short = 'K', default_value_t = 20_000)]
    pub k: u64,
    /// Float comparison tolerance
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Robin,
    Lagarias,
}

/// Inclusive range `start..end` with `1 ≤ start ≤ end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

impl Span {
    pub fn new(start: u64, end: u64) -> Result<Self, String> {
        if start == 0 {
            return Err("range start must be at least 1".into());
        }
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(Span { start, end })
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad range bound {x:?}"))
        };
        Span::new(parse(a)?, parse(b)?)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubcommandKind {
    Compute,
    Verify,
    Table,
    Bench,
    Check,
}

/// Evaluation method as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMethod {
    Core(Method),
    Series,
}

impl FromStr for RunMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "series" {
            return Ok(RunMethod::Series);
        }
        s.parse::<Method>()
            .map(RunMethod::Core)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for RunMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunMethod::Core(m) => m.fmt(f),
            RunMethod::Series => f.write_str("series"),
        }
    }
}

impl Serialize for RunMethod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Arithmetic functions reachable from `compute` and `table`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Function {
    Sigma,
    DivisorCount,
    SigmaGamma,
    LogProduct,
    ZeroResidual,
    Kronecker,
    SigmaSeries,
    Mobius,
    Totient,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::Sigma => "sigma",
            Function::DivisorCount => "divisor_count",
            Function::SigmaGamma => "sigma_gamma",
            Function::LogProduct => "log_product",
            Function::ZeroResidual => "zero_residual",
            Function::Kronecker => "kronecker",
            Function::SigmaSeries => "sigma_series",
            Function::Mobius => "mobius",
            Function::Totient => "totient",
        }
    }
}

impl FromStr for Function {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.replace('-', "_").as_str() {
            "sigma" => Function::Sigma,
            "divisor_count" | "d" | "tau" => Function::DivisorCount,
            "sigma_gamma" => Function::SigmaGamma,
            "log_product" | "log_product_divisors" => Function::LogProduct,
            "zero_residual" | "zero_identity_residual" => Function::ZeroResidual,
            "kronecker" | "kronecker_delta" => Function::Kronecker,
            "sigma_series" | "sigma_series_partial" => Function::SigmaSeries,
            "mobius" | "mu" => Function::Mobius,
            "totient" | "phi" => Function::Totient,
            _ => return Err(format!("unknown function {s:?}")),
        })
    }
}

/// What a run computes: a named function, a g for the identity, or an inequality.
#[derive(Debug, Clone)]
pub enum Target {
    Function(Function),
    Identity(GSpec),
    Inequality(Inequality),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Function(f) => f.name().to_string(),
            Target::Identity(g) => format!("{}[{}]", g.kind(), g.domain()),
            Target::Inequality(Inequality::Robin) => "robin".into(),
            Target::Inequality(Inequality::Lagarias) => "lagarias".into(),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// A fully validated run.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub function: Target,
    pub range: Span,
    pub gamma: Option<f64>,
    pub method: RunMethod,
    #[serde(rename = "K")]
    pub k: u64,
    pub format: Format,
    pub tolerance: f64,
    pub jobs: usize,
    pub output: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn span_of(span: &SpanArgs) -> Result<Span, CliError> {
    match (span.n, span.range) {
        (Some(n), None) => Span::new(n, n).map_err(usage),
        (None, Some(r)) => Ok(r),
        _ => Err(usage("one of --n or --range is required")),
    }
}

fn g_of(g: &GArgs) -> Result<GSpec, CliError> {
    let spec: GSpec =
        g.g.parse()
            .map_err(|e: divsum_core::Error| usage(e.to_string()))?;
    match &g.domain {
        None => Ok(spec),
        Some(d) => {
            let domain: Domain = d
                .parse()
                .map_err(|e: divsum_core::Error| usage(e.to_string()))?;
            spec.in_domain(domain).map_err(|e| usage(e.to_string()))
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (subcommand, target, span, eval, out, default_format) = match cli.command {
            Command::Compute {
                function,
                span,
                eval,
                out,
            } => {
                let f = function.parse().map_err(usage)?;
                (
                    SubcommandKind::Compute,
                    Target::Function(f),
                    span,
                    Some(eval),
                    out,
                    Format::Text,
                )
            }
            Command::Table {
                function,
                span,
                eval,
                out,
            } => {
                let f = function.parse().map_err(usage)?;
                (
                    SubcommandKind::Table,
                    Target::Function(f),
                    span,
                    Some(eval),
                    out,
                    Format::Csv,
                )
            }
            Command::Verify { g, span, eval, out } => (
                SubcommandKind::Verify,
                Target::Identity(g_of(&g)?),
                span,
                Some(eval),
                out,
                Format::Text,
            ),
            Command::Bench { g, span, eval, out } => (
                SubcommandKind::Bench,
                Target::Identity(g_of(&g)?),
                span,
                Some(eval),
                out,
                Format::Text,
            ),
            Command::Check {
                inequality,
                span,
                out,
            } => (
                SubcommandKind::Check,
                Target::Inequality(inequality),
                span,
                None,
                out,
                Format::Text,
            ),
        };
        let range = span_of(&span)?;
        let (method, gamma, k, tolerance, jobs) = match eval {
            Some(e) => (
                e.method.parse::<RunMethod>().map_err(usage)?,
                e.gamma,
                e.k,
                e.tolerance,
                e.jobs,
            ),
            None => (RunMethod::Core(Method::Oracle), None, 20_000, 1e-8, 1),
        };
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(usage("--tolerance must be positive"));
        }
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        if k == 0 {
            return Err(usage("--k must be at least 1"));
        }
        if let Target::Function(Function::SigmaGamma) = target {
            match gamma {
                Some(g) if g.is_finite() => {}
                _ => return Err(usage("sigma_gamma needs a finite --gamma")),
            }
        }
        if method == RunMethod::Series
            && !matches!(
                target,
                Target::Function(Function::Sigma | Function::SigmaSeries)
            )
        {
            return Err(usage("--method series only applies to sigma"));
        }
        if let Target::Identity(_) = target {
            if method == RunMethod::Series {
                return Err(usage("--method series is not an identity form"));
            }
        }
        if let Target::Inequality(ineq) = target {
            let min = match ineq {
                Inequality::Robin => 3,
                Inequality::Lagarias => 2,
            };
            if range.start < min {
                return Err(usage(format!("{} needs n ≥ {min}", target.name())));
            }
        }
        Ok(RunConfig {
            subcommand,
            function: target,
            range,
            gamma,
            method,
            k,
            format: out.format.unwrap_or(default_format),
            tolerance,
            jobs,
            output: out.output,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!(
            "1..2000".parse::<Span>().unwrap(),
            Span {
                start: 1,
                end: 2000
            }
        );
        assert_eq!("5..=7".parse::<Span>().unwrap(), Span { start: 5, end: 7 });
        assert!("0..5".parse::<Span>().is_err());
        assert!("9..5".parse::<Span>().is_err());
        assert!("abc".parse::<Span>().is_err());
    }

    #[test]
    fn function_names() {
        assert_eq!(
            "divisor-count".parse::<Function>().unwrap(),
            Function::DivisorCount
        );
        assert_eq!(
            "log_product".parse::<Function>().unwrap(),
            Function::LogProduct
        );
        assert!("zeta".parse::<Function>().is_err());
    }

    fn config(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut argv = vec!["divsum"];
        argv.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(argv).unwrap())
    }

    #[test]
    fn validation() {
        assert!(config(&["compute", "sigma", "--n", "6"]).is_ok());
        assert!(config(&["compute", "sigma"]).is_err());
        assert!(config(&["compute", "sigma-gamma", "--n", "6"]).is_err());
        assert!(config(&["table", "sigma", "--range", "1..9", "--jobs", "0"]).is_err());
        assert!(config(&["table", "sigma", "--range", "1..9", "--tolerance=-1"]).is_err());
        assert!(config(&["table", "mobius", "--range", "1..9", "--method", "series"]).is_err());
        assert!(config(&["check", "robin", "--range", "2..9"]).is_err());
        assert!(config(&["verify", "--g", "log", "--domain", "exact", "--n", "3"]).is_err());
        let c = config(&[
            "verify", "--g", "power:1", "--range", "1..20", "--format", "json",
        ])
        .unwrap();
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.range.len(), 20);
    }
}
