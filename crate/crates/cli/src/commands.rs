use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use divsum_core::applications::{
    self, divisor_count_rational, kronecker_delta, log_product_divisors, residual_within,
    robin_sweep, sigma, sigma_gamma, sigma_series_partial_with, zero_identity_residual,
    InequalityCheck, LogProductForm, ROBIN_THRESHOLD,
};
use divsum_core::{BigRational, Clock, Engine, GSpec, Method, Natural, SieveTables, Value};

use crate::config::{Function, Inequality, RunConfig, RunMethod, SubcommandKind, Target};
use crate::error::CliError;
use crate::report::{BenchRow, Cell, Document, Results, Row, Summary};

/// Wall-clock time source for evaluation reports.
#[derive(Debug, Clone, Copy, Default)]
pub struct SystemClock;

impl Clock for SystemClock {
    type Mark = Instant;

    fn mark(&self) -> Instant {
        Instant::now()
    }

    fn elapsed(&self, since: &Instant) -> Duration {
        since.elapsed()
    }
}

/// A finished run and the exit status it calls for.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: Document,
    pub exit_code: i32,
}

const BENCH_RUNS: usize = 5;
const LISTED_FAILURES: usize = 20;

fn nat(n: u64) -> Result<Natural, CliError> {
    Ok(Natural::new(n)?)
}

/// Maps `f` over the configured range on `jobs` workers, keeping ascending n.
fn fan_out<T, F>(cfg: &RunConfig, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(u64) -> Result<T, CliError> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let (start, end) = (cfg.range.start, cfg.range.end);
    pool.install(|| (start..=end).into_par_iter().map(&f).collect())
}

pub fn execute(cfg: RunConfig) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let (results, mut summary, text, exit_code) = match (&cfg.subcommand, &cfg.function) {
        (SubcommandKind::Compute | SubcommandKind::Table, Target::Function(f)) => {
            function_rows(&cfg, *f)?
        }
        (SubcommandKind::Verify, Target::Identity(g)) => verify(&cfg, g)?,
        (SubcommandKind::Bench, Target::Identity(g)) => bench(&cfg, g)?,
        (SubcommandKind::Check, Target::Inequality(i)) => check(&cfg, *i)?,
        _ => unreachable!("config validation pairs subcommands with targets"),
    };
    summary.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(Outcome {
        document: Document {
            config: cfg,
            results,
            summary,
            text,
        },
        exit_code,
    })
}

type Produced = (Results, Summary, String, i32);

fn summarize(rows: &[Row]) -> Summary {
    Summary {
        checked: rows.len() as u64,
        mismatches: rows.iter().filter(|r| !r.agree).count() as u64,
        max_abs_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
        elapsed_ms: 0.0,
    }
}

fn float_row(n: u64, value: f64, oracle: f64, tolerance: f64) -> Row {
    let residual = (value - oracle).abs();
    Row {
        n,
        value: Cell::Float(value),
        oracle: Cell::Float(oracle),
        agree: residual <= tolerance * (1.0 + oracle.abs()),
        residual,
    }
}

fn int_row(n: u64, value: i64, oracle: i64) -> Row {
    Row {
        n,
        value: Cell::Int(value),
        oracle: Cell::Int(oracle),
        agree: value == oracle,
        residual: (value - oracle).unsigned_abs() as f64,
    }
}

fn to_i64(v: u64) -> Result<i64, CliError> {
    i64::try_from(v).map_err(|_| divsum_core::Error::Overflow("output value").into())
}

struct FunctionContext<'a> {
    cfg: &'a RunConfig,
    engine: Engine,
    series_tables: Option<SieveTables>,
}

impl FunctionContext<'_> {
    fn core_method(&self) -> Method {
        match self.cfg.method {
            RunMethod::Core(m) => m,
            RunMethod::Series => Method::Holder,
        }
    }

    fn series_row(&self, n: u64) -> Result<Row, CliError> {
        let tables = self.series_tables.as_ref().expect("built for series runs");
        let value = sigma_series_partial_with(tables, nat(n)?, nat(self.cfg.k)?)?;
        let exact = sigma(&self.engine, nat(n)?, Method::Oracle)?;
        Ok(float_row(n, value, exact as f64, self.cfg.tolerance))
    }

    fn row(&self, f: Function, n: u64) -> Result<Row, CliError> {
        let e = &self.engine;
        let m = self.core_method();
        let nn = nat(n)?;
        let tol = self.cfg.tolerance;
        Ok(match f {
            Function::Sigma if self.cfg.method == RunMethod::Series => self.series_row(n)?,
            Function::SigmaSeries => self.series_row(n)?,
            Function::Sigma => int_row(
                n,
                to_i64(sigma(e, nn, m)?)?,
                to_i64(sigma(e, nn, Method::Oracle)?)?,
            ),
            Function::DivisorCount => {
                let value = divisor_count_rational(e, nn, m)?;
                let count = e.tables().factorize(n)?.divisor_count()?;
                let oracle = BigRational::from_integer(count.into());
                let residual =
                    Value::Exact(value.clone()).abs_difference(&Value::Exact(oracle.clone()));
                Row {
                    n,
                    agree: value == oracle,
                    value: Cell::Exact(value),
                    oracle: Cell::Exact(oracle),
                    residual,
                }
            }
            Function::SigmaGamma => {
                let gamma = self.cfg.gamma.expect("validated");
                let value = sigma_gamma(e, nn, gamma, m)?;
                let oracle = sigma_gamma(e, nn, gamma, Method::Oracle)?;
                Row {
                    n,
                    agree: value.agrees_with(&oracle, tol),
                    residual: value.abs_difference(&oracle),
                    value: value.into(),
                    oracle: oracle.into(),
                }
            }
            Function::LogProduct => {
                let form = match m {
                    Method::Oracle => LogProductForm::ClosedForm,
                    m => LogProductForm::Identity(m),
                };
                let value = log_product_divisors(e, nn, form)?;
                let oracle = log_product_divisors(e, nn, LogProductForm::ClosedForm)?;
                Row {
                    n,
                    agree: value.exact == oracle.exact,
                    residual: (value.float - oracle.float).abs(),
                    value: Cell::Log(value),
                    oracle: Cell::Log(oracle),
                }
            }
            Function::ZeroResidual => {
                let value = zero_identity_residual(e, nn)?;
                let agree = value.exact.is_zero() && residual_within(e, nn, value.float, tol)?;
                Row {
                    n,
                    agree,
                    residual: value.float.abs(),
                    value: Cell::Log(value),
                    oracle: Cell::Int(0),
                }
            }
            Function::Kronecker => int_row(n, kronecker_delta(e, nn)?.into(), i64::from(n == 1)),
            Function::Mobius => int_row(
                n,
                divsum_core::mobius(nn).into(),
                e.tables().mobius(n)?.into(),
            ),
            Function::Totient => int_row(
                n,
                to_i64(divsum_core::totient(nn))?,
                to_i64(e.tables().totient(n)?)?,
            ),
        })
    }
}

fn function_rows(cfg: &RunConfig, f: Function) -> Result<Produced, CliError> {
    let series = f == Function::SigmaSeries || cfg.method == RunMethod::Series;
    let ctx = FunctionContext {
        cfg,
        engine: Engine::new(nat(cfg.range.end)?)?,
        series_tables: if series {
            Some(SieveTables::new(nat(cfg.k)?)?)
        } else {
            None
        },
    };
    let rows = fan_out(cfg, |n| ctx.row(f, n))?;
    let summary = summarize(&rows);
    let mut text = String::new();
    match cfg.subcommand {
        SubcommandKind::Compute => {
            for r in &rows {
                let _ = writeln!(text, "{}({}) = {}", f.name(), r.n, r.value.to_text());
            }
        }
        _ => {
            let _ = writeln!(text, "n\tvalue\toracle\tagree");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}",
                    r.n,
                    r.value.to_text(),
                    r.oracle.to_text(),
                    r.agree
                );
            }
        }
    }
    Ok((Results::Rows(rows), summary, text, 0))
}

fn verify(cfg: &RunConfig, g: &GSpec) -> Result<Produced, CliError> {
    let method = match cfg.method {
        RunMethod::Core(m) => m,
        RunMethod::Series => unreachable!("rejected during validation"),
    };
    let engine = Engine::new(nat(cfg.range.end)?)?;
    let rows = fan_out(cfg, |n| {
        let r = engine.evaluate(nat(n)?, g, method, cfg.tolerance, &SystemClock)?;
        Ok(Row {
            n: r.n,
            value: r.value.into(),
            oracle: r.oracle.into(),
            agree: r.agrees_with_oracle,
            residual: r.abs_residual,
        })
    })?;
    let summary = summarize(&rows);
    let mut text = format!(
        "verify {} over {} with {}: checked {}, mismatches {}, max_abs_residual {:e}\n",
        cfg.function.name(),
        cfg.range,
        method,
        summary.checked,
        summary.mismatches,
        summary.max_abs_residual
    );
    for r in rows.iter().filter(|r| !r.agree).take(LISTED_FAILURES) {
        let _ = writeln!(
            text,
            "mismatch at n = {}: {} != {}",
            r.n,
            r.value.to_text(),
            r.oracle.to_text()
        );
    }
    let exit = i32::from(summary.mismatches > 0);
    Ok((Results::Rows(rows), summary, text, exit))
}

fn bench(cfg: &RunConfig, g: &GSpec) -> Result<Produced, CliError> {
    let engine = Engine::new(nat(cfg.range.end)?)?;
    let oracle = fan_out(cfg, |n| Ok(engine.divisor_sum_oracle(nat(n)?, g)?))?;
    let pass = |method: Method| fan_out(cfg, |n| Ok(engine.eval_identity(nat(n)?, g, method)?));
    let mut rows = Vec::new();
    for method in Method::ALL {
        pass(method)?; // warmup
        let mut times = Vec::with_capacity(BENCH_RUNS);
        let mut last = Vec::new();
        for _ in 0..BENCH_RUNS {
            let t = Instant::now();
            last = pass(method)?;
            times.push(t.elapsed().as_secs_f64() * 1e3);
        }
        times.sort_by(f64::total_cmp);
        let mismatches = last
            .iter()
            .zip(&oracle)
            .filter(|(v, o)| !v.agrees_with(o, cfg.tolerance))
            .count();
        rows.push(BenchRow {
            method: method.to_string(),
            median_ms: times[BENCH_RUNS / 2],
            min_ms: times[0],
            max_ms: times[BENCH_RUNS - 1],
            mismatches,
        });
    }
    let summary = Summary {
        checked: cfg.range.len(),
        mismatches: rows.iter().map(|r| r.mismatches as u64).sum(),
        max_abs_residual: 0.0,
        elapsed_ms: 0.0,
    };
    let mut text = format!(
        "bench {} over {} ({} workers, median of {BENCH_RUNS})\n",
        cfg.function.name(),
        cfg.range,
        cfg.jobs
    );
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<7}{:>12.3} ms  (min {:.3}, max {:.3})",
            r.method, r.median_ms, r.min_ms, r.max_ms
        );
    }
    let exit = i32::from(summary.mismatches > 0);
    Ok((Results::Bench(rows), summary, text, exit))
}

fn check(cfg: &RunConfig, inequality: Inequality) -> Result<Produced, CliError> {
    let (start, end) = (nat(cfg.range.start)?, nat(cfg.range.end)?);
    let (checks, claimed_from): (Vec<InequalityCheck>, u64) = match inequality {
        Inequality::Robin => (robin_sweep(start, end)?, ROBIN_THRESHOLD),
        Inequality::Lagarias => (applications::lagarias_sweep(start, end)?, 2),
    };
    let violations: Vec<Row> = checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| {
            Ok(Row {
                n: c.n,
                value: Cell::Int(to_i64(c.sigma)?),
                oracle: Cell::Float(c.bound),
                agree: false,
                residual: c.sigma as f64 - c.bound,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let in_claim = violations.iter().filter(|r| r.n >= claimed_from).count();
    let summary = Summary {
        checked: checks.len() as u64,
        mismatches: violations.len() as u64,
        max_abs_residual: violations.iter().map(|r| r.residual).fold(0.0, f64::max),
        elapsed_ms: 0.0,
    };
    let mut text = format!(
        "{} over {}: checked {}\nviolations: {}\n",
        cfg.function.name(),
        cfg.range,
        summary.checked,
        summary.mismatches
    );
    if !violations.is_empty() {
        let _ = writeln!(text, "violations at n >= {claimed_from}: {in_claim}");
    }
    for r in violations.iter().take(LISTED_FAILURES) {
        let _ = writeln!(
            text,
            "  n = {}: sigma = {} >= bound {}",
            r.n,
            r.value.to_text(),
            r.oracle.to_text()
        );
    }
    Ok((
        Results::Rows(violations),
        summary,
        text,
        i32::from(in_claim > 0),
    ))
}
