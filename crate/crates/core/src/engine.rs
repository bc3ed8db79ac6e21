//! Evaluation of f(n) = Σ_{d|n} g(d) three ways: by divisor enumeration, as
//! Σ_b c_b(n)·Σ_u g(bu)/(bu) with Ramanujan sums, and with Hölder's closed
//! form substituted for c_b(n).
//!
//! Exact sums never add rationals term by term. Every inner term g(m)/m with
//! integer g(m) is scaled by L = lcm(1, …, n) so that L/m is an integer, the
//! sum is carried as a single big integer, and the quotient by L is reduced
//! once at the end.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{FactorMap, SieveTables};
use crate::error::{Error, Result};
use crate::float::CompensatedSum;
use crate::harmonic::HarmonicTable;
use crate::logvec::LogCoeffVector;
use crate::natural::Natural;
use crate::ramanujan::{holder_coefficient, ramanujan_holder_with};

/// Value domain a sum is carried out in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Exact,
    Float,
    LogCoefficients,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Exact => "exact",
            Domain::Float => "float",
            Domain::LogCoefficients => "log",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Domain::Exact),
            "float" => Ok(Domain::Float),
            "log" | "log-coefficients" => Ok(Domain::LogCoefficients),
            other => Err(Error::OutOfDomain(format!("unknown domain {other:?}"))),
        }
    }
}

/// A value in one of the three domains.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
    Log(LogCoeffVector),
}

impl Value {
    pub fn domain(&self) -> Domain {
        match self {
            Value::Exact(_) => Domain::Exact,
            Value::Float(_) => Domain::Float,
            Value::Log(_) => Domain::LogCoefficients,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Float(x) => *x,
            Value::Log(v) => v.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// The exact rational, or a domain error for float and log values.
    pub fn into_exact(self) -> Result<BigRational> {
        match self {
            Value::Exact(r) => Ok(r),
            other => Err(Error::DomainMismatch {
                kind: format!("{other}"),
                domain: Domain::Exact.name(),
            }),
        }
    }

    pub fn as_log(&self) -> Option<&LogCoeffVector> {
        match self {
            Value::Log(v) => Some(v),
            _ => None,
        }
    }

    /// Exact equality for exact and log values, `|a − b| ≤ tol·(1 + |b|)`
    /// for floats. Values from different domains never agree.
    pub fn agrees_with(&self, oracle: &Value, tolerance: f64) -> bool {
        match (self, oracle) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            (Value::Log(a), Value::Log(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => (a - b).abs() <= tolerance * (1.0 + b.abs()),
            _ => false,
        }
    }

    /// |a − b| as a float; exact values are subtracted before conversion.
    pub fn abs_difference(&self, other: &Value) -> f64 {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => (a - b).to_f64().map_or(f64::NAN, f64::abs),
            (Value::Log(a), Value::Log(b)) => (a.clone() - b.clone()).to_f64().abs(),
            _ => (self.to_f64() - other.to_f64()).abs(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => r.fmt(f),
            Value::Float(x) => x.fmt(f),
            Value::Log(v) => v.fmt(f),
        }
    }
}

/// A user-supplied arithmetic function. Must be deterministic and return
/// values in the domain it is evaluated in.
#[derive(Clone)]
pub struct CustomFn {
    name: String,
    func: Arc<dyn Fn(u64) -> Value + Send + Sync>,
}

impl CustomFn {
    pub fn new(
        name: impl Into<String>,
        func: impl Fn(u64) -> Value + Send + Sync + 'static,
    ) -> Self {
        CustomFn {
            name: name.into(),
            func: Arc::new(func),
        }
    }

    pub fn call(&self, m: u64) -> Value {
        (self.func)(m)
    }
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("CustomFn").field(&self.name).finish()
    }
}

/// The inner function g of a divisor sum.
#[derive(Debug, Clone)]
pub enum GKind {
    /// g(d) = d^γ
    Power(f64),
    /// g(d) = log d
    Log,
    /// g(d) = μ(d)
    Mobius,
    Custom(CustomFn),
}

impl GKind {
    /// The exponent as a small non-negative integer, when it is one.
    pub fn integer_power(&self) -> Option<u32> {
        match *self {
            GKind::Power(g) if (0.0..=64.0).contains(&g) && g.fract() == 0.0 => Some(g as u32),
            _ => None,
        }
    }

    fn supports(&self, domain: Domain) -> bool {
        match self {
            GKind::Power(_) => match domain {
                Domain::Exact => self.integer_power().is_some(),
                Domain::Float => true,
                Domain::LogCoefficients => false,
            },
            GKind::Log => domain != Domain::Exact,
            GKind::Mobius => domain != Domain::LogCoefficients,
            GKind::Custom(_) => true,
        }
    }
}

impl fmt::Display for GKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GKind::Power(g) => write!(f, "power:{g}"),
            GKind::Log => f.write_str("log"),
            GKind::Mobius => f.write_str("mobius"),
            GKind::Custom(c) => write!(f, "custom:{}", c.name),
        }
    }
}

/// g together with the domain its sums are evaluated in.
#[derive(Debug, Clone)]
pub struct GSpec {
    kind: GKind,
    domain: Domain,
}

impl GSpec {
    pub fn new(kind: GKind, domain: Domain) -> Result<Self> {
        if !kind.supports(domain) {
            return Err(Error::DomainMismatch {
                kind: kind.to_string(),
                domain: domain.name(),
            });
        }
        Ok(GSpec { kind, domain })
    }

    /// d^γ, exact for non-negative integer γ and float otherwise.
    pub fn power(gamma: f64) -> Self {
        let kind = GKind::Power(gamma);
        let domain = if kind.integer_power().is_some() {
            Domain::Exact
        } else {
            Domain::Float
        };
        GSpec { kind, domain }
    }

    pub fn log() -> Self {
        GSpec {
            kind: GKind::Log,
            domain: Domain::LogCoefficients,
        }
    }

    pub fn mobius() -> Self {
        GSpec {
            kind: GKind::Mobius,
            domain: Domain::Exact,
        }
    }

    pub fn custom(func: CustomFn, domain: Domain) -> Self {
        GSpec {
            kind: GKind::Custom(func),
            domain,
        }
    }

    /// The same g in another domain.
    pub fn in_domain(&self, domain: Domain) -> Result<Self> {
        GSpec::new(self.kind.clone(), domain)
    }

    pub fn kind(&self) -> &GKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    fn mismatch(&self) -> Error {
        Error::DomainMismatch {
            kind: self.kind.to_string(),
            domain: self.domain.name(),
        }
    }
}

/// Parses `power:<γ>`, `log` or `mobius` into the default domain for that g.
impl FromStr for GSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(gamma) = s.strip_prefix("power:") {
            let gamma: f64 = gamma
                .parse()
                .map_err(|_| Error::OutOfDomain(format!("bad exponent in {s:?}")))?;
            if !gamma.is_finite() {
                return Err(Error::OutOfDomain(format!("bad exponent in {s:?}")));
            }
            return Ok(GSpec::power(gamma));
        }
        match s {
            "log" => Ok(GSpec::log()),
            "mobius" | "moebius" | "mu" => Ok(GSpec::mobius()),
            other => Err(Error::OutOfDomain(format!(
                "unknown function g = {other:?}"
            ))),
        }
    }
}

/// How f(n) is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Σ_{d|n} g(d) by divisor enumeration.
    Oracle,
    /// Σ_b c_b(n)·Σ_u g(bu)/(bu) with c_b(n) taken from the Ramanujan-sum routine.
    RamanujanSum,
    /// Σ_k μ(k/(n,k))·φ(k)/φ(k/(n,k))·Σ_l g(kl)/(kl), coefficients read inline.
    Holder,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Oracle, Method::RamanujanSum, Method::Holder];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::RamanujanSum => "eq8",
            Method::Holder => "eq9",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "eq8" | "ramanujan" => Ok(Method::RamanujanSum),
            "eq9" | "holder" | "identity" => Ok(Method::Holder),
            other => Err(Error::OutOfDomain(format!("unknown method {other:?}"))),
        }
    }
}

/// Time source for [`EvalReport::elapsed`]; the core crate has no clock of its own.
pub trait Clock {
    type Mark;
    fn mark(&self) -> Self::Mark;
    fn elapsed(&self, since: &Self::Mark) -> Duration;
}

/// Reports zero elapsed time.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    type Mark = ();

    fn mark(&self) {}

    fn elapsed(&self, _: &()) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub n: u64,
    pub method: Method,
    pub value: Value,
    pub oracle: Value,
    pub agrees_with_oracle: bool,
    pub abs_residual: f64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub reports: Vec<EvalReport>,
    pub mismatches: usize,
    pub max_abs_residual: f64,
}

impl Verification {
    pub fn from_reports(reports: Vec<EvalReport>) -> Self {
        let mismatches = reports.iter().filter(|r| !r.agrees_with_oracle).count();
        let max_abs_residual = reports.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
        Verification {
            reports,
            mismatches,
            max_abs_residual,
        }
    }

    pub fn checked(&self) -> usize {
        self.reports.len()
    }
}

// ---------------------------------------------------------------------------
// Accumulation domains

/// Numerator of an exact term x/m.
#[derive(Debug, Clone)]
pub(crate) enum ExactNumer {
    Small(i64),
    Big(BigRational),
}

/// Σ x_i/m_i kept as `scaled / L + rest`; `rest` only collects terms whose
/// numerator is not an integer.
#[derive(Debug, Clone)]
pub(crate) struct ExactAcc {
    scaled: BigInt,
    rest: BigRational,
}

pub(crate) trait SumDomain {
    type Numer;
    type Acc;

    fn zero(&self) -> Self::Acc;
    /// acc += numer / m
    fn add_over(&self, acc: &mut Self::Acc, numer: Self::Numer, m: u64);
    /// acc += c · inner
    fn add_scaled(&self, acc: &mut Self::Acc, inner: &Self::Acc, c: i64);
    fn finish(&self, acc: Self::Acc) -> Value;
}

pub(crate) struct ExactSum<'a> {
    pub(crate) frame: &'a HarmonicTable,
}

impl ExactSum<'_> {
    fn finish_rational(&self, acc: ExactAcc) -> BigRational {
        BigRational::new(acc.scaled, self.frame.denom().clone()) + acc.rest
    }
}

impl SumDomain for ExactSum<'_> {
    type Numer = ExactNumer;
    type Acc = ExactAcc;

    fn zero(&self) -> ExactAcc {
        ExactAcc {
            scaled: BigInt::zero(),
            rest: BigRational::zero(),
        }
    }

    fn add_over(&self, acc: &mut ExactAcc, numer: ExactNumer, m: u64) {
        let weight = self.frame.scaled_reciprocal(m);
        match numer {
            ExactNumer::Small(0) => {}
            ExactNumer::Small(1) => acc.scaled += weight,
            ExactNumer::Small(-1) => acc.scaled -= weight,
            ExactNumer::Small(v) => acc.scaled += weight * v,
            ExactNumer::Big(r) if r.is_integer() => acc.scaled += weight * r.numer(),
            ExactNumer::Big(r) => acc.rest += r / BigInt::from(m),
        }
    }

    fn add_scaled(&self, acc: &mut ExactAcc, inner: &ExactAcc, c: i64) {
        match c {
            0 => return,
            1 => acc.scaled += &inner.scaled,
            -1 => acc.scaled -= &inner.scaled,
            _ => acc.scaled += &inner.scaled * c,
        }
        if !inner.rest.is_zero() {
            acc.rest += &inner.rest * BigInt::from(c);
        }
    }

    fn finish(&self, acc: ExactAcc) -> Value {
        Value::Exact(self.finish_rational(acc))
    }
}

pub(crate) struct FloatSum;

impl SumDomain for FloatSum {
    type Numer = f64;
    type Acc = CompensatedSum;

    fn zero(&self) -> CompensatedSum {
        CompensatedSum::default()
    }

    fn add_over(&self, acc: &mut CompensatedSum, numer: f64, m: u64) {
        acc.add(numer / m as f64);
    }

    fn add_scaled(&self, acc: &mut CompensatedSum, inner: &CompensatedSum, c: i64) {
        if c != 0 {
            acc.add(c as f64 * inner.value());
        }
    }

    fn finish(&self, acc: CompensatedSum) -> Value {
        Value::Float(acc.value())
    }
}

/// Per-prime exact accumulation of Σ c_p log p.
pub(crate) struct LogSum<'a> {
    pub(crate) exact: ExactSum<'a>,
}

impl SumDomain for LogSum<'_> {
    type Numer = Vec<(u64, ExactNumer)>;
    type Acc = BTreeMap<u64, ExactAcc>;

    fn zero(&self) -> Self::Acc {
        BTreeMap::new()
    }

    fn add_over(&self, acc: &mut Self::Acc, numer: Self::Numer, m: u64) {
        for (p, x) in numer {
            let slot = acc.entry(p).or_insert_with(|| self.exact.zero());
            self.exact.add_over(slot, x, m);
        }
    }

    fn add_scaled(&self, acc: &mut Self::Acc, inner: &Self::Acc, c: i64) {
        if c == 0 {
            return;
        }
        for (&p, x) in inner {
            let slot = acc.entry(p).or_insert_with(|| self.exact.zero());
            self.exact.add_scaled(slot, x, c);
        }
    }

    fn finish(&self, acc: Self::Acc) -> Value {
        Value::Log(
            acc.into_iter()
                .map(|(p, x)| (p, self.exact.finish_rational(x)))
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------

/// Evaluator for all arguments up to a fixed limit, sharing one sieve.
#[derive(Debug, Clone)]
pub struct Engine {
    tables: SieveTables,
}

impl Engine {
    pub fn new(limit: Natural) -> Result<Self> {
        Ok(Engine {
            tables: SieveTables::new(limit)?,
        })
    }

    pub fn from_tables(tables: SieveTables) -> Self {
        Engine { tables }
    }

    pub fn tables(&self) -> &SieveTables {
        &self.tables
    }

    pub fn limit(&self) -> u64 {
        self.tables.limit()
    }

    pub(crate) fn factorize(&self, m: u64) -> Result<FactorMap> {
        self.tables.factorize(m)
    }

    /// The scaled-reciprocal frame for sums whose terms have denominators ≤ n.
    pub(crate) fn frame(&self, n: u64) -> Result<HarmonicTable> {
        HarmonicTable::with_tables(&self.tables, n)
    }

    /// c_k(n), through the Ramanujan-sum routine or inline Hölder form.
    #[inline]
    pub(crate) fn coefficient(&self, k: u64, n: u64, method: Method) -> Result<i64> {
        match method {
            Method::RamanujanSum => ramanujan_holder_with(&self.tables, k, n)?
                .value()
                .to_i64()
                .ok_or(Error::Overflow("ramanujan sum")),
            _ => holder_coefficient(&self.tables, k, n),
        }
    }

    /// Σ_{k=1}^{n} c_k(n) · Σ_{l=1}^{⌊n/k⌋} numer(kl)/(kl); outer k ascending,
    /// inner l ascending, zero coefficients skipped.
    pub(crate) fn identity_sum<D: SumDomain>(
        &self,
        domain: &D,
        n: u64,
        method: Method,
        mut numer: impl FnMut(u64) -> Result<D::Numer>,
    ) -> Result<D::Acc> {
        let mut outer = domain.zero();
        for k in 1..=n {
            let c = self.coefficient(k, n, method)?;
            if c == 0 {
                continue;
            }
            let mut inner = domain.zero();
            for l in 1..=n / k {
                let m = k * l;
                if m > n {
                    return Err(Error::Invariant(format!("g read at {m} > n = {n}")));
                }
                domain.add_over(&mut inner, numer(m)?, m);
            }
            domain.add_scaled(&mut outer, &inner, c);
        }
        Ok(outer)
    }

    fn check(&self, n: Natural) -> Result<u64> {
        let n = n.get();
        if n > self.limit() {
            return Err(Error::BeyondSieve {
                n,
                limit: self.limit(),
            });
        }
        Ok(n)
    }

    fn g_exact(&self, g: &GSpec, m: u64) -> Result<ExactNumer> {
        match g.kind() {
            GKind::Power(_) => {
                let e = g.kind().integer_power().ok_or_else(|| g.mismatch())?;
                Ok(match m.checked_pow(e).and_then(|v| i64::try_from(v).ok()) {
                    Some(v) => ExactNumer::Small(v),
                    None => ExactNumer::Big(BigRational::from_integer(BigInt::from(m).pow(e))),
                })
            }
            GKind::Mobius => Ok(ExactNumer::Small(i64::from(self.tables.mobius(m)?))),
            GKind::Custom(f) => match f.call(m) {
                Value::Exact(r) => Ok(ExactNumer::Big(r)),
                _ => Err(g.mismatch()),
            },
            GKind::Log => Err(g.mismatch()),
        }
    }

    fn g_float(&self, g: &GSpec, m: u64) -> Result<f64> {
        match g.kind() {
            GKind::Power(gamma) => Ok(libm::pow(m as f64, *gamma)),
            GKind::Mobius => Ok(f64::from(self.tables.mobius(m)?)),
            GKind::Log => Ok(libm::log(m as f64)),
            GKind::Custom(f) => match f.call(m) {
                Value::Float(x) => Ok(x),
                _ => Err(g.mismatch()),
            },
        }
    }

    fn g_log(&self, g: &GSpec, m: u64) -> Result<Vec<(u64, ExactNumer)>> {
        match g.kind() {
            GKind::Log => Ok(self
                .factorize(m)?
                .factors()
                .iter()
                .map(|&(p, e)| (p, ExactNumer::Small(i64::from(e))))
                .collect()),
            GKind::Custom(f) => match f.call(m) {
                Value::Log(v) => Ok(v
                    .iter()
                    .map(|(p, c)| (p, ExactNumer::Big(c.clone())))
                    .collect()),
                _ => Err(g.mismatch()),
            },
            _ => Err(g.mismatch()),
        }
    }

    /// g(m) as a value in g's domain.
    pub fn g_value(&self, g: &GSpec, m: u64) -> Result<Value> {
        Ok(match g.domain() {
            Domain::Exact => Value::Exact(match self.g_exact(g, m)? {
                ExactNumer::Small(v) => BigRational::from_integer(v.into()),
                ExactNumer::Big(r) => r,
            }),
            Domain::Float => Value::Float(self.g_float(g, m)?),
            Domain::LogCoefficients => Value::Log(
                self.g_log(g, m)?
                    .into_iter()
                    .map(|(p, x)| {
                        let c = match x {
                            ExactNumer::Small(v) => BigRational::from_integer(v.into()),
                            ExactNumer::Big(r) => r,
                        };
                        (p, c)
                    })
                    .collect(),
            ),
        })
    }

    /// Σ_{d|n} g(d) by explicit divisor enumeration.
    pub fn divisor_sum_oracle(&self, n: Natural, g: &GSpec) -> Result<Value> {
        let n = self.check(n)?;
        let divisors = self.factorize(n)?.divisors()?;
        Ok(match g.domain() {
            Domain::Exact => {
                let mut acc = BigRational::zero();
                for d in divisors {
                    if let Value::Exact(r) = self.g_value(g, d)? {
                        acc += r;
                    }
                }
                Value::Exact(acc)
            }
            Domain::Float => {
                let mut acc = CompensatedSum::default();
                for d in divisors {
                    acc.add(self.g_float(g, d)?);
                }
                Value::Float(acc.value())
            }
            Domain::LogCoefficients => {
                let mut acc = LogCoeffVector::zero();
                for d in divisors {
                    if let Value::Log(v) = self.g_value(g, d)? {
                        acc += &v;
                    }
                }
                Value::Log(acc)
            }
        })
    }

    /// f(n) through the finite Ramanujan-sum identity. `Method::Oracle`
    /// falls through to [`Engine::divisor_sum_oracle`].
    pub fn eval_identity(&self, n: Natural, g: &GSpec, method: Method) -> Result<Value> {
        if method == Method::Oracle {
            return self.divisor_sum_oracle(n, g);
        }
        let n = self.check(n)?;
        match g.domain() {
            Domain::Exact => {
                let frame = self.frame(n)?;
                let sum = ExactSum { frame: &frame };
                let acc = self.identity_sum(&sum, n, method, |m| self.g_exact(g, m))?;
                Ok(sum.finish(acc))
            }
            Domain::Float => {
                let acc = self.identity_sum(&FloatSum, n, method, |m| self.g_float(g, m))?;
                Ok(FloatSum.finish(acc))
            }
            Domain::LogCoefficients => {
                let frame = self.frame(n)?;
                let sum = LogSum {
                    exact: ExactSum { frame: &frame },
                };
                let acc = self.identity_sum(&sum, n, method, |m| self.g_log(g, m))?;
                Ok(sum.finish(acc))
            }
        }
    }

    /// Evaluates one argument and compares it to the oracle.
    pub fn evaluate<C: Clock>(
        &self,
        n: Natural,
        g: &GSpec,
        method: Method,
        tolerance: f64,
        clock: &C,
    ) -> Result<EvalReport> {
        let run = || {
            let start = clock.mark();
            let value = self.eval_identity(n, g, method)?;
            let elapsed = clock.elapsed(&start);
            let oracle = self.divisor_sum_oracle(n, g)?;
            let agrees_with_oracle = value.agrees_with(&oracle, tolerance);
            let abs_residual = value.abs_difference(&oracle);
            Ok(EvalReport {
                n: n.get(),
                method,
                value,
                oracle,
                agrees_with_oracle,
                abs_residual,
                elapsed,
            })
        };
        run().map_err(|e: Error| e.at(n.get()))
    }

    /// One report per n in `1..=n_max`.
    pub fn verify_range<C: Clock>(
        &self,
        n_max: Natural,
        g: &GSpec,
        method: Method,
        tolerance: f64,
        clock: &C,
    ) -> Result<Verification> {
        self.verify_span(Natural::ONE, n_max, g, method, tolerance, clock)
    }

    /// One report per n in `start..=end`.
    pub fn verify_span<C: Clock>(
        &self,
        start: Natural,
        end: Natural,
        g: &GSpec,
        method: Method,
        tolerance: f64,
        clock: &C,
    ) -> Result<Verification> {
        let reports = (start.get()..=end.get())
            .map(|n| self.evaluate(Natural::new(n)?, g, method, tolerance, clock))
            .collect::<Result<Vec<_>>>()?;
        Ok(Verification::from_reports(reports))
    }
}

/// Σ_{d|n} g(d) with a sieve sized to n.
pub fn divisor_sum_oracle(n: Natural, g: &GSpec) -> Result<Value> {
    Engine::new(n)?.divisor_sum_oracle(n, g)
}

/// f(n) through the identity with a sieve sized to n.
pub fn eval_identity(n: Natural, g: &GSpec, method: Method) -> Result<Value> {
    Engine::new(n)?.eval_identity(n, g, method)
}

/// Sweeps `1..=n_max` without timing.
pub fn verify_range(
    n_max: Natural,
    g: &GSpec,
    method: Method,
    tolerance: f64,
) -> Result<Verification> {
    Engine::new(n_max)?.verify_range(n_max, g, method, tolerance, &NoClock)
}
