//! Specializations of the identity to classical arithmetic functions, each
//! paired with a closed form or divisor-enumeration cross-check, plus the
//! Robin and Lagarias inequality checkers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{factorize, lcm_up_to, SieveTables};
use crate::engine::{Engine, ExactNumer, ExactSum, FloatSum, LogSum, Method, SumDomain, Value};
use crate::error::{Error, Result};
use crate::float::CompensatedSum;
use crate::logvec::LogCoeffVector;
use crate::natural::Natural;
use crate::ramanujan::holder_coefficient;

/// Euler–Mascheroni constant at double precision.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Smallest n from which Robin's inequality is expected to hold throughout.
pub const ROBIN_THRESHOLD: u64 = 5041;

fn identity_method(method: Method) -> Method {
    match method {
        Method::Oracle => Method::Holder,
        other => other,
    }
}

/// Groups k = 1..=n by j = ⌊n/k⌋ and returns Σ_j prefix(j)·Σ_{⌊n/k⌋=j} c_k·weight(k).
fn grouped_exact_sum(
    engine: &Engine,
    n: u64,
    method: Method,
    weight: impl Fn(u64) -> BigInt,
    prefix: impl Fn(u64) -> BigInt,
) -> Result<BigInt> {
    let mut total = BigInt::zero();
    let mut k = 1;
    while k <= n {
        let j = n / k;
        let k_end = n / j;
        let mut group = BigInt::zero();
        for kk in k..=k_end {
            let c = engine.coefficient(kk, n, method)?;
            if c != 0 {
                group += weight(kk) * c;
            }
        }
        if !group.is_zero() {
            total += group * prefix(j);
        }
        k = k_end + 1;
    }
    Ok(total)
}

/// σ_γ(n) = Σ_{d|n} d^γ.
///
/// The identity route evaluates Σ_k c_k(n)·k^{γ−1}·Σ_{l≤⌊n/k⌋} l^{γ−1}. Results
/// are exact for integer γ ≥ 0 and floats otherwise.
pub fn sigma_gamma(engine: &Engine, n: Natural, gamma: f64, method: Method) -> Result<Value> {
    let nn = n.get();
    let exact_exponent = crate::engine::GKind::Power(gamma).integer_power();
    if method == Method::Oracle {
        let divisors = engine.factorize(nn)?.divisors()?;
        return Ok(match exact_exponent {
            Some(e) => Value::Exact(BigRational::from_integer(
                divisors.into_iter().map(|d| BigInt::from(d).pow(e)).sum(),
            )),
            None => Value::Float(
                divisors
                    .into_iter()
                    .map(|d| libm::pow(d as f64, gamma))
                    .collect::<CompensatedSum>()
                    .value(),
            ),
        });
    }
    match exact_exponent {
        Some(0) => divisor_count_rational(engine, n, method).map(Value::Exact),
        Some(e) => {
            let powers: Vec<BigInt> = (0..=nn)
                .map(|l| {
                    if l == 0 {
                        BigInt::zero()
                    } else {
                        BigInt::from(l).pow(e - 1)
                    }
                })
                .collect();
            let mut prefix = Vec::with_capacity(powers.len());
            let mut running = BigInt::zero();
            for p in &powers {
                running += p;
                prefix.push(running.clone());
            }
            let total = grouped_exact_sum(
                engine,
                nn,
                method,
                |k| powers[k as usize].clone(),
                |j| prefix[j as usize].clone(),
            )?;
            Ok(Value::Exact(BigRational::from_integer(total)))
        }
        None => {
            let mut prefix = Vec::with_capacity(nn as usize + 1);
            let mut running = CompensatedSum::default();
            prefix.push(0.0);
            for l in 1..=nn {
                running.add(libm::pow(l as f64, gamma - 1.0));
                prefix.push(running.value());
            }
            let mut acc = CompensatedSum::default();
            for k in 1..=nn {
                let c = engine.coefficient(k, nn, method)?;
                if c != 0 {
                    acc.add(
                        c as f64 * libm::pow(k as f64, gamma - 1.0) * prefix[(nn / k) as usize],
                    );
                }
            }
            Ok(Value::Float(acc.value()))
        }
    }
}

/// d(n) as the exact rational Σ_k (c_k(n)/k)·H_{⌊n/k⌋} (or the divisor
/// count itself for the oracle).
pub fn divisor_count_rational(engine: &Engine, n: Natural, method: Method) -> Result<BigRational> {
    let nn = n.get();
    if method == Method::Oracle {
        return Ok(BigRational::from_integer(
            engine.factorize(nn)?.divisor_count()?.into(),
        ));
    }
    // (c_k/k)·H_j = c_k·(L/k)·(L·H_j) / L²
    let frame = engine.frame(nn)?;
    let total = grouped_exact_sum(
        engine,
        nn,
        method,
        |k| frame.scaled_reciprocal(k).clone(),
        |j| frame.scaled_value(j).clone(),
    )?;
    let denom = frame.denom() * frame.denom();
    Ok(BigRational::new(total, denom))
}

/// Number of divisors. The identity value must come out as a non-negative
/// integer equal to the enumerated count, otherwise this is an invariant error.
pub fn divisor_count(engine: &Engine, n: Natural, method: Method) -> Result<u64> {
    let r = divisor_count_rational(engine, n, method)?;
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Invariant(format!("d({n}) evaluated to {r}")));
    }
    let value = r
        .to_integer()
        .to_u64()
        .ok_or(Error::Overflow("divisor count"))?;
    let expected = engine.factorize(n.get())?.divisor_count()?;
    if value != expected {
        return Err(Error::Invariant(format!(
            "d({n}) evaluated to {value}, divisor count is {expected}"
        )));
    }
    Ok(value)
}

/// σ(n). The identity route is Σ_k ⌊n/k⌋·c_k(n) in checked 128-bit arithmetic.
pub fn sigma(engine: &Engine, n: Natural, method: Method) -> Result<u64> {
    let nn = n.get();
    let expected = engine.factorize(nn)?.divisor_power_sum(1)?;
    if method == Method::Oracle {
        return Ok(expected);
    }
    const OVERFLOW: Error = Error::Overflow("sigma");
    let mut acc = 0i128;
    for k in 1..=nn {
        let c = engine.coefficient(k, nn, method)?;
        if c != 0 {
            let term = i128::from(nn / k)
                .checked_mul(i128::from(c))
                .ok_or(OVERFLOW)?;
            acc = acc.checked_add(term).ok_or(OVERFLOW)?;
        }
    }
    let value = u64::try_from(acc).map_err(|_| OVERFLOW)?;
    if value != expected {
        return Err(Error::Invariant(format!(
            "σ({n}) evaluated to {value}, divisor sum is {expected}"
        )));
    }
    Ok(value)
}

/// A log-valued result, both as a float and as exact prime-log coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LogValue {
    pub float: f64,
    pub exact: LogCoeffVector,
}

/// How log Π(n) is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogProductForm {
    /// The identity applied to g = log.
    Identity(Method),
    /// (1/2)·d(n)·log n, from Π(n)² = n^{d(n)}.
    ClosedForm,
}

impl FromStr for LogProductForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq13" | "identity" => Ok(LogProductForm::Identity(Method::Holder)),
            "eq14" | "closed" => Ok(LogProductForm::ClosedForm),
            other => other.parse::<Method>().map(|m| match m {
                Method::Oracle => LogProductForm::ClosedForm,
                m => LogProductForm::Identity(m),
            }),
        }
    }
}

impl fmt::Display for LogProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogProductForm::Identity(_) => f.write_str("eq13"),
            LogProductForm::ClosedForm => f.write_str("eq14"),
        }
    }
}

/// log Π(n), where Π(n) is the product of the divisors of n.
pub fn log_product_divisors(engine: &Engine, n: Natural, form: LogProductForm) -> Result<LogValue> {
    let nn = n.get();
    match form {
        LogProductForm::ClosedForm => {
            let f = engine.factorize(nn)?;
            let half_d = BigRational::new(f.divisor_count()?.into(), 2.into());
            let float = 0.5 * f.divisor_count()? as f64 * libm::log(nn as f64);
            Ok(LogValue {
                float,
                exact: LogCoeffVector::log_of(&f, &half_d),
            })
        }
        LogProductForm::Identity(method) => {
            let method = identity_method(method);
            let float = engine.identity_sum(&FloatSum, nn, method, |m| Ok(libm::log(m as f64)))?;
            let frame = engine.frame(nn)?;
            let sum = LogSum {
                exact: ExactSum { frame: &frame },
            };
            let exact = engine.identity_sum(&sum, nn, method, |m| {
                Ok(engine
                    .factorize(m)?
                    .factors()
                    .iter()
                    .map(|&(p, e)| (p, ExactNumer::Small(i64::from(e))))
                    .collect())
            })?;
            Ok(LogValue {
                float: float.value(),
                exact: match sum.finish(exact) {
                    Value::Log(v) => v,
                    _ => unreachable!("log sums finish as log vectors"),
                },
            })
        }
    }
}

/// Σ_k c_k(n)·Σ_l log((kl)²/n)/(kl), which vanishes for every n.
pub fn zero_identity_residual(engine: &Engine, n: Natural) -> Result<LogValue> {
    let nn = n.get();
    let log_n = libm::log(nn as f64);
    let float = engine.identity_sum(&FloatSum, nn, Method::Holder, |m| {
        Ok(2.0 * libm::log(m as f64) - log_n)
    })?;
    let n_factors = engine.factorize(nn)?;
    let frame = engine.frame(nn)?;
    let sum = LogSum {
        exact: ExactSum { frame: &frame },
    };
    let exact = engine.identity_sum(&sum, nn, Method::Holder, |m| {
        let mut coeffs: BTreeMap<u64, i64> = BTreeMap::new();
        for &(p, e) in engine.factorize(m)?.factors() {
            *coeffs.entry(p).or_default() += 2 * i64::from(e);
        }
        for &(p, e) in n_factors.factors() {
            *coeffs.entry(p).or_default() -= i64::from(e);
        }
        Ok(coeffs
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(p, c)| (p, ExactNumer::Small(c)))
            .collect())
    })?;
    Ok(LogValue {
        float: float.value(),
        exact: match sum.finish(exact) {
            Value::Log(v) => v,
            _ => unreachable!("log sums finish as log vectors"),
        },
    })
}

/// Whether a float residual is within `tolerance·(1 + d(n)·log n)`.
pub fn residual_within(engine: &Engine, n: Natural, residual: f64, tolerance: f64) -> Result<bool> {
    let d = engine.factorize(n.get())?.divisor_count()? as f64;
    Ok(residual.abs() <= tolerance * (1.0 + d * libm::log(n.get() as f64)))
}

/// δ(n) = Σ_{d|n} μ(d) evaluated through the identity in exact rationals.
pub fn kronecker_delta(engine: &Engine, n: Natural) -> Result<u8> {
    let nn = n.get();
    let frame = engine.frame(nn)?;
    let sum = ExactSum { frame: &frame };
    let acc = engine.identity_sum(&sum, nn, Method::Holder, |m| {
        Ok(ExactNumer::Small(i64::from(engine.tables().mobius(m)?)))
    })?;
    let value = match sum.finish(acc) {
        Value::Exact(r) => r,
        _ => unreachable!("exact sums finish as rationals"),
    };
    let expected = u8::from(nn == 1);
    if value != BigRational::from_integer(expected.into()) {
        return Err(Error::Invariant(format!("δ({n}) evaluated to {value}")));
    }
    Ok(expected)
}

/// (π²/6)·Σ_{k=1}^{K} (n/k²)·c_k(n), a partial sum of Ramanujan's series for σ(n).
pub fn sigma_series_partial(n: Natural, terms: Natural) -> Result<f64> {
    let tables = SieveTables::new(terms)?;
    sigma_series_partial_with(&tables, n, terms)
}

/// As [`sigma_series_partial`], reusing tables that cover `terms`.
pub fn sigma_series_partial_with(tables: &SieveTables, n: Natural, terms: Natural) -> Result<f64> {
    let nf = n.get() as f64;
    let mut acc = CompensatedSum::default();
    for k in 1..=terms.get() {
        let c = holder_coefficient(tables, k, n.get())?;
        if c != 0 {
            let kf = k as f64;
            acc.add(nf * c as f64 / (kf * kf));
        }
    }
    Ok(PI * PI / 6.0 * acc.value())
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub n: u64,
    pub sigma: u64,
    pub bound: f64,
    pub holds: bool,
}

fn robin_bound(n: u64) -> f64 {
    n as f64 * libm::exp(EULER_GAMMA) * libm::log(libm::log(n as f64))
}

fn lagarias_bound(h: f64) -> f64 {
    h + libm::log(h) * libm::exp(h)
}

fn exact_sigma(n: u64) -> Result<u64> {
    factorize(Natural::new(n)?, None)?.divisor_power_sum(1)
}

/// σ(n) < n·e^γ·log log n, for n ≥ 3.
pub fn robin_check(n: Natural) -> Result<InequalityCheck> {
    let n = n.get();
    if n < 3 {
        return Err(Error::OutOfDomain(format!(
            "Robin's inequality needs n ≥ 3, got {n}"
        )));
    }
    let sigma = exact_sigma(n)?;
    let bound = robin_bound(n);
    Ok(InequalityCheck {
        n,
        sigma,
        bound,
        holds: (sigma as f64) < bound,
    })
}

/// Robin checks for every n in `start..=end`, sharing one sieve.
pub fn robin_sweep(start: Natural, end: Natural) -> Result<Vec<InequalityCheck>> {
    if start.get() < 3 {
        return Err(Error::OutOfDomain(format!(
            "Robin's inequality needs n ≥ 3, got {start}"
        )));
    }
    let tables = SieveTables::new(end)?;
    (start.get()..=end.get())
        .map(|n| {
            let sigma = tables.factorize(n)?.divisor_power_sum(1)?;
            let bound = robin_bound(n);
            Ok(InequalityCheck {
                n,
                sigma,
                bound,
                holds: (sigma as f64) < bound,
            })
        })
        .collect()
}

/// σ(n) < H_n + log(H_n)·e^{H_n}, for n ≥ 2, with H_n exact before rounding.
pub fn lagarias_check(n: Natural) -> Result<InequalityCheck> {
    lagarias_sweep(n, n).map(|mut v| v.remove(0))
}

/// Lagarias checks for every n in `start..=end`. H_n is carried exactly over
/// the denominator lcm(1, …, end) and rounded once per n.
pub fn lagarias_sweep(start: Natural, end: Natural) -> Result<Vec<InequalityCheck>> {
    if start.get() < 2 {
        return Err(Error::OutOfDomain(format!(
            "Lagarias' inequality needs n ≥ 2, got {start}"
        )));
    }
    let tables = SieveTables::new(end)?;
    let denom = BigInt::from(lcm_up_to(&tables, end.get()));
    let mut numer = BigInt::zero();
    let mut out = Vec::new();
    for n in 1..=end.get() {
        numer += &denom / n;
        if n < start.get() {
            continue;
        }
        let h = BigRational::new_raw(numer.clone(), denom.clone())
            .to_f64()
            .ok_or(Error::Overflow("harmonic number to f64"))?;
        let sigma = tables.factorize(n)?.divisor_power_sum(1)?;
        let bound = lagarias_bound(h);
        out.push(InequalityCheck {
            n,
            sigma,
            bound,
            holds: (sigma as f64) < bound,
        });
    }
    Ok(out)
}
