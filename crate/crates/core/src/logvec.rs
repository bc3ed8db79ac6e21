//! Exact values of the form Σ c_p·log p with rational c_p.
//!
//! The logarithms of distinct primes are linearly independent over the
//! rationals, so two such sums are equal exactly when their coefficient maps
//! are equal.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::FactorMap;
use crate::float::CompensatedSum;

/// Sparse map prime → rational coefficient; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LogCoeffVector {
    coeffs: BTreeMap<u64, BigRational>,
}

impl LogCoeffVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// log m = Σ e_p log p, scaled by `scale`.
    pub fn log_of(factors: &FactorMap, scale: &BigRational) -> Self {
        let mut v = Self::zero();
        for &(p, e) in factors.factors() {
            v.add_coefficient(p, scale * BigRational::from_integer(BigInt::from(e)));
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, prime: u64) -> BigRational {
        self.coeffs
            .get(&prime)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    pub fn add_coefficient(&mut self, prime: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(prime).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&prime);
        }
    }

    /// Numeric value Σ c_p·ln p.
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&p, c)| c.to_f64().unwrap_or(f64::NAN) * libm::log(p as f64))
            .collect::<CompensatedSum>()
            .value()
    }

    /// Coefficient-wise scaling.
    pub fn scaled(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, c * s)).collect(),
        }
    }
}

impl FromIterator<(u64, BigRational)> for LogCoeffVector {
    fn from_iter<I: IntoIterator<Item = (u64, BigRational)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (p, c) in iter {
            v.add_coefficient(p, c);
        }
        v
    }
}

impl AddAssign<&LogCoeffVector> for LogCoeffVector {
    fn add_assign(&mut self, rhs: &LogCoeffVector) {
        for (&p, c) in &rhs.coeffs {
            self.add_coefficient(p, c.clone());
        }
    }
}

impl Add for LogCoeffVector {
    type Output = LogCoeffVector;

    fn add(mut self, rhs: LogCoeffVector) -> LogCoeffVector {
        self += &rhs;
        self
    }
}

impl Neg for LogCoeffVector {
    type Output = LogCoeffVector;

    fn neg(self) -> LogCoeffVector {
        Self {
            coeffs: self.coeffs.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for LogCoeffVector {
    type Output = LogCoeffVector;

    fn sub(self, rhs: LogCoeffVector) -> LogCoeffVector {
        self + (-rhs)
    }
}

impl Mul<&BigRational> for &LogCoeffVector {
    type Output = LogCoeffVector;

    fn mul(self, rhs: &BigRational) -> LogCoeffVector {
        self.scaled(rhs)
    }
}

/// Renders as `3*log(2) + 3/2*log(3)`, or `0` for the zero vector.
impl fmt::Display for LogCoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*log({p})")?;
        }
        Ok(())
    }
}
