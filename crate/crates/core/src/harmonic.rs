use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::{lcm_up_to, SieveTables};
use crate::error::{Error, Result};
use crate::natural::Natural;

/// Exact harmonic numbers H_0, …, H_limit over the common denominator
/// L = lcm(1, …, limit).
///
/// Alongside the numerators L·H_j the table keeps the scaled reciprocals
/// L/m, which lets exact sums of terms x/m be accumulated as plain integers.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    limit: u64,
    denom: BigInt,
    // reciprocals[m] = L / m, index 0 unused
    reciprocals: Vec<BigInt>,
    // numerators[j] = L * H_j
    numerators: Vec<BigInt>,
}

impl HarmonicTable {
    pub fn new(limit: u64) -> Result<Self> {
        let tables = SieveTables::new(Natural::new(limit.max(1))?)?;
        Self::with_tables(&tables, limit)
    }

    /// Builds the table reusing primes from an existing sieve covering `limit`.
    pub fn with_tables(tables: &SieveTables, limit: u64) -> Result<Self> {
        if limit > tables.limit() {
            return Err(Error::BeyondSieve {
                n: limit,
                limit: tables.limit(),
            });
        }
        let len = usize::try_from(limit)
            .ok()
            .and_then(|l| l.checked_add(1))
            .ok_or_else(|| Error::Resource(format!("harmonic table of size {limit}")))?;
        let denom = BigInt::from(lcm_up_to(tables, limit));
        let mut reciprocals = Vec::new();
        let mut numerators = Vec::new();
        reciprocals
            .try_reserve_exact(len)
            .and_then(|_| numerators.try_reserve_exact(len))
            .map_err(|_| Error::Resource(format!("harmonic table of size {limit}")))?;
        reciprocals.push(BigInt::from(0));
        numerators.push(BigInt::from(0));
        for m in 1..=limit {
            let r = &denom / m;
            let next = numerators.last().expect("seeded with H_0") + &r;
            reciprocals.push(r);
            numerators.push(next);
        }
        Ok(HarmonicTable {
            limit,
            denom,
            reciprocals,
            numerators,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Rebuilds the table if `index` lies beyond the current limit.
    pub fn extend_to(&mut self, index: u64) -> Result<()> {
        if index > self.limit {
            *self = Self::new(index.max(self.limit.saturating_mul(2)))?;
        }
        Ok(())
    }

    fn check(&self, j: u64) -> Result<usize> {
        if j > self.limit {
            Err(Error::BeyondSieve {
                n: j,
                limit: self.limit,
            })
        } else {
            Ok(j as usize)
        }
    }

    /// H_j in lowest terms.
    pub fn value(&self, j: u64) -> Result<BigRational> {
        let i = self.check(j)?;
        Ok(BigRational::new(
            self.numerators[i].clone(),
            self.denom.clone(),
        ))
    }

    pub fn value_f64(&self, j: u64) -> Result<f64> {
        let i = self.check(j)?;
        BigRational::new_raw(self.numerators[i].clone(), self.denom.clone())
            .to_f64()
            .ok_or(Error::Overflow("harmonic number to f64"))
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.denom
    }

    #[inline]
    pub(crate) fn scaled_reciprocal(&self, m: u64) -> &BigInt {
        &self.reciprocals[m as usize]
    }

    #[inline]
    pub(crate) fn scaled_value(&self, j: u64) -> &BigInt {
        &self.numerators[j as usize]
    }
}
