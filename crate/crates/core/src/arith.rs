//! Integer primitives: gcd, factorization, Möbius and Euler totient, in
//! single-value form and as sieve tables.
//!
//! Everything here works on machine integers. Any operation that can exceed
//! `u64` uses checked arithmetic and reports [`Error::Overflow`].

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::natural::Natural;

/// Greatest common divisor of two positive integers.
pub fn gcd(a: Natural, b: Natural) -> Natural {
    Natural::new(gcd_u64(a.get(), b.get())).expect("gcd of positive integers is positive")
}

#[inline]
pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Prime factorization of a single integer as `(prime, exponent)` pairs.
///
/// Primes are strictly increasing and every exponent is at least one. The
/// empty factorization represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactorMap {
    factors: Vec<(u64, u32)>,
}

impl FactorMap {
    /// Builds a factorization from explicit pairs, checking the ordering and
    /// exponent invariants. Primality of the keys is the caller's promise.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        let ordered = factors.windows(2).all(|w| w[0].0 < w[1].0);
        let valid = factors.iter().all(|&(p, e)| p >= 2 && e >= 1);
        if !ordered || !valid {
            return Err(Error::Invariant(format!(
                "malformed factorization {factors:?}"
            )));
        }
        Ok(FactorMap { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("factorization product"))
        })
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn totient(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e - 1)
                .and_then(|pe| pe.checked_mul(p - 1))
                .and_then(|t| acc.checked_mul(t))
                .ok_or(Error::Overflow("totient"))
        })
    }

    pub fn divisor_count(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(_, e)| {
            acc.checked_mul(u64::from(e) + 1)
                .ok_or(Error::Overflow("divisor count"))
        })
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Result<Vec<u64>> {
        let count =
            usize::try_from(self.divisor_count()?).map_err(|_| Error::Overflow("divisor count"))?;
        let mut divisors = Vec::new();
        divisors
            .try_reserve_exact(count)
            .map_err(|_| Error::Resource(format!("{count} divisors")))?;
        divisors.push(1u64);
        for &(p, e) in &self.factors {
            let len = divisors.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk = pk.checked_mul(p).ok_or(Error::Overflow("divisor"))?;
                for i in 0..len {
                    let d = divisors[i]
                        .checked_mul(pk)
                        .ok_or(Error::Overflow("divisor"))?;
                    divisors.push(d);
                }
            }
        }
        divisors.sort_unstable();
        Ok(divisors)
    }

    /// σ_γ(n) = Σ_{d|n} d^γ for a non-negative integer exponent, computed
    /// multiplicatively with checked arithmetic.
    pub fn divisor_power_sum(&self, exponent: u32) -> Result<u64> {
        const OVERFLOW: Error = Error::Overflow("divisor power sum");
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            let base = p.checked_pow(exponent).ok_or(OVERFLOW)?;
            let mut term = 1u64;
            let mut local = 1u64;
            for _ in 0..e {
                term = term.checked_mul(base).ok_or(OVERFLOW)?;
                local = local.checked_add(term).ok_or(OVERFLOW)?;
            }
            acc.checked_mul(local).ok_or(OVERFLOW)
        })
    }
}

/// Precomputed smallest-prime-factor, Möbius and totient tables for `1..=limit`.
///
/// Built once by a linear sieve and immutable afterwards, so a shared
/// reference can be handed to any number of workers.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    // index n holds the value for n; index 0 is unused, spf[1] = 1
    spf: Vec<u32>,
    mu: Vec<i8>,
    phi: Vec<u32>,
    primes: Vec<u32>,
}

/// Builds sieve tables covering `1..=limit`.
pub fn build_sieve(limit: Natural) -> Result<SieveTables> {
    SieveTables::new(limit)
}

impl SieveTables {
    pub fn new(limit: Natural) -> Result<Self> {
        let limit = limit.get();
        if limit >= u64::from(u32::MAX) {
            return Err(Error::Resource(format!(
                "sieve limit {limit} does not fit 32-bit tables"
            )));
        }
        let len = limit as usize + 1;
        let spf = alloc_table::<u32>(len)?;
        let mu = alloc_table::<i8>(len)?;
        let phi = alloc_table::<u32>(len)?;
        let mut tables = SieveTables {
            limit,
            spf,
            mu,
            phi,
            primes: Vec::new(),
        };
        tables.fill();
        Ok(tables)
    }

    fn fill(&mut self) {
        let n = self.limit as usize;
        self.spf[1] = 1;
        self.mu[1] = 1;
        self.phi[1] = 1;
        for i in 2..=n {
            if self.spf[i] == 0 {
                self.spf[i] = i as u32;
                self.mu[i] = -1;
                self.phi[i] = i as u32 - 1;
                self.primes.push(i as u32);
            }
            let spf_i = self.spf[i];
            for &p in &self.primes {
                let j = i * p as usize;
                if p > spf_i || j > n {
                    break;
                }
                self.spf[j] = p;
                if p == spf_i {
                    self.mu[j] = 0;
                    self.phi[j] = self.phi[i] * p;
                } else {
                    self.mu[j] = -self.mu[i];
                    self.phi[j] = self.phi[i] * (p - 1);
                }
            }
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn index(&self, n: u64) -> Result<usize> {
        if n == 0 {
            Err(Error::NotPositive)
        } else if n > self.limit {
            Err(Error::BeyondSieve {
                n,
                limit: self.limit,
            })
        } else {
            Ok(n as usize)
        }
    }

    /// Smallest prime factor of `n`, or `None` for `n = 1`.
    pub fn smallest_prime_factor(&self, n: u64) -> Result<Option<u64>> {
        let i = self.index(n)?;
        Ok((i >= 2).then(|| u64::from(self.spf[i])))
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        self.index(n).map(|i| self.mu[i])
    }

    pub fn totient(&self, n: u64) -> Result<u64> {
        self.index(n).map(|i| u64::from(self.phi[i]))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        let i = self.index(n)?;
        Ok(i >= 2 && self.spf[i] as usize == i)
    }

    /// Primes up to the limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| u64::from(p))
    }

    /// μ(1), …, μ(limit).
    pub fn mobius_values(&self) -> &[i8] {
        &self.mu[1..]
    }

    /// φ(1), …, φ(limit).
    pub fn totient_values(&self) -> &[u32] {
        &self.phi[1..]
    }

    pub fn factorize(&self, n: u64) -> Result<FactorMap> {
        let mut m = self.index(n)?;
        let mut factors = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(FactorMap { factors })
    }
}

fn alloc_table<T: Default + Clone>(len: usize) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Resource(format!("sieve table of {len} entries")))?;
    v.resize(len, T::default());
    Ok(v)
}

/// Factorizes `n`, through the sieve when tables are supplied and by trial
/// division over ascending candidates otherwise.
pub fn factorize(n: Natural, tables: Option<&SieveTables>) -> Result<FactorMap> {
    match tables {
        Some(t) => t.factorize(n.get()),
        None => Ok(trial_division(n.get())),
    }
}

fn trial_division(mut n: u64) -> FactorMap {
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    // remaining candidates are 6k ± 1
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        push(&mut n, p);
        push(&mut n, p + 2);
        p += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    FactorMap { factors }
}

pub fn mobius(n: Natural) -> i8 {
    trial_division(n.get()).mobius()
}

pub fn totient(n: Natural) -> u64 {
    trial_division(n.get())
        .totient()
        .expect("totient never exceeds its argument")
}

/// lcm(1, …, n) as a product of maximal prime powers.
pub(crate) fn lcm_up_to(tables: &SieveTables, n: u64) -> num_bigint::BigUint {
    let mut acc = num_bigint::BigUint::from(1u32);
    for p in tables.primes().take_while(|&p| p <= n) {
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        acc *= pk;
    }
    acc
}
