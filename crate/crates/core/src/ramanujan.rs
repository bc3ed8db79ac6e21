//! Ramanujan sums c_q(n) = Σ_{1≤a≤q, (a,q)=1} exp(2πi·a·n/q).
//!
//! Three independent routes are provided: Hölder's closed form (the one the
//! identity engine uses), the divisor form Σ_{d | (q,n)} d·μ(q/d), and a
//! direct floating-point exponential sum.

use alloc::format;
use core::f64::consts::TAU;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{factorize, gcd_u64, FactorMap, SieveTables};
use crate::error::{Error, Result};
use crate::float::CompensatedSum;
use crate::natural::Natural;

/// Largest modulus accepted by [`ramanujan_direct`].
pub const DIRECT_MAX_MODULUS: u64 = 1_000_000;

/// An exact Ramanujan sum value, bounded in magnitude by φ(q).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamanujanValue(BigInt);

impl RamanujanValue {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

impl fmt::Display for RamanujanValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Hölder's closed form μ(q/(q,n))·φ(q)/φ(q/(q,n)).
pub fn ramanujan_holder(q: Natural, n: Natural) -> Result<RamanujanValue> {
    let g = gcd_u64(q.get(), n.get());
    let reduced = q.get() / g;
    let fq = factorize(q, None)?;
    let fr = factorize(Natural::new(reduced)?, None)?;
    holder_from_parts(fr.mobius(), fq.totient()?, fr.totient()?)
        .map(|c| RamanujanValue(BigInt::from(c)))
}

/// Hölder's form reading μ and φ from sieve tables; both `q` and `n` may be
/// anything, only `q` has to lie within the tables.
pub fn ramanujan_holder_with(tables: &SieveTables, q: u64, n: u64) -> Result<RamanujanValue> {
    holder_coefficient(tables, q, n).map(|c| RamanujanValue(BigInt::from(c)))
}

/// Machine-integer Hölder coefficient used in the hot loops.
#[inline]
pub(crate) fn holder_coefficient(tables: &SieveTables, q: u64, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::NotPositive);
    }
    let reduced = q / gcd_u64(q, n);
    let mu = tables.mobius(reduced)?;
    if mu == 0 {
        return Ok(0);
    }
    holder_from_parts(mu, tables.totient(q)?, tables.totient(reduced)?)
}

fn holder_from_parts(mu: i8, phi_q: u64, phi_reduced: u64) -> Result<i64> {
    if mu == 0 {
        return Ok(0);
    }
    if !phi_q.is_multiple_of(phi_reduced) {
        return Err(Error::Invariant(format!(
            "φ(q) = {phi_q} is not divisible by φ(q/(q,n)) = {phi_reduced}"
        )));
    }
    let ratio = i64::try_from(phi_q / phi_reduced).map_err(|_| Error::Overflow("ramanujan sum"))?;
    Ok(i64::from(mu) * ratio)
}

/// Σ_{d | (q,n)} d·μ(q/d), enumerated over the divisors of the gcd.
pub fn ramanujan_divisor_form(q: Natural, n: Natural) -> Result<RamanujanValue> {
    let g = gcd_u64(q.get(), n.get());
    let divisors = factorize(Natural::new(g)?, None)?.divisors()?;
    let mut acc = BigInt::from(0);
    for d in divisors {
        let mu = factorize(Natural::new(q.get() / d)?, None)?.mobius();
        if mu != 0 {
            acc += BigInt::from(d) * i32::from(mu);
        }
    }
    Ok(RamanujanValue(acc))
}

/// Direct exponential sum returned as `(re, im)`.
///
/// The phase `a·n mod q` is reduced exactly before scaling so the float error
/// depends on `q` only.
pub fn ramanujan_direct(q: Natural, n: Natural) -> Result<(f64, f64)> {
    let q = q.get();
    if q > DIRECT_MAX_MODULUS {
        return Err(Error::Resource(format!(
            "direct Ramanujan sum with modulus {q} (cap {DIRECT_MAX_MODULUS})"
        )));
    }
    let n_mod = n.get() % q;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for a in (1..=q).filter(|&a| gcd_u64(a, q) == 1) {
        let phase = (u128::from(a) * u128::from(n_mod) % u128::from(q)) as f64 / q as f64;
        let angle = TAU * phase;
        re.add(libm::cos(angle));
        im.add(libm::sin(angle));
    }
    Ok((re.value(), im.value()))
}

/// Checks |c| ≤ φ(q) for a computed value.
pub fn within_totient_bound(value: &RamanujanValue, q: &FactorMap) -> Result<bool> {
    Ok(value.0.abs() <= BigInt::from(q.totient()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    fn nat(v: u64) -> Natural {
        Natural::new(v).unwrap()
    }

    fn holder(q: u64, n: u64) -> i64 {
        ramanujan_holder(nat(q), nat(n))
            .unwrap()
            .value()
            .try_into()
            .unwrap()
    }

    fn divisor_form(q: u64, n: u64) -> i64 {
        ramanujan_divisor_form(nat(q), nat(n))
            .unwrap()
            .value()
            .try_into()
            .unwrap()
    }

    #[test]
    fn holder_examples() {
        assert_eq!(holder(6, 12), 2);
        assert_eq!(holder(4, 1), 0);
        assert_eq!(holder(6, 4), -1);
    }

    #[test]
    fn divisor_form_examples() {
        assert_eq!(divisor_form(6, 4), -1);
        assert_eq!(divisor_form(9, 3), -3);
        assert_eq!(divisor_form(1, 1), 1);
    }

    #[test]
    fn direct_examples() {
        let close = |(re, im): (f64, f64), want: f64| {
            assert!((re - want).abs() < 1e-12 && im.abs() < 1e-12, "{re} {im}");
        };
        close(ramanujan_direct(nat(1), nat(7)).unwrap(), 1.0);
        close(ramanujan_direct(nat(5), nat(5)).unwrap(), 4.0);
        close(ramanujan_direct(nat(6), nat(1)).unwrap(), 1.0);
        close(ramanujan_direct(nat(6), nat(4)).unwrap(), -1.0);
    }

    #[test]
    fn direct_guard() {
        assert!(matches!(
            ramanujan_direct(nat(DIRECT_MAX_MODULUS + 1), nat(1)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn table_route_matches_single_value_route() {
        let t = build_sieve(nat(120)).unwrap();
        for q in 1..=120 {
            for n in 1..=60 {
                assert_eq!(
                    ramanujan_holder_with(&t, q, n).unwrap(),
                    ramanujan_holder(nat(q), nat(n)).unwrap()
                );
            }
        }
        assert!(matches!(
            ramanujan_holder_with(&t, 121, 1),
            Err(Error::BeyondSieve { .. })
        ));
    }

    #[test]
    fn broken_totients_are_flagged() {
        assert!(matches!(
            holder_from_parts(1, 6, 4),
            Err(Error::Invariant(_))
        ));
    }
}
