//! Exact evaluation and verification of the finite Ramanujan-sum identity
//!
//! ```text
//! f(n) = Σ_{d|n} g(d) = Σ_{k=1}^{n} μ(k/(n,k))·φ(k)/φ(k/(n,k)) · Σ_{l=1}^{⌊n/k⌋} g(kl)/(kl)
//! ```
//!
//! together with the sieves, Ramanujan-sum routines and specializations
//! (σ_γ, d, σ, the product of divisors, the Kronecker delta) built on it.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod applications;
pub mod arith;
pub mod engine;
mod error;
pub mod float;
pub mod harmonic;
pub mod logvec;
mod natural;
pub mod ramanujan;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use arith::{build_sieve, factorize, gcd, mobius, totient, FactorMap, SieveTables};
pub use engine::{
    divisor_sum_oracle, eval_identity, verify_range, Clock, CustomFn, Domain, Engine, EvalReport,
    GKind, GSpec, Method, NoClock, Value, Verification,
};
pub use error::{Error, Result};
pub use harmonic::HarmonicTable;
pub use logvec::LogCoeffVector;
pub use natural::Natural;
pub use ramanujan::{
    ramanujan_direct, ramanujan_divisor_form, ramanujan_holder, ramanujan_holder_with,
    RamanujanValue,
};
