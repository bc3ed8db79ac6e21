use divsum_core::{
    build_sieve, factorize, gcd, ramanujan_direct, ramanujan_divisor_form, ramanujan_holder,
    ramanujan_holder_with, BigInt, Natural,
};
use proptest::prelude::*;

fn nat(v: u64) -> Natural {
    Natural::new(v).unwrap()
}

#[test]
fn depends_on_n_only_through_the_gcd() {
    let t = build_sieve(nat(300)).unwrap();
    // bucket c_q(n) by (q, gcd(q, n)) and require one value per bucket
    for q in 1..=300u64 {
        let mut seen = std::collections::HashMap::new();
        for n in 1..=300u64 {
            let g = gcd(nat(q), nat(n)).get();
            let c = ramanujan_holder_with(&t, q, n).unwrap();
            let first = seen.entry(g).or_insert_with(|| c.clone());
            assert_eq!(*first, c, "q = {q}, n = {n}");
        }
    }
}

#[test]
fn bounded_by_totient() {
    let t = build_sieve(nat(300)).unwrap();
    for q in 1..=300u64 {
        let phi = BigInt::from(t.totient(q).unwrap());
        for n in 1..=300u64 {
            let c = ramanujan_holder_with(&t, q, n).unwrap();
            assert!(c.value() <= &phi && -c.value() <= phi);
        }
    }
}

proptest! {
    #[test]
    fn three_routes_agree(q in 1u64..2_000, n in 1u64..1_000_000) {
        let h = ramanujan_holder(nat(q), nat(n)).unwrap();
        prop_assert_eq!(&h, &ramanujan_divisor_form(nat(q), nat(n)).unwrap());
        let (re, im) = ramanujan_direct(nat(q), nat(n)).unwrap();
        let want: f64 = h.value().try_into().map(|v: i64| v as f64).unwrap();
        prop_assert!((re - want).abs() <= 1e-6, "{re} vs {want}");
        prop_assert!(im.abs() <= 1e-6);
    }

    #[test]
    fn multiple_of_modulus_gives_totient(q in 1u64..5_000, m in 1u64..1_000) {
        let c = ramanujan_holder(nat(q), nat(q * m)).unwrap();
        let phi = factorize(nat(q), None).unwrap().totient().unwrap();
        prop_assert_eq!(c.value(), &BigInt::from(phi));
    }
}
