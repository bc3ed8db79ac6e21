//! Acceptance gate. Runs every criterion at its pinned tolerance, prints one
//! PASS/FAIL line per criterion and exits non-zero if any failed.

use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;

use divsum_core::applications::{
    divisor_count_rational, kronecker_delta, lagarias_sweep, residual_within, robin_check,
    robin_sweep, sigma_series_partial_with, zero_identity_residual,
};
use divsum_core::{
    build_sieve, ramanujan_direct, ramanujan_divisor_form, ramanujan_holder_with, BigInt,
    BigRational, Engine, GSpec, Method, Natural, SieveTables,
};

const IDENTITY_MAX_N: u64 = 2000;
const RAMANUJAN_MAX: u64 = 300;
const DIRECT_TOLERANCE: f64 = 1e-6;
const RESIDUAL_MAX_N: u64 = 500;
const RESIDUAL_TOLERANCE: f64 = 1e-8;
const SERIES_TERMS: u64 = 20_000;
const SERIES_MAX_N: u64 = 50;
const SERIES_RELATIVE_ERROR: f64 = 0.01;
const ROBIN_END: u64 = 100_000;
const LAGARIAS_END: u64 = 10_000;

fn nat(v: u64) -> Natural {
    Natural::new(v).unwrap()
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named_gs() -> Vec<(&'static str, GSpec)> {
    vec![
        ("power(0)", GSpec::power(0.0)),
        ("power(1)", GSpec::power(1.0)),
        ("power(2)", GSpec::power(2.0)),
        ("mobius", GSpec::mobius()),
    ]
}

fn main_theorem(engine: &Engine) -> Outcome {
    let mut checked = 0usize;
    for (name, g) in named_gs() {
        let failures: Vec<u64> = (1..=IDENTITY_MAX_N)
            .into_par_iter()
            .filter(|&n| {
                let v = engine.eval_identity(nat(n), &g, Method::Holder).unwrap();
                v != engine.divisor_sum_oracle(nat(n), &g).unwrap()
            })
            .collect();
        ensure(failures.is_empty(), || {
            format!("{name}: mismatch at n = {failures:?}")
        })?;
        checked += IDENTITY_MAX_N as usize;
    }
    Ok(format!(
        "{checked} exact evaluations equal their divisor sums"
    ))
}

fn form_agreement(engine: &Engine) -> Outcome {
    let mut checked = 0usize;
    for (name, g) in named_gs() {
        let failures: Vec<u64> = (1..=IDENTITY_MAX_N)
            .into_par_iter()
            .filter(|&n| {
                engine
                    .eval_identity(nat(n), &g, Method::RamanujanSum)
                    .unwrap()
                    != engine.eval_identity(nat(n), &g, Method::Holder).unwrap()
            })
            .collect();
        ensure(failures.is_empty(), || {
            format!("{name}: eq8 != eq9 at n = {failures:?}")
        })?;
        checked += IDENTITY_MAX_N as usize;
    }
    Ok(format!("{checked} exact eq8/eq9 pairs identical"))
}

fn ramanujan_three_way(tables: &SieveTables) -> Outcome {
    let worst = (1..=RAMANUJAN_MAX)
        .into_par_iter()
        .map(|q| {
            let mut worst = 0.0f64;
            for n in 1..=RAMANUJAN_MAX {
                let h = ramanujan_holder_with(tables, q, n).unwrap();
                let d = ramanujan_divisor_form(nat(q), nat(n)).unwrap();
                ensure(h == d, || {
                    format!("holder {h} != divisor form {d} at ({q}, {n})")
                })?;
                let (re, im) = ramanujan_direct(nat(q), nat(n)).unwrap();
                let exact = i64::try_from(h.value()).unwrap() as f64;
                let err = (re - exact).abs().max(im.abs());
                ensure(err <= DIRECT_TOLERANCE, || {
                    format!("direct sum ({re}, {im}) vs {exact} at ({q}, {n})")
                })?;
                worst = worst.max(err);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>, String>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(format!("90000 pairs, max float deviation {worst:.2e}"))
}

fn special_cases(tables: &SieveTables) -> Outcome {
    for q in 1..=IDENTITY_MAX_N {
        let c = ramanujan_holder_with(tables, q, 1).unwrap();
        let mu = BigInt::from(tables.mobius(q).unwrap());
        ensure(*c.value() == mu, || format!("c_{q}(1) = {c}, μ = {mu}"))?;
    }
    for q in 1..=RAMANUJAN_MAX {
        let phi = BigInt::from(tables.totient(q).unwrap());
        for m in 1..=RAMANUJAN_MAX / q {
            let c = ramanujan_holder_with(tables, q, q * m).unwrap();
            ensure(*c.value() == phi, || {
                format!("c_{q}({}) = {c}, φ = {phi}", q * m)
            })?;
        }
        for n in 1..=RAMANUJAN_MAX {
            let c = ramanujan_holder_with(tables, q, n).unwrap();
            ensure(c.value() <= &phi && -c.value() <= phi, || {
                format!("|c_{q}({n})| = |{c}| > φ = {phi}")
            })?;
        }
    }
    Ok("c_q(1) = μ(q), c_q(qm) = φ(q), |c_q(n)| ≤ φ(q)".into())
}

fn divisor_count_integrality(engine: &Engine) -> Outcome {
    let failures: Vec<u64> = (1..=IDENTITY_MAX_N)
        .into_par_iter()
        .filter(|&n| {
            let r = divisor_count_rational(engine, nat(n), Method::Holder).unwrap();
            let count = engine
                .tables()
                .factorize(n)
                .unwrap()
                .divisor_count()
                .unwrap();
            r != BigRational::from_integer(BigInt::from(count))
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("non-integral or wrong at n = {failures:?}")
    })?;
    Ok(format!(
        "{IDENTITY_MAX_N} values are the exact divisor counts"
    ))
}

fn zero_identity(engine: &Engine) -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=RESIDUAL_MAX_N {
        let r = zero_identity_residual(engine, nat(n)).unwrap();
        ensure(r.exact.is_zero(), || {
            format!("n = {n}: exact residual {}", r.exact)
        })?;
        ensure(
            residual_within(engine, nat(n), r.float, RESIDUAL_TOLERANCE).unwrap(),
            || format!("n = {n}: float residual {:e}", r.float),
        )?;
        worst = worst.max(r.float.abs());
    }
    Ok(format!(
        "exact vectors all zero, max |float residual| {worst:.2e}"
    ))
}

fn kronecker(engine: &Engine) -> Outcome {
    ensure(kronecker_delta(engine, nat(1)) == Ok(1), || {
        "δ(1) != 1".into()
    })?;
    let failures: Vec<u64> = (2..=IDENTITY_MAX_N)
        .into_par_iter()
        .filter(|&n| kronecker_delta(engine, nat(n)) != Ok(0))
        .collect();
    ensure(failures.is_empty(), || format!("δ(n) != 0 at {failures:?}"))?;
    Ok("δ(1) = 1 and δ(n) = 0 for 2 ≤ n ≤ 2000, exactly".into())
}

fn series(engine: &Engine) -> Outcome {
    let tables = build_sieve(nat(SERIES_TERMS)).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=SERIES_MAX_N {
        let partial = sigma_series_partial_with(&tables, nat(n), nat(SERIES_TERMS)).unwrap();
        let exact = engine
            .tables()
            .factorize(n)
            .unwrap()
            .divisor_power_sum(1)
            .unwrap() as f64;
        let rel = (partial - exact).abs() / exact;
        ensure(rel <= SERIES_RELATIVE_ERROR, || {
            format!(
                "n = {n}: partial {partial} vs σ = {exact} ({:.3}%)",
                rel * 100.0
            )
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("worst relative error {:.4}%", worst * 100.0))
}

fn inequalities() -> Outcome {
    let boundary = robin_check(nat(5040)).unwrap();
    ensure(!boundary.holds, || {
        format!("Robin holds at 5040: {boundary:?}")
    })?;
    let robin = robin_sweep(nat(5041), nat(ROBIN_END)).unwrap();
    let violations: Vec<u64> = robin.iter().filter(|c| !c.holds).map(|c| c.n).collect();
    ensure(violations.is_empty(), || {
        format!("Robin fails at {violations:?}")
    })?;
    let lagarias = lagarias_sweep(nat(2), nat(LAGARIAS_END)).unwrap();
    let violations: Vec<u64> = lagarias.iter().filter(|c| !c.holds).map(|c| c.n).collect();
    ensure(violations.is_empty(), || {
        format!("Lagarias fails at {violations:?}")
    })?;
    Ok(format!(
        "Robin fails at 5040 (σ = {}, bound {:.1}), holds on 5041..{ROBIN_END}; Lagarias holds on 2..{LAGARIAS_END}",
        boundary.sigma, boundary.bound
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_divsum"))
        .args(args)
        .output()
        .expect("spawn divsum");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn cli_contract() -> Outcome {
    let (code, out) = cli(&["compute", "sigma", "--n", "6", "--method", "eq9"]);
    ensure(code == 0 && out.trim() == "sigma(6) = 12", || {
        format!("compute: exit {code}, output {out:?}")
    })?;

    let (code, out) = cli(&[
        "verify", "--g", "power:1", "--range", "1..2000", "--method", "eq9", "--format", "json",
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&out).map_err(|e| format!("verify: bad JSON ({e})"))?;
    let summary = &doc["summary"];
    ensure(
        code == 0 && summary["checked"] == 2000 && summary["mismatches"] == 0,
        || format!("verify: exit {code}, summary {summary}"),
    )?;

    let (code, out) = cli(&["check", "robin", "--range", "5041..100000"]);
    ensure(
        code == 0 && out.lines().any(|l| l.trim() == "violations: 0"),
        || format!("check: exit {code}, output {out:?}"),
    )?;
    Ok("compute, verify and check produce the stated outputs with exit 0".into())
}

fn main() {
    let engine = Engine::new(nat(IDENTITY_MAX_N)).unwrap();
    let tables = engine.tables().clone();
    let criteria: Vec<Criterion> = vec![
        (
            "1. main theorem sweep (exact, n ≤ 2000)",
            Box::new(|| main_theorem(&engine)),
        ),
        (
            "2. eq8 / eq9 agreement",
            Box::new(|| form_agreement(&engine)),
        ),
        (
            "3. Ramanujan three-way agreement",
            Box::new(|| ramanujan_three_way(&tables)),
        ),
        (
            "4. Ramanujan special cases",
            Box::new(|| special_cases(&tables)),
        ),
        (
            "5. d(n) integrality",
            Box::new(|| divisor_count_integrality(&engine)),
        ),
        ("6. zero identity", Box::new(|| zero_identity(&engine))),
        ("7. Kronecker delta", Box::new(|| kronecker(&engine))),
        ("8. σ series convergence", Box::new(|| series(&engine))),
        ("9. Robin / Lagarias", Box::new(inequalities)),
        ("10. CLI contract", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{secs:.1}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
