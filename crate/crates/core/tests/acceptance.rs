//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{akiyama_tanigawa, odd_primes_upto, power_sum, primes_upto, rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use primecong::bernoulli::{
    bernoulli_polynomial, faulhaber_sum, reflection_check, von_staudt_clausen_check, BernoulliCache,
};
use primecong::congruences::{
    sweep, verify_glaisher, verify_sun_p3, verify_wolstenholme, RPolicy, SweepOptions, TheoremId,
};
use primecong::primes::PrimeRange;
use primecong::primesums::{
    bernoulli_endpoint_quotient, cube_root_sum, cube_root_sum_closed, grid_sum, grid_sum_closed,
    s1_s2_s3_closed, s_q_closed_binomial, s_q_closed_polynomial, s_q_sum, t_sum,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int_rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn sweep_failures(
    theorems: &[TheoremId],
    lo: u64,
    hi: u64,
    cache: &BernoulliCache,
) -> Result<(usize, Vec<String>), String> {
    let range = PrimeRange::new(lo, hi).map_err(|e| e.to_string())?;
    let options = SweepOptions {
        r_policy: RPolicy::AllValid,
        explore_p2: false,
    };
    let report = sweep(theorems, &range, &options, cache).map_err(|e| e.to_string())?;
    let failed = report
        .verdicts
        .iter()
        .filter(|v| !v.pass)
        .map(ToString::to_string)
        .collect();
    Ok((report.verdicts.len(), failed))
}

fn worked_examples() -> Check {
    for (p, t, residue) in [(3u64, 2i64, 2u64), (5, 258, 3), (7, 53820, 4)] {
        let value = t_sum(p).map_err(|e| e.to_string())?;
        ensure(value == BigInt::from(t), || {
            format!("T({p}) = {value}, expected {t}")
        })?;
        ensure(&value % p == BigInt::from(residue), || {
            format!("T({p}) mod {p} != {residue}")
        })?;
        ensure(p.div_ceil(2) == residue, || {
            format!("(p+1)/2 != {residue} at p={p}")
        })?;
        let v = primecong::congruences::verify_eq_un(p).map_err(|e| e.to_string())?;
        ensure(v.pass && v.lhs_residue == Some(residue), || v.to_string())?;
    }
    Ok(())
}

fn triple_agreement(cache: &BernoulliCache) -> Check {
    for p in primes_upto(60) {
        let p_big = BigInt::from(p);
        for q in 1..=3 {
            let brute = int_rat(s_q_sum(p, q).map_err(|e| e.to_string())?);
            let forms = [
                s_q_closed_binomial(&p_big, q, cache),
                s_q_closed_polynomial(&p_big, q, cache),
                s1_s2_s3_closed(&p_big, q),
            ];
            for form in forms {
                let value = form.map_err(|e| e.to_string())?;
                ensure(value == brute && value.is_integer(), || {
                    format!("p={p} q={q}: closed {value} vs brute {brute}")
                })?;
            }
        }
    }
    Ok(())
}

fn theorem1_sweep(cache: &BernoulliCache) -> Check {
    let (count, failed) = sweep_failures(&[TheoremId::Theorem1], 3, 100, cache)?;
    let expected: u64 = odd_primes_upto(100).iter().map(|p| p - 1).sum();
    ensure(count as u64 == expected, || {
        format!("{count} cells, expected {expected}")
    })?;
    ensure(failed.is_empty(), || format!("failing cells: {failed:?}"))
}

fn theorem2_sweep(cache: &BernoulliCache) -> Check {
    let quotient =
        bernoulli_endpoint_quotient(&BigInt::from(3), cache).map_err(|e| e.to_string())?;
    ensure(quotient == rat(15), || {
        format!("p=3 LHS {quotient}, expected 15")
    })?;
    let v3 = primecong::congruences::verify_theorem2(3, cache).map_err(|e| e.to_string())?;
    ensure(
        v3.pass && v3.lhs_residue == Some(0) && v3.rhs_residue == Some(0),
        || v3.to_string(),
    )?;
    let (count, failed) = sweep_failures(&[TheoremId::Theorem2], 3, 100, cache)?;
    ensure(count == odd_primes_upto(100).len(), || {
        format!("{count} verdicts")
    })?;
    ensure(failed.is_empty(), || format!("failing: {failed:?}"))
}

fn intro_identities() -> Check {
    for p in odd_primes_upto(200) {
        let p_big = BigInt::from(p);
        let (g, gc) = (int_rat(grid_sum(p)), grid_sum_closed(&p_big));
        ensure(g == gc, || format!("grid p={p}: {g} vs {gc}"))?;
        let (c, cc) = (int_rat(cube_root_sum(p)), cube_root_sum_closed(&p_big));
        ensure(c == cc, || format!("cube root p={p}: {c} vs {cc}"))?;
    }
    Ok(())
}

fn classical_congruences(cache: &BernoulliCache) -> Check {
    let g5 = verify_glaisher(5, cache).map_err(|e| e.to_string())?;
    ensure(
        g5.pass && g5.lhs_residue == Some(24) && g5.modulus == 25,
        || g5.to_string(),
    )?;
    let s5 = verify_sun_p3(5, cache).map_err(|e| e.to_string())?;
    ensure(
        s5.pass && s5.rhs_residue == Some(24) && s5.modulus == 125,
        || s5.to_string(),
    )?;
    let (_, failed) = sweep_failures(
        &[
            TheoremId::GlaisherP2,
            TheoremId::SunP3,
            TheoremId::WolstenholmeP3,
        ],
        5,
        50,
        cache,
    )?;
    ensure(failed.is_empty(), || format!("failing: {failed:?}"))?;
    let w3 = verify_wolstenholme(3).map_err(|e| e.to_string())?;
    ensure(
        !w3.pass && w3.note.as_deref().is_some_and(|n| n.contains("p >= 5")),
        || format!("p=3 should fail with a hypothesis note: {w3}"),
    )
}

fn bernoulli_engine(cache: &BernoulliCache) -> Check {
    for (n, expected) in akiyama_tanigawa(60).iter().enumerate() {
        let got = cache.number(n);
        ensure(&got == expected, || {
            format!("B_{n}: {got} vs oracle {expected}")
        })?;
    }
    for n in (2..=60).step_by(2) {
        ensure(von_staudt_clausen_check(n, cache).unwrap_or(false), || {
            format!("von Staudt-Clausen n={n}")
        })?;
    }
    for n in 1..=12u32 {
        for r in 1..=50u64 {
            let v =
                faulhaber_sum(n as usize, &BigInt::from(r), cache).map_err(|e| e.to_string())?;
            ensure(v.is_integer() && v.numer() == &power_sum(n, r), || {
                format!("faulhaber n={n} r={r}: {v}")
            })?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let x = BigRational::new(
            rng.random_range(-5000i64..5000).into(),
            rng.random_range(1i64..300).into(),
        );
        let n = rng.random_range(1usize..=10);
        let diff =
            bernoulli_polynomial(n, &(&x + rat(1)), cache) - bernoulli_polynomial(n, &x, cache);
        ensure(diff == rat(n as i64) * x.pow(n as i32 - 1), || {
            format!("forward difference n={n} x={x}")
        })?;
        let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
        ensure(
            bernoulli_polynomial(n, &(rat(1) - &x), cache)
                == sign * bernoulli_polynomial(n, &x, cache),
            || format!("reflection n={n} x={x}"),
        )?;
        let even = 2 * rng.random_range(1usize..=5);
        ensure(reflection_check(even, &x, cache).unwrap_or(false), || {
            format!("B_{even}(-x) = B_{even}(x+1) at {x}")
        })?;
    }
    Ok(())
}

fn determinism() -> Check {
    for format in ["csv", "json"] {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_primecong"))
                .args([
                    "sweep",
                    "--theorems",
                    "all",
                    "--pmin",
                    "2",
                    "--pmax",
                    "60",
                    "--format",
                    format,
                    "--timestamp",
                    "2000-01-01T00:00:00Z",
                ])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success() && b.status.success(), || {
            format!("{format} sweep exited with failure")
        })?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
            format!("{format} outputs differ")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cache = BernoulliCache::new();
    let criteria: Vec<Criterion> = vec![
        (
            "1 worked examples T(3), T(5), T(7)",
            Duration::from_secs(1),
            Box::new(worked_examples),
        ),
        (
            "2 closed-form triple agreement p <= 60",
            Duration::from_secs(30),
            Box::new(|| triple_agreement(&cache)),
        ),
        (
            "3 theorem1 sweep p <= 100, all r",
            Duration::from_secs(300),
            Box::new(|| theorem1_sweep(&cache)),
        ),
        (
            "4 theorem2 sweep p <= 100",
            Duration::from_secs(60),
            Box::new(|| theorem2_sweep(&cache)),
        ),
        (
            "5 grid and cube-root identities 3 <= p <= 200",
            Duration::from_secs(60),
            Box::new(intro_identities),
        ),
        (
            "6 Glaisher, Sun, Wolstenholme 5 <= p <= 50",
            Duration::from_secs(10),
            Box::new(|| classical_congruences(&cache)),
        ),
        (
            "7 Bernoulli engine properties",
            Duration::from_secs(600),
            Box::new(|| bernoulli_engine(&cache)),
        ),
        (
            "8 deterministic sweep output",
            Duration::from_secs(600),
            Box::new(determinism),
        ),
    ];
    let mut failures = 0;
    for (name, limit, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= *limit, || {
                format!("took {elapsed:.2?}, limit {limit:?}")
            })
        });
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    println!("{} criteria, {failures} failed", criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
