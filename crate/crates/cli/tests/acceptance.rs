//! Acceptance criteria 1–10. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line with its runtime and bound.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use dqp_core::arith::{sign, triangular};
use dqp_core::chow::{intersection_number_fulton, intersection_number_ring, BidegreeSystem};
use dqp_core::closure::{
    default_witnesses, in_integral_closure_facets, in_integral_closure_newton,
    in_integral_closure_valuative, is_reduction, power_ideal,
};
use dqp_core::ffcount::{count_points, interpolate, odd_primes, IntPolynomial, DEFAULT_BUDGET};
use dqp_core::invariants::{
    euler_obstruction_hypersurface, euler_obstruction_sigma1, le_numbers,
    polar_multiplicities_sigma1, reduced_euler_characteristic, verify_massey_identity,
};
use dqp_core::le_engine::{det_multiplicity, generic_symmetric_det, le_number_via_chow};
use dqp_core::{DqpParams, Monomial, MonomialIdeal, NormalFormSpec};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn params(n: usize, q: usize, p: usize) -> DqpParams {
    DqpParams::new(n as i64, q as i64, p as i64).expect("valid parameters")
}

fn le_tables() -> Outcome {
    let a = le_numbers(&params(5, 3, 2));
    ensure(a.descending() == big(&[1, 4, 4, 0]), || {
        format!("(5,3,2): {:?}", a.descending())
    })?;
    let b = le_numbers(&params(9, 6, 3));
    ensure(b.descending() == big(&[1, 6, 12, 8, 0, 0, 0]), || {
        format!("(9,6,3): {:?}", b.descending())
    })?;
    ensure(
        a.fixed_cycles.len() == 2 && b.fixed_cycles.len() == 2,
        || "fixed cycles".into(),
    )?;
    Ok("λ(5,3,2) = [1,4,4,0], λ(9,6,3) = [1,6,12,8,0,0,0]".into())
}

fn engine_vs_closed_form() -> Outcome {
    let mut cases = 0;
    for p in 2..=6usize {
        let q = triangular(p);
        let table = le_numbers(&params(q + p, q, p));
        for i in 1..=p {
            let engine = le_number_via_chow(p, i).map_err(|e| format!("p={p} i={i}: {e}"))?;
            // closed form recomputed from factorials, independent of the library's binomial
            let fact = |k: usize| (1..=k).fold(BigInt::from(1), |acc, v| acc * v);
            let closed = BigInt::from(1u64 << i) * fact(p) / (fact(i) * fact(p - i));
            ensure(engine == closed && engine == table.get(q - i), || {
                format!("p={p} i={i}: engine {engine}, closed form {closed}")
            })?;
            cases += 1;
        }
    }
    ensure(cases == 20, || format!("{cases} cases"))?;
    Ok("20/20 cases".into())
}

fn massey_sweep() -> Outcome {
    let mut cases = 0;
    for p in 1..=6usize {
        for q in triangular(p)..=triangular(p) + 3 {
            for n in q + p..=q + p + 3 {
                let pr = params(n, q, p);
                ensure(verify_massey_identity(&pr), || format!("{pr:?}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter triples"))
}

fn chow_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_401);
    for case in 0..500 {
        let total = rng.gen_range(0..=12usize);
        let n = rng.gen_range(0..=total);
        let classes: Vec<(u32, u32)> = (0..total)
            .map(|_| loop {
                let c = (rng.gen_range(0..=3), rng.gen_range(0..=3));
                if c != (0, 0) {
                    break c;
                }
            })
            .collect();
        let system = BidegreeSystem::new(n, total - n, classes).map_err(|e| e.to_string())?;
        let ring = intersection_number_ring(&system).map_err(|e| e.to_string())?;
        let fulton = intersection_number_fulton(&system).map_err(|e| e.to_string())?;
        ensure(ring == fulton, || {
            format!("case {case}: {system:?}: ring {ring}, fulton {fulton}")
        })?;
    }
    Ok("500/500 systems agree".into())
}

fn euler_obstructions() -> Outcome {
    let sigma: Vec<BigInt> = (2..=8)
        .map(euler_obstruction_sigma1)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(sigma == big(&[0, 1, 0, 1, 0, 1, 0]), || {
        format!("Eu(Σ1) = {sigma:?}")
    })?;
    let mut cases = 0;
    for p in 2..=6usize {
        for q in [triangular(p), triangular(p) + 1] {
            for excess in p..=p + 2 {
                let pr = params(q + excess, q, p);
                let eu = euler_obstruction_hypersurface(&pr).map_err(|e| e.to_string())?;
                let expected = if p % 2 == 0 {
                    1 + sign(excess as i64)
                } else {
                    1
                };
                ensure(eu == BigInt::from(expected), || {
                    format!("{pr:?}: {eu} vs {expected}")
                })?;
                cases += 1;
            }
        }
    }
    ensure(
        euler_obstruction_hypersurface(&params(2, 1, 1)).is_err(),
        || "p = 1 accepted".into(),
    )?;
    Ok(format!(
        "Eu(Σ1) = (0,1,0,1,0,1,0); {cases} hypersurface cases"
    ))
}

fn polar_tables() -> Outcome {
    let two = polar_multiplicities_sigma1(2).map_err(|e| e.to_string())?;
    ensure(
        two.get(2) == BigInt::from(2)
            && two.get(1) == BigInt::from(2)
            && two.get(0) == BigInt::from(0),
        || format!("p=2: {:?}", two.entries),
    )?;
    let three = polar_multiplicities_sigma1(3).map_err(|e| e.to_string())?;
    let expected = big(&[3, 6, 4, 0, 0, 0]);
    let got: Vec<BigInt> = three.entries.values().rev().cloned().collect();
    ensure(got == expected, || format!("p=3: {got:?}"))?;
    for p in 1..=6 {
        let q = triangular(p);
        let le = le_numbers(&params(q + p, q, p));
        let polar = polar_multiplicities_sigma1(p).map_err(|e| e.to_string())?;
        for (&d, m) in &polar.entries {
            ensure(m * 2 == le.get(d), || format!("p={p} d={d}"))?;
        }
    }
    Ok("m(2) = {2,2}, m(3) = {3,6,4}, halves of Lê numbers for p ≤ 6".into())
}

fn integral_closure() -> Outcome {
    let err = |e: dqp_core::DqpError| e.to_string();
    for p in 1..=6 {
        let squares = MonomialIdeal::pure_powers(p, 2).map_err(err)?;
        let full = power_ideal(&MonomialIdeal::maximal(p).map_err(err)?, 2).map_err(err)?;
        ensure(is_reduction(&squares, &full).map_err(err)?, || {
            format!("p = {p}")
        })?;
    }
    let cubes = MonomialIdeal::pure_powers(2, 3).map_err(err)?;
    ensure(
        in_integral_closure_newton(&cubes, &Monomial::new(vec![2, 2])).map_err(err)?,
        || "x²y²".into(),
    )?;
    let squares = MonomialIdeal::pure_powers(2, 2).map_err(err)?;
    ensure(
        !in_integral_closure_newton(&squares, &Monomial::new(vec![1, 0])).map_err(err)?,
        || "y1".into(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0;
    for case in 0..200 {
        let vars = rng.gen_range(1..=4usize);
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
            .map(|_| Monomial::new((0..vars).map(|_| rng.gen_range(0..=4)).collect()))
            .collect();
        let ideal = MonomialIdeal::new(vars, gens).map_err(err)?;
        let m = Monomial::new((0..vars).map(|_| rng.gen_range(0..=5)).collect());
        let newton = in_integral_closure_newton(&ideal, &m).map_err(err)?;
        let valuative = in_integral_closure_facets(&ideal, &m).map_err(err)?;
        ensure(newton == valuative, || {
            format!("case {case}: {m} over {ideal}")
        })?;
        if newton {
            members += 1;
            let ws = default_witnesses(vars, case);
            ensure(
                in_integral_closure_valuative(&ideal, &m, &ws).map_err(err)?,
                || format!("case {case}"),
            )?;
        }
    }
    Ok(format!(
        "squares reduce m² for p ≤ 6; 200 duality cases ({members} members)"
    ))
}

fn finite_field_counts() -> Outcome {
    let cases: [(usize, usize, u64, u64); 7] = [
        (1, 0, 3, 2),
        (1, 0, 5, 4),
        (1, 0, 7, 6),
        (1, 0, 11, 10),
        (2, 0, 3, 72),
        (2, 0, 5, 600),
        (2, 1, 3, 216),
    ];
    for (p, q1, prime, expected) in cases {
        let spec = NormalFormSpec::new(p, q1).map_err(|e| e.to_string())?;
        let r = count_points(&spec, prime, 1, DEFAULT_BUDGET, 4).map_err(|e| e.to_string())?;
        ensure(r.observed_count == expected && r.agrees(), || {
            format!("p={p} q1={q1} F_{prime}: {r:?}")
        })?;
    }
    for (p, q1) in [(1, 0), (2, 0)] {
        let spec = NormalFormSpec::new(p, q1).map_err(|e| e.to_string())?;
        let samples = odd_primes(spec.n())
            .into_iter()
            .map(|l| {
                count_points(&spec, l, 1, DEFAULT_BUDGET, 4)
                    .map(|r| (BigInt::from(l), BigInt::from(r.observed_count)))
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let poly = interpolate(&samples).map_err(|e| e.to_string())?;
        ensure(poly == IntPolynomial::counting_closed_form(&spec), || {
            format!("{poly}")
        })?;
        let at_one = poly.eval(&BigInt::from(1));
        ensure(at_one == BigInt::from(0), || format!("N(1) = {at_one}"))?;
        let chi = reduced_euler_characteristic(&spec.params());
        ensure(chi == -1 && at_one - 1 == BigInt::from(chi), || {
            format!("χ̃ = {chi}")
        })?;
    }
    Ok("7 counts exact; N(t) = t − 1 and t⁴ − t² from observed counts, N(1) = 0".into())
}

fn determinant_multiplicity() -> Outcome {
    // term counts of the generic symmetric determinant: 1, 2, 5, 17, 73, 388
    let terms = [1usize, 2, 5, 17, 73, 388];
    for p in 1..=6 {
        let det = generic_symmetric_det(p).map_err(|e| e.to_string())?;
        let mult = det_multiplicity(p).map_err(|e| e.to_string())?;
        ensure(
            mult as usize == p && det.is_homogeneous_of_degree(p as u32),
            || format!("p = {p}: {mult}"),
        )?;
        ensure(det.term_count() == terms[p - 1], || {
            format!("p = {p}: {} terms", det.term_count())
        })?;
    }
    Ok("multiplicity p for p ≤ 6".into())
}

fn dqp(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dqp"))
        .args(args)
        .env_remove("DQP_BUDGET")
        .output()
        .expect("run dqp");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let first = dqp(&["verify", "--seed", "42", "--format", "json"]);
    let second = dqp(&["verify", "--seed", "42", "--format", "json"]);
    ensure(first.0 == 0, || format!("verify exited with {}", first.0))?;
    ensure(first == second, || {
        "verify --seed 42 output differs between runs".into()
    })?;
    for (p, q1, prime) in [("1", "0", "11"), ("2", "0", "5"), ("2", "1", "3")] {
        let mut seen: Option<Vec<u8>> = None;
        for jobs in ["1", "2", "8"] {
            let (code, out) = dqp(&[
                "count", "--p", p, "--q1", q1, "--prime", prime, "--jobs", jobs, "--format", "json",
            ]);
            ensure(code == 0, || format!("count exited with {code}"))?;
            let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
            ensure(v["passed"] == true, || {
                format!("p={p} q1={q1} F_{prime}: checks failed")
            })?;
            match &seen {
                None => seen = Some(out),
                Some(prev) => ensure(*prev == out, || {
                    format!("p={p} q1={q1} F_{prime}: jobs={jobs} differs")
                })?,
            }
        }
    }
    Ok(format!(
        "{} identical bytes twice; counts equal for jobs 1, 2, 8",
        first.1.len()
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            title: "Lê-number tables",
            bound: Duration::from_secs(1),
            run: le_tables,
        },
        Criterion {
            id: 2,
            title: "engine vs closed form",
            bound: Duration::from_secs(5),
            run: engine_vs_closed_form,
        },
        Criterion {
            id: 3,
            title: "Massey identity",
            bound: Duration::from_secs(5),
            run: massey_sweep,
        },
        Criterion {
            id: 4,
            title: "Chow oracle equivalence",
            bound: Duration::from_secs(10),
            run: chow_oracles,
        },
        Criterion {
            id: 5,
            title: "Euler obstructions",
            bound: Duration::from_secs(1),
            run: euler_obstructions,
        },
        Criterion {
            id: 6,
            title: "polar multiplicities",
            bound: Duration::from_secs(1),
            run: polar_tables,
        },
        Criterion {
            id: 7,
            title: "integral closure",
            bound: Duration::from_secs(10),
            run: integral_closure,
        },
        Criterion {
            id: 8,
            title: "finite-field counts",
            bound: Duration::from_secs(30),
            run: finite_field_counts,
        },
        Criterion {
            id: 9,
            title: "determinant multiplicity",
            bound: Duration::from_secs(5),
            run: determinant_multiplicity,
        },
        Criterion {
            id: 10,
            title: "determinism",
            bound: Duration::from_secs(60),
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.bound => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {:<26} {:>8.3}s ≤ {:>2}s  {}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.bound.as_secs(),
            detail
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
