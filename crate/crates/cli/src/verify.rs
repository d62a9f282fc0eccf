//! Seeded verification suites behind `dqp verify`.
//!
//! Every suite draws from its own ChaCha stream derived from the seed, so a
//! fixed seed gives the same cases and the same report on every run.

use dqp_core::arith::{binomial, pow2, sign, triangular};
use dqp_core::chow::{intersection_number_fulton, intersection_number_ring, BidegreeSystem};
use dqp_core::closure::{
    default_witnesses, in_integral_closure_facets, in_integral_closure_newton,
    in_integral_closure_valuative, is_reduction, power_ideal, reduction_generator_count,
};
use dqp_core::ffcount::{
    count_points, interpolate, odd_primes, reduced_euler_from_count, IntPolynomial,
};
use dqp_core::invariants::{
    euler_obstruction_hypersurface, euler_obstruction_sigma1, le_numbers,
    polar_multiplicities_sigma1, reduced_euler_characteristic, verify_massey_identity,
};
use dqp_core::le_engine::{det_multiplicity, le_closed_form, le_number_via_chow, MAX_DET_SIZE};
use dqp_core::{DqpParams, Monomial, MonomialIdeal, NormalFormSpec};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::args::{Scope, VerifyArgs};
use crate::error::CliError;
use crate::report::Report;

pub const MAX_PMAX: usize = 8;
pub const CHOW_CASES: usize = 500;
pub const DUALITY_CASES: usize = 200;
/// Counts the suite enumerates: `(p, q1, prime, expected)`.
pub const COUNT_CASES: [(usize, usize, u64, u64); 7] = [
    (1, 0, 3, 2),
    (1, 0, 5, 4),
    (1, 0, 7, 6),
    (1, 0, 11, 10),
    (2, 0, 3, 72),
    (2, 0, 5, 600),
    (2, 1, 3, 216),
];

/// Cases run and the first failure, per property.
struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn record_result<T>(&mut self, outcome: Result<bool, T>, describe: impl FnOnce() -> String)
    where
        T: std::fmt::Display,
    {
        match outcome {
            Ok(ok) => self.record(ok, describe),
            Err(e) => {
                let msg = format!("{}: {e}", describe());
                self.record(false, || msg);
            }
        }
    }

    fn finish(self, r: &mut Report, suite: &str, summary: &mut Map<String, Value>) {
        summary.insert(self.name.to_string(), self.cases.into());
        let detail = match &self.failure {
            None => format!("{} cases", self.cases),
            Some(f) => format!("first failure of {} cases: {f}", self.cases),
        };
        r.check(
            &format!("{suite}: {}", self.name),
            self.failure.is_none(),
            detail,
        );
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    if !(1..=MAX_PMAX).contains(&args.pmax) {
        return Err(CliError::Validation(format!(
            "--pmax must satisfy 1 ≤ pmax ≤ {MAX_PMAX} (got {})",
            args.pmax
        )));
    }
    let mut r = Report::new("verify");
    r.input("scope", format!("{:?}", args.scope).to_lowercase());
    r.input("pmax", args.pmax);
    r.input("seed", args.seed);
    let run = |s: Scope| args.scope == Scope::All || args.scope == s;
    let mut suites = Map::new();
    if run(Scope::Core) {
        let s = r.timed("core", |r| core_suite(r, args.pmax));
        suites.insert("core".into(), Value::Object(s));
    }
    if run(Scope::Chow) {
        let s = r.timed("chow", |r| chow_suite(r, args.pmax, args.seed));
        suites.insert("chow".into(), Value::Object(s));
    }
    if run(Scope::Closure) {
        let s = r.timed("closure", |r| closure_suite(r, args.pmax, args.seed));
        suites.insert("closure".into(), Value::Object(s));
    }
    if run(Scope::Ffcount) {
        let s = r.timed("ffcount", ffcount_suite);
        suites.insert("ffcount".into(), Value::Object(s));
    }
    r.result("suites", Value::Object(suites));
    let total = r.checks.len();
    let passed = r.checks.iter().filter(|c| c.passed).count();
    r.result("checks_passed", passed);
    r.result("checks_total", total);
    Ok(r)
}

fn params_sweep(pmax: usize) -> Vec<DqpParams> {
    let mut out = Vec::new();
    for p in 1..=pmax {
        for q1 in 0..=3 {
            for k in 0..=3 {
                let q = triangular(p) + q1;
                out.push(
                    DqpParams::new((q + p + k) as i64, q as i64, p as i64)
                        .expect("valid by construction"),
                );
            }
        }
    }
    out
}

fn core_suite(r: &mut Report, pmax: usize) -> Map<String, Value> {
    let mut summary = Map::new();

    let mut tables = Tally::new("le_numbers_known_tables");
    let known: [(i64, i64, i64, &[i64]); 3] = [
        (5, 3, 2, &[1, 4, 4, 0]),
        (9, 6, 3, &[1, 6, 12, 8, 0, 0, 0]),
        (2, 1, 1, &[1, 2]),
    ];
    for (n, q, p, expected) in known {
        let got = le_numbers(&DqpParams::new(n, q, p).expect("valid"));
        let expected: Vec<BigInt> = expected.iter().map(|&v| BigInt::from(v)).collect();
        tables.record(got.descending() == expected, || {
            format!("(n,q,p) = ({n},{q},{p})")
        });
    }
    tables.finish(r, "core", &mut summary);

    let mut closed = Tally::new("le_numbers_binomial_pattern");
    let mut massey = Tally::new("massey_identity");
    let mut shift = Tally::new("inert_coordinate_shift");
    for params in params_sweep(pmax) {
        let (q, p) = (params.q(), params.p());
        let table = le_numbers(&params);
        let pattern = (0..=q).all(|d| {
            let expected = match q - d {
                i if i <= p => pow2(i as u64) * binomial(p as u64, (p - i) as u64),
                _ => BigInt::from(0),
            };
            table.get(d) == expected
        });
        closed.record(pattern && table.fixed_cycles.len() == 2, || {
            format!("{params:?}")
        });
        massey.record(verify_massey_identity(&params), || format!("{params:?}"));
        let shifted = le_numbers(
            &DqpParams::new(params.n() as i64 + 1, q as i64 + 1, p as i64).expect("valid"),
        );
        shift.record((0..=q).all(|d| table.get(d) == shifted.get(d + 1)), || {
            format!("{params:?}")
        });
    }
    closed.finish(r, "core", &mut summary);
    massey.finish(r, "core", &mut summary);
    shift.finish(r, "core", &mut summary);

    let mut polar = Tally::new("polar_multiplicities_are_half_le_numbers");
    for p in 1..=pmax {
        let le = le_numbers(&DqpParams::minimal(p).expect("valid"));
        match polar_multiplicities_sigma1(p) {
            Ok(t) => polar.record(t.entries.iter().all(|(&d, m)| m * 2 == le.get(d)), || {
                format!("p = {p}")
            }),
            Err(e) => polar.record(false, || format!("p = {p}: {e}")),
        }
    }
    polar.finish(r, "core", &mut summary);

    let mut eu_sigma = Tally::new("euler_obstruction_sigma1_parity");
    for p in 1..=pmax + 2 {
        eu_sigma.record_result(
            euler_obstruction_sigma1(p).map(|v| v == BigInt::from(p % 2)),
            || format!("p = {p}"),
        );
    }
    eu_sigma.finish(r, "core", &mut summary);

    let mut eu_x = Tally::new("euler_obstruction_hypersurface");
    for p in 2..=pmax {
        for q1 in 0..=1 {
            for excess in p..=p + 2 {
                let q = triangular(p) + q1;
                let params =
                    DqpParams::new((q + excess) as i64, q as i64, p as i64).expect("valid");
                let expected = if p % 2 == 0 {
                    1 + sign(excess as i64)
                } else {
                    1
                };
                eu_x.record_result(
                    euler_obstruction_hypersurface(&params).map(|v| v == BigInt::from(expected)),
                    || format!("{params:?}"),
                );
            }
        }
    }
    eu_x.finish(r, "core", &mut summary);
    summary
}

fn random_system(rng: &mut ChaCha8Rng) -> BidegreeSystem {
    let total = rng.gen_range(0..=12usize);
    let n = rng.gen_range(0..=total);
    let classes = (0..total)
        .map(|_| loop {
            let (a, b) = (rng.gen_range(0..=3u32), rng.gen_range(0..=3u32));
            if a + b > 0 {
                break (a, b);
            }
        })
        .collect();
    BidegreeSystem::new(n, total - n, classes).expect("valid by construction")
}

fn chow_suite(r: &mut Report, pmax: usize, seed: u64) -> Map<String, Value> {
    let mut summary = Map::new();

    let mut engine = Tally::new("le_engine_matches_closed_form");
    for p in 2..=pmax {
        for i in 1..=p {
            engine.record_result(
                le_number_via_chow(p, i).map(|v| v == le_closed_form(p, i)),
                || format!("p = {p}, i = {i}"),
            );
        }
    }
    engine.finish(r, "chow", &mut summary);

    let mut rng = rng_for(seed, 1);
    let mut agree = Tally::new("ring_equals_fulton_random");
    let mut perm = Tally::new("permutation_invariance_random");
    for _ in 0..CHOW_CASES {
        let system = random_system(&mut rng);
        let ring = intersection_number_ring(&system);
        let fulton = intersection_number_fulton(&system);
        let describe = || format!("{system:?}");
        match (&ring, &fulton) {
            (Ok(a), Ok(b)) => agree.record(a == b, describe),
            _ => agree.record(false, describe),
        }
        let mut reversed = system.clone();
        reversed.classes.reverse();
        perm.record(
            ring.ok()
                .is_some_and(|a| intersection_number_ring(&reversed).ok() == Some(a)),
            || format!("{system:?}"),
        );
    }
    agree.finish(r, "chow", &mut summary);
    perm.finish(r, "chow", &mut summary);

    let mut det = Tally::new("determinant_multiplicity");
    for p in 1..=pmax.min(MAX_DET_SIZE) {
        det.record_result(det_multiplicity(p).map(|m| m as usize == p), || {
            format!("p = {p}")
        });
    }
    det.finish(r, "chow", &mut summary);
    summary
}

fn random_ideal(rng: &mut ChaCha8Rng, vars: usize) -> MonomialIdeal {
    let count = rng.gen_range(1..=4);
    let gens = (0..count)
        .map(|_| Monomial::new((0..vars).map(|_| rng.gen_range(0..=4)).collect()))
        .collect();
    MonomialIdeal::new(vars, gens).expect("valid by construction")
}

fn closure_suite(r: &mut Report, pmax: usize, seed: u64) -> Map<String, Value> {
    let mut summary = Map::new();

    let mut squares_family = Tally::new("squares_reduce_square_of_maximal_ideal");
    for p in 1..=pmax {
        let outcome = (|| {
            let squares = MonomialIdeal::pure_powers(p, 2)?;
            let maximal = MonomialIdeal::maximal(p)?;
            let full = power_ideal(&maximal, 2)?;
            let counts = reduction_generator_count(p)?;
            Ok::<bool, dqp_core::DqpError>(
                is_reduction(&squares, &full)?
                    && !is_reduction(&squares, &maximal)?
                    && counts.generators == 2 * p,
            )
        })();
        squares_family.record_result(outcome, || format!("p = {p}"));
    }
    squares_family.finish(r, "closure", &mut summary);

    let mut textbook = Tally::new("textbook_memberships");
    let cubes = MonomialIdeal::pure_powers(2, 3).expect("valid");
    textbook.record_result(
        in_integral_closure_newton(&cubes, &Monomial::new(vec![2, 2])),
        || "x²y² over (x³, y³)".into(),
    );
    let squares = MonomialIdeal::pure_powers(2, 2).expect("valid");
    textbook.record_result(
        in_integral_closure_newton(&squares, &Monomial::new(vec![1, 0])).map(|v| !v),
        || "y1 over (y1², y2²)".into(),
    );
    textbook.finish(r, "closure", &mut summary);

    let mut rng = rng_for(seed, 2);
    let mut duality = Tally::new("newton_matches_facet_valuations_random");
    let mut witnesses = Tally::new("members_survive_random_curves");
    for _ in 0..DUALITY_CASES {
        let vars = rng.gen_range(1..=4);
        let ideal = random_ideal(&mut rng, vars);
        let m = Monomial::new((0..vars).map(|_| rng.gen_range(0..=5)).collect());
        let witness_seed = rng.gen::<u64>();
        let describe = || format!("{} over {ideal}", m);
        let newton = in_integral_closure_newton(&ideal, &m);
        let facets = in_integral_closure_facets(&ideal, &m);
        match (&newton, &facets) {
            (Ok(a), Ok(b)) => duality.record(a == b, describe),
            _ => duality.record(false, describe),
        }
        if let Ok(true) = newton {
            witnesses.record_result(
                in_integral_closure_valuative(&ideal, &m, &default_witnesses(vars, witness_seed)),
                describe,
            );
        }
    }
    duality.finish(r, "closure", &mut summary);
    witnesses.finish(r, "closure", &mut summary);
    summary
}

fn ffcount_suite(r: &mut Report) -> Map<String, Value> {
    let mut summary = Map::new();

    let mut counts = Tally::new("observed_counts");
    for (p, q1, prime, expected) in COUNT_CASES {
        let outcome = NormalFormSpec::new(p, q1)
            .and_then(|spec| count_points(&spec, prime, 1, dqp_core::ffcount::DEFAULT_BUDGET, 2))
            .map(|rep| rep.agrees() && rep.observed_count == expected);
        counts.record_result(outcome, || format!("p = {p}, q1 = {q1}, F_{prime}"));
    }
    counts.finish(r, "ffcount", &mut summary);

    let mut interp = Tally::new("interpolated_counting_polynomial");
    for (p, q1) in [(1, 0), (1, 1), (2, 0)] {
        let outcome = (|| {
            let spec = NormalFormSpec::new(p, q1)?;
            let samples = odd_primes(spec.n())
                .into_iter()
                .map(|l| {
                    let rep = count_points(&spec, l, 1, dqp_core::ffcount::DEFAULT_BUDGET, 2)?;
                    Ok((BigInt::from(l), BigInt::from(rep.observed_count)))
                })
                .collect::<dqp_core::Result<Vec<_>>>()?;
            let poly = interpolate(&samples)?;
            Ok::<bool, dqp_core::DqpError>(
                poly == IntPolynomial::counting_closed_form(&spec)
                    && poly.eval(&BigInt::from(1)) == BigInt::from(0)
                    && reduced_euler_from_count(&poly)
                        == reduced_euler_characteristic(&spec.params()),
            )
        })();
        interp.record_result(outcome, || format!("p = {p}, q1 = {q1}"));
    }
    interp.finish(r, "ffcount", &mut summary);
    summary
}
