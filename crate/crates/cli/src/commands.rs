use dqp_core::arith::{sign, triangular};
use dqp_core::chow::{
    fulton_subset_count, intersection_number_fulton, intersection_number_ring, BidegreeSystem,
    FULTON_SUBSET_LIMIT,
};
use dqp_core::closure::{
    default_witnesses, first_violating_witness, in_integral_closure_newton, is_reduction,
    newton_certificate, newton_facet_normals, MAX_FACET_DIMENSION,
};
use dqp_core::ffcount::{
    count_points, counting_polynomial, reduced_euler_from_count, DEFAULT_BUDGET,
};
use dqp_core::invariants::{
    euler_obstruction_hypersurface, euler_obstruction_sigma1, le_numbers, massey_alternating_sum,
    milnor_sphere_dimension, polar_multiplicities_sigma1, reduced_euler_characteristic,
};
use dqp_core::le_engine::{
    build_le_system, det_multiplicity, generic_symmetric_det, le_closed_form, MAX_DET_SIZE,
};
use dqp_core::{DqpParams, MonomialIdeal, NormalFormSpec, WeightVector};
use num_bigint::BigInt;
use serde_json::Value;

use crate::args::{
    ChowAlgorithm, ChowArgs, ClosureArgs, ClosureMode, CountArgs, InvariantsArgs, LecyclesArgs,
};
use crate::error::CliError;
use crate::grammar::{build_ideal, variable_count, Parser};
use crate::report::{int, ints, object, rational, Report};

pub fn invariants(args: &InvariantsArgs) -> Result<Report, CliError> {
    let mut r = Report::new("invariants");
    r.input("n", args.n);
    r.input("q", args.q);
    r.input("p", args.p);
    let params = DqpParams::new(args.n, args.q, args.p)?;
    r.timed("closed_forms", |r| invariants_body(r, &params))?;
    Ok(r)
}

fn invariants_body(r: &mut Report, params: &DqpParams) -> Result<(), CliError> {
    let (n, q, p) = (params.n(), params.q(), params.p());
    r.result(
        "params",
        object([
            ("n", n.into()),
            ("q", q.into()),
            ("p", p.into()),
            ("k", params.k().into()),
            ("q1", params.q1().into()),
        ]),
    );
    let chi = reduced_euler_characteristic(params);
    r.result("milnor_sphere_dimension", milnor_sphere_dimension(params));
    r.result("reduced_euler_characteristic", chi);

    let le = le_numbers(params);
    let cycles: Vec<Value> = le
        .fixed_cycles
        .iter()
        .map(|c| {
            object([
                ("name", c.name.into()),
                ("dimension", c.dimension.into()),
                ("cycle_multiplicity", c.cycle_multiplicity.into()),
            ])
        })
        .collect();
    r.result(
        "le_numbers",
        object([
            ("dimensions", (0..=q).rev().collect::<Vec<_>>().into()),
            ("lambda", ints(&le.descending())),
            ("fixed_cycles", cycles.into()),
        ]),
    );

    let polar = polar_multiplicities_sigma1(p)?;
    let polar_values: Vec<BigInt> = polar.entries.values().rev().cloned().collect();
    r.result(
        "polar_multiplicities_sigma1",
        object([
            ("ambient_dimension", triangular(p).into()),
            (
                "dimensions",
                (0..=polar.top_dimension()).rev().collect::<Vec<_>>().into(),
            ),
            ("m", ints(&polar_values)),
        ]),
    );

    let eu_sigma = euler_obstruction_sigma1(p)?;
    r.result("euler_obstruction_sigma1", int(&eu_sigma));
    if p > 1 {
        let eu_x = euler_obstruction_hypersurface(params)?;
        r.result("euler_obstruction_hypersurface", int(&eu_x));
        let expected = if p % 2 == 0 {
            1 + sign((n - q) as i64)
        } else {
            1
        };
        r.check(
            "euler_obstruction_hypersurface_parity",
            eu_x == BigInt::from(expected),
            format!("Eu(X) = {eu_x}, parity form gives {expected}"),
        );
    } else {
        r.note("Eu(X) is omitted for p = 1: the hypersurface formula needs p > 1.");
    }

    let massey = massey_alternating_sum(params);
    r.check(
        "massey_identity",
        massey == BigInt::from(chi),
        format!("alternating sum of Lê numbers = {massey}, reduced χ = {chi}"),
    );
    // m^d sits over λ^{d + q1}: the inert coordinates shift every Lê cycle up.
    let bad: Vec<usize> = polar
        .entries
        .iter()
        .filter(|(&d, m)| *m * 2 != le.get(d + params.q1()))
        .map(|(&d, _)| d)
        .collect();
    r.check(
        "polar_multiplicities_are_half_le_numbers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} entries", polar.entries.len())
        } else {
            format!("mismatch at dimensions {bad:?}")
        },
    );
    r.check(
        "euler_obstruction_sigma1_parity",
        eu_sigma == BigInt::from(p % 2),
        format!("alternating sum {eu_sigma}, parity of p gives {}", p % 2),
    );
    Ok(())
}

pub fn lecycles(args: &LecyclesArgs) -> Result<Report, CliError> {
    let mut r = Report::new("lecycles");
    r.input("p", args.p);
    if let Some(i) = args.i {
        r.input("i", i);
    }
    let p = usize::try_from(args.p)
        .map_err(|_| CliError::Validation(format!("p must satisfy p ≥ 2 (got p = {})", args.p)))?;
    let indices: Vec<usize> = match args.i {
        Some(i) => vec![usize::try_from(i).map_err(|_| {
            CliError::Validation(format!("cycle index must satisfy 1 ≤ i ≤ p (got i = {i})"))
        })?],
        None => (1..=p.max(1)).collect(),
    };
    let polar = polar_multiplicities_sigma1(p.max(1))?;
    let mut rows = Vec::new();
    r.timed("intersection_numbers", |r| -> Result<(), CliError> {
        for &i in &indices {
            let spec = build_le_system(p, i)?;
            let system = &spec.system;
            let ring = intersection_number_ring(system)?;
            let subsets = fulton_subset_count(system);
            let fulton = if subsets <= BigInt::from(FULTON_SUBSET_LIMIT) {
                Some(intersection_number_fulton(system)?)
            } else {
                r.note(format!(
                    "i = {i}: subset enumeration skipped ({subsets} subsets)"
                ));
                None
            };
            let le = &ring * 2;
            let closed = le_closed_form(p, i);
            let polar_entry = polar.get(polar.top_dimension() + 1 - i);
            if let Some(f) = &fulton {
                r.check(
                    &format!("i={i}: ring_equals_fulton"),
                    *f == ring,
                    format!("ring {ring}, subset sum {f}"),
                );
            }
            r.check(
                &format!("i={i}: le_number_equals_closed_form"),
                le == closed,
                format!("2·{ring} = {le}, 2^{i}·C({p},{}) = {closed}", p - i),
            );
            r.check(
                &format!("i={i}: multiplicity_equals_polar_multiplicity"),
                ring == polar_entry,
                format!(
                    "{ring} vs m^{} = {polar_entry}",
                    polar.top_dimension() + 1 - i
                ),
            );
            rows.push(object([
                ("i", i.into()),
                ("cycle_dimension", (triangular(p) - i).into()),
                (
                    "ambient",
                    object([
                        ("n", system.ambient_n.into()),
                        ("m", system.ambient_m.into()),
                    ]),
                ),
                (
                    "classes",
                    object([
                        ("matrix_equations_1_1", spec.matrix_equations().into()),
                        ("quadrics_0_2", spec.quadrics().into()),
                        ("hyperplanes_1_0", spec.hyperplanes().into()),
                    ]),
                ),
                ("ring", int(&ring)),
                ("fulton", fulton.as_ref().map(int).unwrap_or(Value::Null)),
                ("underlying_multiplicity", int(&ring)),
                ("le_number", int(&le)),
                ("closed_form", int(&closed)),
            ]));
        }
        Ok(())
    })?;
    r.result("cycles", rows);
    if p <= MAX_DET_SIZE {
        r.timed("determinant", |r| -> Result<(), CliError> {
            let det = generic_symmetric_det(p)?;
            let mult = det_multiplicity(p)?;
            r.result(
                "determinant",
                object([
                    ("terms", det.term_count().into()),
                    ("multiplicity", mult.into()),
                ]),
            );
            r.check(
                "determinant_multiplicity",
                mult as usize == p,
                format!("order at the origin {mult}, p = {p}"),
            );
            Ok(())
        })?;
    } else {
        r.note(format!(
            "determinant expansion skipped above p = {MAX_DET_SIZE}"
        ));
    }
    Ok(r)
}

/// Parses `"a,b; a,b; …"`.
pub fn parse_bidegrees(text: &str) -> Result<Vec<(u32, u32)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            let bad = || {
                CliError::Validation(format!(
                    "bidegree {:?} must be two nonnegative integers \"a,b\"",
                    pair.trim()
                ))
            };
            match parts.as_slice() {
                [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
                _ => Err(bad()),
            }
        })
        .collect()
}

pub fn chow(args: &ChowArgs) -> Result<Report, CliError> {
    let mut r = Report::new("chow");
    r.input("n", args.n);
    r.input("m", args.m);
    r.input("bidegrees", args.bidegrees.clone());
    r.input("algorithm", format!("{:?}", args.algorithm).to_lowercase());
    let classes = parse_bidegrees(&args.bidegrees)?;
    let system = BidegreeSystem::new(args.n, args.m, classes)?;
    let subsets = fulton_subset_count(&system);
    r.result("fulton_subsets", int(&subsets));
    let ring = match args.algorithm {
        ChowAlgorithm::Ring | ChowAlgorithm::Both => {
            Some(r.timed("ring", |_| intersection_number_ring(&system))?)
        }
        ChowAlgorithm::Fulton => None,
    };
    let fulton = match args.algorithm {
        ChowAlgorithm::Fulton => Some(r.timed("fulton", |_| intersection_number_fulton(&system))?),
        ChowAlgorithm::Both if subsets <= BigInt::from(FULTON_SUBSET_LIMIT) => {
            Some(r.timed("fulton", |_| intersection_number_fulton(&system))?)
        }
        ChowAlgorithm::Both => {
            r.note(format!(
                "subset enumeration skipped: {subsets} subsets exceed {FULTON_SUBSET_LIMIT}"
            ));
            None
        }
        ChowAlgorithm::Ring => None,
    };
    if let Some(v) = &ring {
        r.result("ring", int(v));
    }
    if let Some(v) = &fulton {
        r.result("fulton", int(v));
    }
    if let (Some(a), Some(b)) = (&ring, &fulton) {
        r.check(
            "ring_equals_fulton",
            a == b,
            format!("ring {a}, subset sum {b}"),
        );
    }
    let value = ring.or(fulton).expect("one algorithm always runs");
    r.result("intersection_number", int(&value));
    Ok(r)
}

pub fn closure(args: &ClosureArgs) -> Result<Report, CliError> {
    let mut r = Report::new("closure");
    r.input("ideal", args.ideal.clone());
    r.input("mode", format!("{:?}", args.mode).to_lowercase());
    r.input("seed", args.seed);
    if let Some(m) = &args.monomial {
        r.input("monomial", m.clone());
    }
    if let Some(f) = &args.full {
        r.input("full", f.clone());
    }
    if args.monomial.is_none() && args.full.is_none() {
        return Err(CliError::Validation(
            "closure needs --monomial (membership) or --full (reduction test)".into(),
        ));
    }
    let mut parser = Parser::new();
    let ideal_raw = parser.parse_list(&args.ideal)?;
    let mono_raw = args
        .monomial
        .as_deref()
        .map(|m| parser.parse_monomial(m))
        .transpose()?;
    let full_raw = args
        .full
        .as_deref()
        .map(|f| parser.parse_list(f))
        .transpose()?;
    let mut lists = vec![ideal_raw.as_slice()];
    let mono_slice = mono_raw.clone().map(|m| vec![m]);
    if let Some(m) = &mono_slice {
        lists.push(m);
    }
    if let Some(f) = &full_raw {
        lists.push(f);
    }
    let needed = variable_count(&lists, 0);
    let vars = match args.vars {
        Some(v) if v < needed => {
            return Err(CliError::Validation(format!(
                "--vars {v} is smaller than the largest variable index {needed}"
            )))
        }
        Some(v) => v,
        None => needed,
    };
    r.input("vars", vars);
    let prefix = parser.prefix().to_string();
    let ideal = build_ideal(&ideal_raw, vars)?;
    r.result("ideal", format!("({})", ideal.format_with(&prefix)));

    if let Some(raw) = mono_raw {
        let m = raw.to_monomial(vars);
        r.result("monomial", m.format_with(&prefix));
        r.result("in_ideal", ideal.contains(&m));
        r.timed("membership", |r| membership(r, args, &ideal, &m, &prefix))?;
    }
    if let Some(raw) = full_raw {
        let full = build_ideal(&raw, vars)?;
        r.timed("reduction", |r| -> Result<(), CliError> {
            let generators: Vec<Value> = full
                .generators()
                .iter()
                .map(|g| {
                    Ok(object([
                        ("generator", g.format_with(&prefix).into()),
                        ("integral", in_integral_closure_newton(&ideal, g)?.into()),
                    ]))
                })
                .collect::<Result<_, CliError>>()?;
            r.result(
                "reduction",
                object([
                    ("full", format!("({})", full.format_with(&prefix)).into()),
                    ("contained", ideal.is_subideal_of(&full).into()),
                    ("is_reduction", is_reduction(&ideal, &full)?.into()),
                    ("generators", generators.into()),
                ]),
            );
            Ok(())
        })?;
    }
    Ok(r)
}

fn membership(
    r: &mut Report,
    args: &ClosureArgs,
    ideal: &MonomialIdeal,
    m: &dqp_core::Monomial,
    prefix: &str,
) -> Result<(), CliError> {
    let vars = ideal.variable_count();
    let newton = match args.mode {
        ClosureMode::Newton | ClosureMode::Both => {
            let cert = newton_certificate(ideal, m)?;
            let certificate = cert.as_ref().map(|mu| {
                Value::Array(
                    ideal
                        .generators()
                        .iter()
                        .zip(mu)
                        .map(|(g, w)| {
                            object([
                                ("generator", g.format_with(prefix).into()),
                                ("weight", rational(w)),
                            ])
                        })
                        .collect(),
                )
            });
            r.result(
                "newton",
                object([
                    ("member", cert.is_some().into()),
                    ("certificate", certificate.unwrap_or(Value::Null)),
                ]),
            );
            Some(cert.is_some())
        }
        ClosureMode::Valuative => None,
    };
    let mut facets = None;
    if args.mode != ClosureMode::Newton {
        let witnesses = default_witnesses(vars, args.seed);
        let violating = first_violating_witness(ideal, m, &witnesses);
        let facet_normals = if vars <= MAX_FACET_DIMENSION {
            Some(newton_facet_normals(ideal)?)
        } else {
            r.note(format!(
                "facet normals are only enumerated up to {MAX_FACET_DIMENSION} variables; \
                 the valuative test with random curves can refute membership but not prove it"
            ));
            None
        };
        facets = facet_normals
            .as_ref()
            .map(|normals| first_violating_witness(ideal, m, normals).is_none());
        r.result(
            "valuative",
            object([
                ("witness_count", witnesses.len().into()),
                ("refuted_by", violating.map(weights).unwrap_or(Value::Null)),
                (
                    "facet_normals",
                    facet_normals
                        .as_ref()
                        .map(|ns| Value::Array(ns.iter().map(weights).collect()))
                        .unwrap_or(Value::Null),
                ),
                (
                    "member_by_facets",
                    facets.map(Value::from).unwrap_or(Value::Null),
                ),
            ]),
        );
        if let Some(true) = newton {
            r.check(
                "members_survive_random_curves",
                violating.is_none(),
                format!("{} weight vectors", witnesses.len()),
            );
        }
        if let (Some(a), Some(b)) = (newton, facets) {
            r.check(
                "newton_matches_facet_valuations",
                a == b,
                format!("Newton polyhedron {a}, facet valuations {b}"),
            );
        }
        if newton.is_none() && facets.is_none() && violating.is_none() {
            r.note("no random curve refutes membership; use --mode newton for a decision");
        }
    }
    let member = newton.or(facets).unwrap_or(false);
    r.result("member", member);
    Ok(())
}

fn weights(w: &WeightVector) -> Value {
    Value::Array(w.weights().iter().map(rational).collect())
}

pub fn count(args: &CountArgs) -> Result<Report, CliError> {
    let mut r = Report::new("count");
    let budget = args.budget.unwrap_or(DEFAULT_BUDGET);
    let jobs = match args.jobs {
        Some(0) => return Err(CliError::Validation("--jobs must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    r.input("p", args.p);
    r.input("q1", args.q1);
    r.input("prime", args.prime);
    r.input("target", args.target);
    r.input("budget", int(&BigInt::from(budget)));
    let spec = NormalFormSpec::new(args.p, args.q1)?;
    let report = r.timed("enumeration", |_| {
        count_points(&spec, args.prime, args.target, budget, jobs)
    })?;
    let poly = r.timed("counting_polynomial", |_| counting_polynomial(&spec))?;
    let predicted = BigInt::from(report.predicted_count.clone());
    let observed = BigInt::from(report.observed_count);
    let chi_count = reduced_euler_from_count(&poly);
    let chi = reduced_euler_characteristic(&spec.params());
    r.result("n", spec.n());
    r.result("matrix_variables", spec.matrix_variables());
    r.result("observed_count", int(&observed));
    r.result("predicted_count", int(&predicted));
    r.result("enumerated", int(&BigInt::from(report.enumerated)));
    r.result("counting_polynomial", poly.to_string());
    r.result("counting_polynomial_coefficients", ints(poly.coeffs()));
    r.result("reduced_euler_characteristic", chi_count);
    r.check(
        "observed_equals_predicted",
        report.agrees(),
        format!("observed {observed}, predicted (ℓ^p − 1)·ℓ^(n−p−1) = {predicted}"),
    );
    let at_prime = poly.eval(&BigInt::from(args.prime));
    r.check(
        "counting_polynomial_at_prime",
        at_prime == observed,
        format!("N({}) = {at_prime}", args.prime),
    );
    r.check(
        "counting_polynomial_gives_reduced_euler_characteristic",
        chi_count == chi,
        format!("N(1) − 1 = {chi_count}, sphere gives {chi}"),
    );
    Ok(r)
}
