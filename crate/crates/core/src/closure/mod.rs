//! Integral closure and reductions of monomial ideals.
//!
//! A monomial `yᵃ` is integral over a monomial ideal `I` iff `a` lies in the
//! Newton polyhedron of `I`. Two independent deciders are provided:
//! [`in_integral_closure_newton`] solves the convex-combination feasibility
//! problem exactly, and [`in_integral_closure_valuative`] checks the curve
//! criterion `⟨w, a⟩ ≥ min_g ⟨w, g⟩` on monomial curves with weights `w`.
//! Over the facet normals from [`newton_facet_normals`] the second is a
//! complete decider as well.

mod facets;
mod monomial;
pub mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use facets::{newton_facet_normals, MAX_FACET_DIMENSION};
pub use monomial::{Monomial, MonomialIdeal, WeightVector};
use simplex::{rational, FeasibilityProblem};

use crate::error::{DqpError, Result};

/// Number of random weight vectors in [`default_witnesses`].
pub const RANDOM_WITNESSES: usize = 50;

/// Minimal generators of `I^e`.
pub fn power_ideal(ideal: &MonomialIdeal, e: u32) -> Result<MonomialIdeal> {
    if e == 0 {
        return Err(DqpError::invalid("ideal powers need e ≥ 1"));
    }
    let mut acc = ideal.clone();
    for _ in 1..e {
        let products = acc
            .generators()
            .iter()
            .flat_map(|a| ideal.generators().iter().map(move |b| a.mul(b)))
            .collect();
        acc = MonomialIdeal::new(ideal.variable_count(), products)?;
    }
    Ok(acc)
}

/// Convex weights `μ` on the generators with `Σ μ_g·g ≤ a`, if any exist.
pub fn newton_certificate(ideal: &MonomialIdeal, m: &Monomial) -> Result<Option<Vec<BigRational>>> {
    ideal.check_dimension(m)?;
    let gens = ideal.generators();
    let mut lp = FeasibilityProblem::new(gens.len());
    lp.add_equality(vec![rational(1); gens.len()], rational(1));
    for (coord, &bound) in m.exponents().iter().enumerate() {
        lp.add_upper_bound(
            gens.iter()
                .map(|g| rational(i64::from(g.exponents()[coord])))
                .collect(),
            rational(i64::from(bound)),
        );
    }
    Ok(lp.solve())
}

/// Exact Newton-polyhedron membership of the exponent vector of `m`.
pub fn in_integral_closure_newton(ideal: &MonomialIdeal, m: &Monomial) -> Result<bool> {
    if ideal.contains(m) {
        return Ok(true);
    }
    Ok(newton_certificate(ideal, m)?.is_some())
}

/// Curve criterion on the supplied monomial curves only: `true` iff every
/// witness `w` has `⟨w, a⟩ ≥ min_g ⟨w, g⟩`.
pub fn in_integral_closure_valuative(
    ideal: &MonomialIdeal,
    m: &Monomial,
    witnesses: &[WeightVector],
) -> Result<bool> {
    ideal.check_dimension(m)?;
    for w in witnesses {
        if w.len() != ideal.variable_count() {
            return Err(DqpError::invalid(format!(
                "weight vector has {} entries, expected {}",
                w.len(),
                ideal.variable_count()
            )));
        }
    }
    Ok(first_violating_witness(ideal, m, witnesses).is_none())
}

/// The first witness along which `m` vanishes to lower order than the ideal.
pub fn first_violating_witness<'a>(
    ideal: &MonomialIdeal,
    m: &Monomial,
    witnesses: &'a [WeightVector],
) -> Option<&'a WeightVector> {
    witnesses.iter().find(|w| {
        let ideal_order = ideal
            .generators()
            .iter()
            .map(|g| w.order_of(g))
            .min()
            .expect("ideals are nonempty");
        w.order_of(m) < ideal_order
    })
}

/// Curve criterion over all Newton facet normals (at most four variables).
pub fn in_integral_closure_facets(ideal: &MonomialIdeal, m: &Monomial) -> Result<bool> {
    let normals = newton_facet_normals(ideal)?;
    in_integral_closure_valuative(ideal, m, &normals)
}

/// Unit vectors, the all-ones vector, then [`RANDOM_WITNESSES`] random vectors
/// with entries in `0..=5`, determined by `seed`.
pub fn default_witnesses(variable_count: usize, seed: u64) -> Vec<WeightVector> {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut out: Vec<WeightVector> = (0..variable_count)
        .map(|i| {
            WeightVector::new(
                (0..variable_count)
                    .map(|j| int(i64::from(i == j)))
                    .collect(),
            )
            .expect("unit vector")
        })
        .collect();
    out.push(WeightVector::new(vec![int(1); variable_count]).expect("all ones"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < variable_count + 1 + RANDOM_WITNESSES {
        let w: Vec<BigRational> = (0..variable_count)
            .map(|_| int(rng.gen_range(0..=5)))
            .collect();
        if let Ok(w) = WeightVector::new(w) {
            out.push(w);
        }
    }
    out
}

/// `sub` is a reduction of `full`: `sub ⊆ full` and every generator of
/// `full` is integral over `sub`.
pub fn is_reduction(sub: &MonomialIdeal, full: &MonomialIdeal) -> Result<bool> {
    if sub.variable_count() != full.variable_count() {
        return Err(DqpError::invalid(format!(
            "ideals live in {} and {} variables",
            sub.variable_count(),
            full.variable_count()
        )));
    }
    if !sub.is_subideal_of(full) {
        return Ok(false);
    }
    for g in full.generators() {
        if !in_integral_closure_newton(sub, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generator count of the reduction `J_y(f) + J` of the Jacobian ideal of
/// the minimal germ, and the resulting bound on the blow-up fiber dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionCount {
    pub generators: usize,
    pub fiber_dimension_bound: usize,
}

pub fn reduction_generator_count(p: usize) -> Result<ReductionCount> {
    if p < 1 {
        return Err(DqpError::invalid("p must satisfy p ≥ 1"));
    }
    // p partials ∂f/∂y_l plus the p squares y_l²
    let generators = 2 * p;
    Ok(ReductionCount {
        generators,
        fiber_dimension_bound: generators - 1,
    })
}
