//! Supporting-hyperplane normals of a Newton polyhedron by brute force.
//!
//! The Newton polyhedron `P = conv(generator exponents) + R≥0ⁿ` is pointed,
//! so each facet contains a generator `g₀`, and its affine hull is spanned by
//! differences `g − g₀` of generators on the facet together with the unit
//! directions `eᵢ` lying in it. Taking every `g₀` and every `(n−1)`-subset of
//! `{g − g₀} ∪ {eᵢ}` whose normal is nonnegative therefore produces a finite
//! set of valid inequalities `⟨w, x⟩ ≥ min_g ⟨w, g⟩` that contains all facet
//! normals. Their intersection is exactly `P`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{MonomialIdeal, WeightVector};
use crate::error::{DqpError, Result};

/// Variable count up to which facet enumeration is allowed.
pub const MAX_FACET_DIMENSION: usize = 4;

/// Primitive integer normals, deduplicated, in lexicographic order.
pub fn newton_facet_normals(ideal: &MonomialIdeal) -> Result<Vec<WeightVector>> {
    let n = ideal.variable_count();
    if n > MAX_FACET_DIMENSION {
        return Err(DqpError::invalid(format!(
            "facet enumeration is limited to {MAX_FACET_DIMENSION} variables (got {n})"
        )));
    }
    let points: Vec<Vec<BigInt>> = ideal
        .generators()
        .iter()
        .map(|g| g.exponents().iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let units: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();

    let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for base in &points {
        let directions: Vec<Vec<BigInt>> = points
            .iter()
            .filter(|p| *p != base)
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .chain(units.iter().cloned())
            .collect();
        for subset in directions.iter().combinations(n - 1) {
            let normal = generalized_cross(&subset, n);
            if let Some(w) = orient_nonnegative(normal) {
                normals.insert(primitive(w));
            }
        }
    }
    normals
        .into_iter()
        .map(|w| WeightVector::new(w.into_iter().map(BigRational::from_integer).collect()))
        .collect()
}

/// Vector orthogonal to the `n − 1` rows: cofactors along a virtual first row.
fn generalized_cross(rows: &[&Vec<BigInt>], n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|col| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = determinant(minor);
            if col % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Fraction-free determinant by cofactor expansion; sizes here are at most 3.
fn determinant(m: Vec<Vec<BigInt>>) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        len => (0..len)
            .map(|col| {
                if m[0][col].is_zero() {
                    return BigInt::zero();
                }
                let minor = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * determinant(minor);
                if col % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn orient_nonnegative(w: Vec<BigInt>) -> Option<Vec<BigInt>> {
    if w.iter().all(Zero::is_zero) {
        return None;
    }
    if w.iter().all(|v| !v.is_negative()) {
        Some(w)
    } else if w.iter().all(|v| !v.is_positive()) {
        Some(w.into_iter().map(|v| -v).collect())
    } else {
        None
    }
}

fn primitive(w: Vec<BigInt>) -> Vec<BigInt> {
    let g = w.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    w.into_iter().map(|v| v / &g).collect()
}
