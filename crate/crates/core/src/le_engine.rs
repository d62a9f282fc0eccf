//! Lê numbers of the minimal `D(p(p+1)/2, p)` germ recomputed from intersection theory.
//!
//! The moving Lê cycle of dimension `q − i` is the image of the incidence
//! variety `{ [X][y] = 0, p_1(y) = … = p_{i−1}(y) = 0 }` in
//! `P^{p(p+1)/2 − 1} × P^{p−1}`. Cut by `p(p+1)/2 − i − 1` generic hyperplanes
//! it becomes a finite set whose size is the multiplicity of the cycle's
//! underlying set. The matrix equations have bidegree `(1,1)`, the quadrics in
//! `y` have `(0,2)`, the hyperplanes `(1,0)`. The cycle carries coefficient 2.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::arith::{binomial, pow2, triangular};
use crate::chow::{intersection_number, BidegreeSystem};
use crate::error::{DqpError, Result};
use crate::symbolic::SymbolicPolynomial;

/// Largest matrix size [`generic_symmetric_det`] will expand.
pub const MAX_DET_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeSystemSpec {
    pub p: usize,
    pub i: usize,
    pub system: BidegreeSystem,
}

impl LeSystemSpec {
    pub fn matrix_equations(&self) -> usize {
        self.p
    }

    pub fn quadrics(&self) -> usize {
        self.i - 1
    }

    pub fn hyperplanes(&self) -> usize {
        triangular(self.p) - self.i - 1
    }
}

/// Class system for the Lê cycle of dimension `q − i` of the minimal germ.
pub fn build_le_system(p: usize, i: usize) -> Result<LeSystemSpec> {
    if p < 2 {
        return Err(DqpError::invalid(format!(
            "the incidence system needs p ≥ 2 (got p = {p}); the hyperplane count would be negative"
        )));
    }
    if !(1..=p).contains(&i) {
        return Err(DqpError::invalid(format!(
            "cycle index must satisfy 1 ≤ i ≤ p = {p} (got i = {i})"
        )));
    }
    let ambient_n = triangular(p) - 1;
    let ambient_m = p - 1;
    let hyperplanes = triangular(p) - i - 1;
    let mut classes = Vec::with_capacity(ambient_n + ambient_m);
    classes.extend(std::iter::repeat_n((1, 1), p));
    classes.extend(std::iter::repeat_n((0, 2), i - 1));
    classes.extend(std::iter::repeat_n((1, 0), hyperplanes));
    let system = BidegreeSystem::new(ambient_n, ambient_m, classes)?;
    Ok(LeSystemSpec { p, i, system })
}

/// Intersection number of the class system: the multiplicity at the origin
/// of the underlying set of the cycle.
pub fn underlying_multiplicity_via_chow(p: usize, i: usize) -> Result<BigInt> {
    let spec = build_le_system(p, i)?;
    intersection_number(&spec.system)
}

/// Twice the underlying multiplicity, checked against `2^i·C(p, p−i)`.
pub fn le_number_via_chow(p: usize, i: usize) -> Result<BigInt> {
    let value = underlying_multiplicity_via_chow(p, i)? * 2;
    let closed = le_closed_form(p, i);
    if value != closed {
        return Err(DqpError::InternalCheck(format!(
            "Lê number for p = {p}, i = {i}: intersection theory gives {value}, closed form {closed}"
        )));
    }
    Ok(value)
}

/// `2^i·C(p, p−i)`.
pub fn le_closed_form(p: usize, i: usize) -> BigInt {
    pow2(i as u64) * binomial(p as u64, (p - i) as u64)
}

/// Index of `x_{r,c}` (`r ≤ c`, zero-based) among the `p(p+1)/2` matrix variables,
/// laid out row by row over the upper triangle.
pub fn symmetric_variable_index(p: usize, r: usize, c: usize) -> usize {
    let (r, c) = if r <= c { (r, c) } else { (c, r) };
    // rows above r hold p, p-1, ..., p-r+1 entries
    r * p - r * r.saturating_sub(1) / 2 + (c - r)
}

/// Determinant of the generic symmetric `p × p` matrix with entries `x_{r,c}`
/// (whole variables off the diagonal), by Laplace expansion along rows with
/// minors memoized by their column set.
pub fn generic_symmetric_det(p: usize) -> Result<SymbolicPolynomial> {
    if !(1..=MAX_DET_SIZE).contains(&p) {
        return Err(DqpError::invalid(format!(
            "symmetric determinant expansion supports 1 ≤ p ≤ {MAX_DET_SIZE} (got p = {p})"
        )));
    }
    let vars = triangular(p);
    let full: u32 = (1 << p) - 1;
    // minors[mask]: determinant of rows (p - |mask|)..p restricted to columns in mask
    let mut minors: HashMap<u32, SymbolicPolynomial> = HashMap::new();
    minors.insert(0, SymbolicPolynomial::one(vars));
    for size in 1..=p {
        let row = p - size;
        for mask in (1..=full).filter(|m| m.count_ones() as usize == size) {
            let mut acc = SymbolicPolynomial::zero(vars);
            for (rank, col) in (0..p).filter(|c| mask & (1 << c) != 0).enumerate() {
                let sign = if rank % 2 == 0 { 1 } else { -1 };
                let sub = &minors[&(mask & !(1 << col))];
                acc.add_scaled_by_variable(sub, symmetric_variable_index(p, row, col), sign);
            }
            minors.insert(mask, acc);
        }
    }
    Ok(minors.remove(&full).expect("full minor computed"))
}

/// Order at the origin of the symmetric determinant; equals `p`.
pub fn det_multiplicity(p: usize) -> Result<u32> {
    let det = generic_symmetric_det(p)?;
    let order = det
        .order_at_origin()
        .ok_or_else(|| DqpError::InternalCheck(format!("det of {p}x{p} expanded to zero")))?;
    if order as usize != p {
        return Err(DqpError::InternalCheck(format!(
            "symmetric det of size {p} has order {order} at the origin"
        )));
    }
    Ok(order)
}
