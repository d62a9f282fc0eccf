//! Parameter validation and the closed-form invariants of a `D(q,p)` germ.
//!
//! Dimensions are indexed by the superscript `d` of the invariant. Tables are
//! stored densely over their whole range with explicit zeros, so callers
//! never do index arithmetic of their own.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, pow2, sign, triangular};
use crate::error::{DqpError, Result};

/// The triple `(n, q, p)` of a `D(q,p)` germ on `Cⁿ`.
///
/// `n` is the ambient dimension, `q` the dimension of the singular locus and
/// `p` the size of the symmetric matrix. The derived counts are
/// `k = n − q − p` square terms and `q1 = q − p(p+1)/2` inert coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DqpParams {
    n: usize,
    q: usize,
    p: usize,
}

impl DqpParams {
    /// Validates raw integers. The error names the first violated inequality.
    pub fn new(n: i64, q: i64, p: i64) -> Result<Self> {
        if p < 1 {
            return Err(DqpError::invalid(format!(
                "p must satisfy p ≥ 1 (got p = {p})"
            )));
        }
        if q < 1 {
            return Err(DqpError::invalid(format!(
                "q must satisfy q ≥ 1 (got q = {q})"
            )));
        }
        let min_q = p
            .checked_mul(p + 1)
            .map(|v| v / 2)
            .ok_or_else(|| DqpError::invalid(format!("p = {p} is too large")))?;
        if q < min_q {
            return Err(DqpError::invalid(format!(
                "q must satisfy q ≥ p(p+1)/2 = {min_q} (got q = {q})"
            )));
        }
        if n < q + p {
            return Err(DqpError::invalid(format!(
                "n must satisfy n ≥ q + p = {} (got n = {n})",
                q + p
            )));
        }
        let as_usize = |v: i64| {
            usize::try_from(v).map_err(|_| DqpError::invalid(format!("{v} does not fit a usize")))
        };
        Ok(DqpParams {
            n: as_usize(n)?,
            q: as_usize(q)?,
            p: as_usize(p)?,
        })
    }

    /// The smallest germ with a given matrix size: `q = p(p+1)/2`, `n = q + p`.
    pub fn minimal(p: usize) -> Result<Self> {
        let q = triangular(p);
        DqpParams::new((q + p) as i64, q as i64, p as i64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of square terms `y²_{p+1} + … + y²_{p+k}`.
    pub fn k(&self) -> usize {
        self.n - self.q - self.p
    }

    /// Number of coordinates that do not appear in the normal form.
    pub fn q1(&self) -> usize {
        self.q - triangular(self.p)
    }
}

/// Shorthand for [`DqpParams::new`].
pub fn validate_params(n: i64, q: i64, p: i64) -> Result<DqpParams> {
    DqpParams::new(n, q, p)
}

/// One of the two fixed Lê cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCycle {
    pub name: &'static str,
    pub dimension: usize,
    pub cycle_multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeNumberTable {
    pub params: DqpParams,
    /// `λ^d` for every `d` in `0..=q`.
    pub entries: BTreeMap<usize, BigInt>,
    pub fixed_cycles: Vec<FixedCycle>,
}

impl LeNumberTable {
    pub fn get(&self, d: usize) -> BigInt {
        self.entries.get(&d).cloned().unwrap_or_default()
    }

    /// Values ordered from `λ^q` down to `λ^0`.
    pub fn descending(&self) -> Vec<BigInt> {
        self.entries.values().rev().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarMultiplicityTable {
    pub p: usize,
    /// `m^d` for every `d` in `0..=dim Σ1(p)`, where `dim Σ1(p) = p(p+1)/2 − 1`.
    pub entries: BTreeMap<usize, BigInt>,
}

impl PolarMultiplicityTable {
    pub fn get(&self, d: usize) -> BigInt {
        self.entries.get(&d).cloned().unwrap_or_default()
    }

    pub fn top_dimension(&self) -> usize {
        triangular(self.p) - 1
    }
}

/// Dimension of the sphere the Milnor fiber is homotopy equivalent to.
pub fn milnor_sphere_dimension(params: &DqpParams) -> usize {
    params.p + params.n - params.q - 1
}

/// Reduced Euler characteristic of the Milnor fiber, `(−1)^{p+n−q−1}`.
pub fn reduced_euler_characteristic(params: &DqpParams) -> i64 {
    sign(milnor_sphere_dimension(params) as i64)
}

/// `λ^{q−i} = 2^i·C(p, p−i)` for `0 ≤ i ≤ p`, zero below.
pub fn le_numbers(params: &DqpParams) -> LeNumberTable {
    let (q, p) = (params.q, params.p);
    let mut entries: BTreeMap<usize, BigInt> = (0..=q).map(|d| (d, BigInt::zero())).collect();
    for i in 0..=p {
        entries.insert(q - i, pow2(i as u64) * binomial(p as u64, (p - i) as u64));
    }
    let fixed_cycles = vec![
        FixedCycle {
            name: "V(I)",
            dimension: q,
            cycle_multiplicity: 1,
        },
        FixedCycle {
            name: "V(I) ∩ det X",
            dimension: q - 1,
            cycle_multiplicity: 2,
        },
    ];
    LeNumberTable {
        params: *params,
        entries,
        fixed_cycles,
    }
}

/// Polar multiplicities of `Σ1(p)` at the zero matrix:
/// `m^{p(p+1)/2 − i − 1} = 2^i·C(p, p−i−1)` for `0 ≤ i < p`.
pub fn polar_multiplicities_sigma1(p: usize) -> Result<PolarMultiplicityTable> {
    if p < 1 {
        return Err(DqpError::invalid("p must satisfy p ≥ 1"));
    }
    let top = triangular(p) - 1;
    let mut entries: BTreeMap<usize, BigInt> = (0..=top).map(|d| (d, BigInt::zero())).collect();
    for i in 0..p {
        entries.insert(
            top - i,
            pow2(i as u64) * binomial(p as u64, (p - i - 1) as u64),
        );
    }
    Ok(PolarMultiplicityTable { p, entries })
}

/// Euler obstruction of `Σ1(p)` at the origin as the alternating sum of its
/// polar multiplicities, top-dimensional term positive. Checked against the
/// parity form (`0` for even `p`, `1` for odd `p`).
pub fn euler_obstruction_sigma1(p: usize) -> Result<BigInt> {
    let table = polar_multiplicities_sigma1(p)?;
    let top = table.top_dimension();
    let mut sum = BigInt::zero();
    for (offset, d) in (0..=top).rev().enumerate() {
        let m = table.get(d);
        if offset % 2 == 0 {
            sum += m;
        } else {
            sum -= m;
        }
    }
    let parity = if p.is_multiple_of(2) {
        BigInt::zero()
    } else {
        BigInt::one()
    };
    if sum != parity {
        return Err(DqpError::InternalCheck(format!(
            "Eu(Σ1({p})) alternating sum is {sum}, parity form gives {parity}"
        )));
    }
    Ok(sum)
}

/// Euler obstruction of the hypersurface `X = f⁻¹(0)` at the origin, for
/// `p > 1`: `Eu(X) = 1 + (−1)^{n−q} + (−1)^{n−q−1}·Eu(Σ1)`, checked against
/// `1 + (−1)^{n−q}` (p even) and `1` (p odd).
pub fn euler_obstruction_hypersurface(params: &DqpParams) -> Result<BigInt> {
    if params.p < 2 {
        return Err(DqpError::invalid(
            "the hypersurface Euler obstruction is only determined for p > 1",
        ));
    }
    let codim = (params.n - params.q) as i64;
    let eu_sigma = euler_obstruction_sigma1(params.p)?;
    let value = BigInt::from(1 + sign(codim)) + BigInt::from(sign(codim - 1)) * eu_sigma;
    let closed = if params.p.is_multiple_of(2) {
        BigInt::from(1 + sign(codim))
    } else {
        BigInt::one()
    };
    if value != closed {
        return Err(DqpError::InternalCheck(format!(
            "Eu(X) for {params:?} is {value} by the fixed-cycle formula but {closed} by parity"
        )));
    }
    Ok(value)
}

/// `Σ_{i=0..p} (−1)^{(n−1)−(q−i)}·λ^{q−i}` for the table.
pub fn massey_alternating_sum(params: &DqpParams) -> BigInt {
    let table = le_numbers(params);
    let (n, q) = (params.n as i64, params.q as i64);
    (0..=params.p as i64)
        .map(|i| BigInt::from(sign((n - 1) - (q - i))) * table.get((q - i) as usize))
        .sum()
}

/// Whether the alternating sum of Lê numbers equals the reduced Euler
/// characteristic of the Milnor fiber. `false` would indicate a bug.
pub fn verify_massey_identity(params: &DqpParams) -> bool {
    massey_alternating_sum(params) == BigInt::from(reduced_euler_characteristic(params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: i64, q: i64, p: i64) -> DqpParams {
        DqpParams::new(n, q, p).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn validation_examples() {
        let p = params(5, 3, 2);
        assert_eq!((p.k(), p.q1()), (0, 0));
        let p = params(2, 1, 1);
        assert_eq!((p.k(), p.q1()), (0, 0));
        let err = DqpParams::new(5, 2, 2).unwrap_err();
        assert!(err.to_string().contains("q ≥ p(p+1)/2"), "{err}");
        let err = DqpParams::new(4, 3, 2).unwrap_err();
        assert!(err.to_string().contains("n ≥ q + p"), "{err}");
        assert!(DqpParams::new(3, 1, 0).is_err());
        assert!(DqpParams::new(-3, 1, 1).is_err());
    }

    #[test]
    fn derived_counts() {
        let p = params(12, 7, 3);
        assert_eq!(p.k(), 2);
        assert_eq!(p.q1(), 1);
        assert_eq!(p.n(), p.p() + p.k() + p.q());
    }

    #[test]
    fn sphere_dimension_and_reduced_chi() {
        assert_eq!(milnor_sphere_dimension(&params(5, 3, 2)), 3);
        assert_eq!(milnor_sphere_dimension(&params(2, 1, 1)), 1);
        assert_eq!(milnor_sphere_dimension(&params(6, 3, 2)), 4);
        assert_eq!(reduced_euler_characteristic(&params(5, 3, 2)), -1);
        assert_eq!(reduced_euler_characteristic(&params(6, 3, 2)), 1);
        assert_eq!(reduced_euler_characteristic(&params(2, 1, 1)), -1);
    }

    #[test]
    fn le_tables() {
        assert_eq!(
            le_numbers(&params(5, 3, 2)).descending(),
            ints(&[1, 4, 4, 0])
        );
        assert_eq!(le_numbers(&params(2, 1, 1)).descending(), ints(&[1, 2]));
        assert_eq!(
            le_numbers(&params(9, 6, 3)).descending(),
            ints(&[1, 6, 12, 8, 0, 0, 0])
        );
    }

    #[test]
    fn fixed_cycle_metadata() {
        let t = le_numbers(&params(9, 6, 3));
        assert_eq!(t.fixed_cycles.len(), 2);
        assert_eq!(
            (
                t.fixed_cycles[0].dimension,
                t.fixed_cycles[0].cycle_multiplicity
            ),
            (6, 1)
        );
        assert_eq!(
            (
                t.fixed_cycles[1].dimension,
                t.fixed_cycles[1].cycle_multiplicity
            ),
            (5, 2)
        );
    }

    #[test]
    fn polar_tables() {
        let t = polar_multiplicities_sigma1(2).unwrap();
        assert_eq!(
            t.entries.values().rev().cloned().collect::<Vec<_>>(),
            ints(&[2, 2, 0])
        );
        let t = polar_multiplicities_sigma1(3).unwrap();
        assert_eq!(
            t.entries.values().rev().cloned().collect::<Vec<_>>(),
            ints(&[3, 6, 4, 0, 0, 0])
        );
        let t = polar_multiplicities_sigma1(1).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(0), BigInt::one());
        assert!(polar_multiplicities_sigma1(0).is_err());
    }

    #[test]
    fn euler_obstructions() {
        assert_eq!(euler_obstruction_sigma1(2).unwrap(), BigInt::zero());
        assert_eq!(euler_obstruction_sigma1(3).unwrap(), BigInt::one());
        assert_eq!(euler_obstruction_sigma1(5).unwrap(), BigInt::one());
        assert_eq!(euler_obstruction_sigma1(1).unwrap(), BigInt::one());
        assert_eq!(
            euler_obstruction_hypersurface(&params(5, 3, 2)).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            euler_obstruction_hypersurface(&params(6, 3, 2)).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            euler_obstruction_hypersurface(&params(9, 6, 3)).unwrap(),
            BigInt::one()
        );
        assert!(matches!(
            euler_obstruction_hypersurface(&params(2, 1, 1)),
            Err(DqpError::InvalidInput(_))
        ));
    }

    #[test]
    fn massey_examples() {
        assert_eq!(massey_alternating_sum(&params(5, 3, 2)), BigInt::from(-1));
        assert!(verify_massey_identity(&params(5, 3, 2)));
        assert!(verify_massey_identity(&params(2, 1, 1)));
        assert!(verify_massey_identity(&params(10, 7, 3)));
    }
}
