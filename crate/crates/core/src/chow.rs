//! Intersection numbers of hypersurface classes on `Pⁿ × Pᵐ`.
//!
//! The Chow ring is `Z[h, k] / (h^{n+1}, k^{m+1})`. A hypersurface of bidegree
//! `(a, b)` has class `a·h + b·k`, and the intersection number of `n + m`
//! such classes is the coefficient of `hⁿkᵐ` in their product. Two routes
//! compute it: [`intersection_number_ring`] multiplies in the truncated ring,
//! [`intersection_number_fulton`] sums `a_{i₁}⋯a_{iₙ}·b_{j₁}⋯b_{jₘ}` over all
//! splittings of the classes into an `n`-subset and its complement.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::binomial;
use crate::error::{DqpError, Result};

/// Largest number of subsets the subset-sum route will enumerate, `C(24, 12)`.
pub const FULTON_SUBSET_LIMIT: u64 = 2_704_156;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub a: u32,
    pub b: u32,
}

impl Bidegree {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(DqpError::invalid(
                "bidegree (0,0) is not a hypersurface class",
            ));
        }
        Ok(Bidegree { a, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidegreeSystem {
    pub ambient_n: usize,
    pub ambient_m: usize,
    pub classes: Vec<Bidegree>,
}

impl BidegreeSystem {
    /// Builds a system, rejecting `(0,0)` classes and class counts other than `n + m`.
    pub fn new(ambient_n: usize, ambient_m: usize, classes: Vec<(u32, u32)>) -> Result<Self> {
        let classes = classes
            .into_iter()
            .map(|(a, b)| Bidegree::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        let system = BidegreeSystem {
            ambient_n,
            ambient_m,
            classes,
        };
        system.validate()?;
        Ok(system)
    }

    /// Fields are public, so both algorithms re-check before computing.
    pub fn validate(&self) -> Result<()> {
        let expected = self.ambient_n + self.ambient_m;
        if self.classes.len() != expected {
            return Err(DqpError::invalid(format!(
                "a zero-dimensional intersection on P^{} x P^{} needs {expected} classes, got {}",
                self.ambient_n,
                self.ambient_m,
                self.classes.len()
            )));
        }
        if let Some(pos) = self.classes.iter().position(|c| c.a == 0 && c.b == 0) {
            return Err(DqpError::invalid(format!(
                "class {} has bidegree (0,0)",
                pos + 1
            )));
        }
        Ok(())
    }
}

/// An element of `Z[h, k] / (h^{n+1}, k^{m+1})`; `coeffs[u][v]` multiplies `hᵘkᵛ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedBivariatePoly {
    ambient_n: usize,
    ambient_m: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl TruncatedBivariatePoly {
    pub fn one(ambient_n: usize, ambient_m: usize) -> Self {
        let mut coeffs = vec![vec![BigInt::zero(); ambient_m + 1]; ambient_n + 1];
        coeffs[0][0] = BigInt::one();
        TruncatedBivariatePoly {
            ambient_n,
            ambient_m,
            coeffs,
        }
    }

    pub fn coeff(&self, u: usize, v: usize) -> BigInt {
        self.coeffs
            .get(u)
            .and_then(|row| row.get(v))
            .cloned()
            .unwrap_or_default()
    }

    /// In-place multiplication by `a·h + b·k`. Terms pushed past
    /// `hⁿ` or `kᵐ` vanish.
    pub fn mul_class(&mut self, class: Bidegree) {
        let a = BigInt::from(class.a);
        let b = BigInt::from(class.b);
        // descending so that each read sees the pre-multiplication value
        for u in (0..=self.ambient_n).rev() {
            for v in (0..=self.ambient_m).rev() {
                let mut c = BigInt::zero();
                if u > 0 {
                    c += &a * &self.coeffs[u - 1][v];
                }
                if v > 0 {
                    c += &b * &self.coeffs[u][v - 1];
                }
                self.coeffs[u][v] = c;
            }
        }
    }

    /// Coefficient of the point class `hⁿkᵐ`.
    pub fn degree(&self) -> BigInt {
        self.coeffs[self.ambient_n][self.ambient_m].clone()
    }
}

/// Coefficient of `hⁿkᵐ` in `∏ (aᵢ·h + bᵢ·k)`.
pub fn intersection_number_ring(system: &BidegreeSystem) -> Result<BigInt> {
    system.validate()?;
    let mut acc = TruncatedBivariatePoly::one(system.ambient_n, system.ambient_m);
    for &class in &system.classes {
        acc.mul_class(class);
    }
    Ok(acc.degree())
}

/// Number of subsets [`intersection_number_fulton`] would enumerate.
pub fn fulton_subset_count(system: &BidegreeSystem) -> BigInt {
    binomial(
        (system.ambient_n + system.ambient_m) as u64,
        system.ambient_n as u64,
    )
}

/// `Σ a_{i₁}⋯a_{iₙ}·b_{j₁}⋯b_{jₘ}` over every split of the classes into an
/// `n`-subset (contributing `a`) and the complementary `m`-subset
/// (contributing `b`). Refuses systems above [`FULTON_SUBSET_LIMIT`].
pub fn intersection_number_fulton(system: &BidegreeSystem) -> Result<BigInt> {
    system.validate()?;
    if fulton_subset_count(system) > BigInt::from(FULTON_SUBSET_LIMIT) {
        return Err(DqpError::invalid(format!(
            "subset enumeration over {} classes exceeds {FULTON_SUBSET_LIMIT} subsets; use the ring algorithm",
            system.classes.len()
        )));
    }
    let total = system.classes.len();
    let mut sum = BigInt::zero();
    for b_side in (0..total).combinations(system.ambient_m) {
        let mut term = BigInt::one();
        let mut next = b_side.iter().peekable();
        for (idx, class) in system.classes.iter().enumerate() {
            let factor = if next.peek() == Some(&&idx) {
                next.next();
                class.b
            } else {
                class.a
            };
            if factor == 0 {
                term = BigInt::zero();
                break;
            }
            term *= factor;
        }
        sum += term;
    }
    Ok(sum)
}

/// Ring route, cross-checked by the subset route when that one is within
/// its limit.
pub fn intersection_number(system: &BidegreeSystem) -> Result<BigInt> {
    let ring = intersection_number_ring(system)?;
    if fulton_subset_count(system) <= BigInt::from(FULTON_SUBSET_LIMIT) {
        let fulton = intersection_number_fulton(system)?;
        if fulton != ring {
            return Err(DqpError::InternalCheck(format!(
                "ring product gives {ring}, subset sum gives {fulton}"
            )));
        }
    }
    Ok(ring)
}
