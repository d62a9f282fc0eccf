use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{DqpError, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// `y_index^power` in `variable_count` variables (zero-based index).
    pub fn power_of(variable_count: usize, index: usize, power: u32) -> Self {
        let mut exponents = vec![0; variable_count];
        exponents[index] = power;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn variable_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    /// `self | other`: every exponent of `self` is at most that of `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.len() == other.exponents.len()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn format_with(&self, prefix: &str) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => format!("{prefix}{}", i + 1),
                _ => format!("{prefix}{}^{e}", i + 1),
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("y"))
    }
}

/// A monomial ideal held by its minimal generators, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    variable_count: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the generator list: drops duplicates and any generator
    /// divisible by another.
    pub fn new(variable_count: usize, generators: Vec<Monomial>) -> Result<Self> {
        if variable_count == 0 {
            return Err(DqpError::invalid(
                "a monomial ideal needs at least one variable",
            ));
        }
        if generators.is_empty() {
            return Err(DqpError::invalid(
                "a monomial ideal needs at least one generator",
            ));
        }
        if let Some(g) = generators
            .iter()
            .find(|g| g.variable_count() != variable_count)
        {
            return Err(DqpError::invalid(format!(
                "generator {g} has {} exponents, expected {variable_count}",
                g.variable_count()
            )));
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            variable_count,
            generators: minimal,
        })
    }

    /// `(y_1, …, y_n)`.
    pub fn maximal(variable_count: usize) -> Result<Self> {
        Self::new(
            variable_count,
            (0..variable_count)
                .map(|i| Monomial::power_of(variable_count, i, 1))
                .collect(),
        )
    }

    /// `(y_1^e, …, y_n^e)`.
    pub fn pure_powers(variable_count: usize, e: u32) -> Result<Self> {
        Self::new(
            variable_count,
            (0..variable_count)
                .map(|i| Monomial::power_of(variable_count, i, e))
                .collect(),
        )
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Generator-wise inclusion `self ⊆ other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn min_total_degree(&self) -> u64 {
        self.generators
            .iter()
            .map(Monomial::total_degree)
            .min()
            .unwrap_or(0)
    }

    pub(crate) fn check_dimension(&self, m: &Monomial) -> Result<()> {
        if m.variable_count() != self.variable_count {
            return Err(DqpError::invalid(format!(
                "monomial has {} exponents but the ideal lives in {} variables",
                m.variable_count(),
                self.variable_count
            )));
        }
        Ok(())
    }

    pub fn format_with(&self, prefix: &str) -> String {
        self.generators
            .iter()
            .map(|g| g.format_with(prefix))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.format_with("y"))
    }
}

/// Exponents `w` of a monomial test curve `t ↦ (t^{w₁}, …, t^{wₙ})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(DqpError::invalid(
                "weight vectors must be componentwise ≥ 0",
            ));
        }
        if weights.iter().all(|w| w.is_zero()) {
            return Err(DqpError::invalid(
                "weight vectors must have a positive entry",
            ));
        }
        Ok(WeightVector { weights })
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .map(|&w| BigRational::from_integer(BigInt::from(w)))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Order of vanishing of the monomial along the curve, `⟨w, a⟩`.
    pub fn order_of(&self, m: &Monomial) -> BigRational {
        self.weights
            .iter()
            .zip(m.exponents())
            .map(|(w, &e)| w * BigInt::from(e))
            .sum()
    }
}
