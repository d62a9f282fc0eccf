//! Sparse multivariate polynomials over `Z`, enough to expand a symmetric
//! determinant.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `terms` maps exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicPolynomial {
    variable_count: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SymbolicPolynomial {
    pub fn zero(variable_count: usize) -> Self {
        SymbolicPolynomial {
            variable_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(variable_count: usize) -> Self {
        let mut p = Self::zero(variable_count);
        p.terms.insert(vec![0; variable_count], BigInt::one());
        p
    }

    pub fn variable(variable_count: usize, index: usize) -> Self {
        let mut exps = vec![0; variable_count];
        exps[index] = 1;
        let mut p = Self::zero(variable_count);
        p.terms.insert(exps, BigInt::one());
        p
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        debug_assert_eq!(exps.len(), self.variable_count);
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
        }
    }

    /// Adds `sign · x_var · other` into `self`.
    pub fn add_scaled_by_variable(&mut self, other: &SymbolicPolynomial, var: usize, sign: i32) {
        for (exps, c) in &other.terms {
            let mut e = exps.clone();
            e[var] += 1;
            self.add_term(e, c * sign);
        }
    }

    /// Total degrees of all terms, ascending and deduplicated.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Order of vanishing at the origin; `None` for the zero polynomial.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.degrees().first().copied()
    }

    pub fn is_homogeneous_of_degree(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }
}

impl fmt::Display for SymbolicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let is_const = exps.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("v{}", v + 1)
                    } else {
                        format!("v{}^{e}", v + 1)
                    }
                })
                .collect();
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
