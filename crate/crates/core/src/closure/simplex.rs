//! Exact feasibility for small linear systems over `Q`.
//!
//! Finds `x ≥ 0` with `A_eq·x = b_eq` and `A_le·x ≤ b_le`, or proves none
//! exists, using phase one of the tableau simplex method with Bland's rule.
//! All arithmetic is over `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Default)]
pub struct FeasibilityProblem {
    pub variables: usize,
    pub equalities: Vec<(Vec<BigRational>, BigRational)>,
    pub upper_bounds: Vec<(Vec<BigRational>, BigRational)>,
}

impl FeasibilityProblem {
    pub fn new(variables: usize) -> Self {
        FeasibilityProblem {
            variables,
            ..Default::default()
        }
    }

    pub fn add_equality(&mut self, row: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(row.len(), self.variables);
        self.equalities.push((row, rhs));
    }

    pub fn add_upper_bound(&mut self, row: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(row.len(), self.variables);
        self.upper_bounds.push((row, rhs));
    }

    /// Whether `x` is nonnegative and satisfies every constraint exactly.
    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let dot =
            |row: &[BigRational]| -> BigRational { row.iter().zip(x).map(|(a, b)| a * b).sum() };
        x.len() == self.variables
            && x.iter().all(|v| !v.is_negative())
            && self.equalities.iter().all(|(r, b)| &dot(r) == b)
            && self.upper_bounds.iter().all(|(r, b)| &dot(r) <= b)
    }

    /// A feasible point, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let n = self.variables;
        let slack_count = self.upper_bounds.len();
        let rows: Vec<(Vec<BigRational>, BigRational)> = self
            .equalities
            .iter()
            .map(|(r, b)| {
                let mut row = r.clone();
                row.extend(std::iter::repeat_n(BigRational::zero(), slack_count));
                (row, b.clone())
            })
            .chain(self.upper_bounds.iter().enumerate().map(|(s, (r, b))| {
                let mut row = r.clone();
                row.extend((0..slack_count).map(|t| rational(i64::from(t == s))));
                (row, b.clone())
            }))
            .collect();
        let structural = n + slack_count;
        let m = rows.len();
        let width = structural + m + 1; // artificials, then rhs

        let mut tableau: Vec<Vec<BigRational>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, (mut row, mut rhs))| {
                if rhs.is_negative() {
                    row.iter_mut().for_each(|v| *v = -v.clone());
                    rhs = -rhs;
                }
                row.extend((0..m).map(|t| rational(i64::from(t == i))));
                row.push(rhs);
                row
            })
            .collect();
        let mut basis: Vec<usize> = (structural..structural + m).collect();

        // phase-one objective: minimize the artificial sum, expressed in reduced costs
        let mut cost = vec![BigRational::zero(); width];
        for row in &tableau {
            for (c, v) in cost.iter_mut().zip(row) {
                if !v.is_zero() {
                    *c -= v;
                }
            }
        }
        for c in cost.iter_mut().skip(structural).take(m) {
            *c = BigRational::zero();
        }

        // Bland's rule: smallest eligible index enters and leaves
        while let Some(enter) = (0..structural + m).find(|&j| cost[j].is_negative()) {
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in tableau.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[width - 1] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // phase one is bounded below by zero, so a pivot row always exists
            let (pivot_row, _) = leave.expect("phase-one objective is bounded");
            pivot(&mut tableau, &mut cost, pivot_row, enter);
            basis[pivot_row] = enter;
        }

        if !cost[width - 1].is_zero() {
            return None;
        }
        let mut x = vec![BigRational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = tableau[i][width - 1].clone();
            }
        }
        debug_assert!(self.is_satisfied_by(&x));
        Some(x)
    }
}

fn pivot(tableau: &mut [Vec<BigRational>], cost: &mut [BigRational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    tableau[row].iter_mut().for_each(|v| *v /= &p);
    let pivot_row = tableau[row].clone();
    for (i, r) in tableau.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

pub(crate) fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
