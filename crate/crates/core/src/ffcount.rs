//! Point counts of the Milnor-fiber model `{f = c}` over prime fields.
//!
//! Only the `k = 0` normal form `f = Σ_{i≤j} x_{ij} y_i y_j` is handled. The
//! variables are laid out as the `p(p+1)/2` matrix entries (row by row over
//! the upper triangle), then the `q1` inert coordinates, then `y_1..y_p`.
//!
//! Over `F_ℓ`, projecting `{f = c}` to `y` mirrors the fibration of the complex
//! fiber: above `y = 0` there is nothing (`f` vanishes), and above any
//! `y = b ≠ 0` the condition is one nontrivial affine-linear equation in the
//! remaining `n − p` coordinates. Hence `N(ℓ) = (ℓ^p − 1)·ℓ^{n−p−1}`.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::triangular;
use crate::error::{DqpError, Result};
use crate::invariants::DqpParams;
use crate::le_engine::symmetric_variable_index;

/// Default enumeration budget, in points.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalFormSpec {
    p: usize,
    q1: usize,
}

impl NormalFormSpec {
    pub fn new(p: usize, q1: usize) -> Result<Self> {
        if p < 1 {
            return Err(DqpError::invalid("p must satisfy p ≥ 1"));
        }
        Ok(NormalFormSpec { p, q1 })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q1(&self) -> usize {
        self.q1
    }

    pub fn matrix_variables(&self) -> usize {
        triangular(self.p)
    }

    pub fn n(&self) -> usize {
        self.matrix_variables() + self.q1 + self.p
    }

    /// The matching germ parameters, `q = p(p+1)/2 + q1`, `k = 0`.
    pub fn params(&self) -> DqpParams {
        let q = self.matrix_variables() + self.q1;
        DqpParams::new(self.n() as i64, q as i64, self.p as i64).expect("k = 0 specs are valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCountReport {
    pub spec: NormalFormSpec,
    pub prime: u64,
    pub target: u64,
    pub observed_count: u64,
    pub predicted_count: BigUint,
    /// `prime^n`; the `y = 0` slab is accounted for without evaluation.
    pub enumerated: u128,
    pub elapsed: Duration,
}

impl PointCountReport {
    pub fn agrees(&self) -> bool {
        BigUint::from(self.observed_count) == self.predicted_count
    }
}

pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(prime: u64) -> Result<()> {
    if !is_odd_prime(prime) {
        return Err(DqpError::invalid(format!(
            "the field size must be an odd prime (got {prime})"
        )));
    }
    Ok(())
}

/// `Σ_{i≤j} x_{ij} y_i y_j mod prime`. Inert coordinates are ignored.
pub fn eval_normal_form(spec: &NormalFormSpec, point: &[u64], prime: u64) -> Result<u64> {
    check_prime(prime)?;
    if point.len() != spec.n() {
        return Err(DqpError::invalid(format!(
            "point has {} coordinates, the normal form has {}",
            point.len(),
            spec.n()
        )));
    }
    let y = &point[spec.matrix_variables() + spec.q1..];
    let mut acc = 0u64;
    for r in 0..spec.p {
        for c in r..spec.p {
            let x = point[symmetric_variable_index(spec.p, r, c)] % prime;
            let term = x * (y[r] % prime) % prime * (y[c] % prime) % prime;
            acc = (acc + term) % prime;
        }
    }
    Ok(acc)
}

/// `(prime^p − 1)·prime^{n−p−1}`: nonzero `y` values times the size of each
/// affine-hyperplane fiber.
pub fn predicted_count(spec: &NormalFormSpec, prime: u64) -> BigUint {
    let l = BigUint::from(prime);
    let nonzero_bases = Pow::pow(&l, spec.p as u32) - BigUint::one();
    let fiber = Pow::pow(&l, (spec.n() - spec.p - 1) as u32);
    nonzero_bases * fiber
}

/// `prime^n`, saturating.
pub fn points_in_space(spec: &NormalFormSpec, prime: u64) -> u128 {
    u128::from(prime)
        .checked_pow(spec.n() as u32)
        .unwrap_or(u128::MAX)
}

/// Exhaustively counts points with `f = target` over `F_prime`.
///
/// The `y`-block is outermost. Its nonzero values are split into `jobs`
/// contiguous ranges counted on separate threads; the merge is a sum, so
/// the result does not depend on `jobs`.
pub fn count_points(
    spec: &NormalFormSpec,
    prime: u64,
    target: u64,
    budget: u128,
    jobs: usize,
) -> Result<PointCountReport> {
    check_prime(prime)?;
    let target = target % prime;
    if target == 0 {
        return Err(DqpError::invalid(
            "the target value must be nonzero in the field",
        ));
    }
    let required = points_in_space(spec, prime);
    if required > budget {
        return Err(DqpError::BudgetExceeded { required, budget });
    }
    let start = Instant::now();
    let y_values = u64::try_from(u128::from(prime).pow(spec.p as u32))
        .expect("y-block size is below the budget");
    let jobs = jobs.max(1) as u64;
    let chunk = (y_values - 1).div_ceil(jobs).max(1);
    let observed = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let lo = 1 + j * chunk;
                let hi = (lo + chunk).min(y_values);
                scope.spawn(move || count_y_range(spec, prime, target, lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker panicked"))
            .sum::<u64>()
    });
    Ok(PointCountReport {
        spec: *spec,
        prime,
        target,
        observed_count: observed,
        predicted_count: predicted_count(spec, prime),
        enumerated: required,
        elapsed: start.elapsed(),
    })
}

/// Counts solutions whose `y`-block, read as a base-`prime` integer, lies in `lo..hi`.
fn count_y_range(spec: &NormalFormSpec, prime: u64, target: u64, lo: u64, hi: u64) -> u64 {
    let free = spec.matrix_variables() + spec.q1;
    let mut coeffs = vec![0u64; free];
    let mut y = vec![0u64; spec.p];
    let mut count = 0u64;
    for index in lo..hi {
        let mut rest = index;
        for digit in y.iter_mut() {
            *digit = rest % prime;
            rest /= prime;
        }
        for r in 0..spec.p {
            for c in r..spec.p {
                coeffs[symmetric_variable_index(spec.p, r, c)] = y[r] * y[c] % prime;
            }
        }
        count += count_linear_solutions(&coeffs, prime, target);
    }
    count
}

/// Odometer over `F_prime^len` tracking `Σ cᵢxᵢ mod prime`. Bumping digit `i`
/// adds `cᵢ`, and so does wrapping it from `prime − 1` to `0`, because
/// `−(prime − 1)·cᵢ ≡ cᵢ`.
fn count_linear_solutions(coeffs: &[u64], prime: u64, target: u64) -> u64 {
    let mut digits = vec![0u64; coeffs.len()];
    let mut sum = 0u64;
    let mut count = 0u64;
    loop {
        if sum == target {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return count;
            }
            sum = (sum + coeffs[pos]) % prime;
            digits[pos] += 1;
            if digits[pos] < prime {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Integer polynomial in one variable `t`, coefficients from low to high degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// `(t^p − 1)·t^{n−p−1}`.
    pub fn counting_closed_form(spec: &NormalFormSpec) -> Self {
        let shift = spec.n() - spec.p - 1;
        let mut coeffs = vec![BigInt::zero(); shift + spec.p + 1];
        coeffs[shift] = BigInt::from(-1);
        coeffs[shift + spec.p] = BigInt::one();
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (deg, c)) in terms.into_iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !abs.is_one() || deg == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{deg}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through `(t_i, N_i)`, returned only if all
/// coefficients are integers.
pub fn interpolate(samples: &[(BigInt, BigInt)]) -> Result<IntPolynomial> {
    let mut coeffs = vec![BigRational::zero(); samples.len()];
    for (i, (ti, ni)) in samples.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (t − t_j)/(t_i − t_j), built up by multiplication
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (tj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            if tj == ti {
                return Err(DqpError::invalid("interpolation nodes must be distinct"));
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(tj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(ti - tj);
        }
        let scale = BigRational::from_integer(ni.clone()) / denom;
        for (k, b) in basis.into_iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(DqpError::InternalCheck(format!(
                    "interpolated coefficient {c} is not an integer"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(ints))
}

/// The first `count` odd primes.
pub fn odd_primes(count: usize) -> Vec<u64> {
    (3u64..)
        .step_by(2)
        .filter(|&v| is_odd_prime(v))
        .take(count)
        .collect()
}

/// Interpolates `predicted_count` at the first `n` odd primes (enough for a
/// degree `n − 1` polynomial) and checks the result against the closed form.
pub fn counting_polynomial(spec: &NormalFormSpec) -> Result<IntPolynomial> {
    let samples: Vec<(BigInt, BigInt)> = odd_primes(spec.n())
        .into_iter()
        .map(|l| (BigInt::from(l), BigInt::from(predicted_count(spec, l))))
        .collect();
    let poly = interpolate(&samples)?;
    let closed = IntPolynomial::counting_closed_form(spec);
    if poly != closed {
        return Err(DqpError::InternalCheck(format!(
            "interpolated counting polynomial {poly} differs from {closed}"
        )));
    }
    Ok(poly)
}

/// `N(1) − 1`: the reduced Euler characteristic read off the counting polynomial.
pub fn reduced_euler_from_count(poly: &IntPolynomial) -> i64 {
    (poly.eval(&BigInt::one()) - BigInt::one())
        .to_i64()
        .expect("small Euler characteristic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: usize, q1: usize) -> NormalFormSpec {
        NormalFormSpec::new(p, q1).unwrap()
    }

    /// Straight enumeration of every point through `eval_normal_form`.
    fn brute_count(spec: &NormalFormSpec, prime: u64, target: u64) -> u64 {
        let n = spec.n();
        let total = prime.pow(n as u32);
        let mut point = vec![0u64; n];
        let mut count = 0;
        for mut idx in 0..total {
            for c in point.iter_mut() {
                *c = idx % prime;
                idx /= prime;
            }
            if eval_normal_form(spec, &point, prime).unwrap() == target {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval_normal_form(&spec(1, 0), &[1, 1], 3).unwrap(), 1);
        // layout (x11, x12, x22, y1, y2)
        assert_eq!(
            eval_normal_form(&spec(2, 0), &[1, 0, 1, 1, 2], 5).unwrap(),
            0
        );
        assert_eq!(eval_normal_form(&spec(1, 1), &[2, 4, 1], 5).unwrap(), 2);
        assert!(eval_normal_form(&spec(1, 0), &[1], 3).is_err());
        assert!(eval_normal_form(&spec(1, 0), &[1, 1], 4).is_err());
        assert!(eval_normal_form(&spec(1, 0), &[1, 1], 2).is_err());
        assert!(eval_normal_form(&spec(1, 0), &[1, 1], 9).is_err());
    }

    #[test]
    fn brute_force_oracle_values() {
        assert_eq!(brute_count(&spec(1, 0), 3, 1), 2);
        assert_eq!(brute_count(&spec(2, 0), 3, 1), 72);
        assert_eq!(brute_count(&spec(2, 1), 3, 1), 216);
        assert_eq!(brute_count(&spec(2, 0), 3, 2), 72);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_count(&spec(1, 0), 3), BigUint::from(2u32));
        assert_eq!(predicted_count(&spec(2, 0), 3), BigUint::from(72u32));
        assert_eq!(predicted_count(&spec(2, 1), 3), BigUint::from(216u32));
        assert_eq!(predicted_count(&spec(2, 0), 5), BigUint::from(600u32));
    }

    #[test]
    fn fast_counter_matches_brute_force() {
        for (p, q1, prime) in [
            (1, 0, 3),
            (1, 0, 5),
            (1, 2, 3),
            (2, 0, 3),
            (2, 1, 3),
            (1, 1, 7),
        ] {
            let s = spec(p, q1);
            for target in 1..prime {
                let report = count_points(&s, prime, target, DEFAULT_BUDGET, 3).unwrap();
                assert_eq!(report.observed_count, brute_count(&s, prime, target));
                assert!(report.agrees());
            }
        }
    }

    #[test]
    fn count_examples() {
        let r = count_points(&spec(2, 0), 5, 1, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(r.observed_count, 600);
        assert_eq!(r.enumerated, 3125);
        let r = count_points(&spec(2, 0), 3, 2, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(r.observed_count, 72);
    }

    #[test]
    fn count_errors() {
        let s = spec(2, 0);
        assert!(matches!(
            count_points(&s, 3, 1, 100, 1),
            Err(DqpError::BudgetExceeded {
                required: 243,
                budget: 100
            })
        ));
        assert!(count_points(&s, 4, 1, DEFAULT_BUDGET, 1).is_err());
        assert!(count_points(&s, 3, 3, DEFAULT_BUDGET, 1).is_err());
        assert!(NormalFormSpec::new(0, 0).is_err());
    }

    #[test]
    fn partitioning_does_not_change_counts() {
        let s = spec(2, 0);
        let counts: Vec<u64> = [1, 2, 3, 8, 64]
            .iter()
            .map(|&jobs| {
                count_points(&s, 5, 1, DEFAULT_BUDGET, jobs)
                    .unwrap()
                    .observed_count
            })
            .collect();
        assert!(counts.iter().all(|&c| c == 600), "{counts:?}");
    }

    #[test]
    fn polynomials() {
        assert_eq!(
            counting_polynomial(&spec(1, 0)).unwrap().to_string(),
            "t - 1"
        );
        assert_eq!(
            counting_polynomial(&spec(2, 0)).unwrap().to_string(),
            "t^4 - t^2"
        );
        assert_eq!(
            counting_polynomial(&spec(2, 1)).unwrap().to_string(),
            "t^5 - t^3"
        );
        let poly = counting_polynomial(&spec(3, 0)).unwrap();
        assert_eq!(poly.degree(), Some(8));
        assert!(poly.eval(&BigInt::one()).is_zero());
        assert_eq!(reduced_euler_from_count(&poly), -1);
    }

    #[test]
    fn interpolation_rejects_non_integer_fits() {
        let samples = vec![
            (BigInt::from(0), BigInt::from(0)),
            (BigInt::from(2), BigInt::from(1)),
        ];
        assert!(interpolate(&samples).is_err());
        let dup = vec![
            (BigInt::from(1), BigInt::from(0)),
            (BigInt::from(1), BigInt::from(0)),
        ];
        assert!(interpolate(&dup).is_err());
    }
}
