//! Exact integer helpers shared by the closed forms and the engines.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` computed multiplicatively; every partial product is itself a
/// binomial coefficient so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `p(p+1)/2`, the number of independent entries of a symmetric `p × p` matrix.
pub fn triangular(p: usize) -> usize {
    p * (p + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal_rows() {
        let mut row = vec![BigInt::one()];
        for n in 0..40u64 {
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as u64), expected, "C({n},{k})");
            }
            assert!(binomial(n, n + 1).is_zero());
            let mut next = vec![BigInt::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
    }

    #[test]
    fn binomial_is_exact_beyond_u64() {
        // C(100, 50) = 100891344545564193334812497256
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn sign_handles_negative_exponents() {
        assert_eq!(sign(-3), -1);
        assert_eq!(sign(-2), 1);
        assert_eq!(sign(0), 1);
        assert_eq!(sign(7), -1);
    }
}
