//! The closed dimension formula for `C^r_k(AS(Δ_n))` and truncated binomials.

use crate::error::{Error, Result};

/// `C(a, b)` with the truncation convention: zero whenever `a < b`
/// (including negative `a`), and `C(a, 0) = 1` for `a >= 0`.
pub fn binomial(a: i64, b: u64) -> Result<u64> {
    if a < 0 || (a as u64) < b {
        return Ok(0);
    }
    let a = a as u64;
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(acc as u64)
}

/// Closed formula for `dim C^r_k(AS(Δ_n))`:
///
/// * `r` odd: `C(k+n, n) + n·C(k + n - (r+1)(n+1)/2, n)`
/// * `r` even: `C(k+n, n) + Σ_{t=0}^{n-1} C(k + t - r(n+1)/2, n)`
pub fn conjecture_dim(n: i64, r: i64, k: i64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("n must be at least 1, got {n}")));
    }
    if r < 0 {
        return Err(Error::InvalidParameter(format!("r must be nonnegative, got {r}")));
    }
    if k < 0 {
        return Err(Error::InvalidParameter(format!("k must be nonnegative, got {k}")));
    }
    let nn = n as u64;
    let base = binomial(k + n, nn)?;
    let correction = if r % 2 == 1 {
        let shift = exact_half((r + 1) * (n + 1));
        binomial(k + n - shift, nn)?
            .checked_mul(nn)
            .ok_or(Error::Overflow("conjecture_dim"))?
    } else {
        let shift = exact_half(r * (n + 1));
        let mut sum: u64 = 0;
        for t in (0..n).rev() {
            sum = sum
                .checked_add(binomial(k + t - shift, nn)?)
                .ok_or(Error::Overflow("conjecture_dim"))?;
        }
        sum
    };
    base.checked_add(correction).ok_or(Error::Overflow("conjecture_dim"))
}

fn exact_half(v: i64) -> i64 {
    assert!(v % 2 == 0, "{v} is odd; parity of r makes this product even");
    v / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::terao_dim;

    #[test]
    fn binomial_truncation() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(2, 3).unwrap(), 0);
        assert_eq!(binomial(-4, 2).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(7, 0).unwrap(), 1);
        assert_eq!(binomial(-1, 0).unwrap(), 0);
        assert_eq!(binomial(40, 10).unwrap(), 847_660_528);
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(conjecture_dim(2, 1, 3).unwrap(), 12);
        for n in 1..8 {
            for r in 0..8 {
                assert_eq!(conjecture_dim(n, r, 0).unwrap(), 1);
            }
            assert_eq!(conjecture_dim(n, 0, 1).unwrap(), n as u64 + 2);
        }
        assert_eq!(conjecture_dim(3, 1, 5).unwrap(), 68);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(conjecture_dim(0, 1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(conjecture_dim(2, -1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(conjecture_dim(2, 1, -1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn only_global_polynomials_below_r_plus_one() {
        for n in 1..8i64 {
            for r in 0..8i64 {
                for k in 0..=r {
                    assert_eq!(conjecture_dim(n, r, k).unwrap(), binomial(k + n, n as u64).unwrap());
                }
            }
        }
    }

    #[test]
    fn formula_equals_terao_dim() {
        for n in 1..=10i64 {
            for r in 0..=10i64 {
                for k in 0..=30i64 {
                    assert_eq!(
                        conjecture_dim(n, r, k).unwrap(),
                        terao_dim(n as u64, (r + 1) as u64, k as u64).unwrap()
                    );
                }
            }
        }
    }
}
