//! Scalar traits shared by the generic matrix and polynomial code.
//!
//! Everything in this crate is exact: the traits below are satisfied by
//! arbitrary-precision integers and rationals (and by the fixed-width
//! integers for small test inputs). Floating point types are deliberately
//! not given an [`ExactInteger`] impl.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
    /// Embeds a small nonnegative integer by double-and-add.
    fn from_count(count: u64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut rest = count;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            rest >>= 1;
        }
        acc
    }
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = T> + Sub<Output = T> + Send + Sync
{
}

/// An integral domain with gcd and exact division, used for fraction-free elimination.
pub trait ExactInteger: Ring + Integer + Signed {}

impl<T: Ring + Integer + Signed> ExactInteger for T {}

/// Rationals over an exact integer type.
pub type RatioOf<I> = Ratio<I>;

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<I: ExactInteger>(values: &[Ratio<I>]) -> I {
    values
        .iter()
        .fold(I::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of the (integer) values; zero for an all-zero slice.
pub fn content<I: ExactInteger>(values: &[I]) -> I {
    values.iter().fold(I::zero(), |acc, v| acc.gcd(v))
}

/// Parses an exact rational from `"p/q"`, `"p"`, or a terminating decimal like `"0.25"`.
pub fn parse_rational(text: &str) -> crate::Result<crate::Rational> {
    use crate::{Int, Rational};
    let text = text.trim();
    if let Ok(q) = text.parse::<Rational>() {
        if q.denom().is_zero() {
            return Err(crate::Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(q);
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) {
            let negative = whole.starts_with('-');
            let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
            if let Ok(numer) = digits.parse::<Int>() {
                let denom = num_traits::pow(Int::from(10), frac.len());
                let q = Rational::new(numer, denom);
                return Ok(if negative { -q } else { q });
            }
        }
    }
    Err(crate::Error::Parse(format!("not a rational number: {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, Rational};

    #[test]
    fn from_count_matches_integer_embedding() {
        for c in [0u64, 1, 2, 7, 64, 1000] {
            assert_eq!(Int::from_count(c), Int::from(c));
            assert_eq!(i64::from_count(c), c as i64);
        }
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        let q = |a: i64, b: i64| Rational::new(Int::from(a), Int::from(b));
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Rational::new(Int::from(6), Int::from(-4));
        assert_eq!(a.numer(), &Int::from(-3));
        assert_eq!(a.denom(), &Int::from(2));
        let sum = Rational::new(Int::from(1), Int::from(6)) + Rational::new(Int::from(1), Int::from(3));
        assert_eq!(sum, Rational::new(Int::from(1), Int::from(2)));
    }

    #[test]
    fn denominators_and_content() {
        let vals = [
            Rational::new(Int::from(1), Int::from(4)),
            Rational::new(Int::from(5), Int::from(6)),
        ];
        assert_eq!(common_denominator(&vals), Int::from(12));
        assert_eq!(content(&[Int::from(6), Int::from(-9), Int::from(0)]), Int::from(3));
        assert_eq!(content::<Int>(&[]), Int::from(0));
    }
}
