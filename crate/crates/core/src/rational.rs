//! Exact rational scalars.
//!
//! Every coefficient and every exponent in the crate is a [`Rational`], an
//! arbitrary-precision reduced fraction with positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders `p` or `p/q`, the spelling the parser reads back.
pub fn render(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_one(q: &Rational) -> bool {
    q.is_one()
}

pub(crate) fn sign_of(q: &Rational) -> crate::seqrep::Sign {
    use crate::seqrep::Sign;
    if q.is_zero() {
        Sign::Zero
    } else if q.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_reduces() {
        assert_eq!(render(&ratio(4, -6)), "-2/3");
        assert_eq!(render(&int(7)), "7");
        assert_eq!(render(&ratio(0, 5)), "0");
    }
}
