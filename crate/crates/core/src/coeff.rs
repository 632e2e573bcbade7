//! Exact rational scalars.
//!
//! All arithmetic in the crate runs over arbitrary-precision rationals; there
//! is no floating point anywhere. `num_rational::BigRational` keeps fractions
//! reduced with a positive denominator, which is exactly the canonical form
//! the serializers rely on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Coeff = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduced fraction `num/den`, `den != 0`.
pub fn rat(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(c: &Coeff) -> bool {
    c.is_zero()
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Coeff {
    if k > n {
        return Coeff::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// `base^exp` for integer `exp`; `None` when inverting zero.
pub fn pow(base: &Coeff, exp: i64) -> Option<Coeff> {
    if exp == 0 {
        return Some(Coeff::one());
    }
    if base.is_zero() {
        return if exp > 0 { Some(Coeff::zero()) } else { None };
    }
    let mut acc = Coeff::one();
    let mut b = if exp > 0 { base.clone() } else { base.recip() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    Some(acc)
}

/// Sign of a rational as -1, 0, or 1.
pub fn signum(c: &Coeff) -> i32 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical text form, `num` or `num/den`.
pub fn display(c: &Coeff) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_row() {
        let row: Vec<Coeff> = (0..=4).map(|k| binomial(4, k)).collect();
        assert_eq!(row, vec![int(1), int(4), int(6), int(4), int(1)]);
    }

    #[test]
    fn pow_negative() {
        assert_eq!(pow(&rat(2, 3), -2), Some(rat(9, 4)));
        assert_eq!(pow(&int(0), -1), None);
        assert_eq!(pow(&int(0), 0), Some(int(1)));
    }
}
