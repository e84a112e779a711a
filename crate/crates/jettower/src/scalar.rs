//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals; there is
//! no floating point anywhere. `BigRational` already maintains the canonical
//! reduced form (gcd(num, den) = 1, den > 0).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`. Panics on zero denominator.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn is_zero(x: &Scalar) -> bool {
    x.is_zero()
}

pub fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}

/// Exact integer check; returns the integer when the denominator is 1.
pub fn as_integer(x: &Scalar) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}
