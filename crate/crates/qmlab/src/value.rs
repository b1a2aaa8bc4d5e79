//! Exact rational values for measure evaluation.
//!
//! Solid-rule measures take values in {0,1} and every extension step is a
//! finite sum or difference of such values, so measure arithmetic stays in
//! the rationals and identities like `eval(A) + eval(A^c) = 1` can be
//! asserted exactly. Mixture weights given as floats are converted exactly
//! (every finite f64 is a dyadic rational).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational measure value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Value(BigRational);

impl Value {
    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn one() -> Self {
        Value(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Value(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Value(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact conversion; returns `None` for NaN or infinities.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Value)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// True iff the value is exactly 0 or exactly 1.
    pub fn is_zero_or_one(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn abs(&self) -> Self {
        Value(self.0.abs())
    }

    pub fn approx_eq(&self, other: &Value, tol: f64) -> bool {
        (self.clone() - other.clone()).abs().to_f64() <= tol
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl AddAssign for Value {
    fn add_assign(&mut self, rhs: Value) {
        self.0 += rhs.0;
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0 - rhs.0)
    }
}

impl Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        Value(self.0 * rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering() {
        assert_eq!(Value::one().to_string(), "1");
        assert_eq!(Value::ratio(1, 2).to_string(), "1/2");
        assert_eq!(Value::ratio(2, 4).to_string(), "1/2");
        assert_eq!((Value::one() - Value::ratio(1, 3)).to_string(), "2/3");
    }

    #[test]
    fn dyadic_floats_convert_exactly() {
        let half = Value::from_f64_exact(0.5).unwrap();
        assert_eq!(half, Value::ratio(1, 2));
        assert_eq!(half.to_f64(), 0.5);
        assert!(Value::from_f64_exact(f64::NAN).is_none());
    }

    #[test]
    fn complement_identity_is_exact() {
        let a = Value::ratio(3, 7);
        let b = Value::one() - a.clone();
        assert_eq!(a + b, Value::one());
    }
}
