//! Exact scalars over ℤ or ℚ.
//!
//! A [`Scalar`] is an arbitrary-precision rational together with a ring tag.
//! ℤ-tagged scalars always have denominator 1; the tag of a binary result is
//! the join of the operand tags (ℤ only when both operands are ℤ).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient ring: the integers or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    /// Smallest ring containing both operands.
    pub fn join(self, other: Ring) -> Ring {
        if self == Ring::Z && other == Ring::Z {
            Ring::Z
        } else {
            Ring::Q
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        }
    }

    pub fn require_eq(self, other: Ring) -> Result<Ring> {
        if self == other {
            Ok(self)
        } else {
            Err(Error::RingMismatch(self.name(), other.name()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact integer or rational number.
///
/// Stored in lowest terms with positive denominator (maintained by
/// `BigRational`). The ring tag rides along through arithmetic; equality
/// compares values only (ℤ embeds in ℚ).
#[derive(Debug, Clone)]
pub struct Scalar {
    ring: Ring,
    value: BigRational,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.value == other.value
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl Scalar {
    pub fn zero(ring: Ring) -> Scalar {
        Scalar { ring, value: BigRational::zero() }
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar { ring, value: BigRational::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Scalar {
        Scalar { ring: Ring::Z, value: BigRational::from_integer(n.into()) }
    }

    /// ℚ-tagged p/q, reduced. Panics if `den` is zero.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Scalar {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Scalar { ring: Ring::Q, value: BigRational::new(num.into(), den) }
    }

    pub fn from_rational(value: BigRational, ring: Ring) -> Scalar {
        debug_assert!(ring == Ring::Q || value.is_integer());
        Scalar { ring, value }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rational(&self) -> &BigRational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// True for ±1 over ℤ, any nonzero value over ℚ.
    pub fn is_unit(&self) -> bool {
        match self.ring {
            Ring::Z => self.value.numer().magnitude().is_one() && self.value.is_integer(),
            Ring::Q => !self.value.is_zero(),
        }
    }

    /// The integer value, if the scalar is an integer.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.value.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or_else(|| {
            // Out-of-range ratios: fall back on sign * infinity.
            match self.value.numer().sign() {
                Sign::Minus => f64::NEG_INFINITY,
                Sign::NoSign => 0.0,
                Sign::Plus => f64::INFINITY,
            }
        })
    }

    /// Retag into a (possibly larger) ring. Demoting ℚ→ℤ requires an
    /// integral value.
    pub fn to_ring(&self, ring: Ring) -> Result<Scalar> {
        match (self.ring, ring) {
            (Ring::Q, Ring::Z) if !self.is_integer() => Err(Error::IntegralityViolation(format!(
                "{} is not an integer",
                self
            ))),
            _ => Ok(Scalar { ring, value: self.value.clone() }),
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar { ring: self.ring, value: self.value.abs() }
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.value.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let value = self.value.recip();
        let ring = if self.ring == Ring::Z && value.is_integer() { Ring::Z } else { Ring::Q };
        Ok(Scalar { ring, value })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let value = &self.value / &rhs.value;
        let ring = if self.ring.join(rhs.ring) == Ring::Z && value.is_integer() {
            Ring::Z
        } else {
            Ring::Q
        };
        Ok(Scalar { ring, value })
    }

    pub fn pow(&self, exp: i64) -> Scalar {
        if exp == 0 {
            return Scalar::one(self.ring);
        }
        let value = if exp > 0 {
            self.value.pow(exp as i32)
        } else {
            assert!(!self.value.is_zero(), "zero to a negative power");
            self.value.pow(exp as i32)
        };
        let ring = if self.ring == Ring::Z && value.is_integer() { Ring::Z } else { Ring::Q };
        Scalar { ring, value }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_integer() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Scalar {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar {
                    ring: self.ring.join(rhs.ring),
                    value: &self.value $op &rhs.value,
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.ring = self.ring.join(rhs.ring);
        self.value += &rhs.value;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.ring = self.ring.join(rhs.ring);
        self.value -= &rhs.value;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.ring = self.ring.join(rhs.ring);
        self.value *= &rhs.value;
    }
}

/// Exact division. Panics on a zero divisor; use [`Scalar::checked_div`]
/// where the divisor is data-dependent.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ring: self.ring, value: -&self.value }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ring: self.ring, value: -self.value }
    }
}
