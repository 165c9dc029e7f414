//! Rational functions in one indeterminate, kept in reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};
use crate::series::TruncSeries;

/// A reduced rational function num/den.
///
/// Normalization: gcd(num, den) = 1, and den(0) = 1 whenever den does not
/// vanish at 0 (the Witt-rational convention); otherwise den is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() > 0 {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        let c0 = den.coeff(0);
        let unit = if c0.is_zero() { den.leading() } else { c0 };
        if !unit.is_one() {
            let inv = unit.recip()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        // Demote back to Z when everything stayed integral.
        let ring = if num.has_integer_coeffs() && den.has_integer_coeffs() { Ring::Z } else { Ring::Q };
        Ok(RatFunc { num: num.to_ring(ring)?, den: den.to_ring(ring)? })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let ring = p.ring();
        RatFunc { num: p, den: Poly::one(ring) }
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(Poly::zero(Ring::Z))
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one(Ring::Z))
    }

    /// 1/(1−rt).
    pub fn geometric(r: &Scalar) -> RatFunc {
        let den = Poly::new(vec![Scalar::one(r.ring()), -r], r.ring());
        RatFunc { num: Poly::one(r.ring()), den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Power-series expansion to the given order; errors when den(0) = 0.
    pub fn expand(&self, order: usize) -> Result<TruncSeries> {
        if self.den.coeff(0).is_zero() {
            return Err(Error::DenominatorVanishesAtZero);
        }
        let ring = self.num.ring().join(self.den.ring());
        let num = TruncSeries::from_poly(&self.num.to_ring(ring)?, order);
        let den = TruncSeries::from_poly(&self.den.to_ring(ring)?, order);
        num.mul(&den.inv()?)
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    pub fn pow(&self, exp: i64) -> Result<RatFunc> {
        let mut acc = RatFunc::one();
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        for _ in 0..exp.unsigned_abs() {
            acc = (&acc * &base)?;
        }
        Ok(acc)
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc>;
    fn add(self, rhs: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc>;
    fn sub(self, rhs: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc>;
    fn mul(self, rhs: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::InvalidArgument("division by the zero function".into()));
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
