//! Truncated formal power series.
//!
//! A [`TruncSeries`] of order N stores the coefficients of t^0..t^N; nothing
//! is known beyond t^N. Binary operations truncate to the smaller order.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

#[derive(Debug, Clone)]
pub struct TruncSeries {
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &TruncSeries) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for TruncSeries {}

impl TruncSeries {
    /// Series from explicit coefficients c_0..c_N (order = N).
    pub fn new(coeffs: Vec<Scalar>, ring: Ring) -> TruncSeries {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.to_ring(ring).expect("series coefficient outside ring"))
            .collect();
        TruncSeries { ring, coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> TruncSeries {
        TruncSeries::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), Ring::Z)
    }

    pub fn zero(order: usize, ring: Ring) -> TruncSeries {
        TruncSeries { ring, coeffs: vec![Scalar::zero(ring); order + 1] }
    }

    pub fn one(order: usize, ring: Ring) -> TruncSeries {
        let mut s = TruncSeries::zero(order, ring);
        s.coeffs[0] = Scalar::one(ring);
        s
    }

    /// Truncate a polynomial to a series of the given order.
    pub fn from_poly(p: &Poly, order: usize) -> TruncSeries {
        let coeffs = (0..=order).map(|k| p.coeff(k)).collect();
        TruncSeries { ring: p.ring(), coeffs }
    }

    /// Geometric series 1/(1−rt) up to order.
    pub fn geometric(r: &Scalar, order: usize) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Scalar::one(r.ring());
        for _ in 0..=order {
            coeffs.push(c.clone());
            c = &c * r;
        }
        TruncSeries { ring: r.ring(), coeffs }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        let order = order.min(self.order());
        TruncSeries { ring: self.ring, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn to_ring(&self, ring: Ring) -> Result<TruncSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries { ring, coeffs })
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_integer)
    }

    /// Coefficientwise sum at the smaller order.
    pub fn add(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        let ring = self.ring.require_eq(rhs.ring)?;
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect();
        Ok(TruncSeries { ring, coeffs })
    }

    pub fn sub(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        let ring = self.ring.require_eq(rhs.ring)?;
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect();
        Ok(TruncSeries { ring, coeffs })
    }

    pub fn scale(&self, s: &Scalar) -> TruncSeries {
        TruncSeries {
            ring: self.ring.join(s.ring()),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        let ring = self.ring.require_eq(rhs.ring)?;
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Scalar::zero(ring); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                let t = a * b;
                coeffs[i + j] += &t;
            }
        }
        Ok(TruncSeries { ring, coeffs })
    }

    /// Multiplicative inverse; the constant term must be a unit (±1 over ℤ).
    pub fn inv(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_unit() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let c0_inv = self.coeffs[0].recip()?;
        let order = self.order();
        let mut inv = vec![Scalar::zero(self.ring); order + 1];
        inv[0] = c0_inv.clone().to_ring(self.ring)?;
        for n in 1..=order {
            let mut acc = Scalar::zero(self.ring);
            for k in 1..=n {
                let t = &self.coeffs[k] * &inv[n - k];
                acc += &t;
            }
            inv[n] = -(acc * &c0_inv).to_ring(self.ring)?;
        }
        Ok(TruncSeries { ring: self.ring, coeffs: inv })
    }

    /// n-fold product, with negative exponents through [`TruncSeries::inv`].
    pub fn pow(&self, exp: i64) -> Result<TruncSeries> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = TruncSeries::one(self.order(), self.ring);
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// t·d/dt, same order (the top coefficient of d/dt alone would be lost;
    /// t·d/dt keeps all known coefficients in range).
    pub fn t_derivative(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * &Scalar::from_int(k as i64))
            .collect();
        TruncSeries { ring: self.ring, coeffs }
    }

    /// exp of a series with zero constant term, over ℚ.
    ///
    /// Solved coefficientwise from E′ = a′·E: n·e_n = Σ_{k=1..n} k·a_k·e_{n−k}.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs zero constant term".into()));
        }
        let order = self.order();
        let a: Vec<Scalar> = self.coeffs.iter().map(|c| c.to_ring(Ring::Q).unwrap()).collect();
        let mut e = vec![Scalar::zero(Ring::Q); order + 1];
        e[0] = Scalar::one(Ring::Q);
        for n in 1..=order {
            let mut acc = Scalar::zero(Ring::Q);
            for k in 1..=n {
                if a[k].is_zero() {
                    continue;
                }
                let t = &(&a[k] * &e[n - k]) * &Scalar::from_int(k as i64);
                acc += &t;
            }
            e[n] = acc.checked_div(&Scalar::from_int(n as i64))?;
        }
        Ok(TruncSeries { ring: Ring::Q, coeffs: e })
    }

    /// log of a series with constant term 1, over ℚ.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        let order = self.order();
        let p: Vec<Scalar> = self.coeffs.iter().map(|c| c.to_ring(Ring::Q).unwrap()).collect();
        let mut l = vec![Scalar::zero(Ring::Q); order + 1];
        for n in 1..=order {
            let mut acc = Scalar::zero(Ring::Q);
            for k in 1..n {
                if l[k].is_zero() || p[n - k].is_zero() {
                    continue;
                }
                let t = &(&l[k] * &p[n - k]) * &Scalar::from_int(k as i64);
                acc += &t;
            }
            l[n] = &p[n] - &acc.checked_div(&Scalar::from_int(n as i64))?;
        }
        Ok(TruncSeries { ring: Ring::Q, coeffs: l })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{}", k)?;
                    }
                }
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
