//! Dense univariate polynomials with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// A dense polynomial, coefficients lowest degree first.
///
/// The zero polynomial has an empty coefficient list and degree −1; otherwise
/// the leading coefficient is nonzero. Equality compares coefficients only,
/// not ring tags.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>, ring: Ring) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.to_ring(ring).expect("polynomial coefficient outside ring"))
            .collect();
        Poly { ring, coeffs }
    }

    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: Ring) -> Poly {
        Poly::constant(Scalar::one(ring))
    }

    pub fn constant(c: Scalar) -> Poly {
        let ring = c.ring();
        Poly::new(vec![c], ring)
    }

    /// The monomial c·x^k.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let ring = c.ring();
        let mut coeffs = vec![Scalar::zero(ring); k];
        coeffs.push(c);
        Poly::new(coeffs, ring)
    }

    /// x over ℤ.
    pub fn x() -> Poly {
        Poly::monomial(Scalar::one(Ring::Z), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), Ring::Z)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn to_ring(&self, ring: Ring) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { ring, coeffs })
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_integer)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.ring.join(x.ring()));
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_int(k as i64))
            .collect();
        Poly::new(coeffs, self.ring)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect(), self.ring.join(s.ring()))
    }

    /// Divide through by the leading coefficient (result over ℚ unless
    /// already monic).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let lead = self.leading();
        let ring = if self.coeffs.iter().all(|c| c.checked_div(&lead).map(|q| q.is_integer()).unwrap_or(false))
            && self.ring == Ring::Z
        {
            Ring::Z
        } else {
            Ring::Q
        };
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect(), ring)
    }

    /// p(q(x)) by Horner over polynomials.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let ring = self.ring.join(inner.ring());
        let mut acc = Poly::zero(ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.to_ring(ring).expect("ring join"));
        }
        acc
    }

    /// Coefficient reversal at the polynomial's own degree: x^deg · p(1/x).
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs, self.ring)
    }

    /// Largest k with x^k dividing p, and the quotient. Zero maps to (0, 0).
    pub fn strip_power_of_x(&self) -> (usize, Poly) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (k, Poly::new(self.coeffs[k..].to_vec(), self.ring))
    }

    /// Euclidean division over the fraction field: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        let ring = self.ring.join(divisor.ring);
        let mut rem: Vec<Scalar> = self.coeffs.iter().map(|c| c.to_ring(Ring::Q).unwrap()).collect();
        let dd = divisor.degree() as usize;
        let lead = divisor.leading();
        let mut quot = vec![Scalar::zero(Ring::Q); rem.len().saturating_sub(dd)];
        while rem.len() > dd || (dd == 0 && !rem.is_empty()) {
            if rem.len() < dd + 1 {
                break;
            }
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for i in 0..=dd {
                let t = &q * &divisor.coeffs[i];
                rem[k + i] -= &t;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[k] = q;
        }
        let demote = |p: Poly| -> Poly {
            if ring == Ring::Z && p.has_integer_coeffs() {
                p.to_ring(Ring::Z).unwrap()
            } else {
                p
            }
        };
        Ok((demote(Poly::new(quot, Ring::Q)), demote(Poly::new(rem, Ring::Q))))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inconsistent(format!("{} does not divide {}", divisor, self)))
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd over the fraction field.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Monic product of the distinct irreducible factors: p / gcd(p, p′).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// gcd of the integer coefficients (content), for integer polynomials.
    pub fn content(&self) -> Result<BigInt> {
        if !self.has_integer_coeffs() {
            return Err(Error::NonIntegerEntries);
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(&c.to_bigint().unwrap());
        }
        Ok(g)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let ring = self.ring.join(rhs.ring);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::new(coeffs, ring)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let ring = self.ring.join(rhs.ring);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::new(coeffs, ring)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let ring = self.ring.join(rhs.ring);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(ring);
        }
        let mut coeffs = vec![Scalar::zero(ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] += &t;
            }
        }
        Poly::new(coeffs, ring)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.ring)
    }
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// The n-th cyclotomic polynomial Φ_n over ℤ, via
/// Φ_n = (x^n − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1);
    let mut phi_cache: Vec<Option<Poly>> = vec![None; (n + 1) as usize];
    cyclotomic_memo(n, &mut phi_cache)
}

fn cyclotomic_memo(n: u64, cache: &mut Vec<Option<Poly>>) -> Poly {
    if let Some(p) = &cache[n as usize] {
        return p.clone();
    }
    // x^n - 1
    let mut coeffs = vec![Scalar::zero(Ring::Z); (n + 1) as usize];
    coeffs[0] = Scalar::from_int(-1);
    coeffs[n as usize] = Scalar::from_int(1);
    let mut p = Poly::new(coeffs, Ring::Z);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_memo(d, cache);
            p = p.div_exact(&phi_d).expect("cyclotomic divisibility");
        }
    }
    let p = p.to_ring(Ring::Z).expect("cyclotomic polynomials are integral");
    cache[n as usize] = Some(p.clone());
    p
}

/// Whether a monic integer polynomial is a product of cyclotomic polynomials,
/// i.e. all its roots are roots of unity.
///
/// Kronecker's bound φ(n) ≥ √(n/2) confines candidate orders to
/// n ≤ 2·deg², which makes the test finite and exact.
pub fn factors_into_cyclotomics(p: &Poly) -> bool {
    if p.is_zero() || !p.is_monic() || !p.has_integer_coeffs() {
        return false;
    }
    let mut rem = p.to_ring(Ring::Z).unwrap();
    if rem.is_one() {
        return true;
    }
    let deg = rem.degree() as u64;
    let bound = 2 * deg * deg;
    for n in 1..=bound {
        if rem.is_one() {
            return true;
        }
        if euler_phi(n) > rem.degree() as u64 {
            continue;
        }
        let phi_n = cyclotomic(n);
        while phi_n.divides(&rem) {
            rem = rem.div_exact(&phi_n).unwrap();
            if rem.is_one() {
                return true;
            }
        }
    }
    rem.is_one()
}

/// Unique interpolating polynomial of degree < #points, by Newton's divided
/// differences over ℚ.
pub fn interpolate(points: &[(Scalar, Scalar)]) -> Result<Poly> {
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(Error::RepeatedAbscissa);
            }
        }
    }
    if points.is_empty() {
        return Ok(Poly::zero(Ring::Q));
    }
    let n = points.len();
    // Divided-difference table, destructively updated in place.
    let mut table: Vec<Scalar> = points.iter().map(|(_, y)| y.to_ring(Ring::Q).unwrap()).collect();
    let xs: Vec<Scalar> = points.iter().map(|(x, _)| x.to_ring(Ring::Q).unwrap()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = &xs[i] - &xs[i - level];
            table[i] = (&table[i] - &table[i - 1]).checked_div(&dx)?;
        }
    }
    // Horner assembly of sum_k table[k] * prod_{j<k} (x - x_j).
    let mut acc = Poly::constant(table[n - 1].clone());
    for k in (0..n - 1).rev() {
        let linear = Poly::new(vec![-&xs[k], Scalar::one(Ring::Q)], Ring::Q);
        acc = &(&acc * &linear) + &Poly::constant(table[k].clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_normalization() {
        let p = Poly::new(vec![Scalar::from_int(1), Scalar::from_int(0), Scalar::from_int(0)], Ring::Z);
        assert_eq!(p.degree(), 0);
        assert_eq!(Poly::zero(Ring::Z).degree(), -1);
    }

    #[test]
    fn div_rem_exact() {
        // (x-1)^2 = x^2 - 2x + 1 divided by x - 1
        let p = Poly::from_ints(&[1, -2, 1]);
        let d = Poly::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[2, 2]); // (x-1)(2x+2)
        let b = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[3, 3, 3]);
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_ints(&[1, 1])); // x + 1
    }

    #[test]
    fn cyclotomics_small() {
        assert_eq!(cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(3), Poly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_factorization_detection() {
        // x^2 + x + 1 is cyclotomic; x^2 - x - 1 (golden ratio) is not.
        assert!(factors_into_cyclotomics(&Poly::from_ints(&[1, 1, 1])));
        assert!(!factors_into_cyclotomics(&Poly::from_ints(&[-1, -1, 1])));
        // Products and powers.
        let p = &cyclotomic(5) * &cyclotomic(8);
        assert!(factors_into_cyclotomics(&p));
        let sq = &cyclotomic(3) * &cyclotomic(3);
        assert!(factors_into_cyclotomics(&sq));
        assert!(!factors_into_cyclotomics(&Poly::from_ints(&[-2, 1])));
    }

    #[test]
    fn interpolation_line_and_parabola() {
        // {(0,1),(1,3)} -> 2x + 1
        let pts = vec![
            (Scalar::from_int(0), Scalar::from_int(1)),
            (Scalar::from_int(1), Scalar::from_int(3)),
        ];
        let p = interpolate(&pts).unwrap();
        assert_eq!(p.to_ring(Ring::Z).unwrap(), Poly::from_ints(&[1, 2]));

        // {(0,1),(1,3),(2,7)} -> x^2 + x + 1, solved by hand from the
        // Vandermonde system: c0=1, c0+c1+c2=3, c0+2c1+4c2=7.
        let pts = vec![
            (Scalar::from_int(0), Scalar::from_int(1)),
            (Scalar::from_int(1), Scalar::from_int(3)),
            (Scalar::from_int(2), Scalar::from_int(7)),
        ];
        let p = interpolate(&pts).unwrap();
        assert_eq!(p.to_ring(Ring::Z).unwrap(), Poly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn interpolation_rejects_repeats() {
        let pts = vec![
            (Scalar::from_int(1), Scalar::from_int(1)),
            (Scalar::from_int(1), Scalar::from_int(2)),
        ];
        assert_eq!(interpolate(&pts), Err(Error::RepeatedAbscissa));
    }

    #[test]
    fn interpolation_round_trip() {
        let p = Poly::from_ints(&[3, -1, 0, 2, 5]);
        let pts: Vec<_> = (0..=p.degree())
            .map(|k| {
                let x = Scalar::from_int(k);
                (x.clone(), p.eval(&x))
            })
            .collect();
        let q = interpolate(&pts).unwrap();
        assert_eq!(q.to_ring(Ring::Z).unwrap(), p);
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-1, 1])) * &Poly::from_ints(&[1, 1]);
        assert_eq!(p.squarefree_part(), Poly::from_ints(&[-1, 0, 1]).monic());
        assert!(!p.is_squarefree());
        assert!(Poly::from_ints(&[1, 1, 1]).is_squarefree());
    }

    #[test]
    fn euler_phi_values() {
        let expected = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi((i + 1) as u64), e);
        }
    }
}
