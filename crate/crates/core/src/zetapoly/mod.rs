//! Zeta polynomials: from a numerator U(z) with U(1) ≠ 0, the coefficients
//! of U(z)/(1−z)^{e+1} are the values of a degree-e polynomial H, and
//! Z(z) = H(−z) behaves like a zeta function: when all roots of U lie on
//! the unit circle, Z satisfies the exact functional equation
//! Z(1−z) = (−1)^e·Z(z) and all its roots lie on the line Re(z) = 1/2.
//!
//! The functional equation is checked exactly over ℚ; root locations are
//! numeric (the roots are algebraic numbers of unbounded degree).

pub mod roots;

pub use roots::{find_roots, ComplexApprox};

use crate::error::{Error, Result};
use crate::poly::{interpolate, Poly};
use crate::ratfunc::RatFunc;
use crate::scalar::{Ring, Scalar};

/// A numerator U(z) with U(1) ≠ 0 and its degree e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaPolyInput {
    u: Poly,
}

impl ZetaPolyInput {
    pub fn new(u: Poly) -> Result<ZetaPolyInput> {
        if u.eval(&Scalar::one(Ring::Q)).is_zero() {
            return Err(Error::UnitRootInNumerator);
        }
        Ok(ZetaPolyInput { u })
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    /// e = deg U.
    pub fn e(&self) -> usize {
        self.u.degree().max(0) as usize
    }
}

/// Everything computed from one numerator.
#[derive(Debug, Clone)]
pub struct ZetaPolyResult {
    /// H with P(z) = Σ H(n)zⁿ; degree e.
    pub h: Poly,
    /// Z(z) = H(−z); degree e.
    pub z: Poly,
    /// Exact verdict on Z(1−z) = (−1)^e·Z(z).
    pub functional_ok: bool,
    /// Numeric roots of Z (empty when e = 0).
    pub roots: Vec<ComplexApprox>,
    /// max |Re(root) − 1/2| over the roots (0 when there are none).
    pub max_critical_deviation: f64,
}

/// The polynomial H of degree e with U(z)/(1−z)^{e+1} = Σ H(n)zⁿ.
///
/// H is interpolated through the first e+1 series coefficients and then
/// verified against the expansion through index 2e+2; a mismatch would mean
/// a bug, not bad input.
pub fn hilbert_poly(input: &ZetaPolyInput) -> Result<Poly> {
    let e = input.e();
    let order = 2 * e + 2;
    let mut den = Poly::one(Ring::Z);
    let one_minus_z = Poly::from_ints(&[1, -1]);
    for _ in 0..=e {
        den = &den * &one_minus_z;
    }
    let series = RatFunc::new(input.u.clone(), den)?.expand(order)?;
    let points: Vec<(Scalar, Scalar)> = (0..=e)
        .map(|n| (Scalar::from_int(n as i64), series.coeff(n).clone()))
        .collect();
    let h = interpolate(&points)?;
    for n in e + 1..=order {
        if &h.eval(&Scalar::from_int(n as i64)) != series.coeff(n) {
            return Err(Error::Inconsistent(format!(
                "H({}) disagrees with the series expansion",
                n
            )));
        }
    }
    if h.degree() != e as i64 {
        return Err(Error::Inconsistent(format!(
            "deg H = {} but e = {}",
            h.degree(),
            e
        )));
    }
    Ok(h)
}

/// Full pipeline: H, Z = H(−z), exact functional equation, numeric roots
/// and their distance from the critical line.
pub fn zeta_poly(input: &ZetaPolyInput, tol: f64) -> Result<ZetaPolyResult> {
    let e = input.e();
    let h = hilbert_poly(input)?;
    let z = negate_variable(&h);
    let functional_ok = check_functional_equation(&z, e);
    let roots = if z.degree() >= 1 { find_roots(&z, tol)? } else { Vec::new() };
    let max_critical_deviation = roots
        .iter()
        .map(|r| (r.re - 0.5).abs())
        .fold(0.0f64, f64::max);
    Ok(ZetaPolyResult { h, z, functional_ok, roots, max_critical_deviation })
}

/// p(−z): flip the sign of the odd coefficients.
pub fn negate_variable(p: &Poly) -> Poly {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect();
    Poly::new(coeffs, p.ring())
}

/// Exact coefficient comparison of Z(1−z) against (−1)^e·Z(z).
pub fn check_functional_equation(z: &Poly, e: usize) -> bool {
    let one_minus = Poly::from_ints(&[1, -1]);
    let lhs = z.compose(&one_minus);
    let rhs = if e % 2 == 0 { z.clone() } else { -z };
    lhs == rhs
}

/// All numeric roots of U on the unit circle, within tol.
pub fn check_unit_circle(u: &Poly, tol: f64) -> Result<bool> {
    if u.degree() < 1 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let roots = find_roots(u, tol.min(1e-9))?;
    Ok(roots.iter().all(|r| (r.modulus() - 1.0).abs() < tol))
}
