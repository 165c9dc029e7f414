//! The big Witt ring W(R) = 1 + tR[[t]], truncated at a working order.
//!
//! Addition is ordinary series multiplication; multiplication is determined
//! by (1−at)⁻¹ ∗ (1−bt)⁻¹ = (1−abt)⁻¹ and computed here through ghost
//! coordinates, which linearize both operations. Ghost coordinates are
//! injective in characteristic zero, so this is exact; integrality of
//! products of ℤ-elements is asserted on the way back.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::recseq;
use crate::scalar::{Ring, Scalar};
use crate::series::TruncSeries;

/// An element of W(R): a truncated series with constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittElement {
    series: TruncSeries,
}

impl WittElement {
    pub fn new(series: TruncSeries) -> Result<WittElement> {
        if !series.coeff(0).is_one() {
            return Err(Error::InvalidArgument(
                "a Witt element must have constant term 1".into(),
            ));
        }
        Ok(WittElement { series })
    }

    /// The additive identity: the constant series 1.
    pub fn one(order: usize, ring: Ring) -> WittElement {
        WittElement { series: TruncSeries::one(order, ring) }
    }

    /// The multiplicative identity (1−t)⁻¹ = 1 + t + t² + ….
    pub fn unit(order: usize, ring: Ring) -> WittElement {
        WittElement::teichmuller(&Scalar::one(ring), order)
    }

    /// The Teichmüller representative (1−rt)⁻¹ of r.
    pub fn teichmuller(r: &Scalar, order: usize) -> WittElement {
        WittElement { series: TruncSeries::geometric(r, order) }
    }

    pub fn from_ratfunc(rf: &RatFunc, order: usize) -> Result<WittElement> {
        WittElement::new(rf.expand(order)?)
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn into_series(self) -> TruncSeries {
        self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn ring(&self) -> Ring {
        self.series.ring()
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        self.series.coeff(k)
    }

    pub fn to_ring(&self, ring: Ring) -> Result<WittElement> {
        Ok(WittElement { series: self.series.to_ring(ring)? })
    }

    pub fn truncate(&self, order: usize) -> WittElement {
        WittElement { series: self.series.truncate(order) }
    }

    /// Witt addition: series product, truncated to the smaller order.
    pub fn add(&self, rhs: &WittElement) -> Result<WittElement> {
        Ok(WittElement { series: self.series.mul(&rhs.series)? })
    }

    /// Witt negation: the series inverse.
    pub fn neg(&self) -> WittElement {
        WittElement { series: self.series.inv().expect("constant term 1 is invertible") }
    }

    pub fn sub(&self, rhs: &WittElement) -> Result<WittElement> {
        self.add(&rhs.neg())
    }

    /// Witt multiplication through ghost coordinates.
    ///
    /// Both ghost vectors are multiplied componentwise over ℚ and pulled
    /// back with [`ghost_inverse`]. When both inputs are ℤ-tagged the result
    /// must be integral; a non-integral coefficient signals a bug and is
    /// reported as [`Error::IntegralityViolation`].
    pub fn mul(&self, rhs: &WittElement) -> Result<WittElement> {
        let ring = self.ring().require_eq(rhs.ring())?;
        let order = self.order().min(rhs.order());
        let ga = self.truncate(order).ghost();
        let gb = rhs.truncate(order).ghost();
        let product = ga.hadamard(&gb);
        let result = ghost_inverse(&product);
        if ring == Ring::Z {
            if !result.series.has_integer_coeffs() {
                return Err(Error::IntegralityViolation(
                    "Witt product of integral elements must be integral".into(),
                ));
            }
            result.to_ring(Ring::Z)
        } else {
            Ok(result)
        }
    }

    /// Ghost components g_1..g_N, read off from t·P′/P.
    pub fn ghost(&self) -> GhostVector {
        if let Some(ints) = integer_coeffs(&self.series) {
            return GhostVector {
                components: ghost_of_integer_series(&ints)
                    .into_iter()
                    .map(Scalar::from_int)
                    .collect(),
            };
        }
        let inv = self.series.inv().expect("constant term 1 is invertible");
        let log_deriv = self.series.t_derivative().mul(&inv).expect("same ring");
        let components = log_deriv.coeffs()[1..].to_vec();
        GhostVector { components }
    }

    /// The ghost vector of the n-th Frobenius: component k is g_{nk}.
    ///
    /// Needs order ≥ n·len to know g_{n·len}.
    pub fn frobenius_ghost(&self, n: usize, len: usize) -> Result<GhostVector> {
        assert!(n >= 1);
        if self.order() < n * len {
            return Err(Error::InsufficientOrder { need: n * len, have: self.order() });
        }
        let g = self.ghost();
        let components = (1..=len).map(|k| g.component(n * k).clone()).collect();
        Ok(GhostVector { components })
    }

    /// Kronecker-style rationality detection at the working order.
    ///
    /// Computes the ranks of the k×k Hankel matrices of the tail coefficient
    /// sequence (c_1, c_2, …) for k ≤ ⌊order/2⌋. The element is declared
    /// rational only when the ranks are constant over the last three sizes
    /// AND a reconstructed rational witness re-expands to the element
    /// exactly; this is a semidecision at finite order.
    pub fn is_rational_up_to(&self) -> Result<RationalityReport> {
        let order = self.order();
        if order < 8 {
            return Err(Error::InsufficientOrder { need: 8, have: order });
        }
        let tail = &self.series.coeffs()[1..];
        let max_k = order / 2;
        let mut ranks = Vec::with_capacity(max_k);
        for k in 1..=max_k {
            ranks.push(recseq::hankel_from_terms(&tail[..2 * k - 1], k).rank());
        }
        let plateaued = ranks.len() >= 3
            && ranks[max_k - 1] == ranks[max_k - 2]
            && ranks[max_k - 2] == ranks[max_k - 3];
        let witness = if plateaued { self.rational_witness() } else { None };
        Ok(RationalityReport {
            order,
            ranks,
            stabilized: witness.is_some(),
            witness,
        })
    }

    /// Minimal rational function agreeing with the series to its order, if
    /// one of small enough degree exists.
    fn rational_witness(&self) -> Option<RatFunc> {
        let coeffs = self.series.coeffs();
        let (connection, length) = recseq::berlekamp_massey(coeffs);
        if length * 2 > self.order() {
            return None; // not enough coefficients to trust the recurrence
        }
        let den = TruncSeries::from_poly(&connection.to_ring(self.ring()).ok()?, self.order());
        let product = den.mul(&self.series).ok()?;
        // For a valid connection polynomial the product is a polynomial of
        // degree < length.
        let num = Poly::new(product.coeffs()[..length.max(1)].to_vec(), product.ring());
        if product.coeffs()[length.max(1)..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let witness = RatFunc::new(num, connection).ok()?;
        let check = witness.expand(self.order()).ok()?;
        (&check == &self.series).then_some(witness)
    }
}

/// A vector of ghost components (g_1, …, g_N); indexing is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostVector {
    components: Vec<Scalar>,
}

impl GhostVector {
    pub fn new(components: Vec<Scalar>) -> GhostVector {
        GhostVector { components }
    }

    pub fn zero(len: usize, ring: Ring) -> GhostVector {
        GhostVector { components: vec![Scalar::zero(ring); len] }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// g_k for 1 ≤ k ≤ N.
    pub fn component(&self, k: usize) -> &Scalar {
        assert!(k >= 1 && k <= self.components.len(), "ghost index out of range");
        &self.components[k - 1]
    }

    pub fn components(&self) -> &[Scalar] {
        &self.components
    }

    pub fn add(&self, rhs: &GhostVector) -> GhostVector {
        let n = self.len().min(rhs.len());
        GhostVector {
            components: (0..n).map(|i| &self.components[i] + &rhs.components[i]).collect(),
        }
    }

    pub fn hadamard(&self, rhs: &GhostVector) -> GhostVector {
        let n = self.len().min(rhs.len());
        GhostVector {
            components: (0..n).map(|i| &self.components[i] * &rhs.components[i]).collect(),
        }
    }
}

/// The unique Witt element with the given ghost vector (over ℚ):
/// exp(Σ g_m t^m / m), truncated at order N = len(g).
///
/// Integral ghost vectors take an all-integer path: with E_n = n!·c_n the
/// exponential recurrence clears to E_n = Σ_k g_k·(n−1)!/(n−k)!·E_{n−k},
/// leaving a single rational reduction per coefficient.
pub fn ghost_inverse(g: &GhostVector) -> WittElement {
    if g.components.iter().all(Scalar::is_integer) {
        let ints: Vec<BigInt> =
            g.components.iter().map(|c| c.to_bigint().expect("integer")).collect();
        let mut scaled = Vec::with_capacity(g.len() + 1);
        scaled.push(<BigInt as One>::one());
        for m in 1..=ints.len() {
            let mut falling = <BigInt as One>::one();
            let mut acc = BigInt::zero();
            for k in 1..=m {
                acc += &ints[k - 1] * &falling * &scaled[m - k];
                if k < m {
                    falling *= m - k;
                }
            }
            scaled.push(acc);
        }
        let mut coeffs = Vec::with_capacity(scaled.len());
        coeffs.push(Scalar::one(Ring::Q));
        let mut factorial = <BigInt as One>::one();
        for (m, e) in scaled.iter().enumerate().skip(1) {
            factorial *= m;
            coeffs.push(Scalar::from_ratio(e.clone(), factorial.clone()));
        }
        let series = TruncSeries::new(coeffs, Ring::Q);
        return WittElement { series };
    }
    let mut coeffs = Vec::with_capacity(g.len() + 1);
    coeffs.push(Scalar::zero(Ring::Q));
    for (i, gm) in g.components.iter().enumerate() {
        let m = Scalar::from_int((i + 1) as i64);
        coeffs.push(gm.checked_div(&m).expect("m >= 1"));
    }
    let series = TruncSeries::new(coeffs, Ring::Q).exp().expect("zero constant term");
    WittElement { series }
}

/// Coefficients as plain integers, when the series is integral.
fn integer_coeffs(series: &TruncSeries) -> Option<Vec<BigInt>> {
    series.coeffs().iter().map(Scalar::to_bigint).collect()
}

/// t·P′/P for an integer series with constant term 1, entirely over ℤ.
fn ghost_of_integer_series(p: &[BigInt]) -> Vec<BigInt> {
    let order = p.len() - 1;
    debug_assert!(p[0].is_one());
    // q = P^{-1}: q_n = -sum_{k=1..n} p_k q_{n-k}.
    let mut q = Vec::with_capacity(order + 1);
    q.push(<BigInt as One>::one());
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if !p[k].is_zero() {
                acc += &p[k] * &q[n - k];
            }
        }
        q.push(-acc);
    }
    // g_m = sum_{j=1..m} j·p_j·q_{m-j}.
    (1..=order)
        .map(|m| {
            let mut acc = BigInt::zero();
            for j in 1..=m {
                if !p[j].is_zero() {
                    acc += BigInt::from(j) * &p[j] * &q[m - j];
                }
            }
            acc
        })
        .collect()
}

/// Rationality evidence for a Witt element at a finite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityReport {
    /// Truncation order examined.
    pub order: usize,
    /// Hankel ranks of the tail coefficient sequence, sizes 1..⌊order/2⌋.
    pub ranks: Vec<usize>,
    /// True when the ranks plateaued and a witness re-expanded exactly.
    pub stabilized: bool,
    /// The reconstructed rational function, when stabilized.
    pub witness: Option<RatFunc>,
}

impl RationalityReport {
    /// The last computed rank (the apparent Hankel rank at this order).
    pub fn final_rank(&self) -> usize {
        self.ranks.last().copied().unwrap_or(0)
    }
}
