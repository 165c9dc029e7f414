//! The Grothendieck ring ℤ[𝕋] of torified classes and its zeta morphisms.
//!
//! A class is an integer polynomial in 𝕋 = [𝔾ₘ]; the Lefschetz class is
//! 𝕃 = 𝕋 + 1 and the change of basis is exact in both directions. Counting
//! measures give λ-side morphisms into W(ℤ) (rational, factoring through
//! endomorphism classes) and biring-side morphisms into the recursive
//! sequences; the torus-counting zeta function itself is the polylogarithm
//! exponential, which is *not* rational — the rank reports make the
//! obstruction visible.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::almkvist::{EndoClass, VirtualEndo};
use crate::error::{Error, Result};
use crate::recseq::RecSeq;
use crate::scalar::{Ring, Scalar};
use crate::series::TruncSeries;
use crate::witt::{ghost_inverse, GhostVector, RationalityReport, WittElement};

/// A class Σ aᵢ𝕋ⁱ in K₀ of torified varieties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothClass {
    /// Coefficients in the 𝕋-basis, lowest degree first, no trailing zeros.
    t_coeffs: Vec<BigInt>,
}

impl GrothClass {
    pub fn new(mut t_coeffs: Vec<BigInt>) -> GrothClass {
        while t_coeffs.last().is_some_and(BigInt::is_zero) {
            t_coeffs.pop();
        }
        GrothClass { t_coeffs }
    }

    pub fn from_ints(t_coeffs: &[i64]) -> GrothClass {
        GrothClass::new(t_coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Class from coefficients in the 𝕃-basis: Σ bⱼ𝕃ʲ with 𝕃 = 𝕋 + 1.
    pub fn from_l_coeffs(l_coeffs: &[BigInt]) -> GrothClass {
        let n = l_coeffs.len();
        let mut t = vec![BigInt::zero(); n];
        for (j, b) in l_coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            // L^j = (T+1)^j = sum_i C(j,i) T^i
            let mut binom = BigInt::one();
            for i in 0..=j {
                t[i] += b * &binom;
                binom = &binom * (j - i) / (i + 1);
            }
        }
        GrothClass::new(t)
    }

    pub fn zero() -> GrothClass {
        GrothClass { t_coeffs: Vec::new() }
    }

    /// The class of a point.
    pub fn point() -> GrothClass {
        GrothClass::from_ints(&[1])
    }

    /// 𝕋 = [𝔾ₘ].
    pub fn torus() -> GrothClass {
        GrothClass::from_ints(&[0, 1])
    }

    /// 𝕃 = [𝔸¹] = 𝕋 + 1.
    pub fn lefschetz() -> GrothClass {
        GrothClass::from_ints(&[1, 1])
    }

    /// [ℙ¹] = pt ⊔ 𝔾ₘ ⊔ pt = 𝕋 + 2.
    pub fn projective_line() -> GrothClass {
        GrothClass::from_ints(&[2, 1])
    }

    pub fn t_coeffs(&self) -> &[BigInt] {
        &self.t_coeffs
    }

    /// Coefficients in the 𝕃-basis: 𝕋 = 𝕃 − 1.
    pub fn l_coeffs(&self) -> Vec<BigInt> {
        let n = self.t_coeffs.len();
        let mut l = vec![BigInt::zero(); n];
        for (i, a) in self.t_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // T^i = (L-1)^i = sum_j C(i,j) (-1)^{i-j} L^j
            let mut binom = BigInt::one();
            for j in 0..=i {
                let signed = if (i - j) % 2 == 0 { binom.clone() } else { -binom.clone() };
                l[j] += a * signed;
                binom = &binom * (i - j) / (j + 1);
            }
        }
        while l.last().is_some_and(BigInt::is_zero) {
            l.pop();
        }
        l
    }

    pub fn degree(&self) -> i64 {
        self.t_coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.is_empty()
    }

    /// Effective classes are genuine torified varieties: all aᵢ ≥ 0.
    pub fn is_effective(&self) -> bool {
        self.t_coeffs.iter().all(|a| !a.is_negative())
    }

    pub fn add(&self, rhs: &GrothClass) -> GrothClass {
        let n = self.t_coeffs.len().max(rhs.t_coeffs.len());
        let coeff = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_else(BigInt::zero);
        GrothClass::new((0..n).map(|k| coeff(&self.t_coeffs, k) + coeff(&rhs.t_coeffs, k)).collect())
    }

    pub fn neg(&self) -> GrothClass {
        GrothClass { t_coeffs: self.t_coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, rhs: &GrothClass) -> GrothClass {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &GrothClass) -> GrothClass {
        if self.is_zero() || rhs.is_zero() {
            return GrothClass::zero();
        }
        let mut out = vec![BigInt::zero(); self.t_coeffs.len() + rhs.t_coeffs.len() - 1];
        for (i, a) in self.t_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.t_coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GrothClass::new(out)
    }

    pub fn pow(&self, e: u32) -> GrothClass {
        let mut acc = GrothClass::point();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// #X(𝔽_{1^m}) = Σ aᵢ mⁱ, the number of m-th root-of-unity points across
    /// the torus decomposition.
    pub fn count_points(&self, m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.t_coeffs.iter().rev() {
            acc = acc * m + a;
        }
        acc
    }

    /// Adams operation Ψ_k, acting as 𝕃ʲ ↦ 𝕃^{kj} in the 𝕃-basis.
    pub fn adams(&self, k: u32) -> GrothClass {
        assert!(k >= 1, "Adams index must be positive");
        let l = self.l_coeffs();
        if l.is_empty() {
            return GrothClass::zero();
        }
        let mut out = vec![BigInt::zero(); (l.len() - 1) * k as usize + 1];
        for (j, b) in l.iter().enumerate() {
            out[j * k as usize] += b;
        }
        GrothClass::from_l_coeffs(&out)
    }
}

impl std::fmt::Display for GrothClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.t_coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            } else if a.is_negative() {
                f.write_str("-")?;
            }
            let mag = a.abs();
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{}", i)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// A counting measure together with the offset of the primitive generator.
///
/// `value` is μ(𝕋), so μ(𝕃) = value + 1. `delta` fixes the Hopf-side
/// primitive 𝔻 = 𝕋 − δ (δ = 1 for the plain structure, δ = m for the
/// m-th-roots refinement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub value: BigInt,
    pub delta: BigInt,
}

impl Measure {
    pub fn new(value: impl Into<BigInt>, delta: impl Into<BigInt>) -> Measure {
        Measure { value: value.into(), delta: delta.into() }
    }
}

/// The λ-side zeta morphism for the counting measure 𝕋 ↦ m: in the 𝕃-basis,
/// 𝕃ʲ ↦ 1/(1 − (m+1)ʲ t), extended multiplicatively to virtual classes.
pub fn sigma_eval(x: &GrothClass, m: &BigInt, order: usize) -> WittElement {
    let r = Scalar::from_int(m + 1u32);
    let mut acc = TruncSeries::one(order, Ring::Z);
    for (j, b) in x.l_coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let ratio = r.pow(j as i64);
        let factor = binomial_power(&ratio, &-b.clone(), order);
        acc = acc.mul(&factor).expect("same ring");
    }
    WittElement::new(acc).expect("constant term 1")
}

/// (1 − rt)^a for an integer exponent a (of either sign), via the binomial
/// coefficient recurrence; exact and ℤ-valued for integer r.
fn binomial_power(r: &Scalar, a: &BigInt, order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Scalar::one(Ring::Q);
    coeffs.push(c.clone());
    let neg_r = -(r.to_ring(Ring::Q).unwrap());
    for k in 0..order {
        // C(a, k+1) = C(a, k) · (a − k) / (k + 1)
        let factor = Scalar::from_int(a - BigInt::from(k))
            .checked_div(&Scalar::from_int(k as i64 + 1))
            .expect("k + 1 > 0");
        c = &(&c * &neg_r) * &factor;
        coeffs.push(c.clone());
    }
    let series = TruncSeries::new(coeffs, Ring::Q);
    series.to_ring(Ring::Z).unwrap_or(series)
}

/// ζ_μ for the measure μ(𝕋) = m: identical to [`sigma_eval`]; rational, and
/// it factors through the endomorphism classes via [`r_mu`].
pub fn zeta_mu(x: &GrothClass, measure: &Measure, order: usize) -> WittElement {
    sigma_eval(x, &measure.value, order)
}

/// The factorization of ζ_μ through W₀(ℤ): 𝕃ʲ ↦ [(ℤ, (m+1)ʲ)], assembled as
/// a formal difference of diagonal classes.
pub fn r_mu(x: &GrothClass, measure: &Measure) -> VirtualEndo {
    let base = &measure.value + 1u32;
    let mut plus = EndoClass::zero(Ring::Z);
    let mut minus = EndoClass::zero(Ring::Z);
    for (j, b) in x.l_coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let eigen = Scalar::from_int(num_traits::pow::pow(base.clone(), j));
        let copies = b.abs().try_into().unwrap_or(usize::MAX);
        for _ in 0..copies {
            let block = EndoClass::scalar(&eigen);
            if b.is_negative() {
                minus = minus.add(&block).expect("same ring");
            } else {
                plus = plus.add(&block).expect("same ring");
            }
        }
    }
    VirtualEndo::new(plus, minus)
}

/// The biring-side morphism for a measure: 𝔻 = 𝕋 − δ goes to the primitive
/// (v − δ)·d, so 𝕋 ↦ (v − δ)·d + δ·1 = (δ, v, 2v−δ, 3v−2δ, …), extended as a
/// ring morphism into (𝕃(ℤ), ⊕, ⊙).
pub fn biring_measure(x: &GrothClass, measure: &Measure) -> RecSeq {
    let v = Scalar::from_int(measure.value.clone());
    let delta = Scalar::from_int(measure.delta.clone());
    let image_of_t = RecSeq::primitive_d(Ring::Z)
        .scale(&(&v - &delta))
        .seq_add(&RecSeq::unit(Ring::Z).scale(&delta));
    // Horner in the Hadamard ring.
    let mut acc = RecSeq::zero(Ring::Z);
    for a in x.t_coeffs().iter().rev() {
        acc = acc
            .had_prod(&image_of_t)
            .expect("same ring")
            .seq_add(&RecSeq::unit(Ring::Z).scale(&Scalar::from_int(a.clone())));
    }
    acc
}

/// Li_{1−k}(t): for k ≥ 1 the ℤ-series Σ l^{k−1} tˡ; for k = 0 the
/// logarithmic case Li₁(t) = Σ tˡ/l over ℚ.
pub fn polylog(k: u32, order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    if k == 0 {
        coeffs.push(Scalar::zero(Ring::Q));
        for l in 1..=order {
            coeffs.push(Scalar::from_ratio(1, l as i64));
        }
        TruncSeries::new(coeffs, Ring::Q)
    } else {
        coeffs.push(Scalar::zero(Ring::Z));
        for l in 1..=order {
            coeffs.push(Scalar::from_int(BigInt::from(l).pow(k - 1)));
        }
        TruncSeries::new(coeffs, Ring::Z)
    }
}

/// The torus-counting zeta function over 𝔽_{1^m}:
/// Σ aₖ𝕋ᵏ ↦ exp(Σ aₖ mᵏ Li_{1−k}(t)).
///
/// The exponent collapses to Σ_{l≥1} #X(𝔽_{1^{ml}}) tˡ/l. Coefficients are
/// reported over ℤ when they come out integral and over ℚ otherwise —
/// integrality is observed, not assumed (exp(t/(1−t)) already fails it).
pub fn f1_zeta(x: &GrothClass, m: &BigInt, order: usize) -> WittElement {
    // The ghost vector of the result is exactly the point counts:
    // t·d/dt of the exponent is Σ #X(F_{1^{ml}}) t^l.
    let counts = GhostVector::new(
        (1..=order)
            .map(|l| Scalar::from_int(x.count_points(&(m * BigInt::from(l)))))
            .collect(),
    );
    let zeta = ghost_inverse(&counts);
    let series = zeta.series().to_ring(Ring::Z).unwrap_or_else(|_| zeta.series().clone());
    WittElement::new(series).expect("constant term 1")
}

/// Membership in the pullback 𝕄(ℤ) of the ghost map and the sequence
/// inclusion: ghost component k of P must equal term k−1 of s (the ghost
/// vector and the sequence are aligned head-to-head), for all k up to the
/// examined order.
pub fn m_membership(p: &WittElement, s: &RecSeq, order: usize) -> bool {
    let order = order.min(p.order());
    let ghost = p.ghost();
    (1..=order).all(|k| ghost.component(k) == &s.term(k - 1))
}

/// Rationality evidence for the torus-counting zeta of 𝕋 itself: the Hankel
/// ranks keep growing, witnessing that ζ_{𝔽₁} does not factor through the
/// rational subring.
pub fn f1_nonrationality_report(m: &BigInt, order: usize) -> Result<RationalityReport> {
    if order < 16 {
        return Err(Error::InsufficientOrder { need: 16, have: order });
    }
    f1_zeta(&GrothClass::torus(), m, order).is_rational_up_to()
}
