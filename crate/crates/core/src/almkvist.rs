//! The ring of endomorphism classes W₀(R) and its embedding into W(R).
//!
//! An [`EndoClass`] is a pair (E, f) with E free and f given by a square
//! matrix; the class only remembers what survives the quotient by the
//! (E, 0) ideal, which is exactly det(1 − t·M_f). The L-map
//! (E, f) ↦ 1/det(1 − t·M_f) embeds W₀(R) into W(R) with image the rational
//! series, so equality of classes is equality of L-images.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{factors_into_cyclotomics, Poly};
use crate::ratfunc::RatFunc;
use crate::recseq::RecSeq;
use crate::scalar::{Ring, Scalar};
use crate::witt::WittElement;

/// A class in W₀(R), represented by a square matrix over ℤ or ℚ.
#[derive(Debug, Clone)]
pub struct EndoClass {
    matrix: Matrix,
}

impl EndoClass {
    pub fn new(matrix: Matrix) -> Result<EndoClass> {
        if !matrix.is_square() {
            return Err(Error::NonSquareMatrix { rows: matrix.rows(), cols: matrix.cols() });
        }
        Ok(EndoClass { matrix })
    }

    pub fn from_ints(rows: &[&[i64]]) -> EndoClass {
        EndoClass::new(Matrix::from_ints(rows)).expect("square input")
    }

    /// The zero class (the empty matrix).
    pub fn zero(ring: Ring) -> EndoClass {
        EndoClass { matrix: Matrix::zero(0, 0, ring) }
    }

    /// The unit class 𝟏 = (R, 1).
    pub fn one(ring: Ring) -> EndoClass {
        EndoClass { matrix: Matrix::identity(1, ring) }
    }

    /// The rank-one class (R, r).
    pub fn scalar(r: &Scalar) -> EndoClass {
        EndoClass { matrix: Matrix::diagonal(std::slice::from_ref(r), r.ring()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ring(&self) -> Ring {
        self.matrix.ring()
    }

    /// Direct sum of representatives: addition in W₀.
    pub fn add(&self, rhs: &EndoClass) -> Result<EndoClass> {
        self.ring().require_eq(rhs.ring())?;
        Ok(EndoClass { matrix: self.matrix.direct_sum(&rhs.matrix) })
    }

    /// Tensor product of representatives: multiplication in W₀.
    pub fn mul(&self, rhs: &EndoClass) -> Result<EndoClass> {
        self.ring().require_eq(rhs.ring())?;
        Ok(EndoClass { matrix: self.matrix.kron(&rhs.matrix) })
    }

    /// det(1 − t·M), the reversed characteristic polynomial. Zero
    /// eigenvalues contribute the factor 1 and drop out, which is exactly
    /// the (E, 0)-ideal quotient.
    pub fn witt_denominator(&self) -> Poly {
        self.matrix.charpoly().expect("square by construction").reversed()
    }

    /// L_R(E, f) = 1/det(1 − t·M_f) as an exact rational function.
    pub fn l_ratfunc(&self) -> RatFunc {
        RatFunc::new(Poly::one(self.ring()), self.witt_denominator())
            .expect("denominator has constant term 1")
    }

    /// The L-map image expanded to the given order.
    pub fn l_map(&self, order: usize) -> WittElement {
        WittElement::from_ratfunc(&self.l_ratfunc(), order)
            .expect("L-image has constant term 1")
    }

    /// Frobenius Fr_n: (E, f) ↦ (E, fⁿ).
    pub fn frobenius(&self, n: u64) -> EndoClass {
        assert!(n >= 1, "Frobenius index must be positive");
        EndoClass { matrix: self.matrix.pow(n) }
    }

    /// Verschiebung V_n: (E, f) ↦ (E^⊕n, block companion) with identity
    /// blocks on the subdiagonal and M_f in the top-right block.
    pub fn verschiebung(&self, n: u64) -> EndoClass {
        assert!(n >= 1, "Verschiebung index must be positive");
        let n = n as usize;
        let d = self.dim();
        let mut m = Matrix::zero(n * d, n * d, self.ring());
        for b in 1..n {
            for i in 0..d {
                *m.at_mut(b * d + i, (b - 1) * d + i) = Scalar::one(self.ring());
            }
        }
        for i in 0..d {
            for j in 0..d {
                *m.at_mut(i, (n - 1) * d + j) = self.matrix.at(i, j).clone();
            }
        }
        EndoClass { matrix: m }
    }

    /// The trace ghost (Tr M, Tr M², Tr M³, …) as a recursive sequence;
    /// stored entry k is Tr(M^{k+1}). The recurrence comes from the
    /// characteristic polynomial (Cayley–Hamilton applied to traces).
    pub fn ghost_trace(&self) -> RecSeq {
        let r = self.dim();
        if r == 0 {
            return RecSeq::zero(self.ring());
        }
        let charpoly = self.matrix.charpoly().expect("square");
        let mut traces = Vec::with_capacity(r);
        let mut power = self.matrix.clone();
        for k in 0..r {
            traces.push(power.trace());
            if k + 1 < r {
                power = &power * &self.matrix;
            }
        }
        RecSeq::from_recurrence_poly(&charpoly, traces, self.ring()).expect("monic charpoly")
    }

    /// Whether every eigenvalue is a root of unity, decided exactly by
    /// factoring the characteristic polynomial (with its x^k part removed)
    /// into cyclotomic polynomials.
    pub fn is_quasi_unipotent(&self) -> Result<bool> {
        if !self.matrix.has_integer_entries() {
            return Err(Error::NonIntegerEntries);
        }
        let p = self.matrix.charpoly()?;
        let (_, stripped) = p.strip_power_of_x();
        Ok(factors_into_cyclotomics(&stripped))
    }

    /// Whether the representative is diagonalizable over the algebraic
    /// closure: the squarefree part of the characteristic polynomial must
    /// annihilate the matrix (equivalently, the minimal polynomial is
    /// squarefree).
    pub fn is_diagonalizable(&self) -> bool {
        let p = self.matrix.charpoly().expect("square");
        let q = p.squarefree_part();
        self.eval_poly(&q).is_zero_matrix()
    }

    fn eval_poly(&self, p: &Poly) -> EvaluatedMatrix {
        let n = self.dim();
        let mut acc = Matrix::zero(n, n, Ring::Q);
        let mut power = Matrix::identity(n, Ring::Q);
        for k in 0..=p.degree().max(0) as usize {
            if p.degree() < 0 {
                break;
            }
            let c = p.coeff(k);
            if !c.is_zero() {
                let scaled = Matrix::new(
                    n,
                    n,
                    power.entries().iter().map(|e| e * &c).collect(),
                    Ring::Q,
                );
                acc = &acc + &scaled;
            }
            if k < p.degree() as usize {
                power = &power * &self.matrix.to_ring(Ring::Q).unwrap();
            }
        }
        EvaluatedMatrix(acc)
    }

    /// Membership test for the generators of the Σ-relative subring: the
    /// matrix must be diagonalizable with all eigenvalues in Σ.
    pub fn in_sigma_subring(&self, spec: &SigmaSpec) -> bool {
        match spec.kind {
            SigmaKind::RootsOfUnity => {
                if !self.is_diagonalizable() {
                    return false;
                }
                let p = self.matrix.charpoly().expect("square");
                let (_, stripped) = p.strip_power_of_x();
                // Non-integer characteristic coefficients can never factor
                // into cyclotomics.
                factors_into_cyclotomics(&stripped)
            }
        }
    }
}

struct EvaluatedMatrix(Matrix);

impl EvaluatedMatrix {
    fn is_zero_matrix(&self) -> bool {
        self.0.entries().iter().all(Scalar::is_zero)
    }
}

impl PartialEq for EndoClass {
    fn eq(&self, other: &EndoClass) -> bool {
        self.witt_denominator() == other.witt_denominator()
    }
}

impl Eq for EndoClass {}

/// A formal difference of endomorphism classes.
///
/// The canonical form is the reduced rational function
/// L(plus)/L(minus) = det(1 − t·M₋)/det(1 − t·M₊), normalized with
/// num(0) = den(0) = 1; two virtual classes are equal iff their canonical
/// forms agree.
#[derive(Debug, Clone)]
pub struct VirtualEndo {
    plus: EndoClass,
    minus: EndoClass,
}

impl VirtualEndo {
    pub fn new(plus: EndoClass, minus: EndoClass) -> VirtualEndo {
        VirtualEndo { plus, minus }
    }

    pub fn from_class(class: EndoClass) -> VirtualEndo {
        let ring = class.ring();
        VirtualEndo { plus: class, minus: EndoClass::zero(ring) }
    }

    /// Rebuild a virtual class from a normalized rational function with
    /// num(0) = den(0) = 1: the companion matrices of the reversed
    /// denominator and numerator give the positive and negative parts.
    pub fn from_ratfunc(rf: &RatFunc) -> Result<VirtualEndo> {
        if !rf.num().coeff(0).is_one() || !rf.den().coeff(0).is_one() {
            return Err(Error::InvalidArgument(
                "a virtual class needs num(0) = den(0) = 1".into(),
            ));
        }
        let plus = EndoClass::new(Matrix::companion(&rf.den().reversed())?)?;
        let minus = EndoClass::new(Matrix::companion(&rf.num().reversed())?)?;
        Ok(VirtualEndo { plus, minus })
    }

    pub fn zero(ring: Ring) -> VirtualEndo {
        VirtualEndo { plus: EndoClass::zero(ring), minus: EndoClass::zero(ring) }
    }

    pub fn one(ring: Ring) -> VirtualEndo {
        VirtualEndo::from_class(EndoClass::one(ring))
    }

    pub fn plus(&self) -> &EndoClass {
        &self.plus
    }

    pub fn minus(&self) -> &EndoClass {
        &self.minus
    }

    pub fn ring(&self) -> Ring {
        self.plus.ring()
    }

    /// Reduced canonical rational function with num(0) = den(0) = 1.
    pub fn canonical(&self) -> RatFunc {
        RatFunc::new(self.minus.witt_denominator(), self.plus.witt_denominator())
            .expect("denominators have constant term 1")
    }

    pub fn l_map(&self, order: usize) -> Result<WittElement> {
        WittElement::from_ratfunc(&self.canonical(), order)
    }

    pub fn add(&self, rhs: &VirtualEndo) -> Result<VirtualEndo> {
        Ok(VirtualEndo {
            plus: self.plus.add(&rhs.plus)?,
            minus: self.minus.add(&rhs.minus)?,
        })
    }

    pub fn neg(&self) -> VirtualEndo {
        VirtualEndo { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn sub(&self, rhs: &VirtualEndo) -> Result<VirtualEndo> {
        self.add(&rhs.neg())
    }

    /// (p₁ − m₁)(p₂ − m₂) = (p₁p₂ + m₁m₂) − (p₁m₂ + m₁p₂).
    pub fn mul(&self, rhs: &VirtualEndo) -> Result<VirtualEndo> {
        let plus = self.plus.mul(&rhs.plus)?.add(&self.minus.mul(&rhs.minus)?)?;
        let minus = self.plus.mul(&rhs.minus)?.add(&self.minus.mul(&rhs.plus)?)?;
        Ok(VirtualEndo { plus, minus })
    }

    /// Trace ghost of the difference, as a recursive sequence.
    pub fn ghost_trace(&self) -> RecSeq {
        self.plus.ghost_trace().seq_add(&self.minus.ghost_trace().neg())
    }
}

impl PartialEq for VirtualEndo {
    fn eq(&self, other: &VirtualEndo) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for VirtualEndo {}

/// The eigenvalue-admissibility datum Σ; currently the group μ∞ of all
/// roots of unity (the cyclotomic case). The numeric tolerance is only for
/// floating-point cross-checks, never for the exact predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaSpec {
    pub kind: SigmaKind,
    pub numeric_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaKind {
    RootsOfUnity,
}

impl Default for SigmaSpec {
    fn default() -> SigmaSpec {
        SigmaSpec { kind: SigmaKind::RootsOfUnity, numeric_tolerance: 1e-9 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;

    #[test]
    fn l_map_of_rank_one_class() {
        let a = EndoClass::scalar(&Scalar::from_int(4));
        let w = a.l_map(5);
        assert_eq!(w, WittElement::teichmuller(&Scalar::from_int(4), 5));
        assert_eq!(
            a.l_ratfunc(),
            RatFunc::new(Poly::one(Ring::Z), Poly::from_ints(&[1, -4])).unwrap()
        );
    }

    #[test]
    fn l_map_of_zero_class_is_one() {
        let z = EndoClass::zero(Ring::Z);
        assert!(z.l_map(6).series().is_one());
    }

    #[test]
    fn diag_sum_l_map() {
        // [2] ⊕ [3] -> 1/((1-2t)(1-3t))
        let a = EndoClass::scalar(&Scalar::from_int(2));
        let b = EndoClass::scalar(&Scalar::from_int(3));
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.matrix(), &Matrix::from_ints(&[&[2, 0], &[0, 3]]));
        assert_eq!(
            sum.l_ratfunc(),
            RatFunc::new(Poly::one(Ring::Z), Poly::from_ints(&[1, -5, 6])).unwrap()
        );
    }

    #[test]
    fn kron_of_scalars() {
        let a = EndoClass::scalar(&Scalar::from_int(2));
        let b = EndoClass::scalar(&Scalar::from_int(3));
        assert_eq!(a.mul(&b).unwrap(), EndoClass::scalar(&Scalar::from_int(6)));
    }

    #[test]
    fn unit_class_is_multiplicative_identity() {
        let a = EndoClass::from_ints(&[&[1, 2], &[3, 4]]);
        let one = EndoClass::one(Ring::Z);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn l_map_is_additive_and_multiplicative() {
        let a = EndoClass::from_ints(&[&[1, 2], &[0, 3]]);
        let b = EndoClass::from_ints(&[&[2, -1], &[1, 1]]);
        let order = 16;
        let sum = a.add(&b).unwrap().l_map(order);
        assert_eq!(sum, a.l_map(order).add(&b.l_map(order)).unwrap());
        let prod = a.mul(&b).unwrap().l_map(order);
        assert_eq!(prod, a.l_map(order).mul(&b.l_map(order)).unwrap());
    }

    #[test]
    fn ghost_of_l_map_is_trace_ghost() {
        let a = EndoClass::from_ints(&[&[0, -1], &[1, 2]]);
        let ghost = a.l_map(12).ghost();
        let traces = a.ghost_trace();
        for k in 1..=12usize {
            assert_eq!(ghost.component(k), &traces.term(k - 1), "component {}", k);
        }
        // All powers of this unipotent matrix have trace 2.
        for k in 0..12usize {
            assert_eq!(traces.term(k), Scalar::from_int(2));
        }
    }

    #[test]
    fn ghost_trace_examples() {
        let m = EndoClass::scalar(&Scalar::from_int(3));
        let g = m.ghost_trace();
        for k in 0..6usize {
            assert_eq!(g.term(k), Scalar::from_int(3i64.pow(k as u32 + 1)));
        }
        let d = EndoClass::from_ints(&[&[2, 0], &[0, 3]]);
        let g = d.ghost_trace();
        assert_eq!(g.prefix(3), vec![
            Scalar::from_int(5),
            Scalar::from_int(13),
            Scalar::from_int(35),
        ]);
    }

    #[test]
    fn frobenius_powers() {
        let a = EndoClass::scalar(&Scalar::from_int(3));
        assert_eq!(a.frobenius(2), EndoClass::scalar(&Scalar::from_int(9)));
        let b = EndoClass::from_ints(&[&[1, 1], &[0, 2]]);
        assert_eq!(b.frobenius(2).frobenius(3), b.frobenius(6));
        // Trace-ghost relation: ghost(Fr_n A)_k = ghost(A)_{nk}.
        let g1 = b.ghost_trace();
        let g3 = b.frobenius(3).ghost_trace();
        for k in 1..=6usize {
            assert_eq!(g3.term(k - 1), g1.term(3 * k - 1));
        }
    }

    #[test]
    fn verschiebung_block_structure() {
        let a = EndoClass::scalar(&Scalar::from_int(7));
        let v2 = a.verschiebung(2);
        assert_eq!(v2.matrix(), &Matrix::from_ints(&[&[0, 7], &[1, 0]]));
        assert_eq!(v2.matrix().charpoly().unwrap(), Poly::from_ints(&[-7, 0, 1]));
        assert_eq!(a.verschiebung(1), a);
    }

    #[test]
    fn verschiebung_trace_ghost() {
        // ghost(V_n A)_k = n·ghost(A)_{k/n} when n | k, else 0.
        let a = EndoClass::from_ints(&[&[1, 2], &[3, -1]]);
        let ga = a.ghost_trace();
        for n in 1..=4u64 {
            let gv = a.verschiebung(n).ghost_trace();
            for k in 1..=12usize {
                let expected = if k % (n as usize) == 0 {
                    &ga.term(k / (n as usize) - 1) * &Scalar::from_int(n as i64)
                } else {
                    Scalar::from_int(0)
                };
                assert_eq!(gv.term(k - 1), expected, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn quasi_unipotent_examples() {
        let cube_roots = EndoClass::new(Matrix::companion(&cyclotomic(3)).unwrap()).unwrap();
        assert!(cube_roots.is_quasi_unipotent().unwrap());
        assert!(!EndoClass::from_ints(&[&[2]]).is_quasi_unipotent().unwrap());
        let golden = EndoClass::new(Matrix::companion(&Poly::from_ints(&[-1, -1, 1])).unwrap())
            .unwrap();
        assert!(!golden.is_quasi_unipotent().unwrap());
        // Nilpotent part is discarded: eigenvalues {0, 1} pass.
        assert!(EndoClass::from_ints(&[&[0, 0], &[0, 1]]).is_quasi_unipotent().unwrap());
    }

    #[test]
    fn sigma_subring_membership() {
        let spec = SigmaSpec::default();
        let cube_roots = EndoClass::new(Matrix::companion(&cyclotomic(3)).unwrap()).unwrap();
        assert!(cube_roots.in_sigma_subring(&spec));
        // Jordan block: quasi-unipotent but not diagonalizable.
        let jordan = EndoClass::from_ints(&[&[1, 1], &[0, 1]]);
        assert!(jordan.is_quasi_unipotent().unwrap());
        assert!(!jordan.in_sigma_subring(&spec));
        assert!(EndoClass::new(Matrix::identity(3, Ring::Z)).unwrap().in_sigma_subring(&spec));
        assert!(!EndoClass::from_ints(&[&[2]]).in_sigma_subring(&spec));
    }

    #[test]
    fn class_equality_discards_zero_eigenvalues() {
        // diag(0, 1) and [1] are the same class in W_0.
        let a = EndoClass::from_ints(&[&[0, 0], &[0, 1]]);
        let b = EndoClass::one(Ring::Z);
        assert_eq!(a, b);
        let nilpotent = EndoClass::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(nilpotent, EndoClass::zero(Ring::Z));
    }

    #[test]
    fn virtual_endo_canonical_form() {
        // [2] - [3]: canonical form (1-3t)/(1-2t).
        let v = VirtualEndo::new(
            EndoClass::scalar(&Scalar::from_int(2)),
            EndoClass::scalar(&Scalar::from_int(3)),
        );
        assert_eq!(
            v.canonical(),
            RatFunc::new(Poly::from_ints(&[1, -3]), Poly::from_ints(&[1, -2])).unwrap()
        );
        // x - x = 0.
        let w = v.sub(&v).unwrap();
        assert_eq!(w, VirtualEndo::zero(Ring::Z));
        assert!(w.canonical().num().is_one());
    }

    #[test]
    fn virtual_endo_ring_ops() {
        let two = VirtualEndo::from_class(EndoClass::scalar(&Scalar::from_int(2)));
        let three = VirtualEndo::from_class(EndoClass::scalar(&Scalar::from_int(3)));
        let diff = two.sub(&three).unwrap();
        let prod = diff.mul(&diff).unwrap();
        // (T2 - T3)^2 = T4 - 2*T6 + T9 in W_0.
        let expect = VirtualEndo::new(
            EndoClass::scalar(&Scalar::from_int(4))
                .add(&EndoClass::scalar(&Scalar::from_int(9)))
                .unwrap(),
            EndoClass::scalar(&Scalar::from_int(6))
                .add(&EndoClass::scalar(&Scalar::from_int(6)))
                .unwrap(),
        );
        assert_eq!(prod, expect);
    }

    #[test]
    fn l_map_of_virtual_matches_series_quotient() {
        let v = VirtualEndo::new(
            EndoClass::from_ints(&[&[1, 1], &[0, 2]]),
            EndoClass::scalar(&Scalar::from_int(3)),
        );
        let w = v.l_map(10).unwrap();
        let plus = v.plus().l_map(10);
        let minus = v.minus().l_map(10);
        assert_eq!(w, plus.sub(&minus).unwrap());
    }
}
