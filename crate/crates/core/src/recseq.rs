//! Linear recursive sequences under the Hadamard product.
//!
//! A [`RecSeq`] is the infinite sequence determined by a monic recurrence
//! s_n = a_1·s_{n−1} + … + a_r·s_{n−r} (n ≥ r) and initial terms
//! s_0..s_{r−1}. The stored presentation is kept as given; [`RecSeq::minimize`]
//! produces the minimal-depth equivalent. Equality compares the first
//! depth_a + depth_b terms, which decides equality of the infinite sequences.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

#[derive(Debug, Clone)]
pub struct RecSeq {
    ring: Ring,
    /// a_1..a_r.
    recurrence: Vec<Scalar>,
    /// s_0..s_{r−1}.
    initial: Vec<Scalar>,
}

impl RecSeq {
    pub fn new(recurrence: Vec<Scalar>, initial: Vec<Scalar>, ring: Ring) -> Result<RecSeq> {
        if recurrence.len() != initial.len() {
            return Err(Error::DimensionMismatch(format!(
                "recurrence depth {} but {} initial terms",
                recurrence.len(),
                initial.len()
            )));
        }
        let coerce = |v: Vec<Scalar>| -> Result<Vec<Scalar>> {
            v.into_iter().map(|c| c.to_ring(ring)).collect()
        };
        Ok(RecSeq { ring, recurrence: coerce(recurrence)?, initial: coerce(initial)? })
    }

    pub fn from_ints(recurrence: &[i64], initial: &[i64]) -> RecSeq {
        RecSeq::new(
            recurrence.iter().map(|&a| Scalar::from_int(a)).collect(),
            initial.iter().map(|&s| Scalar::from_int(s)).collect(),
            Ring::Z,
        )
        .expect("equal lengths")
    }

    /// The zero sequence (the only depth-0 sequence).
    pub fn zero(ring: Ring) -> RecSeq {
        RecSeq { ring, recurrence: Vec::new(), initial: Vec::new() }
    }

    /// The Hadamard unit 1 = (1,1,1,…).
    pub fn unit(ring: Ring) -> RecSeq {
        RecSeq::geometric(&Scalar::one(ring))
    }

    /// (1, a, a², …).
    pub fn geometric(a: &Scalar) -> RecSeq {
        RecSeq {
            ring: a.ring(),
            recurrence: vec![a.clone()],
            initial: vec![Scalar::one(a.ring())],
        }
    }

    /// The primitive element d = (0, 1, 2, 3, …).
    pub fn primitive_d(ring: Ring) -> RecSeq {
        RecSeq {
            ring,
            recurrence: vec![Scalar::from_int(2), Scalar::from_int(-1)],
            initial: vec![Scalar::zero(ring), Scalar::one(ring)],
        }
    }

    /// Sequence from a monic recurrence polynomial m(x) = x^r − a_1x^{r−1} − … − a_r.
    pub fn from_recurrence_poly(m: &Poly, initial: Vec<Scalar>, ring: Ring) -> Result<RecSeq> {
        if !m.is_monic() {
            return Err(Error::InvalidArgument("recurrence polynomial must be monic".into()));
        }
        let r = m.degree() as usize;
        let recurrence = (1..=r).map(|i| -m.coeff(r - i)).collect();
        RecSeq::new(recurrence, initial, ring)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn depth(&self) -> usize {
        self.recurrence.len()
    }

    pub fn recurrence(&self) -> &[Scalar] {
        &self.recurrence
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    /// m(x) = x^r − a_1x^{r−1} − … − a_r.
    pub fn recurrence_poly(&self) -> Poly {
        let r = self.depth();
        let mut coeffs: Vec<Scalar> = (0..r).map(|i| -&self.recurrence[r - 1 - i]).collect();
        coeffs.push(Scalar::one(self.ring));
        Poly::new(coeffs, self.ring)
    }

    /// Companion matrix of the recurrence in the basis 1, x, …, x^{r−1}:
    /// ones on the subdiagonal, last column (a_r, …, a_1).
    pub fn companion_matrix(&self) -> Matrix {
        let r = self.depth();
        let mut m = Matrix::zero(r, r, self.ring);
        for i in 1..r {
            *m.at_mut(i, i - 1) = Scalar::one(self.ring);
        }
        for i in 0..r {
            *m.at_mut(i, r - 1) = self.recurrence[r - 1 - i].clone();
        }
        m
    }

    pub fn term(&self, n: usize) -> Scalar {
        let r = self.depth();
        if r == 0 {
            return Scalar::zero(self.ring);
        }
        if n < r {
            return self.initial[n].clone();
        }
        let mut window = self.initial.clone();
        for _ in r..=n {
            let next = self.next_from_window(&window);
            window.rotate_left(1);
            window[r - 1] = next;
        }
        window[r - 1].clone()
    }

    pub fn prefix(&self, len: usize) -> Vec<Scalar> {
        let r = self.depth();
        let mut out = Vec::with_capacity(len);
        out.extend(self.initial.iter().take(len).cloned());
        if r == 0 {
            out.resize(len, Scalar::zero(self.ring));
            return out;
        }
        while out.len() < len {
            let next = self.next_from_window(&out[out.len() - r..]);
            out.push(next);
        }
        out
    }

    fn next_from_window(&self, window: &[Scalar]) -> Scalar {
        let r = self.depth();
        let mut acc = Scalar::zero(self.ring);
        for (i, a) in self.recurrence.iter().enumerate() {
            // window holds s_{n-r}..s_{n-1}; a_{i+1} multiplies s_{n-1-i}.
            let t = a * &window[r - 1 - i];
            acc += &t;
        }
        acc
    }

    /// Left shift D: (s_0, s_1, …) ↦ (s_1, s_2, …).
    pub fn shift(&self) -> RecSeq {
        let r = self.depth();
        if r == 0 {
            return self.clone();
        }
        let initial = self.prefix(r + 1)[1..].to_vec();
        RecSeq { ring: self.ring, recurrence: self.recurrence.clone(), initial }
    }

    pub fn scale(&self, c: &Scalar) -> RecSeq {
        let ring = self.ring.join(c.ring());
        RecSeq {
            ring,
            recurrence: self.recurrence.iter().map(|a| a.to_ring(ring).unwrap()).collect(),
            initial: self.initial.iter().map(|s| s * c).collect(),
        }
    }

    /// Componentwise sum, realized on the direct sum of the companion
    /// matrices (recurrence polynomial = product) and then minimized.
    pub fn seq_add(&self, rhs: &RecSeq) -> RecSeq {
        if self.depth() == 0 {
            return rhs.clone();
        }
        if rhs.depth() == 0 {
            return self.clone();
        }
        let ring = self.ring.join(rhs.ring);
        let m = &self.recurrence_poly() * &rhs.recurrence_poly();
        let n = self.depth() + rhs.depth();
        let a = self.prefix(n);
        let b = rhs.prefix(n);
        let initial = (0..n).map(|i| &a[i] + &b[i]).collect();
        let raw = RecSeq::from_recurrence_poly(&m, initial, ring).expect("monic product");
        raw.minimize()
    }

    pub fn neg(&self) -> RecSeq {
        self.scale(&Scalar::from_int(-1))
    }

    /// Hadamard (componentwise) product, realized on the Kronecker product
    /// of the companion matrices and then minimized. The result is verified
    /// against direct componentwise products on 2·(r_s·r_t) terms.
    pub fn had_prod(&self, rhs: &RecSeq) -> Result<RecSeq> {
        let ring = self.ring.require_eq(rhs.ring)?;
        if self.depth() == 0 || rhs.depth() == 0 {
            return Ok(RecSeq::zero(ring));
        }
        let kron = self.companion_matrix().kron(&rhs.companion_matrix());
        let m = kron.charpoly()?;
        let n = self.depth() * rhs.depth();
        let a = self.prefix(n);
        let b = rhs.prefix(n);
        let initial: Vec<Scalar> = (0..n).map(|i| &a[i] * &b[i]).collect();
        let raw = RecSeq::from_recurrence_poly(&m, initial, ring)?;
        let minimized = raw.minimize();
        let check_len = 2 * n;
        let a = self.prefix(check_len);
        let b = rhs.prefix(check_len);
        let got = minimized.prefix(check_len);
        for i in 0..check_len {
            if got[i] != &a[i] * &b[i] {
                return Err(Error::Inconsistent(format!(
                    "Hadamard product disagrees with componentwise oracle at index {}",
                    i
                )));
            }
        }
        Ok(minimized)
    }

    /// The k×k Hankel matrix (s_{i+j}).
    pub fn hankel(&self, k: usize) -> Matrix {
        assert!(k >= 1);
        hankel_from_terms(&self.prefix(2 * k - 1), k)
    }

    /// Rank of the depth-sized Hankel matrix over the fraction field; this
    /// is both the minimal recurrence depth and the minimal realization
    /// dimension.
    pub fn max_hankel_rank(&self) -> usize {
        let r = self.depth();
        if r == 0 {
            return 0;
        }
        self.hankel(r).rank()
    }

    /// Equivalent sequence of minimal depth.
    ///
    /// Follows the column-dependence procedure on the depth-sized Hankel
    /// matrix: with t the number of leading independent columns, the t+1-st
    /// column's coordinates in the previous ones give the minimal
    /// recurrence. The minimal recurrence polynomial divides the presented
    /// one; this is checked.
    pub fn minimize(&self) -> RecSeq {
        let r = self.depth();
        if r == 0 {
            return self.clone();
        }
        let h = self.hankel(r).to_ring(Ring::Q).expect("promotion");
        let t = leading_independent_columns(&h);
        if t == 0 {
            return RecSeq::zero(self.ring);
        }
        let minimized = if t == r {
            self.clone()
        } else {
            // Solve H_t = α_1·H_{t−1} + … + α_t·H_0 (columns of the r×r
            // Hankel), a consistent system with a unique solution.
            let mut system = Matrix::zero(r, t, Ring::Q);
            for i in 0..r {
                for j in 0..t {
                    *system.at_mut(i, j) = h.at(i, t - 1 - j).clone();
                }
            }
            let target: Vec<Scalar> = (0..r).map(|i| h.at(i, t).clone()).collect();
            let alpha = solve_consistent(&system, &target).expect("dependent column");
            let initial = self.prefix(t);
            let candidate = RecSeq {
                ring: Ring::Q,
                recurrence: alpha,
                initial: initial.iter().map(|s| s.to_ring(Ring::Q).unwrap()).collect(),
            };
            debug_assert!(
                candidate.recurrence_poly().divides(&self.recurrence_poly()),
                "minimal recurrence must divide the presented one"
            );
            candidate
        };
        // Demote when the minimal data is integral and the input was over ℤ.
        if self.ring == Ring::Z
            && minimized.recurrence.iter().all(Scalar::is_integer)
            && minimized.initial.iter().all(Scalar::is_integer)
        {
            RecSeq {
                ring: Ring::Z,
                recurrence: minimized
                    .recurrence
                    .iter()
                    .map(|a| a.to_ring(Ring::Z).unwrap())
                    .collect(),
                initial: minimized.initial.iter().map(|s| s.to_ring(Ring::Z).unwrap()).collect(),
            }
        } else if self.ring == Ring::Z {
            minimized
        } else {
            RecSeq {
                ring: Ring::Q,
                recurrence: minimized
                    .recurrence
                    .iter()
                    .map(|a| a.to_ring(Ring::Q).unwrap())
                    .collect(),
                initial: minimized.initial.iter().map(|s| s.to_ring(Ring::Q).unwrap()).collect(),
            }
        }
    }

    /// ε(s) = s_0.
    pub fn counit(&self) -> Scalar {
        if self.depth() == 0 {
            Scalar::zero(self.ring)
        } else {
            self.initial[0].clone()
        }
    }

    /// Comultiplication data: Δ(s) = Σ_{i,j} c_{ij} (Dⁱs) ⊗ (Dʲs) where
    /// (c_{ij}) is the inverse of the k×k Hankel matrix, k the maximal size
    /// with invertible Hankel (= the minimal depth).
    pub fn comult(&self) -> Result<TensorDecomp> {
        let minimal = self.minimize();
        let k = minimal.depth();
        if k == 0 {
            return Err(Error::ZeroSequence);
        }
        let h = self.hankel(k);
        let inv = h
            .inverse()?
            .ok_or_else(|| Error::Inconsistent("minimal Hankel matrix must be invertible".into()))?;
        let field_level = self.ring == Ring::Z && !inv.has_integer_entries();
        Ok(TensorDecomp { k, coeffs: inv, field_level })
    }

    /// Group-like: Δ(s) = s ⊗ s, i.e. a geometric sequence with s_0 = 1.
    pub fn is_grouplike(&self) -> bool {
        let m = self.minimize();
        m.depth() == 1 && m.initial[0].is_one()
    }

    /// Primitive: Δ(s) = s⊗1 + 1⊗s, i.e. a nonzero multiple of d = (0,1,2,…),
    /// detected by minimal recurrence (x−1)² and s_0 = 0.
    pub fn is_primitive(&self) -> bool {
        let m = self.minimize();
        m.depth() == 2
            && m.recurrence[0] == Scalar::from_int(2)
            && m.recurrence[1] == Scalar::from_int(-1)
            && m.initial[0].is_zero()
    }
}

impl PartialEq for RecSeq {
    fn eq(&self, other: &RecSeq) -> bool {
        let n = (self.depth() + other.depth()).max(1);
        self.prefix(n) == other.prefix(n)
    }
}

impl Eq for RecSeq {}

impl fmt::Display for RecSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.prefix(self.depth() + 3);
        write!(f, "(")?;
        for (i, s) in shown.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s)?;
        }
        write!(f, ", …) [depth {}]", self.depth())
    }
}

/// Comultiplication coefficients in the shift basis D⁰s, …, D^{k−1}s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecomp {
    k: usize,
    coeffs: Matrix,
    field_level: bool,
}

impl TensorDecomp {
    pub fn k(&self) -> usize {
        self.k
    }

    /// The symmetric coefficient matrix (inverse Hankel).
    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// True when a ℤ-sequence needed fraction-field coefficients (Hankel
    /// determinant not a unit in ℤ).
    pub fn is_field_level(&self) -> bool {
        self.field_level
    }
}

/// k×k Hankel matrix (terms[i+j]) from a term slice of length ≥ 2k−1.
pub fn hankel_from_terms(terms: &[Scalar], k: usize) -> Matrix {
    assert!(terms.len() >= 2 * k - 1, "need 2k-1 terms for a k x k Hankel matrix");
    let ring = terms.iter().fold(Ring::Z, |r, s| r.join(s.ring()));
    let mut m = Matrix::zero(k, k, ring);
    for i in 0..k {
        for j in 0..k {
            *m.at_mut(i, j) = terms[i + j].clone();
        }
    }
    m
}

/// Number of leading linearly independent columns of a matrix over ℚ.
fn leading_independent_columns(m: &Matrix) -> usize {
    for k in 1..=m.cols() {
        let mut sub = Matrix::zero(m.rows(), k, Ring::Q);
        for i in 0..m.rows() {
            for j in 0..k {
                *sub.at_mut(i, j) = m.at(i, j).to_ring(Ring::Q).unwrap();
            }
        }
        if sub.rank() < k {
            return k - 1;
        }
    }
    m.cols()
}

/// Solve A·x = b exactly over ℚ for a consistent system with full column
/// rank. Returns None when the system is inconsistent.
fn solve_consistent(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.rows();
    let cols = a.cols();
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Scalar> =
                (0..cols).map(|j| a.at(i, j).to_ring(Ring::Q).unwrap()).collect();
            row.push(b[i].to_ring(Ring::Q).unwrap());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].recip().ok()?;
        for j in col..=cols {
            aug[pivot_row][j] = &aug[pivot_row][j] * &inv;
        }
        for i in 0..rows {
            if i == pivot_row || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for j in col..=cols {
                let t = &f * &aug[pivot_row][j];
                aug[i][j] -= &t;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in aug.iter().skip(pivot_row) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(Ring::Q); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = aug[i][cols].clone();
    }
    Some(x)
}

/// Berlekamp–Massey over ℚ: the minimal connection polynomial
/// C(t) = 1 − a_1t − … (with C(0) = 1) and length L such that
/// s_n = Σ_{i=1..L} a_i·s_{n−i} holds for L ≤ n < seq.len().
pub fn berlekamp_massey(seq: &[Scalar]) -> (Poly, usize) {
    let n = seq.len();
    let s: Vec<Scalar> = seq.iter().map(|x| x.to_ring(Ring::Q).unwrap()).collect();
    let mut c = vec![Scalar::one(Ring::Q)];
    let mut b = vec![Scalar::one(Ring::Q)];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut prev_delta = Scalar::one(Ring::Q);
    for i in 0..n {
        let mut delta = s[i].clone();
        for k in 1..c.len().min(i + 1) {
            let t = &c[k] * &s[i - k];
            delta += &t;
        }
        if delta.is_zero() {
            m += 1;
        } else if 2 * l <= i {
            let old_c = c.clone();
            let scale = delta.checked_div(&prev_delta).expect("nonzero discrepancy");
            sub_scaled_shifted(&mut c, &b, &scale, m);
            b = old_c;
            l = i + 1 - l;
            prev_delta = delta;
            m = 1;
        } else {
            let scale = delta.checked_div(&prev_delta).expect("nonzero discrepancy");
            sub_scaled_shifted(&mut c, &b, &scale, m);
            m += 1;
        }
    }
    (Poly::new(c, Ring::Q), l)
}

/// c -= scale · t^shift · b, extending c as needed.
fn sub_scaled_shifted(c: &mut Vec<Scalar>, b: &[Scalar], scale: &Scalar, shift: usize) {
    if c.len() < b.len() + shift {
        c.resize(b.len() + shift, Scalar::zero(Ring::Q));
    }
    for (k, bk) in b.iter().enumerate() {
        let t = scale * bk;
        c[k + shift] -= &t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arithmetic_depth3() -> RecSeq {
        // (1,2,3,...) presented with the non-minimal recurrence (3,-3,1).
        RecSeq::from_ints(&[3, -3, 1], &[1, 2, 3])
    }

    #[test]
    fn terms_of_basic_sequences() {
        let geo = RecSeq::geometric(&Scalar::from_int(3));
        assert_eq!(geo.term(4), Scalar::from_int(81));
        let d = RecSeq::primitive_d(Ring::Z);
        assert_eq!(d.term(7), Scalar::from_int(7));
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        assert_eq!(s.term(9), Scalar::from_int(10));
        assert_eq!(RecSeq::zero(Ring::Z).term(5), Scalar::from_int(0));
    }

    #[test]
    fn prefix_matches_term() {
        let s = arithmetic_depth3();
        let p = s.prefix(12);
        for (n, v) in p.iter().enumerate() {
            assert_eq!(v, &s.term(n));
            assert_eq!(v, &Scalar::from_int(n as i64 + 1));
        }
    }

    #[test]
    fn shift_of_d() {
        let d = RecSeq::primitive_d(Ring::Z);
        let shifted = d.shift();
        assert_eq!(shifted.prefix(5), RecSeq::from_ints(&[2, -1], &[1, 2]).prefix(5));
    }

    #[test]
    fn hankel_of_arithmetic_sequence() {
        let s = arithmetic_depth3();
        let h2 = s.hankel(2);
        assert_eq!(h2, Matrix::from_ints(&[&[1, 2], &[2, 3]]));
        assert_eq!(h2.det().unwrap(), Scalar::from_int(-1));
        assert_eq!(s.hankel(3).det().unwrap(), Scalar::from_int(0));
        assert_eq!(s.max_hankel_rank(), 2);
    }

    #[test]
    fn minimize_paper_example() {
        let s = arithmetic_depth3();
        let m = s.minimize();
        assert_eq!(m.depth(), 2);
        assert_eq!(m.recurrence(), &[Scalar::from_int(2), Scalar::from_int(-1)]);
        assert_eq!(m.initial(), &[Scalar::from_int(1), Scalar::from_int(2)]);
        assert_eq!(m.recurrence_poly(), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(m.ring(), Ring::Z);
        assert_eq!(m.prefix(40), s.prefix(40));
    }

    #[test]
    fn minimize_geometric_and_zero() {
        let geo = RecSeq::geometric(&Scalar::from_int(5));
        assert_eq!(geo.minimize().depth(), 1);
        let zero_presented = RecSeq::from_ints(&[1, 1], &[0, 0]);
        assert_eq!(zero_presented.minimize().depth(), 0);
    }

    #[test]
    fn had_prod_of_geometrics() {
        let a = RecSeq::geometric(&Scalar::from_int(2));
        let b = RecSeq::geometric(&Scalar::from_int(3));
        let p = a.had_prod(&b).unwrap();
        assert_eq!(p, RecSeq::geometric(&Scalar::from_int(6)));
        assert_eq!(p.depth(), 1);
    }

    #[test]
    fn had_prod_unit_is_identity() {
        let s = arithmetic_depth3();
        let u = RecSeq::unit(Ring::Z);
        assert_eq!(u.had_prod(&s).unwrap(), s);
    }

    #[test]
    fn had_prod_squares() {
        // (1,2,3,...) ⊙ (1,2,3,...) = (1,4,9,...), minimal depth 3 with
        // recurrence (3,-3,1).
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        let sq = s.had_prod(&s).unwrap();
        assert_eq!(sq.depth(), 3);
        assert_eq!(
            sq.recurrence(),
            &[Scalar::from_int(3), Scalar::from_int(-3), Scalar::from_int(1)]
        );
        let p = sq.prefix(10);
        for (n, v) in p.iter().enumerate() {
            assert_eq!(v, &Scalar::from_int(((n + 1) * (n + 1)) as i64));
        }
    }

    #[test]
    fn seq_add_of_geometrics() {
        let a = RecSeq::geometric(&Scalar::from_int(2));
        let b = RecSeq::geometric(&Scalar::from_int(3));
        let sum = a.seq_add(&b);
        assert_eq!(sum.depth(), 2);
        for n in 0..10usize {
            assert_eq!(
                sum.term(n),
                Scalar::from_int(2i64.pow(n as u32) + 3i64.pow(n as u32))
            );
        }
    }

    #[test]
    fn sum_with_negation_vanishes() {
        let s = arithmetic_depth3();
        assert_eq!(s.seq_add(&s.neg()), RecSeq::zero(Ring::Z));
    }

    #[test]
    fn counit_values() {
        assert_eq!(RecSeq::primitive_d(Ring::Z).counit(), Scalar::from_int(0));
        assert_eq!(RecSeq::unit(Ring::Z).counit(), Scalar::from_int(1));
        assert_eq!(RecSeq::geometric(&Scalar::from_int(9)).counit(), Scalar::from_int(1));
    }

    #[test]
    fn comult_of_geometric_is_grouplike() {
        let g = RecSeq::geometric(&Scalar::from_int(4));
        let c = g.comult().unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(c.coeffs(), &Matrix::identity(1, Ring::Q));
        assert!(g.is_grouplike());
        assert!(!g.is_primitive());
    }

    #[test]
    fn comult_of_d() {
        let d = RecSeq::primitive_d(Ring::Z);
        let c = d.comult().unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(
            c.coeffs(),
            &Matrix::from_ints(&[&[-2, 1], &[1, 0]]).to_ring(Ring::Q).unwrap()
        );
        assert!(!c.is_field_level());
        assert!(d.is_primitive());
        assert!(!d.is_grouplike());
    }

    #[test]
    fn comult_counit_law() {
        // (ε ⊗ id)Δ = id: row 0 of H·H^{-1} picks out the sequence itself.
        for s in [
            RecSeq::from_ints(&[2, -1], &[1, 2]),
            RecSeq::from_ints(&[1, 1], &[0, 1]), // Fibonacci
            RecSeq::geometric(&Scalar::from_int(3)),
        ] {
            let c = s.comult().unwrap();
            let k = c.k();
            let shifts: Vec<RecSeq> = {
                let mut v = vec![s.clone()];
                for _ in 1..k {
                    v.push(v.last().unwrap().shift());
                }
                v
            };
            // sum_{i,j} c_ij * s_i * (D^j s) must reproduce s on 20 terms.
            let n = 20;
            let mut acc = vec![Scalar::zero(Ring::Q); n];
            for i in 0..k {
                for j in 0..k {
                    let w = c.coeffs().at(i, j) * &s.term(i);
                    if w.is_zero() {
                        continue;
                    }
                    let pref = shifts[j].prefix(n);
                    for (idx, p) in pref.iter().enumerate() {
                        let t = &w * p;
                        acc[idx] += &t;
                    }
                }
            }
            assert_eq!(acc, s.prefix(n));
        }
    }

    #[test]
    fn comult_field_level_flag() {
        // Hankel determinant 2: comultiplication needs fraction-field
        // coefficients for this Z-sequence.
        let s = RecSeq::from_ints(&[0, 2], &[1, 0]);
        let c = s.comult().unwrap();
        assert!(c.is_field_level());
    }

    #[test]
    fn comult_of_zero_errors() {
        assert_eq!(RecSeq::zero(Ring::Z).comult(), Err(Error::ZeroSequence));
    }

    #[test]
    fn grouplike_and_primitive_classification() {
        assert!(RecSeq::unit(Ring::Z).is_grouplike());
        assert!(RecSeq::primitive_d(Ring::Z).scale(&Scalar::from_int(7)).is_primitive());
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        assert!(!s.is_grouplike());
        assert!(!s.is_primitive());
    }

    #[test]
    fn equality_by_bounded_prefix() {
        let a = arithmetic_depth3();
        let b = RecSeq::from_ints(&[2, -1], &[1, 2]);
        assert_eq!(a, b);
        let c = RecSeq::from_ints(&[2, -1], &[1, 3]);
        assert_ne!(a, c);
    }

    #[test]
    fn berlekamp_massey_minimal_polynomials() {
        let fib = RecSeq::from_ints(&[1, 1], &[0, 1]);
        let (c, l) = berlekamp_massey(&fib.prefix(12));
        assert_eq!(l, 2);
        assert_eq!(c, Poly::from_ints(&[1, -1, -1]));

        // Eventually-recursive with a transient: (5,1,1,1,...).
        let s: Vec<Scalar> = [5i64, 1, 1, 1, 1, 1, 1, 1]
            .iter()
            .map(|&x| Scalar::from_int(x))
            .collect();
        let (c, l) = berlekamp_massey(&s);
        assert_eq!(l, 2);
        assert_eq!(c, Poly::from_ints(&[1, -1]));
    }

    #[test]
    fn minimize_of_hadamard_products_bounded() {
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        let t = RecSeq::from_ints(&[1, 1], &[0, 1]);
        let p = s.had_prod(&t).unwrap();
        assert!(p.depth() <= s.depth() * t.depth());
        let direct: Vec<Scalar> = (0..16).map(|n| s.term(n) * t.term(n)).collect();
        assert_eq!(p.prefix(16), direct);
    }
}
