//! Discrete linear dynamical systems (E, f, v, c) and realization theory.
//!
//! The bat map sends a system to its input-output sequence
//! (c(v), c(f v), c(f² v), …); realization builds the companion system of a
//! recurrence back from the sequence. Transfer functions are computed
//! exactly through the Faddeev–LeVerrier resolvent.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{factors_into_cyclotomics, Poly};
use crate::ratfunc::RatFunc;
use crate::recseq::RecSeq;
use crate::scalar::{Ring, Scalar};
use crate::series::TruncSeries;

use crate::almkvist::{SigmaKind, SigmaSpec};

/// A system (E, f, v, c): state matrix, input vector, output covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSys {
    state: Matrix,
    input: Vec<Scalar>,
    output: Vec<Scalar>,
}

impl LinSys {
    pub fn new(state: Matrix, input: Vec<Scalar>, output: Vec<Scalar>) -> Result<LinSys> {
        if !state.is_square() {
            return Err(Error::NonSquareMatrix { rows: state.rows(), cols: state.cols() });
        }
        let n = state.rows();
        if input.len() != n || output.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "state is {}x{} but |v| = {}, |c| = {}",
                n,
                n,
                input.len(),
                output.len()
            )));
        }
        let ring = state.ring();
        let coerce = |v: Vec<Scalar>| -> Result<Vec<Scalar>> {
            v.into_iter().map(|x| x.to_ring(ring)).collect()
        };
        Ok(LinSys { state, input: coerce(input)?, output: coerce(output)? })
    }

    pub fn from_ints(state: &[&[i64]], input: &[i64], output: &[i64]) -> LinSys {
        LinSys::new(
            Matrix::from_ints(state),
            input.iter().map(|&x| Scalar::from_int(x)).collect(),
            output.iter().map(|&x| Scalar::from_int(x)).collect(),
        )
        .expect("consistent dimensions")
    }

    /// The unit system 𝟏 = (R, 1, 1, 1).
    pub fn unit(ring: Ring) -> LinSys {
        LinSys {
            state: Matrix::identity(1, ring),
            input: vec![Scalar::one(ring)],
            output: vec![Scalar::one(ring)],
        }
    }

    pub fn state(&self) -> &Matrix {
        &self.state
    }

    pub fn input(&self) -> &[Scalar] {
        &self.input
    }

    pub fn output(&self) -> &[Scalar] {
        &self.output
    }

    pub fn dim(&self) -> usize {
        self.state.rows()
    }

    pub fn ring(&self) -> Ring {
        self.state.ring()
    }

    /// The input-output sequence (c·Mⁿ·v)ₙ as a recursive sequence, with the
    /// recurrence taken from the characteristic polynomial and then
    /// minimized.
    pub fn bat(&self) -> RecSeq {
        let n = self.dim();
        if n == 0 {
            return RecSeq::zero(self.ring());
        }
        let charpoly = self.state.charpoly().expect("square");
        let mut terms = Vec::with_capacity(n);
        let mut w = self.input.clone();
        for k in 0..n {
            terms.push(dot(&self.output, &w, self.ring()));
            if k + 1 < n {
                w = self.state.mul_vec(&w);
            }
        }
        RecSeq::from_recurrence_poly(&charpoly, terms, self.ring())
            .expect("monic charpoly")
            .minimize()
    }

    /// First N terms c·Mⁿ·v computed directly (without the recurrence).
    pub fn output_prefix(&self, len: usize) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(len);
        let mut w = self.input.clone();
        for k in 0..len {
            out.push(dot(&self.output, &w, self.ring()));
            if k + 1 < len {
                w = self.state.mul_vec(&w);
            }
        }
        out
    }

    pub fn direct_sum(&self, rhs: &LinSys) -> Result<LinSys> {
        self.ring().require_eq(rhs.ring())?;
        let state = self.state.direct_sum(&rhs.state);
        let input = [self.input.clone(), rhs.input.clone()].concat();
        let output = [self.output.clone(), rhs.output.clone()].concat();
        LinSys::new(state, input, output)
    }

    pub fn tensor(&self, rhs: &LinSys) -> Result<LinSys> {
        self.ring().require_eq(rhs.ring())?;
        let state = self.state.kron(&rhs.state);
        let input = kron_vec(&self.input, &rhs.input);
        let output = kron_vec(&self.output, &rhs.output);
        LinSys::new(state, input, output)
    }

    /// Duality: (E, f, v, c) ↦ (E*, f*, c*, v*).
    pub fn dual(&self) -> LinSys {
        LinSys {
            state: self.state.transpose(),
            input: self.output.clone(),
            output: self.input.clone(),
        }
    }

    /// Reachability matrix [v, Mv, …, M^{n−1}v] (columns); Cayley–Hamilton
    /// justifies stopping after n vectors.
    pub fn reachability_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(n, n, self.ring());
        let mut w = self.input.clone();
        for j in 0..n {
            for i in 0..n {
                *m.at_mut(i, j) = w[i].clone();
            }
            if j + 1 < n {
                w = self.state.mul_vec(&w);
            }
        }
        m
    }

    /// Observability matrix with rows c, cM, …, cM^{n−1}.
    pub fn observability_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(n, n, self.ring());
        let mut u = self.output.clone();
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = u[j].clone();
            }
            if i + 1 < n {
                u = self.state.vec_mul(&u);
            }
        }
        m
    }

    /// Complete reachability: the iterated inputs generate E.
    ///
    /// Over ℚ this is full rank of the reachability matrix; over ℤ module
    /// generation is decided by all Smith invariant factors being 1.
    pub fn is_completely_reachable(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        let r = self.reachability_matrix();
        match self.ring() {
            Ring::Q => r.rank() == n,
            Ring::Z => r
                .invariant_factors()
                .expect("integer entries")
                .iter()
                .all(|d| d == &num_bigint::BigInt::from(1)),
        }
    }

    /// Complete observability: x ↦ (c(x), c(fx), …) is injective, i.e. the
    /// observability matrix has full rank over the fraction field.
    pub fn is_completely_observable(&self) -> bool {
        let n = self.dim();
        n == 0 || self.observability_matrix().rank() == n
    }

    pub fn is_canonical(&self) -> bool {
        self.is_completely_reachable() && self.is_completely_observable()
    }

    /// Split: the system and its dual are both completely reachable.
    pub fn is_split(&self) -> bool {
        self.is_completely_reachable() && self.dual().is_completely_reachable()
    }

    /// Exact transfer function c·(zI − M)⁻¹·v, strictly proper, with
    /// X = charpoly(M) monic. It is automatically reduced when the system
    /// is canonical.
    pub fn transfer(&self) -> TransferFunction {
        let n = self.dim();
        if n == 0 {
            return TransferFunction { num: Poly::zero(self.ring()), den: Poly::one(self.ring()) };
        }
        let (charpoly_coeffs, resolvent) = self.state.faddeev_leverrier().expect("square");
        let mut num_coeffs = vec![Scalar::zero(Ring::Q); n];
        for (k, b) in resolvent.iter().enumerate() {
            // B_k contributes at degree n-1-k.
            let w = b.mul_vec(&self.input.iter().map(|x| x.to_ring(Ring::Q).unwrap()).collect::<Vec<_>>());
            num_coeffs[n - 1 - k] = dot(&self.output, &w, Ring::Q);
        }
        let num = Poly::new(num_coeffs, Ring::Q);
        let den = Poly::new(charpoly_coeffs, Ring::Q);
        let (num, den) = if self.ring() == Ring::Z {
            (num.to_ring(Ring::Z).expect("integer data"), den.to_ring(Ring::Z).expect("integer data"))
        } else {
            (num, den)
        };
        TransferFunction { num, den }
    }

    /// Σ-relative admissibility: all zeros and poles of the reduced transfer
    /// function lie in Σ, after stripping zeros at the origin (0 ∉ Σ).
    pub fn poles_zeros_in_sigma(&self, spec: &SigmaSpec) -> bool {
        self.transfer().reduced().poles_zeros_in_sigma(spec)
    }
}

fn dot(a: &[Scalar], b: &[Scalar], ring: Ring) -> Scalar {
    let mut acc = Scalar::zero(ring);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            let t = x * y;
            acc += &t;
        }
    }
    acc
}

fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Realize a sequence by the companion system of its presented recurrence:
/// E = R[x]/(m(x)), f = x·, v = 1, c(xⁱ) = sᵢ. Completely reachable by
/// construction; dimension = presented depth.
pub fn realize(s: &RecSeq) -> Result<LinSys> {
    let r = s.depth();
    if r == 0 {
        return Err(Error::EmptyRecurrence);
    }
    let state = s.companion_matrix();
    let mut input = vec![Scalar::zero(s.ring()); r];
    input[0] = Scalar::one(s.ring());
    let output = s.initial().to_vec();
    LinSys::new(state, input, output)
}

/// Minimal canonical realization: realize the minimized sequence. The
/// dimension equals the maximal Hankel rank.
pub fn minimal_realize(s: &RecSeq) -> Result<LinSys> {
    let minimal = s.minimize();
    if minimal.depth() == 0 {
        return Err(Error::ZeroSequence);
    }
    realize(&minimal)
}

/// A strictly proper rational function Y(z)/X(z) with X monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferFunction {
    num: Poly,
    den: Poly,
}

impl TransferFunction {
    /// Normalizes X to be monic (pushing the leading unit into Y) and
    /// requires deg Y < deg X.
    pub fn new(num: Poly, den: Poly) -> Result<TransferFunction> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num.degree() >= den.degree() {
            return Err(Error::NotStrictlyProper { num: num.degree(), den: den.degree() });
        }
        let lead = den.leading();
        let (num, den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.recip()?;
            (num.scale(&inv), den.scale(&inv))
        };
        Ok(TransferFunction { num, den })
    }

    /// Y(z), the numerator.
    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// X(z), the monic denominator.
    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.den.degree() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel gcd(Y, X); X stays monic.
    pub fn reduced(&self) -> TransferFunction {
        if self.num.is_zero() {
            return TransferFunction { num: self.num.clone(), den: Poly::one(self.den.ring()) };
        }
        let g = self.num.gcd(&self.den);
        if g.degree() <= 0 {
            return self.clone();
        }
        let num = self.num.div_exact(&g).expect("gcd divides");
        let den = self.den.div_exact(&g).expect("gcd divides");
        TransferFunction::new(num, den).expect("still strictly proper")
    }

    /// The Laurent coefficients s_n of Σ s_n z^{−n−1}, which reproduce the
    /// bat sequence of any realizing system. Computed by expanding
    /// Ŷ(t)/X̂(t) in t = 1/z, where Ŷ, X̂ are the degree-aligned coefficient
    /// reversals.
    pub fn laurent_prefix(&self, len: usize) -> Result<Vec<Scalar>> {
        let n = self.den.degree() as usize;
        if n == 0 {
            return Ok(vec![Scalar::zero(self.den.ring()); len]);
        }
        let ring = self.num.ring().join(self.den.ring());
        let mut yhat = vec![Scalar::zero(ring); n];
        for j in 0..n {
            yhat[j] = self.num.coeff(n - 1 - j).to_ring(ring)?;
        }
        let mut xhat = vec![Scalar::zero(ring); n + 1];
        for j in 0..=n {
            xhat[j] = self.den.coeff(n - j).to_ring(ring)?;
        }
        if len == 0 {
            return Ok(Vec::new());
        }
        let rf = RatFunc::new(Poly::new(yhat, ring), Poly::new(xhat, ring))?;
        let series = rf.expand(len - 1)?;
        Ok(series.coeffs().to_vec())
    }

    /// All zeros and poles are roots of unity (zeros at the origin are
    /// stripped first, since 0 ∉ Σ).
    pub fn poles_zeros_in_sigma(&self, spec: &SigmaSpec) -> bool {
        match spec.kind {
            SigmaKind::RootsOfUnity => {
                let reduced = self.reduced();
                let pole_ok = all_roots_are_roots_of_unity(&reduced.den);
                if reduced.num.is_zero() {
                    return pole_ok;
                }
                let (_, stripped) = reduced.num.strip_power_of_x();
                pole_ok && all_roots_are_roots_of_unity(&stripped)
            }
        }
    }
}

fn all_roots_are_roots_of_unity(p: &Poly) -> bool {
    if p.degree() <= 0 {
        return true;
    }
    let monic = p.monic();
    monic.has_integer_coeffs() && factors_into_cyclotomics(&monic.to_ring(Ring::Z).expect("integral"))
}

impl std::fmt::Display for TransferFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Controllable companion-form realization of a strictly proper transfer
/// function: f the companion of X(z), v = (0,…,0,1), c the coefficients of
/// Y(z). Completely reachable, with transfer function exactly the input.
pub fn realize_transfer(t: &TransferFunction) -> LinSys {
    let n = t.den().degree() as usize;
    let ring = t.num().ring().join(t.den().ring());
    if n == 0 {
        return LinSys::new(Matrix::zero(0, 0, ring), vec![], vec![]).expect("empty system");
    }
    let state = Matrix::companion(&t.den().to_ring(ring).expect("join"))
        .expect("denominator is monic");
    let mut input = vec![Scalar::zero(ring); n];
    input[n - 1] = Scalar::one(ring);
    let output = (0..n).map(|k| t.num().coeff(k).to_ring(ring).unwrap()).collect();
    LinSys::new(state, input, output).expect("consistent dimensions")
}

/// Expand a transfer function's Laurent series and compare with a series
/// truncation; used by tests and the polylogarithm cross-checks.
pub fn laurent_matches_series(t: &TransferFunction, series: &TruncSeries, shift: usize) -> bool {
    let len = series.order() + 1 - shift;
    match t.laurent_prefix(len) {
        Ok(prefix) => (0..len).all(|k| &prefix[k] == series.coeff(k + shift)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The worked realization of s = (1, 2, 3, …).
    fn paper_system() -> LinSys {
        LinSys::from_ints(&[&[0, -1], &[1, 2]], &[1, 0], &[1, 2])
    }

    #[test]
    fn bat_of_paper_system() {
        let s = paper_system().bat();
        let expected: Vec<Scalar> = (1..=10).map(Scalar::from_int).collect();
        assert_eq!(s.prefix(10), expected);
    }

    #[test]
    fn bat_of_unit_system() {
        let one = LinSys::unit(Ring::Z);
        assert_eq!(one.bat(), RecSeq::unit(Ring::Z));
    }

    #[test]
    fn realize_paper_example() {
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        let sys = realize(&s).unwrap();
        assert_eq!(sys, paper_system());
        assert_eq!(sys.bat(), s);
    }

    #[test]
    fn realize_geometric() {
        let s = RecSeq::geometric(&Scalar::from_int(5));
        let sys = realize(&s).unwrap();
        assert_eq!(sys, LinSys::from_ints(&[&[5]], &[1], &[1]));
    }

    #[test]
    fn minimal_realize_drops_excess_depth() {
        let s = RecSeq::from_ints(&[3, -3, 1], &[1, 2, 3]);
        assert_eq!(realize(&s).unwrap().dim(), 3);
        let min = minimal_realize(&s).unwrap();
        assert_eq!(min.dim(), 2);
        assert_eq!(min.bat(), s);
    }

    #[test]
    fn paper_system_is_split_and_canonical() {
        let sys = paper_system();
        assert!(sys.is_completely_reachable());
        assert!(sys.is_completely_observable());
        assert!(sys.is_canonical());
        assert!(sys.is_split());
    }

    #[test]
    fn zero_input_is_not_reachable() {
        let sys = LinSys::from_ints(&[&[2]], &[0], &[1]);
        assert!(!sys.is_completely_reachable());
        let zero = LinSys::from_ints(&[&[0]], &[0], &[0]);
        assert!(!zero.is_canonical());
        assert!(!zero.is_split());
    }

    #[test]
    fn hankel_det_two_is_canonical_but_not_split() {
        // s = (1, 0, 2, 0, 4, ...) with recurrence (0, 2): det H_2 = 2.
        let s = RecSeq::from_ints(&[0, 2], &[1, 0]);
        let sys = realize(&s).unwrap();
        assert!(sys.is_completely_reachable());
        assert!(sys.is_canonical());
        assert!(!sys.is_split());
        // Over Q the same system is split.
        let sys_q = LinSys::new(
            sys.state().to_ring(Ring::Q).unwrap(),
            sys.input().to_vec(),
            sys.output().to_vec(),
        )
        .unwrap();
        assert!(sys_q.is_split());
    }

    #[test]
    fn dual_is_involution_and_preserves_bat() {
        let sys = LinSys::from_ints(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 2]], &[1, 0, 2], &[0, 1, 1]);
        assert_eq!(sys.dual().dual(), sys);
        assert_eq!(sys.dual().bat(), sys.bat());
    }

    #[test]
    fn bat_is_additive_and_multiplicative() {
        let a = LinSys::from_ints(&[&[1, 1], &[0, 2]], &[1, 1], &[2, -1]);
        let b = LinSys::from_ints(&[&[0, -1], &[1, 2]], &[1, 0], &[1, 2]);
        let sum = a.direct_sum(&b).unwrap().bat();
        assert_eq!(sum, a.bat().seq_add(&b.bat()));
        let prod = a.tensor(&b).unwrap().bat();
        assert_eq!(prod, a.bat().had_prod(&b.bat()).unwrap());
        let unit = LinSys::unit(Ring::Z);
        assert_eq!(a.tensor(&unit).unwrap().bat(), a.bat());
    }

    #[test]
    fn transfer_of_paper_system() {
        let t = paper_system().transfer();
        assert_eq!(t.num(), &Poly::from_ints(&[0, 1]));
        assert_eq!(t.den(), &Poly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn transfer_of_unit_system() {
        let t = LinSys::unit(Ring::Z).transfer();
        assert_eq!(t.num(), &Poly::from_ints(&[1]));
        assert_eq!(t.den(), &Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn laurent_expansion_reproduces_bat() {
        let sys = LinSys::from_ints(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]], &[1, 2, 0], &[1, 0, 1]);
        let t = sys.transfer();
        let prefix = t.laurent_prefix(20).unwrap();
        assert_eq!(prefix, sys.output_prefix(20));
    }

    #[test]
    fn realize_transfer_paper_example() {
        let t = TransferFunction::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, -2, 1]))
            .unwrap();
        let sys = realize_transfer(&t);
        assert_eq!(sys, LinSys::from_ints(&[&[0, 1], &[-1, 2]], &[0, 1], &[0, 1]));
        assert!(sys.is_completely_reachable());
        assert_eq!(sys.transfer(), t);
        let bat = sys.bat();
        let expected: Vec<Scalar> = (1..=8).map(Scalar::from_int).collect();
        assert_eq!(bat.prefix(8), expected);
    }

    #[test]
    fn realize_transfer_one_dimensional() {
        let t = TransferFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[-7, 1])).unwrap();
        let sys = realize_transfer(&t);
        assert_eq!(sys, LinSys::from_ints(&[&[7]], &[1], &[1]));
        assert_eq!(sys.transfer(), t);
    }

    #[test]
    fn transfer_function_requires_strict_properness() {
        assert!(matches!(
            TransferFunction::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[1, 1])),
            Err(Error::NotStrictlyProper { .. })
        ));
    }

    #[test]
    fn transfer_normalizes_to_monic_denominator() {
        let t = TransferFunction::new(Poly::from_ints(&[2]), Poly::from_ints(&[2, 4])).unwrap();
        assert_eq!(t.den(), &Poly::new(vec![Scalar::from_ratio(1, 2), Scalar::from_int(1)], Ring::Q));
        assert_eq!(t.num(), &Poly::new(vec![Scalar::from_ratio(1, 2)], Ring::Q));
    }

    #[test]
    fn sigma_admissibility_of_transfer_functions() {
        let spec = SigmaSpec::default();
        // z/(z-1)^2: pole 1, zero at the origin stripped.
        assert!(paper_system().poles_zeros_in_sigma(&spec));
        // 1/(z-2): pole 2 is not a root of unity.
        let sys = LinSys::from_ints(&[&[2]], &[1], &[1]);
        assert!(!sys.poles_zeros_in_sigma(&spec));
        // Poles at the 4th roots of unity.
        let t = TransferFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, 0, 1])).unwrap();
        assert!(t.poles_zeros_in_sigma(&spec));
    }

    #[test]
    fn reduced_cancels_common_factors() {
        // (z-1)/((z-1)(z-2)) -> 1/(z-2)
        let num = Poly::from_ints(&[-1, 1]);
        let den = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1]);
        let t = TransferFunction::new(num, den).unwrap().reduced();
        assert_eq!(t.num(), &Poly::from_ints(&[1]));
        assert_eq!(t.den(), &Poly::from_ints(&[-2, 1]));
    }
}
