//! Exact matrices over ℤ or ℚ.
//!
//! Everything here is fraction-free or rational-exact: Bareiss elimination
//! for determinants and ranks, Faddeev–LeVerrier for characteristic
//! polynomials and resolvents, and Smith normal form over ℤ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

#[derive(Debug, Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    entries: Vec<Scalar>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>, ring: Ring) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        let entries = entries
            .into_iter()
            .map(|e| e.to_ring(ring).expect("matrix entry outside ring"))
            .collect();
        Matrix { rows, cols, ring, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, ring: Ring) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect(), ring)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&e| Scalar::from_int(e)))
            .collect();
        Matrix::new(r, c, entries, Ring::Z)
    }

    pub fn zero(rows: usize, cols: usize, ring: Ring) -> Matrix {
        Matrix { rows, cols, ring, entries: vec![Scalar::zero(ring); rows * cols] }
    }

    pub fn identity(n: usize, ring: Ring) -> Matrix {
        let mut m = Matrix::zero(n, n, ring);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(ring);
        }
        m
    }

    pub fn diagonal(diag: &[Scalar], ring: Ring) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zero(n, n, ring);
        for (i, d) in diag.iter().enumerate() {
            *m.at_mut(i, i) = d.to_ring(ring).expect("diagonal entry outside ring");
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_ring(&self, ring: Ring) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, ring, entries })
    }

    pub fn has_integer_entries(&self) -> bool {
        self.entries.iter().all(Scalar::is_integer)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = Scalar::zero(self.ring);
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.at(i, j).is_zero()))
    }

    /// Matrix-vector product M·v.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.ring);
                for (j, vj) in v.iter().enumerate() {
                    if !self.at(i, j).is_zero() && !vj.is_zero() {
                        let t = self.at(i, j) * vj;
                        acc += &t;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-vector product c·M.
    pub fn vec_mul(&self, c: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(c.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = Scalar::zero(self.ring);
                for (i, ci) in c.iter().enumerate() {
                    if !self.at(i, j).is_zero() && !ci.is_zero() {
                        let t = ci * self.at(i, j);
                        acc += &t;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows, self.ring);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Kronecker product, (rows·rows′) × (cols·cols′).
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let ring = self.ring.join(rhs.ring);
        let mut out = Matrix::zero(self.rows * rhs.rows, self.cols * rhs.cols, ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        *out.at_mut(i * rhs.rows + k, j * rhs.cols + l) = a * rhs.at(k, l);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let ring = self.ring.join(rhs.ring);
        let mut out = Matrix::zero(self.rows + rhs.rows, self.cols + rhs.cols, ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                *out.at_mut(self.rows + i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        out
    }

    /// Clear denominators row by row, returning an integer matrix with the
    /// same row spans (used by the fraction-free routines).
    fn integerized(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.at(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let e = self.at(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank over the fraction field, by fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integerized();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // Pivot search down column c.
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = &t / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
            rank += 1;
        }
        rank
    }

    /// Exact determinant (Bareiss on the integerized matrix, with the
    /// denominator scaling divided back out).
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.ring));
        }
        let mut scale = BigInt::one();
        let mut m = {
            let rows = self.integerized();
            for (i, row) in rows.iter().enumerate() {
                // det(original) = det(integerized) / prod(row lcms)
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.at(i, j).denom());
                }
                let _ = row;
                scale *= lcm;
            }
            rows
        };
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Scalar::zero(self.ring).to_ring(self.ring)?);
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = if sign < 0 { -m[n - 1][n - 1].clone() } else { m[n - 1][n - 1].clone() };
        let value = Scalar::from_int(det_int)
            .checked_div(&Scalar::from_int(scale))
            .expect("scale is nonzero");
        if self.ring == Ring::Z {
            value.to_ring(Ring::Z)
        } else {
            value.to_ring(Ring::Q)
        }
    }

    /// Characteristic polynomial det(xI − M), monic, exact.
    ///
    /// Faddeev–LeVerrier over ℚ, with a closed form for diagonal matrices.
    /// Integer matrices get integer coefficients back.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(self.ring));
        }
        if self.is_diagonal() {
            let mut p = Poly::one(self.ring);
            for i in 0..n {
                p = &p * &Poly::new(vec![-self.at(i, i), Scalar::one(self.ring)], self.ring);
            }
            return Ok(p);
        }
        let (coeffs, _) = self.faddeev_leverrier()?;
        let p = Poly::new(coeffs, Ring::Q);
        if self.ring == Ring::Z {
            p.to_ring(Ring::Z)
        } else {
            Ok(p)
        }
    }

    /// Faddeev–LeVerrier iteration: returns the characteristic polynomial
    /// coefficients (lowest degree first) and the auxiliary matrices B_k with
    /// (zI − M)⁻¹ = (Σ_k B_k z^{n−1−k}) / charpoly(z), k = 0..n−1.
    pub fn faddeev_leverrier(&self) -> Result<(Vec<Scalar>, Vec<Matrix>)> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let m = self.to_ring(Ring::Q)?;
        let mut coeffs = vec![Scalar::zero(Ring::Q); n + 1];
        coeffs[n] = Scalar::one(Ring::Q);
        let mut bs = Vec::with_capacity(n);
        let mut b = Matrix::identity(n, Ring::Q);
        for k in 1..=n {
            bs.push(b.clone());
            let mb = &m * &b;
            let c = -(mb.trace().checked_div(&Scalar::from_int(k as i64))?);
            coeffs[n - k] = c.clone();
            if k < n {
                b = &mb + &Matrix::diagonal(&vec![c; n], Ring::Q);
            }
        }
        Ok((coeffs, bs))
    }

    /// Inverse over the fraction field (None when singular).
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).to_ring(Ring::Q).unwrap()).collect())
            .collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one(Ring::Q) } else { Scalar::zero(Ring::Q) })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].clone();
            for j in 0..n {
                a[col][j] = a[col][j].checked_div(&pivot)?;
                inv[col][j] = inv[col][j].checked_div(&pivot)?;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] -= &t;
                    let t = &f * &inv[col][j];
                    inv[i][j] -= &t;
                }
            }
        }
        Ok(Some(Matrix::from_rows(inv, Ring::Q)))
    }

    /// Companion matrix of a monic polynomial x^n + d_{n−1}x^{n−1} + … + d_0,
    /// in the convention with ones on the superdiagonal and −d_i along the
    /// bottom row. Its characteristic polynomial is the input.
    pub fn companion(p: &Poly) -> Result<Matrix> {
        if !p.is_monic() {
            return Err(Error::InvalidArgument("companion matrix needs a monic polynomial".into()));
        }
        let n = p.degree() as usize;
        let mut m = Matrix::zero(n, n, p.ring());
        for i in 0..n.saturating_sub(1) {
            *m.at_mut(i, i + 1) = Scalar::one(p.ring());
        }
        for j in 0..n {
            *m.at_mut(n - 1, j) = -p.coeff(j);
        }
        Ok(m)
    }

    /// Diagonal of the Smith normal form over ℤ: nonnegative, each dividing
    /// the next, length min(rows, cols).
    ///
    /// Elementary row/column operations with pivoting on the smallest
    /// nonzero |entry| keep coefficient growth tame at this scale.
    pub fn invariant_factors(&self) -> Result<Vec<BigInt>> {
        if !self.has_integer_entries() {
            return Err(Error::NonIntegerEntries);
        }
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_bigint().unwrap()).collect())
            .collect();
        let rows = self.rows;
        let cols = self.cols;
        let k = rows.min(cols);
        let mut diag = Vec::with_capacity(k);
        let mut top = 0usize;
        while top < k {
            // Smallest nonzero entry in the remaining block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in top..rows {
                for j in top..cols {
                    if !m[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // all remaining entries zero
            };
            m.swap(top, pi);
            for row in m.iter_mut() {
                row.swap(top, pj);
            }
            // Reduce row and column by the pivot until both are clear.
            loop {
                let mut dirty = false;
                for i in top + 1..rows {
                    if m[i][top].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&m[i][top], &m[top][top]);
                    if !q.is_zero() {
                        for j in top..cols {
                            let t = &q * &m[top][j];
                            m[i][j] -= t;
                        }
                    }
                    if !m[i][top].is_zero() {
                        m.swap(top, i);
                        dirty = true;
                    }
                }
                for j in top + 1..cols {
                    if m[top][j].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&m[top][j], &m[top][top]);
                    if !q.is_zero() {
                        for i in top..rows {
                            let t = &q * &m[i][top];
                            m[i][j] -= t;
                        }
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(top, j);
                        }
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            // Make the pivot divide the whole remaining block.
            let mut fixed = true;
            'scan: for i in top + 1..rows {
                for j in top + 1..cols {
                    if !(&m[i][j] % &m[top][top]).is_zero() {
                        for col in top..cols {
                            let t = m[i][col].clone();
                            m[top][col] += t;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue; // redo this pivot with the fattened row
            }
            diag.push(m[top][top].abs());
            top += 1;
        }
        diag.resize(k, BigInt::zero());
        // Settle divisibility ordering (gcd/lcm exchange).
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[j].is_zero() || (&diag[j] % &diag[i]).is_zero() {
                    continue;
                }
                let g = diag[i].gcd(&diag[j]);
                let l = if g.is_zero() { BigInt::zero() } else { (&diag[i] * &diag[j]) / &g };
                diag[i] = g;
                diag[j] = l;
            }
        }
        Ok(diag)
    }
}

/// Quotient rounded to nearest, so remainders satisfy |r| ≤ |d|/2.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    if &r.abs() * 2 > d.abs() {
        if (r.is_positive()) == (d.is_positive()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { " " })?;
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            f.write_str(if i + 1 == self.rows { "]]" } else { "]\n" })?;
        }
        Ok(())
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring.join(rhs.ring), entries }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring.join(rhs.ring), entries }
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let ring = self.ring.join(rhs.ring);
        let mut out = Matrix::zero(self.rows, rhs.cols, ring);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    *out.at_mut(i, j) += &t;
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}
