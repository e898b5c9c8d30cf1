//! Dense matrices over scalars, polynomials and factored fractions.

use std::fmt;

use super::field::Scalar;
use super::fraction::FactoredFraction;
use super::poly::MultiPoly;
use super::AlgebraError;

/// The operations a matrix entry must support.
pub trait RingElement: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Zero of the same ring as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn render(&self) -> String;
}

impl RingElement for Scalar {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn render(&self) -> String {
        Scalar::render(self, false)
    }
}

impl RingElement for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.field(), self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.field(), self.nvars())
    }
    fn render(&self) -> String {
        MultiPoly::render(self)
    }
}

impl RingElement for FactoredFraction {
    fn add(&self, o: &Self) -> Self {
        FactoredFraction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FactoredFraction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FactoredFraction::mul(self, o)
    }
    fn neg(&self) -> Self {
        FactoredFraction::neg(self)
    }
    fn is_zero(&self) -> bool {
        FactoredFraction::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        FactoredFraction::zero(self.field(), self.nvars())
    }
    fn one_like(&self) -> Self {
        FactoredFraction::one(self.field(), self.nvars())
    }
    fn render(&self) -> String {
        FactoredFraction::render(self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(usize, usize, &T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let mut data = Vec::with_capacity(self.data.len());
        for (i, j, v) in self.entries() {
            data.push(f(i, j, v)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix<T>
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T: RingElement> Matrix<T> {
    /// Identity matrix in the ring of `template`.
    pub fn identity_like(n: usize, template: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { template.one_like() } else { template.zero_like() })
    }

    fn template(&self) -> &T {
        self.data.first().expect("empty matrix")
    }

    pub fn try_mul(&self, other: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.template().zero_like();
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        }))
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        self.try_mul(other).expect("matrix dimensions")
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(RingElement::neg)
    }

    pub fn scale_by(&self, c: &T) -> Matrix<T> {
        self.map(|v| v.mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j).sub(self.get(j, i)).is_zero()))
    }

    /// Determinant by cofactor expansion with memoized minors over column
    /// subsets (division free, exponential in the size; sizes here are <= 8).
    pub fn det(&self) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Err(AlgebraError::DimensionMismatch("empty matrix".into()));
        }
        Ok(self.minor_det(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()))
    }

    /// Determinant of the submatrix with the given row and column indices.
    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> T {
        let k = rows.len();
        debug_assert_eq!(k, cols.len());
        match k {
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]).mul(self.get(rows[1], cols[1]));
                let b = self.get(rows[0], cols[1]).mul(self.get(rows[1], cols[0]));
                return a.sub(&b);
            }
            _ => {}
        }
        // dp over subsets of `cols`: expand along rows bottom-up.
        // table[mask] = det of rows[k - popcount(mask)..] x cols[mask]
        let zero = self.template().zero_like();
        let mut table: Vec<Option<T>> = vec![None; 1 << k];
        table[0] = Some(self.template().one_like());
        for mask in 1usize..(1 << k) {
            let size = mask.count_ones() as usize;
            let r = rows[k - size];
            let mut acc = zero.clone();
            let mut sign_pos = true;
            for c in 0..k {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let entry = self.get(r, cols[c]);
                if !entry.is_zero() {
                    let sub = table[mask & !(1 << c)].as_ref().expect("filled");
                    if !sub.is_zero() {
                        let term = entry.mul(sub);
                        acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
                    }
                }
                sign_pos = !sign_pos;
            }
            table[mask] = Some(acc);
        }
        table[(1 << k) - 1].take().expect("filled")
    }

    /// Classical adjugate: `adj(M)[i][j] = (-1)^(i+j) det(minor(j, i))`.
    pub fn adjugate(&self) -> Result<Matrix<T>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare);
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::from_fn(1, 1, |_, _| self.template().one_like()));
        }
        Ok(Matrix::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        }))
    }

    pub fn render_rows(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(RingElement::render).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl Matrix<MultiPoly> {
    /// Inverse as adjugate over determinant; the determinant is factored
    /// against `pool` and recorded in the denominators.
    pub fn inverse(&self, pool: &[MultiPoly]) -> Result<Matrix<FactoredFraction>, AlgebraError> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        let adj = self.adjugate()?;
        let inv_det = FactoredFraction::from_poly(det).recip(pool)?;
        Ok(adj.map(|a| inv_det.mul_poly(a)))
    }

    pub fn to_fractions(&self) -> Matrix<FactoredFraction> {
        self.map(|p| FactoredFraction::from_poly(p.clone()))
    }
}

impl Matrix<FactoredFraction> {
    pub fn inverse(&self, pool: &[MultiPoly]) -> Result<Matrix<FactoredFraction>, AlgebraError> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        let adj = self.adjugate()?;
        let inv_det = det.recip(pool)?;
        Ok(adj.map(|a| a.mul(&inv_det)))
    }

    /// Converts to a polynomial matrix, reporting the first entry whose
    /// denominator does not cancel.
    pub fn to_polys(&self) -> Result<Matrix<MultiPoly>, (usize, usize)> {
        self.try_map(|i, j, v| v.as_poly().ok_or((i, j)))
    }

    /// Exact equality, entry by entry; returns the first differing entry.
    pub fn first_difference(&self, other: &Matrix<FactoredFraction>) -> Option<(usize, usize)> {
        self.entries().find(|(i, j, v)| !v.equals(other.get(*i, *j))).map(|(i, j, _)| (i, j))
    }
}

impl Matrix<Scalar> {
    pub fn inverse(&self) -> Result<Matrix<Scalar>, AlgebraError> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        let inv = det.inv()?;
        Ok(self.adjugate()?.map(|a| a * &inv))
    }

    pub fn to_polys(&self, nvars: usize) -> Matrix<MultiPoly> {
        self.map(|c| MultiPoly::constant(c, nvars))
    }
}

impl<T: RingElement> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::FieldContext;

    #[test]
    fn identity_gram_det() {
        let q = FieldContext::rationals();
        let id = Matrix::identity_like(2, &Scalar::one(&q));
        assert!(id.det().unwrap().is_one());
    }

    #[test]
    fn det_matches_sarrus() {
        let q = FieldContext::rationals();
        let vals = [[2, -1, 3], [0, 4, 5], [1, 1, -2]];
        let m = Matrix::from_fn(3, 3, |i, j| Scalar::from_int(&q, vals[i][j]));
        // 2(-8-5) - (-1)(0-5) + 3(0-4) = -26 - 5 - 12
        assert_eq!(m.det().unwrap(), Scalar::from_int(&q, -43));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity_like(3, &Scalar::one(&q)));
    }

    #[test]
    fn rank_one_jacobian_inverse() {
        let q = FieldContext::rationals();
        let x = MultiPoly::var(&q, 1, 0);
        let j = Matrix::from_rows(vec![vec![x.scale(&Scalar::from_int(&q, 2))]]);
        assert_eq!(j.det().unwrap(), x.scale(&Scalar::from_int(&q, 2)));
        let inv = j.inverse(std::slice::from_ref(&x)).unwrap();
        let e = inv.get(0, 0);
        assert_eq!(e.denominator_factors(), &[(x.clone(), 1)]);
        assert_eq!(e.render(), "(1/2)/x1");
    }

    #[test]
    fn det_4x4_permutation_sign() {
        let q = FieldContext::rationals();
        // permutation (0 1)(2 3) has sign +1; (0 1 2 3) has sign -1
        let perm = [1, 0, 3, 2];
        let m = Matrix::from_fn(4, 4, |i, j| Scalar::from_int(&q, i64::from(perm[i] == j)));
        assert!(m.det().unwrap().is_one());
        let cyc = [1, 2, 3, 0];
        let m = Matrix::from_fn(4, 4, |i, j| Scalar::from_int(&q, i64::from(cyc[i] == j)));
        assert_eq!(m.det().unwrap(), Scalar::from_int(&q, -1));
    }

    #[test]
    fn not_square() {
        let q = FieldContext::rationals();
        let m = Matrix::from_fn(2, 3, |_, _| Scalar::one(&q));
        assert_eq!(m.det().unwrap_err(), AlgebraError::NotSquare);
    }
}
