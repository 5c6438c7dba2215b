use super::{Echelon, Scalar};
use crate::error::{CqgError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;

/// Dense matrix over Q(i)(q), row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, data: vec![Scalar::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(CqgError::Dimension("ragged matrix".into()));
        }
        Ok(Matrix { nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { Scalar::zero() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.ncols + j] = s;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.nrows)
    }

    /// Is this `c·I` for some scalar `c`?
    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| {
                (0..self.ncols).all(|j| if i == j { *self.get(i, j) == *self.get(0, 0) } else { self.get(i, j).is_zero() })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, f: &Scalar) -> Matrix {
        Matrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().map(|s| s * f).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "matrix shape mismatch");
        Matrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "matrix shape mismatch");
        Matrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.ncols, o.nrows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.nrows, o.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        Matrix::from_fn(self.nrows * o.nrows, self.ncols * o.ncols, |i, j| {
            self.get(i / o.nrows, j / o.ncols) * o.get(i % o.nrows, j % o.ncols)
        })
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.nrows.min(self.ncols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for i in 0..self.nrows {
            e.insert(sparse(&self.row(i)));
        }
        e.rank()
    }

    /// Exact inverse by Gauss–Jordan.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(CqgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.nrows;
        let mut e = Echelon::new(2 * n);
        for i in 0..n {
            let mut r = sparse(&self.row(i));
            r.push((n + i, Scalar::one()));
            e.insert(r);
        }
        e.rref();
        let mut inv = Matrix::zeros(n, n);
        for c in 0..n {
            let row = e.pivot_row(c).ok_or_else(|| CqgError::Singular(format!("column {} has no pivot", c + 1)))?;
            for (j, s) in row {
                if *j >= n {
                    inv.set(c, j - n, s.clone());
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut e = Echelon::new(self.ncols);
        for i in 0..self.nrows {
            e.insert(sparse(&self.row(i)));
        }
        e.rref();
        e.null_space(self.ncols)
    }

    /// Basis of the column space, chosen among the columns themselves.
    pub fn column_basis(&self) -> Vec<Vec<Scalar>> {
        let mut e = Echelon::new(self.nrows);
        let mut out = Vec::new();
        for j in 0..self.ncols {
            let c = self.column(j);
            if e.insert(sparse(&c)).is_some() {
                out.push(c);
            }
        }
        out
    }

    pub fn eval(&self, q0: Complex64) -> Result<DMatrix<Complex64>> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m[(i, j)] = self.get(i, j).eval(q0)?;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.nrows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse form of a dense vector.
pub fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(j, s)| (j, s.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_q_matrix() {
        let q = Scalar::q();
        let m = Matrix::from_rows(vec![vec![Scalar::one(), q.clone()], vec![Scalar::zero(), q.clone()]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_is_reported() {
        let m = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::one()]]).unwrap();
        assert!(m.inverse().is_err());
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn kron_dimensions() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert!(a.kron(&b).is_identity());
        assert_eq!(a.kron(&b).nrows(), 6);
    }
}
