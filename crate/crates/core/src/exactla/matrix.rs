use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Square rational matrix, stored column-major so that `as_vector` is the
/// canonical embedding into ℚ^{n²}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix unit E_{ij} (zero-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Inverse of `as_vector`.
    pub fn from_vector(n: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: v.len() });
        }
        Ok(Matrix { n, data: v.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[j * self.n + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[j * self.n + i] = x;
    }

    /// Column-major vectorization.
    pub fn as_vector(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_vector(self) -> Vec<Rational> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).all(|i| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for j in 0..n {
            for k in 0..n {
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                for i in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let idx = j * n + i;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        Ok(Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        Ok(Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let t = &a[col][c] * &f;
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
        }
        let rows: Vec<Vec<Rational>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(&rows)
    }

    /// `true` iff some power of the matrix vanishes (tested at exponent n by squaring).
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        let mut e = 1usize;
        while e < self.n {
            p = p.try_mul(&p).expect("same dimension");
            e *= 2;
            if p.is_zero() {
                return true;
            }
        }
        p.is_zero()
    }

    fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix dimensions agree")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Lie bracket `XY − YX`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    xy.try_sub(&yx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn sl2_relations() {
        let e = Matrix::unit(2, 0, 1);
        let f = Matrix::unit(2, 1, 0);
        let h = Matrix::diagonal(&[r(1), r(-1)]);
        assert_eq!(bracket(&e, &f).unwrap(), h);
        assert!(bracket(&e, &e).unwrap().is_zero());
        assert_eq!(bracket(&h, &e).unwrap(), e.scale(&r(2)));
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert!(matches!(bracket(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn column_major_vectorization() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let v: Vec<i64> = m.as_vector().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, 3, 2, 4]);
        assert_eq!(Matrix::from_vector(2, m.as_vector()).unwrap(), m);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(matches!(Matrix::zero(2).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn nilpotency() {
        let n = Matrix::from_int_rows(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(n.is_nilpotent());
        assert!(!Matrix::identity(3).is_nilpotent());
    }
}
