//! Minimal dense linear algebra: a row-major matrix type and a cyclic Jacobi
//! eigensolver for symmetric matrices. The matrices here are small (algebra
//! coordinate spaces, at most a few dozen rows), so simplicity and accuracy
//! win over asymptotics.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum::<T>()
            })
            .collect()
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[T]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    /// Orthonormalizes the columns in place by modified Gram-Schmidt.
    pub fn orthonormalize_columns(&mut self) -> Result<()> {
        for j in 0..self.cols {
            let mut v = self.col(j);
            for k in 0..j {
                let u = self.col(k);
                let proj = dot(&u, &v);
                for (vi, &ui) in v.iter_mut().zip(&u) {
                    *vi -= proj * ui;
                }
            }
            let n = dot(&v, &v).sqrt();
            if n < real(1e-12) {
                return Err(Error::InvalidArgument(
                    "rank-deficient column set".into(),
                ));
            }
            for vi in &mut v {
                *vi /= n;
            }
            self.set_col(j, &v);
        }
        Ok(())
    }

    /// Nearest orthogonal matrix via the polar factor `u (u^T u)^{-1/2}`,
    /// iterated until the orthogonality defect reaches machine precision.
    pub fn polar_orthogonalize(&self) -> Result<Self> {
        let one_pass = |u: &Matrix<T>| -> Result<Matrix<T>> {
            let gram = u.transpose().matmul(u);
            let (evals, vecs) = jacobi_eigen(&gram)?;
            // (u^T u)^{-1/2} = V diag(1/sqrt(lambda)) V^T
            let n = gram.rows;
            let mut inv_sqrt = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut s = T::zero();
                    for k in 0..n {
                        if evals[k] <= T::zero() {
                            return Err(Error::InvalidArgument("singular polar factor".into()));
                        }
                        s += vecs[(i, k)] * vecs[(j, k)] / evals[k].sqrt();
                    }
                    inv_sqrt[(i, j)] = s;
                }
            }
            Ok(u.matmul(&inv_sqrt))
        };
        let mut q = one_pass(self)?;
        for _ in 0..3 {
            let defect = q
                .transpose()
                .matmul(&q)
                .sub(&Matrix::identity(q.cols()))
                .max_abs();
            if defect <= T::epsilon() * real(16.0) {
                break;
            }
            q = one_pass(&q)?;
        }
        Ok(q)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm2<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order and the matching orthonormal
/// eigenvectors as columns. Input is symmetrized; non-finite entries are
/// rejected.
pub fn jacobi_eigen<T: Real>(m: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "eigen needs a square matrix");
    if m.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure("non-finite matrix entry".into()));
    }
    let half = real::<T>(0.5);
    let mut a = Matrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)]) * half);
    let mut v = Matrix::identity(n);

    let scale = a.max_abs().max(T::one());
    let tol = T::epsilon() * scale * real(1e-2);
    let max_sweeps = 64;

    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[(i, j)].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= tol * real(1e-3) {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)]).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let evals: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vecs[(k, new)] = v[(k, old)];
        }
    }
    Ok((evals, vecs))
}

/// Completes `fixed` (orthonormal vectors of length `dim`) to a full
/// orthonormal basis and returns only the added vectors.
pub fn orthonormal_complement<T: Real>(fixed: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = fixed.to_vec();
    let mut added = Vec::new();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut cand = vec![T::zero(); dim];
        cand[k] = T::one();
        for b in &basis {
            let proj = dot(b, &cand);
            for (ci, &bi) in cand.iter_mut().zip(b) {
                *ci -= proj * bi;
            }
        }
        let n = norm2(&cand);
        if n > real(1e-8) {
            for ci in &mut cand {
                *ci /= n;
            }
            basis.push(cand.clone());
            added.push(cand);
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let m = Matrix::from_rows(vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ])
        .unwrap();
        let (evals, vecs) = jacobi_eigen(&m).unwrap();
        let s2 = 2f64.sqrt();
        let expected = [2.0 + s2, 2.0, 2.0 - s2];
        for (got, want) in evals.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        // reconstruction
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += evals[k] * vecs[(i, k)] * vecs[(j, k)];
                }
                assert!((s - m[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_rejects_nan() {
        let m = Matrix::from_rows(vec![vec![f64::NAN, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(jacobi_eigen(&m).is_err());
    }

    #[test]
    fn polar_orthogonalize_restores_orthogonality() {
        let u = Matrix::from_rows(vec![vec![1.0, 0.01], vec![-0.02, 1.0]]).unwrap();
        let q = u.polar_orthogonalize().unwrap();
        let g = q.transpose().matmul(&q);
        assert!(g.sub(&Matrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn complement_spans_the_rest() {
        let fixed = vec![vec![1.0 / 3f64.sqrt(); 3]];
        let rest = orthonormal_complement(&fixed, 3);
        assert_eq!(rest.len(), 2);
        for r in &rest {
            assert!(dot(r, &fixed[0]).abs() < 1e-12);
            assert!((norm2(r) - 1.0).abs() < 1e-12);
        }
    }
}
