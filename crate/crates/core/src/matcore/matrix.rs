use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[C<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must have positive extent".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    /// Real-valued convenience constructor (row-major).
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            data.iter()
                .map(|&x| Complex::new(T::lit(x), T::zero()))
                .collect(),
        )
    }

    /// Decodes interleaved `re, im` pairs in row-major order.
    pub fn from_interleaved(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != 2 * rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} interleaved reals for a {rows}x{cols} matrix, got {}",
                2 * rows * cols,
                data.len()
            )));
        }
        Self::from_vec(
            rows,
            cols,
            data.chunks_exact(2)
                .map(|p| Complex::new(T::lit(p[0]), T::lit(p[1])))
                .collect(),
        )
    }

    pub fn to_interleaved(&self) -> Vec<f64> {
        self.data
            .iter()
            .flat_map(|z| [z.re.to_f64_lossy(), z.im.to_f64_lossy()])
            .collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(C::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// Kronecker product; entry `(i*b.rows + k, j*b.cols + l) = a(i,j) * b(k,l)`.
    pub fn kron(&self, b: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(b.rows)
            .ok_or_else(|| Error::Dimension("kron row count overflows".into()))?;
        let cols = self
            .cols
            .checked_mul(b.cols)
            .ok_or_else(|| Error::Dimension("kron column count overflows".into()))?;
        rows.checked_mul(cols)
            .ok_or_else(|| Error::Dimension("kron entry count overflows".into()))?;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out[(i * b.rows + k, j * b.cols + l)] = a * b[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |A - A^+|`; infinite when the matrix is not square.
    pub fn hermitian_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut r = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// `max |A A^+ - I|`; infinite when the matrix is not square.
    pub fn unitarity_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let prod = self
            .matmul(&self.adjoint())
            .expect("square matrix times its adjoint");
        prod.max_abs_diff(&Self::identity(self.rows))
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn det(&self) -> Result<C<T>> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = C::<T>::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a[x * n + col]
                        .norm()
                        .partial_cmp(&a[y * n + col].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty pivot range");
            if a[pivot * n + col].is_zero() {
                return Ok(C::zero());
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det = det * p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[r * n + k] = a[r * n + k] - factor * v;
                }
            }
        }
        Ok(det)
    }

    /// Multiplies by a global phase so that the determinant becomes 1.
    ///
    /// Uses the principal `n`-th root, so a matrix whose determinant is
    /// already close to 1 is changed only by a correspondingly small phase.
    pub fn rephase_to_unit_det(&self) -> Result<Self> {
        let det = self.det()?;
        if det.norm() < T::epsilon() {
            return Err(Error::NumericalIntegrity(
                "cannot rephase a singular matrix".into(),
            ));
        }
        let n = T::from_usize(self.rows).expect("dimension fits scalar");
        let phase = det.arg() / n;
        Ok(self.scale(Complex::new(phase.cos(), -phase.sin())))
    }

    /// Distance between two operators modulo a global phase, in max norm.
    ///
    /// The phase is aligned on `arg tr(B^+ A)` before the entrywise comparison.
    pub fn phase_distance(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        let overlap = self
            .data
            .iter()
            .zip(&other.data)
            .fold(C::<T>::zero(), |acc, (a, b)| acc + b.conj() * a);
        let phase = if overlap.norm() > T::zero() {
            overlap / overlap.norm()
        } else {
            C::one()
        };
        self.max_abs_diff(&other.scale(phase))
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panicking product for call sites whose dimensions are already validated.
impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The Pauli matrix `sigma_2 = [[0, -i], [i, 0]]`.
pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex::new(T::zero(), -T::one());
    m[(1, 0)] = Complex::new(T::zero(), T::one());
    m
}

/// Kronecker product of two matrices (free-function form).
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.kron(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let a = ComplexMatrix::<f64>::from_real(2, 3, &[1., 2., 3., 4., 5., 6.]).unwrap();
        let one = ComplexMatrix::identity(1);
        assert_eq!(kron(&a, &one).unwrap(), a);
    }

    #[test]
    fn kron_pauli_y_pair() {
        let y = pauli_y::<f64>();
        let yy = kron(&y, &y).unwrap();
        assert_eq!(yy[(0, 3)], c(-1.0, 0.0));
        assert_eq!(yy[(1, 2)], c(1.0, 0.0));
        assert_eq!(yy[(2, 1)], c(1.0, 0.0));
        assert_eq!(yy[(3, 0)], c(-1.0, 0.0));
        for i in 0..4 {
            assert_eq!(yy[(i, i)], c(0.0, 0.0));
        }
    }

    #[test]
    fn kron_overflow_is_a_sizing_error() {
        let a = ComplexMatrix::<f64> {
            rows: usize::MAX / 2,
            cols: 1,
            data: Vec::new(),
        };
        let b = ComplexMatrix::<f64>::identity(3);
        assert!(matches!(a.kron(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_and_rephase() {
        let y = pauli_y::<f64>();
        // det(sigma_2) = -1
        assert!((y.det().unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let d = ComplexMatrix::<f64>::from_diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let r = d.rephase_to_unit_det().unwrap();
        assert!((r.det().unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(r.phase_distance(&d) < 1e-15);
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(ComplexMatrix::<f64>::from_real(2, 2, &[1.0; 3]).is_err());
        assert!(ComplexMatrix::<f64>::from_real(1, 1, &[f64::NAN]).is_err());
        let a = ComplexMatrix::<f64>::identity(2);
        let b = ComplexMatrix::<f64>::identity(3);
        assert!(a.matmul(&b).is_err());
    }

    #[test]
    fn interleaved_codec() {
        let raw = [1.0, -2.0, 0.5, 0.25, 3.0, 0.0, -1.0, 1.0];
        let m = ComplexMatrix::<f64>::from_interleaved(2, 2, &raw).unwrap();
        assert_eq!(m[(0, 1)], c(0.5, 0.25));
        assert_eq!(m.to_interleaved(), raw.to_vec());
    }
}
