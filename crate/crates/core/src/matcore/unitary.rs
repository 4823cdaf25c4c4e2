use std::ops::Deref;

use num_complex::Complex;
use num_traits::One;

use super::matrix::ComplexMatrix;
use super::tol;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A square matrix checked unitary at construction, optionally also special
/// (unit determinant).
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix<T: Real> {
    inner: ComplexMatrix<T>,
    special: bool,
}

impl<T: Real> UnitaryMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "unitary must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let residual = m.unitarity_residual();
        if residual.is_nan() || residual > T::tol(tol::UNITARY) {
            return Err(Error::NotUnitary {
                residual: residual.to_f64_lossy(),
            });
        }
        let special = (m.det()? - Complex::one()).norm() <= T::tol(tol::SPECIAL_DET);
        Ok(Self { inner: m, special })
    }

    /// Wraps a matrix that must lie in SU(n).
    pub fn new_special(m: ComplexMatrix<T>) -> Result<Self> {
        let u = Self::new(m)?;
        if !u.special {
            let residual = (u.inner.det()? - Complex::one()).norm();
            return Err(Error::NotSpecial {
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(u)
    }

    /// Checks unitarity, then removes any determinant phase so the result
    /// lies in SU(n).
    pub fn special_from(m: ComplexMatrix<T>) -> Result<Self> {
        let u = Self::new(m)?;
        Ok(u.into_special())
    }

    /// Rephases into SU(n) by the principal n-th root of the determinant.
    pub fn into_special(self) -> Self {
        if self.special
            && self
                .inner
                .det()
                .map(|d| (d - Complex::one()).norm())
                .unwrap_or(T::one())
                <= T::epsilon() * T::lit(16.0)
        {
            return self;
        }
        let inner = self
            .inner
            .rephase_to_unit_det()
            .expect("unitary matrices are nonsingular");
        Self {
            inner,
            special: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
            special: true,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    #[inline]
    pub fn is_special(&self) -> bool {
        self.special
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.inner
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
            special: self.special,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            inner: self.inner.conj(),
            special: self.special,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
            special: self.special,
        }
    }

    /// Product of two unitaries; specialness is preserved when both are special.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            inner: self.inner.matmul(&other.inner)?,
            special: self.special && other.special,
        })
    }
}

impl<T: Real> Deref for UnitaryMatrix<T> {
    type Target = ComplexMatrix<T>;

    fn deref(&self) -> &ComplexMatrix<T> {
        &self.inner
    }
}

impl<T: Real> std::fmt::Debug for UnitaryMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "UnitaryMatrix(special={}) {:?}",
            self.special, self.inner
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::pauli_y;
    use crate::scalar::c;

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::<f64>::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            UnitaryMatrix::new(m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn special_flag() {
        // i sigma_2 has determinant 1, sigma_2 has determinant -1.
        let y = pauli_y::<f64>();
        let d = UnitaryMatrix::new(y.scale(c(0.0, 1.0))).unwrap();
        assert!(d.is_special());
        assert!(matches!(
            UnitaryMatrix::new_special(y.clone()),
            Err(Error::NotSpecial { .. })
        ));
        let fixed = UnitaryMatrix::special_from(y).unwrap();
        assert!(fixed.is_special());
        assert!((fixed.det().unwrap() - c(1.0, 0.0)).norm() < 1e-14);
    }
}
