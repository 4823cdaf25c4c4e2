//! Coefficient matrix of the initial state and entanglement diagnostics.

use crate::error::{Error, Result};
use crate::game::StateVector;
use crate::matcore::{hermitian_eigen, partial_trace, tol, ComplexMatrix, Subsystem};
use crate::scalar::Real;

/// Coefficient matrix `F` of a state, `psi = sum_ij F_ij |e_i> (x) |e_j>`,
/// together with `F~ = sqrt(n) F`.
#[derive(Debug, Clone)]
pub struct FMatrix<T: Real> {
    n: usize,
    f: ComplexMatrix<T>,
    ftilde: ComplexMatrix<T>,
    symmetric: bool,
    maximally_entangled: bool,
    residual: T,
}

impl<T: Real> FMatrix<T> {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn f(&self) -> &ComplexMatrix<T> {
        &self.f
    }

    #[inline]
    pub fn ftilde(&self) -> &ComplexMatrix<T> {
        &self.ftilde
    }

    /// `max |F - F^T| <= 1e-8`.
    #[inline]
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `max |n F F^+ - I| <= 1e-8`, i.e. `F~` is unitary.
    #[inline]
    pub fn is_maximally_entangled(&self) -> bool {
        self.maximally_entangled
    }

    /// `max |n F F^+ - I|`.
    #[inline]
    pub fn residual(&self) -> T {
        self.residual
    }

    /// Fails unless `F~` is unitary.
    pub fn require_maximally_entangled(&self) -> Result<()> {
        if self.maximally_entangled {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "initial state is not maximally entangled (residual {:e}); F~ is not unitary",
                self.residual.to_f64_lossy()
            )))
        }
    }

    /// The state this coefficient matrix describes.
    pub fn to_state(&self) -> Result<StateVector<T>> {
        StateVector::from_coefficients(&self.f)
    }
}

fn scaled_residual<T: Real>(f: &ComplexMatrix<T>, n: usize) -> T {
    let nf = T::from_usize(n).expect("dimension fits scalar");
    (&f.scale_real(nf) * &f.adjoint()).max_abs_diff(&ComplexMatrix::identity(n))
}

/// Extracts `F` and its flags from a state.
pub fn f_matrix_of<T: Real>(psi: &StateVector<T>) -> FMatrix<T> {
    let n = psi.n();
    let f = psi.coefficients();
    let ftilde = f.scale_real(T::from_usize(n).expect("dimension fits scalar").sqrt());
    let residual = scaled_residual(&f, n);
    let symmetric = f.max_abs_diff(&f.transpose()) <= T::tol(1e-8);
    FMatrix {
        n,
        f,
        ftilde,
        symmetric,
        maximally_entangled: residual <= T::tol(tol::MAX_ENTANGLED),
        residual,
    }
}

/// Pure-state density matrix `rho = |psi><psi|` on the `n^2`-dimensional space.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    n: usize,
    rho: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(n: usize, rho: ComplexMatrix<T>) -> Result<Self> {
        if !rho.is_square() || rho.rows() != n * n {
            return Err(Error::Dimension(format!(
                "density matrix {}x{} for n = {n}",
                rho.rows(),
                rho.cols()
            )));
        }
        let eig = hermitian_eigen(&rho)?;
        if eig.values.first().is_some_and(|&l| l < -T::tol(1e-10)) {
            return Err(Error::NumericalIntegrity(
                "density matrix has a negative eigenvalue".into(),
            ));
        }
        let tr = rho.trace();
        if (tr.re - T::one()).abs() > T::tol(tol::NORM) || tr.im.abs() > T::tol(tol::NORM) {
            return Err(Error::NumericalIntegrity(
                "density matrix trace is not 1".into(),
            ));
        }
        Ok(Self { n, rho })
    }

    pub fn from_state(psi: &StateVector<T>) -> Self {
        Self {
            n: psi.n(),
            rho: psi.projector(),
        }
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.rho
    }

    /// Reduced density matrix after tracing out `subsystem`.
    pub fn reduce(&self, subsystem: Subsystem) -> Result<ComplexMatrix<T>> {
        partial_trace(&self.rho, subsystem, self.n)
    }
}

/// Outcome of the maximal-entanglement test.
#[derive(Debug, Clone)]
pub struct MaxEntDiagnostic<T: Real> {
    pub maximally_entangled: bool,
    /// `max |n F F^+ - I|`.
    pub residual: T,
    /// Alice's reduced density matrix (`Tr_B rho`).
    pub reduced_a: ComplexMatrix<T>,
    /// Bob's reduced density matrix (`Tr_A rho`).
    pub reduced_b: ComplexMatrix<T>,
    /// Largest deviation of either reduction from `I / n`.
    pub reduced_residual: T,
}

/// Tests `max |n F F^+ - I| <= tol`; reductions are computed independently by
/// partial traces of `|psi><psi|`.
pub fn is_maximally_entangled<T: Real>(
    psi: &StateVector<T>,
    tol: T,
) -> Result<MaxEntDiagnostic<T>> {
    let n = psi.n();
    let residual = scaled_residual(&psi.coefficients(), n);
    let rho = DensityMatrix::from_state(psi);
    let reduced_a = rho.reduce(Subsystem::B)?;
    let reduced_b = rho.reduce(Subsystem::A)?;
    let mixed = ComplexMatrix::identity(n)
        .scale_real(T::one() / T::from_usize(n).expect("dimension fits scalar"));
    let reduced_residual = reduced_a
        .max_abs_diff(&mixed)
        .max(reduced_b.max_abs_diff(&mixed));
    Ok(MaxEntDiagnostic {
        maximally_entangled: residual <= tol,
        residual,
        reduced_a,
        reduced_b,
        reduced_residual,
    })
}

/// Von Neumann entropy (natural log) of a spectrum; eigenvalues below `1e-14`
/// contribute nothing.
pub fn spectrum_entropy<T: Real>(values: &[T]) -> T {
    let cutoff = T::lit(1e-14);
    values
        .iter()
        .filter(|&&l| l > cutoff)
        .fold(T::zero(), |acc, &l| acc - l * l.ln())
}

/// Entanglement entropy of a pure state: entropy of Alice's reduced density matrix.
pub fn entanglement_entropy<T: Real>(psi: &StateVector<T>) -> Result<T> {
    let reduced = DensityMatrix::from_state(psi).reduce(Subsystem::B)?;
    Ok(spectrum_entropy(&hermitian_eigen(&reduced)?.values))
}

/// Entropy of the reduction onto the given party's complement.
pub fn reduced_entropy<T: Real>(psi: &StateVector<T>, traced: Subsystem) -> Result<T> {
    let reduced = DensityMatrix::from_state(psi).reduce(traced)?;
    Ok(spectrum_entropy(&hermitian_eigen(&reduced)?.values))
}
