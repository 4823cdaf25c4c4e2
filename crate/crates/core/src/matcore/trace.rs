use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::tol;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Party of the bipartite system that is traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// Traces out `subsystem` of an `n^2 x n^2` density matrix, returning the
/// `n x n` reduced density matrix of the other party.
///
/// Basis index of `|e_i> (x) |e_j>` is `i * n + j`.
pub fn partial_trace<T: Real>(
    rho: &ComplexMatrix<T>,
    subsystem: Subsystem,
    n: usize,
) -> Result<ComplexMatrix<T>> {
    if !rho.is_square() {
        return Err(Error::Dimension(format!(
            "density matrix must be square, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    if n == 0 || n.checked_mul(n) != Some(rho.rows()) {
        return Err(Error::Dimension(format!(
            "density matrix dimension {} is not {n}^2",
            rho.rows()
        )));
    }
    let herm = rho.hermitian_residual();
    if herm > T::tol(tol::HERMITIAN) {
        return Err(Error::NotHermitian {
            residual: herm.to_f64_lossy(),
        });
    }
    let tr = rho.trace();
    if (tr - C::new(T::one(), T::zero())).norm() > T::tol(tol::NORM) {
        return Err(Error::NumericalIntegrity(format!(
            "density matrix trace {} + {}i differs from 1",
            tr.re, tr.im
        )));
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = C::zero();
            for k in 0..n {
                acc = acc
                    + match subsystem {
                        Subsystem::B => rho[(a * n + k, b * n + k)],
                        Subsystem::A => rho[(k * n + a, k * n + b)],
                    };
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn projector(psi: &[C<f64>]) -> ComplexMatrix<f64> {
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        m
    }

    #[test]
    fn product_state() {
        let rho = projector(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let red = partial_trace(&rho, Subsystem::B, 2).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(red.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn superposition_on_second_party() {
        // (|CC> + |CD>)/sqrt 2 = |C> (x) |+>
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = projector(&[c(h, 0.0), c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let red_a = partial_trace(&rho, Subsystem::B, 2).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(red_a.max_abs_diff(&expected) < 1e-15);
        let red_b = partial_trace(&rho, Subsystem::A, 2).unwrap();
        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(red_b.max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn bell_state_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = projector(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, h)]);
        for side in [Subsystem::A, Subsystem::B] {
            let red = partial_trace(&rho, side, 2).unwrap();
            assert!(red.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        }
    }

    #[test]
    fn validation() {
        let r = ComplexMatrix::<f64>::identity(3).scale_real(1.0 / 3.0);
        assert!(matches!(
            partial_trace(&r, Subsystem::A, 2),
            Err(Error::Dimension(_))
        ));
        let bad_trace = ComplexMatrix::<f64>::identity(4);
        assert!(matches!(
            partial_trace(&bad_trace, Subsystem::A, 2),
            Err(Error::NumericalIntegrity(_))
        ));
        let rect = ComplexMatrix::<f64>::zeros(4, 2);
        assert!(partial_trace(&rect, Subsystem::B, 2).is_err());
    }
}
