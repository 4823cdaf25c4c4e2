//! Hermitian eigendecomposition (cyclic complex Jacobi) and the exponential
//! map `h -> exp(i s h)` built on it.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::tol;
use super::unitary::UnitaryMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cis, Real, C};

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix: `h = vectors * diag(values) * vectors^+`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors stored as columns, ordered like `values`.
    pub vectors: ComplexMatrix<T>,
}

pub fn check_hermitian<T: Real>(h: &ComplexMatrix<T>) -> Result<()> {
    if !h.is_square() {
        return Err(Error::Dimension(format!(
            "Hermitian input must be square, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let residual = h.hermitian_residual();
    if residual > T::tol(tol::HERMITIAN) {
        return Err(Error::NotHermitian {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Diagonalises a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    check_hermitian(h)?;
    let n = h.rows();
    // Symmetrise so the iteration starts from an exactly Hermitian matrix.
    let mut a = ComplexMatrix::zeros(n, n);
    let half = T::lit(0.5);
    for i in 0..n {
        a[(i, i)] = Complex::new(h[(i, i)].re, T::zero());
        for j in i + 1..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * half;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(T::min_positive_value());
    let threshold = T::epsilon() * scale;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if off_diagonal_norm(&a) > T::lit(1e3) * threshold {
        return Err(Error::NumericalIntegrity(
            "Jacobi eigensolver did not converge".into(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a[(x, x)]
            .re
            .partial_cmp(&a[(y, y)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = r e^{i phi}` the rotation is `G = Phi R`, where
/// `Phi = diag(1, e^{-i phi})` makes the pivot block real symmetric and `R`
/// is the classical real Jacobi rotation on that block.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let two = T::lit(2.0);
    let theta = (two * r).atan2(aqq - app) / two;
    let (s, c) = theta.sin_cos();
    let conj_phase = phase.conj();
    // G restricted to the (p, q) block.
    let gpp = C::new(c, T::zero());
    let gpq = C::new(s, T::zero());
    let gqp = conj_phase * (-s);
    let gqq = conj_phase * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = C::zero();
    a[(q, p)] = C::zero();
    a[(p, p)] = C::new(a[(p, p)].re, T::zero());
    a[(q, q)] = C::new(a[(q, q)].re, T::zero());
}

/// Applies a real function to a Hermitian matrix through its spectrum.
pub fn hermitian_function<T: Real>(
    eig: &HermitianEigen<T>,
    f: impl Fn(T) -> C<T>,
) -> ComplexMatrix<T> {
    let n = eig.values.len();
    let v = &eig.vectors;
    let fvals: Vec<C<T>> = eig.values.iter().map(|&x| f(x)).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C::zero();
            for k in 0..n {
                acc = acc + v[(i, k)] * fvals[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// `exp(i * scale * h)` for Hermitian `h`.
pub fn unitary_from_hermitian<T: Real>(h: &ComplexMatrix<T>, scale: T) -> Result<UnitaryMatrix<T>> {
    let eig = hermitian_eigen(h)?;
    let u = hermitian_function(&eig, |lambda| cis(scale * lambda));
    UnitaryMatrix::new(u)
}
