//! Fixed bases of su(n) and of its diagonal Cartan subalgebra.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Diagonal traceless Hermitian basis `d_1 .. d_{n-1}` of the Cartan
/// subalgebra, `d_k = sqrt(2 / (k (k+1))) diag(1, .., 1, -k, 0, .., 0)`
/// with `k` leading ones. Normalised so that `tr(d_a d_b) = 2 delta_ab`.
pub fn cartan_basis<T: Real>(n: usize) -> Vec<ComplexMatrix<T>> {
    (1..n)
        .map(|k| {
            let kf = T::from_usize(k).expect("dimension fits scalar");
            let norm = (T::lit(2.0) / (kf * (kf + T::one()))).sqrt();
            let mut d = ComplexMatrix::zeros(n, n);
            for i in 0..k {
                d[(i, i)] = Complex::new(norm, T::zero());
            }
            d[(k, k)] = Complex::new(-kf * norm, T::zero());
            d
        })
        .collect()
}

/// Generalised Gell-Mann basis of su(n): `n(n-1)/2` symmetric, `n(n-1)/2`
/// antisymmetric and `n-1` diagonal generators, in that order.
pub fn gell_mann_basis<T: Real>(n: usize) -> Vec<ComplexMatrix<T>> {
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            let mut s = ComplexMatrix::zeros(n, n);
            s[(j, k)] = Complex::new(T::one(), T::zero());
            s[(k, j)] = Complex::new(T::one(), T::zero());
            out.push(s);
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut a = ComplexMatrix::zeros(n, n);
            a[(j, k)] = Complex::new(T::zero(), -T::one());
            a[(k, j)] = Complex::new(T::zero(), T::one());
            out.push(a);
        }
    }
    out.extend(cartan_basis(n));
    out
}
