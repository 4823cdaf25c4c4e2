use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matcore::{
    cartan_basis, pauli_y, tol, unitary_from_hermitian, ComplexMatrix, UnitaryMatrix,
};
use crate::scalar::Real;

/// How the entangling gate `J` is specified.
#[derive(Debug, Clone)]
pub enum GateSpec<T: Real> {
    /// `J = exp(-i gamma/2 sigma_2 (x) sigma_2)` for two strategies, `gamma in [0, pi/2]`.
    N2Gamma(T),
    /// `J = exp(i sum_{a<=b} gamma_ab sym(d_a (x) d_b))` over the diagonal
    /// Cartan basis; `n(n-1)/2` parameters in lexicographic `(a, b)` order.
    CartanParams { n: usize, gammas: Vec<T> },
    /// Any `n^2 x n^2` unitary.
    ExplicitUnitary { n: usize, j: UnitaryMatrix<T> },
}

impl<T: Real> GateSpec<T> {
    pub fn n(&self) -> usize {
        match self {
            GateSpec::N2Gamma(_) => 2,
            GateSpec::CartanParams { n, .. } | GateSpec::ExplicitUnitary { n, .. } => *n,
        }
    }

    /// Explicit gate whose first column is `(1/sqrt n) sum_i |e_i e_i>`,
    /// completed to a unitary by the Householder reflection that swaps
    /// `|e_0 e_0>` with that state.
    pub fn householder_max_entangled(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("needs n >= 2".into()));
        }
        let dim = n * n;
        let w = T::one() / T::from_usize(n).expect("fits").sqrt();
        let mut v = vec![T::zero(); dim];
        v[0] = T::one();
        for i in 0..n {
            v[i * n + i] -= w;
        }
        let vnorm2: T = v.iter().map(|x| *x * *x).sum();
        let mut h = ComplexMatrix::identity(dim);
        for r in 0..dim {
            for c in 0..dim {
                let d = T::lit(2.0) * v[r] * v[c] / vnorm2;
                h[(r, c)] = h[(r, c)] - Complex::new(d, T::zero());
            }
        }
        Ok(GateSpec::ExplicitUnitary {
            n,
            j: UnitaryMatrix::new(h)?,
        })
    }

    /// Explicit gate mapping `|e_i e_j>` to the generalised Bell state
    /// `(1/sqrt n) sum_k w^{ik} |e_k, e_{k+j mod n}>`, `w = e^{2 pi i / n}`.
    /// Every basis outcome then sits on a maximally entangled state.
    pub fn bell_basis(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("needs n >= 2".into()));
        }
        let nf = T::from_usize(n).expect("fits");
        let amp = T::one() / nf.sqrt();
        let mut m = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ang = T::TAU() * T::from_usize((i * k) % n).expect("fits") / nf;
                    m[(k * n + (k + j) % n, i * n + j)] =
                        Complex::new(ang.cos() * amp, ang.sin() * amp);
                }
            }
        }
        Ok(GateSpec::ExplicitUnitary {
            n,
            j: UnitaryMatrix::new(m)?,
        })
    }
}

/// The realised gate `J` acting on the `n^2`-dimensional game space.
#[derive(Debug, Clone)]
pub struct GateOperator<T: Real> {
    n: usize,
    j: UnitaryMatrix<T>,
}

impl<T: Real> GateOperator<T> {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn unitary(&self) -> &UnitaryMatrix<T> {
        &self.j
    }
}

/// Realises a [`GateSpec`].
pub fn build_gate<T: Real>(spec: &GateSpec<T>) -> Result<GateOperator<T>> {
    match spec {
        GateSpec::N2Gamma(gamma) => {
            if !(*gamma >= T::zero() && *gamma <= T::FRAC_PI_2() + T::epsilon()) {
                return Err(Error::InvalidParameter(format!(
                    "gamma = {gamma} outside [0, pi/2]"
                )));
            }
            let y = pauli_y::<T>();
            let yy = y.kron(&y)?;
            let j = unitary_from_hermitian(&yy, -*gamma / T::lit(2.0))?;
            Ok(GateOperator { n: 2, j })
        }
        GateSpec::CartanParams { n, gammas } => {
            let n = *n;
            if n < 2 {
                return Err(Error::InvalidParameter("Cartan gate needs n >= 2".into()));
            }
            let expected = n * (n - 1) / 2;
            if gammas.len() != expected {
                return Err(Error::InvalidParameter(format!(
                    "Cartan gate for n = {n} takes {expected} parameters, got {}",
                    gammas.len()
                )));
            }
            if gammas.iter().any(|g| !g.is_finite()) {
                return Err(Error::InvalidParameter("non-finite gate parameter".into()));
            }
            let d = cartan_basis::<T>(n);
            let half = T::lit(0.5);
            let mut generator = ComplexMatrix::zeros(n * n, n * n);
            let mut k = 0;
            for a in 0..n - 1 {
                for b in a..n - 1 {
                    let sym = d[a]
                        .kron(&d[b])?
                        .add(&d[b].kron(&d[a])?)?
                        .scale_real(half * gammas[k]);
                    generator = generator.add(&sym)?;
                    k += 1;
                }
            }
            let j = unitary_from_hermitian(&generator, T::one())?;
            Ok(GateOperator { n, j })
        }
        GateSpec::ExplicitUnitary { n, j } => {
            if j.dim() != n * n {
                return Err(Error::Dimension(format!(
                    "explicit gate is {}x{}, expected {}x{}",
                    j.dim(),
                    j.dim(),
                    n * n,
                    n * n
                )));
            }
            let residual = j.unitarity_residual();
            if residual > T::tol(tol::UNITARY) {
                return Err(Error::NotUnitary {
                    residual: residual.to_f64_lossy(),
                });
            }
            Ok(GateOperator {
                n: *n,
                j: j.clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn zero_gamma_is_identity() {
        let g = build_gate(&GateSpec::N2Gamma(0.0f64)).unwrap();
        assert!(g.unitary().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn maximal_gamma_column() {
        let g = build_gate(&GateSpec::N2Gamma(std::f64::consts::FRAC_PI_2)).unwrap();
        let col = g.unitary().column(0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((col[0] - c(h, 0.0)).norm() < 1e-15);
        assert!((col[3] - c(0.0, h)).norm() < 1e-15);
    }

    #[test]
    fn gamma_range_enforced() {
        assert!(build_gate(&GateSpec::N2Gamma(2.0f64)).is_err());
        assert!(build_gate(&GateSpec::N2Gamma(-0.1f64)).is_err());
    }

    #[test]
    fn cartan_parameter_count() {
        let bad = GateSpec::CartanParams {
            n: 3,
            gammas: vec![0.1f64, 0.2],
        };
        assert!(matches!(build_gate(&bad), Err(Error::InvalidParameter(_))));
        let ok = GateSpec::CartanParams {
            n: 3,
            gammas: vec![0.1f64, 0.2, 0.3],
        };
        assert_eq!(build_gate(&ok).unwrap().unitary().dim(), 9);
    }

    #[test]
    fn cartan_gate_is_diagonal() {
        let g = build_gate(&GateSpec::CartanParams {
            n: 2,
            gammas: vec![0.7f64],
        })
        .unwrap();
        let j = g.unitary();
        for r in 0..4 {
            for col in 0..4 {
                if r != col {
                    assert!(j[(r, col)].norm() < 1e-15);
                }
            }
        }
        // sym(d1 (x) d1) = sigma_z (x) sigma_z; phase e^{+0.7 i} on |CC>.
        assert!((j[(0, 0)] - c(0.7f64.cos(), 0.7f64.sin())).norm() < 1e-14);
        assert!((j[(1, 1)] - c(0.7f64.cos(), -0.7f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn explicit_presets_are_unitary() {
        for n in 2..=4 {
            for spec in [
                GateSpec::<f64>::householder_max_entangled(n).unwrap(),
                GateSpec::<f64>::bell_basis(n).unwrap(),
            ] {
                let g = build_gate(&spec).unwrap();
                assert!(g.unitary().unitarity_residual() < 1e-12);
                let col = g.unitary().column(0);
                let w = 1.0 / (n as f64).sqrt();
                for i in 0..n {
                    for j in 0..n {
                        let expect = if i == j { w } else { 0.0 };
                        assert!((col[i * n + j] - c(expect, 0.0)).norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_dimension_checked() {
        let spec = GateSpec::ExplicitUnitary {
            n: 3,
            j: UnitaryMatrix::<f64>::identity(4),
        };
        assert!(matches!(build_gate(&spec), Err(Error::Dimension(_))));
    }
}
