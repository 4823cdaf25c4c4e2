#![allow(dead_code)]

use elw_core::game::{GameInstance, GateSpec, PayoffBimatrix};
use elw_core::matcore::ComplexMatrix;
use elw_core::C;

/// Series oracle `sum_{k < terms} (z h)^k / k!`, independent of the spectral route.
pub fn exp_series(h: &ComplexMatrix<f64>, z: C<f64>, terms: usize) -> ComplexMatrix<f64> {
    let n = h.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..terms {
        term = (&term * h).scale(z / k as f64);
        sum = sum.add(&term).unwrap();
    }
    sum
}

/// Binary entropy in nats, computed on scalars only.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum()
}

pub fn pd(gamma: f64) -> GameInstance<f64> {
    GameInstance::from_spec(
        PayoffBimatrix::prisoners_dilemma(),
        &GateSpec::N2Gamma(gamma),
    )
    .unwrap()
}

/// Game whose initial state has `F~ = I` (uniform superposition of `|e_i e_i>`).
pub fn identity_ftilde_game(n: usize) -> GameInstance<f64> {
    GameInstance::from_spec(
        PayoffBimatrix::new(n, vec![0.0; n * n], vec![0.0; n * n]).unwrap(),
        &GateSpec::bell_basis(n).unwrap(),
    )
    .unwrap()
}
