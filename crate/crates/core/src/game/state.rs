use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matcore::{tol, ComplexMatrix};
use crate::scalar::{Real, C};

/// Normalised pure state of the game space; amplitude of `|e_i> (x) |e_j>`
/// lives at flat index `i * n + j`. The ket `|C>` is `|e_0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n: usize,
    amps: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(n: usize, amps: Vec<C<T>>) -> Result<Self> {
        if n == 0 || amps.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} amplitudes for n = {n}",
                amps.len()
            )));
        }
        let norm: T = amps.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm.is_nan() || (norm - T::one()).abs() > T::tol(tol::NORM) {
            return Err(Error::NumericalIntegrity(format!(
                "state norm {norm} differs from 1"
            )));
        }
        Ok(Self { n, amps })
    }

    /// `|e_i> (x) |e_j>`.
    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut amps = vec![C::zero(); n * n];
        amps[i * n + j] = C::one();
        Self { n, amps }
    }

    /// Rebuilds a state from its coefficient matrix `F` (`psi = sum F_ij |e_i e_j>`).
    pub fn from_coefficients(f: &ComplexMatrix<T>) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::Dimension("coefficient matrix must be square".into()));
        }
        Self::new(f.rows(), f.as_slice().to_vec())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    #[inline]
    pub fn amplitude(&self, i: usize, j: usize) -> C<T> {
        self.amps[i * self.n + j]
    }

    /// Coefficient matrix `F` with `F_ij = <e_i e_j | psi>`.
    pub fn coefficients(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_vec(self.n, self.n, self.amps.clone()).expect("n x n amplitudes")
    }

    /// `<self | other>`.
    pub fn inner(&self, other: &Self) -> C<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        let d = self.amps.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        m
    }

    /// `(u_a (x) u_b) psi`, evaluated as `u_a F u_b^T` on the coefficient matrix.
    pub fn apply_local(&self, u_a: &ComplexMatrix<T>, u_b: &ComplexMatrix<T>) -> Result<Self> {
        if u_a.rows() != self.n || u_b.rows() != self.n || !u_a.is_square() || !u_b.is_square() {
            return Err(Error::Dimension(format!(
                "local operators {}x{} and {}x{} on n = {}",
                u_a.rows(),
                u_a.cols(),
                u_b.rows(),
                u_b.cols(),
                self.n
            )));
        }
        let f = self.coefficients();
        let g = u_a.matmul(&f)?.matmul(&u_b.transpose())?;
        Ok(Self {
            n: self.n,
            amps: g.as_slice().to_vec(),
        })
    }

    /// Applies an `n^2 x n^2` operator.
    pub fn apply(&self, op: &ComplexMatrix<T>) -> Result<Self> {
        Ok(Self {
            n: self.n,
            amps: op.mul_vec(&self.amps)?,
        })
    }

    /// Phase-aligned Euclidean distance `min_phi || self - e^{i phi} other ||`.
    pub fn phase_distance(&self, other: &Self) -> T {
        let ov = other.inner(self);
        let phase = if ov.norm() > T::zero() {
            ov / ov.norm()
        } else {
            Complex::one()
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a - *b * phase).norm_sqr())
            .sum::<T>()
            .sqrt()
    }
}

/// Joint outcome probabilities `P(i, j) = |<e_i e_j | psi>|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution<T: Real> {
    n: usize,
    probs: Vec<T>,
}

impl<T: Real> OutcomeDistribution<T> {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn prob(&self, i: usize, j: usize) -> T {
        self.probs[i * self.n + j]
    }

    #[inline]
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// Largest entrywise difference to another distribution.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.n != other.n {
            return T::infinity();
        }
        self.probs
            .iter()
            .zip(&other.probs)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}

pub fn outcome_distribution<T: Real>(psi: &StateVector<T>) -> Result<OutcomeDistribution<T>> {
    let floor = -T::lit(1e-12);
    let mut probs = Vec::with_capacity(psi.amps.len());
    for z in &psi.amps {
        let p = z.norm_sqr();
        if p < floor {
            return Err(Error::NumericalIntegrity(format!(
                "negative probability {p}"
            )));
        }
        probs.push(p.max(T::zero()));
    }
    let total: T = probs.iter().copied().sum();
    if total.is_nan() || (total - T::one()).abs() > T::tol(tol::NORM) {
        return Err(Error::NumericalIntegrity(format!(
            "outcome probabilities sum to {total}"
        )));
    }
    Ok(OutcomeDistribution { n: psi.n, probs })
}

/// `(sum alice(i,j) P(i,j), sum bob(i,j) P(i,j))`.
pub fn expected_payoffs<T: Real>(
    dist: &OutcomeDistribution<T>,
    payoffs: &super::PayoffBimatrix<T>,
) -> Result<(T, T)> {
    if dist.n != payoffs.n() {
        return Err(Error::Dimension(format!(
            "distribution over n = {} against payoffs for n = {}",
            dist.n,
            payoffs.n()
        )));
    }
    let (mut a, mut b) = (T::zero(), T::zero());
    for i in 0..dist.n {
        for j in 0..dist.n {
            let p = dist.prob(i, j);
            a += payoffs.alice(i, j) * p;
            b += payoffs.bob(i, j) * p;
        }
    }
    Ok((a, b))
}
