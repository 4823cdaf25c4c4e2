use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::unitary::UnitaryMatrix;
use crate::scalar::{Real, C};

/// Seed for every random draw in the engine.
pub type RandomSeed = u64;

/// Deterministically derives an independent child seed (splitmix64 finaliser).
pub fn derive_seed(seed: RandomSeed, index: u64) -> RandomSeed {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Value-carrying Haar sampler on SU(n).
#[derive(Debug, Clone)]
pub struct HaarSampler {
    rng: ChaCha8Rng,
}

impl HaarSampler {
    pub fn new(seed: RandomSeed) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn gaussian<T: Real>(&mut self) -> T {
        T::lit(self.rng.sample::<f64, _>(StandardNormal))
    }

    pub fn uniform<T: Real>(&mut self, lo: f64, hi: f64) -> T {
        T::lit(self.rng.random_range(lo..hi))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.random()
    }

    /// Matrix of i.i.d. standard complex Gaussians (`E|z|^2 = 1`).
    pub fn ginibre<T: Real>(&mut self, n: usize) -> ComplexMatrix<T> {
        let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let data = (0..n * n)
            .map(|_| {
                let re = self.gaussian::<T>() * s;
                let im = self.gaussian::<T>() * s;
                Complex::new(re, im)
            })
            .collect();
        ComplexMatrix::from_vec(n, n, data).expect("finite gaussian samples")
    }

    /// Haar-distributed element of SU(n), `n >= 1`.
    pub fn special_unitary<T: Real>(&mut self, n: usize) -> UnitaryMatrix<T> {
        assert!(n >= 1, "Haar sampling needs a positive dimension");
        let z = self.ginibre::<T>(n);
        let (mut q, r_diag) = householder_qr(&z);
        // Q diag(r_kk / |r_kk|) makes the factorisation unique, hence Haar.
        for (k, rkk) in r_diag.iter().enumerate() {
            let norm = rkk.norm();
            let phase = if norm > T::zero() {
                *rkk / norm
            } else {
                C::one()
            };
            for i in 0..n {
                q[(i, k)] = q[(i, k)] * phase;
            }
        }
        UnitaryMatrix::special_from(q).expect("QR factor is unitary")
    }
}

/// Haar-random special unitary for a single `(n, seed)`.
pub fn haar_random_special_unitary<T: Real>(n: usize, seed: RandomSeed) -> UnitaryMatrix<T> {
    HaarSampler::new(seed).special_unitary(n)
}

/// Householder QR of a square matrix; returns `Q` and the diagonal of `R`.
fn householder_qr<T: Real>(a: &ComplexMatrix<T>) -> (ComplexMatrix<T>, Vec<C<T>>) {
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let xnorm = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<T>().sqrt();
        let x0 = r[(k, k)];
        if xnorm.is_zero() {
            diag.push(C::zero());
            continue;
        }
        let phase = if x0.norm() > T::zero() {
            x0 / x0.norm()
        } else {
            C::one()
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<C<T>> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm2: T = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2.is_zero() {
            diag.push(x0);
            continue;
        }
        let two = T::lit(2.0) / vnorm2;
        // R <- H R
        for j in 0..n {
            let dot = v.iter().enumerate().fold(C::zero(), |acc: C<T>, (t, vi)| {
                acc + vi.conj() * r[(k + t, j)]
            });
            let f = dot * two;
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] = r[(k + t, j)] - *vi * f;
            }
        }
        // Q <- Q H
        for i in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(C::zero(), |acc: C<T>, (t, vi)| acc + q[(i, k + t)] * *vi);
            let f = dot * two;
            for (t, vi) in v.iter().enumerate() {
                q[(i, k + t)] = q[(i, k + t)] - f * vi.conj();
            }
        }
        diag.push(r[(k, k)]);
    }
    (q, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs() {
        let mut s = HaarSampler::new(3);
        let a = s.ginibre::<f64>(4);
        let (q, d) = householder_qr(&a);
        assert!(q.unitarity_residual() < 1e-13);
        // Q^+ A is upper triangular with the reported diagonal.
        let r = &q.adjoint() * &a;
        for i in 0..4 {
            assert!((r[(i, i)] - d[i]).norm() < 1e-12);
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = haar_random_special_unitary::<f64>(3, 42);
        let b = haar_random_special_unitary::<f64>(3, 42);
        assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
        let c = haar_random_special_unitary::<f64>(3, 43);
        assert_ne!(a.matrix().as_slice(), c.matrix().as_slice());
    }

    #[test]
    fn construction_contract() {
        let mut s = HaarSampler::new(9);
        for n in 2..=5 {
            for _ in 0..50 {
                let u = s.special_unitary::<f64>(n);
                assert!(u.unitarity_residual() < 1e-12);
                assert!((u.det().unwrap() - C::one()).norm() < 1e-10);
                assert!(u.is_special());
            }
        }
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(5, 7), derive_seed(5, 7));
    }

    #[test]
    fn single_precision_sampling() {
        let u = haar_random_special_unitary::<f32>(3, 1);
        assert!(u.unitarity_residual() < 1e-5);
    }
}
