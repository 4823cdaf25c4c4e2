//! Multi-start gradient ascent over a parameterised strategy family.

use rayon::prelude::*;

use super::SolverConfig;
use crate::error::{Error, Result};
use crate::matcore::{
    derive_seed, gell_mann_basis, unitary_from_hermitian, ComplexMatrix, HaarSampler, UnitaryMatrix,
};
use crate::scalar::Real;

/// Finite-difference step used by the ascent.
pub const FD_STEP: f64 = 1e-5;
const ARMIJO: f64 = 1e-4;

/// A smooth parameterisation `x -> U(x)` of (a subset of) the strategy space.
///
/// The full family is [`FullSpecialUnitary`]; restricted strategy sets plug in
/// here.
pub trait StrategyFamily<T: Real>: Sync {
    fn n(&self) -> usize;

    /// Number of real parameters.
    fn dim(&self) -> usize;

    fn strategy(&self, x: &[T]) -> Result<UnitaryMatrix<T>>;

    /// Starting point for one restart.
    fn random_start(&self, sampler: &mut HaarSampler) -> Vec<T> {
        (0..self.dim())
            .map(|_| sampler.uniform(-std::f64::consts::PI, std::f64::consts::PI))
            .collect()
    }
}

/// `x -> exp(i sum_k x_k T_k)` over the generalised Gell-Mann basis of su(n).
#[derive(Debug, Clone)]
pub struct FullSpecialUnitary<T: Real> {
    n: usize,
    basis: Vec<ComplexMatrix<T>>,
}

impl<T: Real> FullSpecialUnitary<T> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            basis: gell_mann_basis(n),
        }
    }

    pub fn generator(&self, x: &[T]) -> ComplexMatrix<T> {
        let mut h = ComplexMatrix::zeros(self.n, self.n);
        for (xk, tk) in x.iter().zip(&self.basis) {
            h = h.add(&tk.scale_real(*xk)).expect("same shape");
        }
        h
    }
}

impl<T: Real> StrategyFamily<T> for FullSpecialUnitary<T> {
    fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn strategy(&self, x: &[T]) -> Result<UnitaryMatrix<T>> {
        if x.len() != self.basis.len() {
            return Err(Error::Dimension(format!(
                "{} coordinates for su({})",
                x.len(),
                self.n
            )));
        }
        Ok(unitary_from_hermitian(&self.generator(x), T::one())?.into_special())
    }
}

/// Central-difference gradient with step `h`.
pub fn finite_difference_gradient<T: Real>(
    f: &impl Fn(&[T]) -> Result<T>,
    x: &[T],
    h: T,
) -> Result<Vec<T>> {
    let mut probe = x.to_vec();
    let two_h = h + h;
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe)?;
            probe[k] = x[k] - h;
            let down = f(&probe)?;
            probe[k] = x[k];
            Ok((up - down) / two_h)
        })
        .collect()
}

/// Outcome of one ascent run.
#[derive(Debug, Clone)]
pub struct AscentRun<T: Real> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Quasi-Newton (BFGS) ascent on finite-difference gradients with a
/// backtracking Armijo line search. Converged iff the last step is shorter
/// than `tolerance`.
pub fn ascend<T: Real>(
    f: &impl Fn(&[T]) -> Result<T>,
    x0: Vec<T>,
    max_iters: usize,
    tolerance: T,
) -> Result<AscentRun<T>> {
    let h = T::lit(FD_STEP);
    let armijo = T::lit(ARMIJO);
    let dim = x0.len();
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).map(|(p, q)| *p * *q).sum::<T>();
    let identity = |d: usize| {
        let mut m = vec![T::zero(); d * d];
        for i in 0..d {
            m[i * d + i] = T::one();
        }
        m
    };
    // Inverse Hessian estimate of -f.
    let mut inv = identity(dim);
    let mut x = x0;
    let mut fx = f(&x)?;
    let mut g = finite_difference_gradient(f, &x, h)?;
    let mut last_step = T::infinity();
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        if dot(&g, &g).sqrt() < tolerance {
            last_step = T::zero();
            break;
        }
        let mut dir: Vec<T> = (0..dim)
            .map(|i| dot(&inv[i * dim..(i + 1) * dim], &g))
            .collect();
        let mut slope = dot(&g, &dir);
        if slope.is_nan() || slope <= T::zero() {
            inv = identity(dim);
            dir = g.clone();
            slope = dot(&g, &g);
        }
        let dnorm = dot(&dir, &dir).sqrt();
        let mut alpha = T::one();
        let mut accepted = None;
        while alpha * dnorm >= tolerance {
            let trial: Vec<T> = x
                .iter()
                .zip(&dir)
                .map(|(xi, di)| *xi + alpha * *di)
                .collect();
            let ft = f(&trial)?;
            if ft >= fx + armijo * alpha * slope {
                accepted = Some((trial, ft));
                break;
            }
            alpha /= T::lit(2.0);
        }
        last_step = alpha * dnorm;
        let Some((trial, ft)) = accepted else {
            break;
        };
        let g_new = finite_difference_gradient(f, &trial, h)?;
        let s: Vec<T> = trial.iter().zip(&x).map(|(a, b)| *a - *b).collect();
        // Gradient change of -f.
        let y: Vec<T> = g.iter().zip(&g_new).map(|(a, b)| *a - *b).collect();
        let sy = dot(&s, &y);
        if sy > T::epsilon() * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            let hy: Vec<T> = (0..dim)
                .map(|i| dot(&inv[i * dim..(i + 1) * dim], &y))
                .collect();
            let yhy = dot(&y, &hy);
            let rho = T::one() / sy;
            let coef = (T::one() + yhy * rho) * rho;
            for i in 0..dim {
                for j in 0..dim {
                    inv[i * dim + j] += coef * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        x = trial;
        fx = ft;
        g = g_new;
        if last_step < tolerance {
            break;
        }
    }
    Ok(AscentRun {
        x,
        value: fx,
        iterations,
        converged: last_step < tolerance,
    })
}

/// Best of `cfg.restarts` independent ascents; restart `r` draws its start
/// from `derive_seed(cfg.seed, r)`. Ties resolve to the lowest restart index.
pub fn multi_start<T: Real, F>(
    family: &dyn StrategyFamily<T>,
    objective: F,
    cfg: &SolverConfig,
) -> Result<(UnitaryMatrix<T>, AscentRun<T>, bool)>
where
    F: Fn(&UnitaryMatrix<T>) -> Result<T> + Sync,
{
    let f = |x: &[T]| objective(&family.strategy(x)?);
    let runs: Vec<AscentRun<T>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut sampler = HaarSampler::new(derive_seed(cfg.seed, r as u64));
            let x0 = family.random_start(&mut sampler);
            ascend(&f, x0, cfg.max_iters, T::lit(cfg.step_tolerance))
        })
        .collect::<Result<_>>()?;
    let any_converged = runs.iter().any(|r| r.converged);
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value > best.value { r } else { best })
        .ok_or_else(|| Error::InvalidParameter("restarts must be positive".into()))?;
    Ok((family.strategy(&best.x)?, best, any_converged))
}
