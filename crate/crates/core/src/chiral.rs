//! Stability subgroup of the maximally entangled initial state, the coset
//! decomposition of SU(n) x SU(n) it induces, and the counterstrategy built
//! from it.
//!
//! All formulas are written for a unitary `F~` without assuming symmetry:
//! the invariance condition `U_A F~ U_B^T = F~` is solved by
//! `U_B = F~^T conj(U_A) conj(F~)`, which equals `F~ conj(U_A) F~^+` whenever
//! `F~` is symmetric (the case for every gate in this crate). Conjugation is
//! entrywise in the computational basis.

use crate::entangle::FMatrix;
use crate::error::{Error, Result};
use crate::game::StateVector;
use crate::matcore::{ComplexMatrix, UnitaryMatrix};
use crate::scalar::Real;

/// A pair `(U_A, U_B)` of special unitaries of equal dimension.
#[derive(Debug, Clone)]
pub struct StrategyPair<T: Real> {
    pub u_a: UnitaryMatrix<T>,
    pub u_b: UnitaryMatrix<T>,
}

impl<T: Real> StrategyPair<T> {
    pub fn new(u_a: UnitaryMatrix<T>, u_b: UnitaryMatrix<T>) -> Result<Self> {
        if u_a.dim() != u_b.dim() {
            return Err(Error::Dimension(format!(
                "strategies of dimension {} and {}",
                u_a.dim(),
                u_b.dim()
            )));
        }
        if !u_a.is_special() || !u_b.is_special() {
            return Err(Error::InvalidParameter(
                "strategy pair members must be special unitary".into(),
            ));
        }
        Ok(Self { u_a, u_b })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            u_a: UnitaryMatrix::identity(n),
            u_b: UnitaryMatrix::identity(n),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.u_a.dim()
    }

    /// Componentwise product `(a_1 b_1, a_2 b_2)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            u_a: self.u_a.compose(&other.u_a)?,
            u_b: self.u_b.compose(&other.u_b)?,
        })
    }

    /// Larger of the two componentwise max-norm distances.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.u_a
            .max_abs_diff(&other.u_a)
            .max(self.u_b.max_abs_diff(&other.u_b))
    }

    /// Componentwise distance modulo a global phase on each member.
    pub fn phase_distance(&self, other: &Self) -> T {
        self.u_a
            .phase_distance(&other.u_a)
            .max(self.u_b.phase_distance(&other.u_b))
    }
}

/// `pair = rep_pair * stab_pair` with `stab_pair` in the stability subgroup.
#[derive(Debug, Clone)]
pub struct CosetDecomposition<T: Real> {
    pub rep_pair: StrategyPair<T>,
    pub stab_pair: StrategyPair<T>,
}

impl<T: Real> CosetDecomposition<T> {
    pub fn recompose(&self) -> Result<StrategyPair<T>> {
        self.rep_pair.compose(&self.stab_pair)
    }
}

fn check_dims<T: Real>(f: &FMatrix<T>, us: &[&UnitaryMatrix<T>]) -> Result<()> {
    f.require_maximally_entangled()?;
    for u in us {
        if u.dim() != f.n() {
            return Err(Error::Dimension(format!(
                "strategy of dimension {} with an F-matrix for n = {}",
                u.dim(),
                f.n()
            )));
        }
    }
    Ok(())
}

fn product<T: Real>(factors: &[&ComplexMatrix<T>]) -> ComplexMatrix<T> {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

/// Bob's partner of `u` in the stability subgroup: `F~ conj(u) F~^+`.
pub fn stabilizer_partner<T: Real>(
    u: &UnitaryMatrix<T>,
    f: &FMatrix<T>,
) -> Result<UnitaryMatrix<T>> {
    check_dims(f, &[u])?;
    let ft = f.ftilde();
    let w = product(&[&ft.transpose(), &u.conj(), &ft.conj()]);
    UnitaryMatrix::special_from(w)
}

/// Bob's counterstrategy `W = U_2 F~ conj(U_1)^+ conj(V) F~^+` to Alice's `v`:
/// against `v` it reproduces the final state of `target` exactly.
pub fn counterstrategy<T: Real>(
    v: &UnitaryMatrix<T>,
    target: &StrategyPair<T>,
    f: &FMatrix<T>,
) -> Result<UnitaryMatrix<T>> {
    check_dims(f, &[v, &target.u_a, &target.u_b])?;
    let ft = f.ftilde();
    let w = product(&[
        &target.u_b,
        &ft.transpose(),
        &target.u_a.transpose(),
        &v.conj(),
        &ft.conj(),
    ]);
    UnitaryMatrix::special_from(w)
}

/// Alice's counterstrategy to Bob's `w`: `V = U_1 F~ U_2^T conj(W) F~^+`.
pub fn alice_counterstrategy<T: Real>(
    w: &UnitaryMatrix<T>,
    target: &StrategyPair<T>,
    f: &FMatrix<T>,
) -> Result<UnitaryMatrix<T>> {
    check_dims(f, &[w, &target.u_a, &target.u_b])?;
    let ft = f.ftilde();
    let v = product(&[
        &target.u_a,
        ft,
        &target.u_b.transpose(),
        &w.conj(),
        &ft.adjoint(),
    ]);
    UnitaryMatrix::special_from(v)
}

/// Splits `pair` as `(V, W) * (V^+ U_1, F~ conj(V)^+ conj(U_1) F~^+)` where
/// `W` is the counterstrategy to `v`.
pub fn decompose<T: Real>(
    pair: &StrategyPair<T>,
    v: &UnitaryMatrix<T>,
    f: &FMatrix<T>,
) -> Result<CosetDecomposition<T>> {
    let w = counterstrategy(v, pair, f)?;
    let ft = f.ftilde();
    let stab_a = UnitaryMatrix::special_from(&v.matrix().adjoint() * pair.u_a.matrix())?;
    let stab_b = UnitaryMatrix::special_from(product(&[
        &ft.transpose(),
        &v.transpose(),
        &pair.u_a.conj(),
        &ft.conj(),
    ]))?;
    Ok(CosetDecomposition {
        rep_pair: StrategyPair::new(v.clone().into_special(), w)?,
        stab_pair: StrategyPair::new(stab_a, stab_b)?,
    })
}

/// Result of a stabiliser test.
#[derive(Debug, Clone, Copy)]
pub struct StabilizerCheck<T: Real> {
    pub is_stabilizer: bool,
    /// `|| (U_A (x) U_B) psi - e^{i phi} psi ||` at the optimal phase.
    pub residual: T,
    /// `|<psi| (U_A (x) U_B) |psi>|`.
    pub overlap: T,
}

/// Does `pair` leave `psi` invariant up to a global phase?
pub fn is_stabilizer<T: Real>(
    pair: &StrategyPair<T>,
    psi: &StateVector<T>,
    tol: T,
) -> Result<StabilizerCheck<T>> {
    let moved = psi.apply_local(&pair.u_a, &pair.u_b)?;
    let residual = moved.phase_distance(psi);
    Ok(StabilizerCheck {
        is_stabilizer: residual <= tol,
        residual,
        overlap: psi.inner(&moved).norm(),
    })
}
