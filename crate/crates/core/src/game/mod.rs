//! The quantised game: payoff tables, the entangling gate, initial and final
//! states, outcome probabilities and expected payoffs.

mod gate;
mod payoff;
mod state;

pub use gate::{build_gate, GateOperator, GateSpec};
pub use payoff::{PayoffBimatrix, Player};
pub use state::{expected_payoffs, outcome_distribution, OutcomeDistribution, StateVector};

use num_complex::Complex;

use crate::entangle::f_matrix_of;
use crate::error::{Error, Result};
use crate::matcore::{pauli_y, ComplexMatrix, UnitaryMatrix};
use crate::scalar::Real;

/// A payoff bimatrix together with a realised gate.
#[derive(Debug, Clone)]
pub struct GameInstance<T: Real> {
    payoffs: PayoffBimatrix<T>,
    gate: GateOperator<T>,
    gate_adjoint: ComplexMatrix<T>,
    initial: StateVector<T>,
}

impl<T: Real> GameInstance<T> {
    pub fn new(payoffs: PayoffBimatrix<T>, gate: GateOperator<T>) -> Result<Self> {
        if payoffs.n() != gate.n() {
            return Err(Error::Dimension(format!(
                "payoffs for n = {} with a gate for n = {}",
                payoffs.n(),
                gate.n()
            )));
        }
        let n = gate.n();
        let initial = StateVector::new(n, gate.unitary().column(0))?;
        let gate_adjoint = gate.unitary().matrix().adjoint();
        Ok(Self {
            payoffs,
            gate,
            gate_adjoint,
            initial,
        })
    }

    /// Builds the gate from a spec and assembles the game.
    pub fn from_spec(payoffs: PayoffBimatrix<T>, spec: &GateSpec<T>) -> Result<Self> {
        Self::new(payoffs, build_gate(spec)?)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.gate.n()
    }

    #[inline]
    pub fn payoffs(&self) -> &PayoffBimatrix<T> {
        &self.payoffs
    }

    #[inline]
    pub fn gate(&self) -> &GateOperator<T> {
        &self.gate
    }

    /// `|Psi_i> = J |C C>`.
    #[inline]
    pub fn initial_state(&self) -> &StateVector<T> {
        &self.initial
    }

    fn check_strategy(&self, u: &ComplexMatrix<T>, who: &str) -> Result<()> {
        if u.rows() != self.n() || u.cols() != self.n() {
            return Err(Error::Dimension(format!(
                "{who} strategy is {}x{}, game has n = {}",
                u.rows(),
                u.cols(),
                self.n()
            )));
        }
        Ok(())
    }

    /// `|Psi_f> = J^+ (U_A (x) U_B) J |C C>`.
    pub fn final_state(
        &self,
        u_a: &UnitaryMatrix<T>,
        u_b: &UnitaryMatrix<T>,
    ) -> Result<StateVector<T>> {
        self.check_strategy(u_a, "Alice")?;
        self.check_strategy(u_b, "Bob")?;
        self.initial
            .apply_local(u_a, u_b)?
            .apply(&self.gate_adjoint)
    }

    pub fn outcome(
        &self,
        u_a: &UnitaryMatrix<T>,
        u_b: &UnitaryMatrix<T>,
    ) -> Result<OutcomeDistribution<T>> {
        outcome_distribution(&self.final_state(u_a, u_b)?)
    }

    /// Expected payoffs `($_A, $_B)` of a strategy pair.
    pub fn payoffs_of(&self, u_a: &UnitaryMatrix<T>, u_b: &UnitaryMatrix<T>) -> Result<(T, T)> {
        expected_payoffs(&self.outcome(u_a, u_b)?, &self.payoffs)
    }

    pub fn payoff_of(
        &self,
        player: Player,
        u_a: &UnitaryMatrix<T>,
        u_b: &UnitaryMatrix<T>,
    ) -> Result<T> {
        let (a, b) = self.payoffs_of(u_a, u_b)?;
        Ok(match player {
            Player::Alice => a,
            Player::Bob => b,
        })
    }

    /// A strategy pair whose final state is the basis outcome `|e_i e_j>`
    /// (up to phase), if one is reachable.
    ///
    /// For two strategies the classical pairs built from `C = I` and
    /// `D = i sigma_2` are tried first. Otherwise, when both `J|C C>` and
    /// `J|e_i e_j>` are maximally entangled, the pair `(G~ F~^+, I)` is used,
    /// where `F~`, `G~` are the rescaled coefficient matrices of those states.
    pub fn steering_pair(
        &self,
        i: usize,
        j: usize,
    ) -> Result<Option<(UnitaryMatrix<T>, UnitaryMatrix<T>)>> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::Dimension(format!("outcome ({i}, {j}) for n = {n}")));
        }
        let reaches = |a: &UnitaryMatrix<T>, b: &UnitaryMatrix<T>| -> Result<bool> {
            Ok(self.outcome(a, b)?.prob(i, j) >= T::one() - T::tol(1e-9))
        };
        if n == 2 {
            let classical = [cooperate::<T>(), defect::<T>()];
            if let (Some(a), Some(b)) = (classical.get(i), classical.get(j)) {
                if reaches(a, b)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        let f = f_matrix_of(&self.initial);
        let target = StateVector::basis(n, i, j).apply(self.gate.unitary())?;
        let g = f_matrix_of(&target);
        if !(f.is_maximally_entangled() && g.is_maximally_entangled()) {
            return Ok(None);
        }
        let u1 = match UnitaryMatrix::special_from(g.ftilde().matmul(&f.ftilde().adjoint())?) {
            Ok(u) => u,
            Err(_) => return Ok(None),
        };
        let u2 = UnitaryMatrix::identity(n);
        if reaches(&u1, &u2)? {
            Ok(Some((u1, u2)))
        } else {
            Ok(None)
        }
    }
}

/// Classical "cooperate" strategy `C = I` for two strategies.
pub fn cooperate<T: Real>() -> UnitaryMatrix<T> {
    UnitaryMatrix::identity(2)
}

/// Classical "defect" strategy `D = i sigma_2`, a special-unitary bit flip.
pub fn defect<T: Real>() -> UnitaryMatrix<T> {
    UnitaryMatrix::new_special(pauli_y::<T>().scale(Complex::new(T::zero(), T::one())))
        .expect("i sigma_2 is special unitary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{haar_random_special_unitary, HaarSampler};
    use crate::scalar::{c, cis};
    use std::f64::consts::FRAC_PI_2;

    fn pd(gamma: f64) -> GameInstance<f64> {
        GameInstance::from_spec(
            PayoffBimatrix::prisoners_dilemma(),
            &GateSpec::N2Gamma(gamma),
        )
        .unwrap()
    }

    #[test]
    fn initial_state_values() {
        let g = pd(FRAC_PI_2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = g.initial_state().amplitudes();
        assert!((psi[0] - c(h, 0.0)).norm() < 1e-15);
        assert!((psi[3] - c(0.0, h)).norm() < 1e-15);
        let g0 = pd(0.0);
        assert_eq!(g0.initial_state(), &StateVector::basis(2, 0, 0));
    }

    #[test]
    fn identity_strategies_return_cc() {
        for gamma in [0.0, 0.3, 1.0, FRAC_PI_2] {
            let g = pd(gamma);
            let id = UnitaryMatrix::identity(2);
            let psi = g.final_state(&id, &id).unwrap();
            assert!(psi.phase_distance(&StateVector::basis(2, 0, 0)) < 1e-14);
            let (a, b) = g.payoffs_of(&id, &id).unwrap();
            assert!((a - 3.0).abs() < 1e-12 && (b - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn final_state_matches_kron_route() {
        let g = pd(1.1);
        let ua = haar_random_special_unitary::<f64>(2, 1);
        let ub = haar_random_special_unitary::<f64>(2, 2);
        let fast = g.final_state(&ua, &ub).unwrap();
        let j = g.gate().unitary().matrix();
        let op = &(&j.adjoint() * &ua.kron(&ub).unwrap()) * j;
        let slow = StateVector::basis(2, 0, 0).apply(&op).unwrap();
        for (x, y) in fast.amplitudes().iter().zip(slow.amplitudes()) {
            assert!((*x - *y).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_gamma_is_product_action() {
        let g = pd(0.0);
        let ua = haar_random_special_unitary::<f64>(2, 5);
        let ub = haar_random_special_unitary::<f64>(2, 6);
        let psi = g.final_state(&ua, &ub).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected = ua[(i, 0)] * ub[(j, 0)];
                assert!((psi.amplitude(i, j) - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn classical_embedding_at_zero_gamma() {
        let g = pd(0.0);
        let s = [cooperate::<f64>(), defect::<f64>()];
        for i in 0..2 {
            for j in 0..2 {
                let d = g.outcome(&s[i], &s[j]).unwrap();
                assert!((d.prob(i, j) - 1.0).abs() < 1e-12);
                let (a, b) = g.payoffs_of(&s[i], &s[j]).unwrap();
                assert!((a - g.payoffs().alice(i, j)).abs() < 1e-12);
                assert!((b - g.payoffs().bob(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_invariance() {
        let g = pd(0.9);
        let mut s = HaarSampler::new(11);
        for _ in 0..20 {
            let ua = s.special_unitary::<f64>(2);
            let ub = s.special_unitary::<f64>(2);
            let phi = s.uniform::<f64>(0.0, 6.0);
            let pa = UnitaryMatrix::new(ua.scale(cis(phi))).unwrap();
            let pb = UnitaryMatrix::new(ub.scale(cis(-2.0 * phi))).unwrap();
            let (a0, b0) = g.payoffs_of(&ua, &ub).unwrap();
            let (a1, b1) = g.payoffs_of(&pa, &pb).unwrap();
            assert!((a0 - a1).abs() < 1e-12 && (b0 - b1).abs() < 1e-12);
        }
    }

    #[test]
    fn steering_reaches_every_cell() {
        for spec in [
            GateSpec::N2Gamma(0.0),
            GateSpec::N2Gamma(FRAC_PI_2),
            GateSpec::bell_basis(2).unwrap(),
            GateSpec::bell_basis(3).unwrap(),
        ] {
            let n = spec.n();
            let g = GameInstance::from_spec(
                PayoffBimatrix::new(n, vec![0.0; n * n], vec![0.0; n * n]).unwrap(),
                &spec,
            )
            .unwrap();
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = g.steering_pair(i, j).unwrap().expect("reachable");
                    assert!(a.is_special() && b.is_special());
                    assert!((g.outcome(&a, &b).unwrap().prob(i, j) - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn householder_gate_leaves_some_cells_unreachable() {
        let spec = GateSpec::<f64>::householder_max_entangled(2).unwrap();
        let g = GameInstance::from_spec(PayoffBimatrix::prisoners_dilemma(), &spec).unwrap();
        assert!(g.steering_pair(0, 0).unwrap().is_some());
        assert!(g.steering_pair(1, 1).unwrap().is_some());
        assert!(g.steering_pair(0, 1).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        let g = pd(0.3);
        let u3 = UnitaryMatrix::<f64>::identity(3);
        let u2 = UnitaryMatrix::<f64>::identity(2);
        assert!(matches!(g.final_state(&u3, &u2), Err(Error::Dimension(_))));
        let p3 = PayoffBimatrix::<f64>::new(3, vec![0.0; 9], vec![0.0; 9]).unwrap();
        assert!(GameInstance::from_spec(p3, &GateSpec::N2Gamma(0.1)).is_err());
    }
}
