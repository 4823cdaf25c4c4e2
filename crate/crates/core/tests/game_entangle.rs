mod common;

use common::{binary_entropy, pd};
use elw_core::entangle::{
    entanglement_entropy, f_matrix_of, is_maximally_entangled, reduced_entropy,
};
use elw_core::game::{build_gate, cooperate, defect, GameInstance, GateSpec, PayoffBimatrix};
use elw_core::matcore::{HaarSampler, Subsystem, UnitaryMatrix};
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, LN_2};

#[test]
fn gates_are_unitary_across_draws() {
    let mut s = HaarSampler::new(11);
    for _ in 0..100 {
        let gamma = s.uniform(0.0, FRAC_PI_2);
        let g = build_gate(&GateSpec::<f64>::N2Gamma(gamma)).unwrap();
        assert!(g.unitary().unitarity_residual() < 1e-12);
        let n = 2 + (s.next_u64() % 3) as usize;
        let gammas = (0..n * (n - 1) / 2).map(|_| s.uniform(-3.0, 3.0)).collect();
        let g = build_gate(&GateSpec::<f64>::CartanParams { n, gammas }).unwrap();
        assert!(g.unitary().unitarity_residual() < 1e-12);
    }
}

#[test]
fn classical_embedding_at_zero_entanglement() {
    let g = pd(0.0);
    let pd_table = PayoffBimatrix::<f64>::prisoners_dilemma();
    let strategies = [cooperate::<f64>(), defect::<f64>()];
    for (i, a) in strategies.iter().enumerate() {
        for (j, b) in strategies.iter().enumerate() {
            let dist = g.outcome(a, b).unwrap();
            assert!((dist.prob(i, j) - 1.0).abs() < 1e-12);
            let (pa, pb) = g.payoffs_of(a, b).unwrap();
            assert!((pa - pd_table.alice(i, j)).abs() < 1e-12);
            assert!((pb - pd_table.bob(i, j)).abs() < 1e-12);
        }
    }
}

#[test]
fn entropy_tracks_the_entangling_parameter() {
    let mut s = HaarSampler::new(5);
    let mut gammas: Vec<f64> = (0..198).map(|_| s.uniform(0.0, FRAC_PI_2)).collect();
    gammas.extend([0.0, FRAC_PI_2]);
    for gamma in gammas {
        let g = pd(gamma);
        let psi = g.initial_state();
        let e = entanglement_entropy(psi).unwrap();
        let oracle = binary_entropy((gamma / 2.0).cos().powi(2));
        assert!((e - oracle).abs() < 1e-9, "gamma {gamma}: {e} vs {oracle}");
        let maxent = f_matrix_of(psi).is_maximally_entangled();
        assert_eq!(maxent, (e - LN_2).abs() < 1e-8, "gamma {gamma}");
    }
}

fn random_cartan(s: &mut HaarSampler, n: usize) -> GameInstance<f64> {
    let gammas = (0..n * (n - 1) / 2).map(|_| s.uniform(-3.0, 3.0)).collect();
    GameInstance::from_spec(
        PayoffBimatrix::new(n, vec![0.0; n * n], vec![0.0; n * n]).unwrap(),
        &GateSpec::CartanParams { n, gammas },
    )
    .unwrap()
}

#[test]
fn initial_coefficients_are_symmetric() {
    let mut s = HaarSampler::new(21);
    for _ in 0..100 {
        let g = pd(s.uniform(0.0, FRAC_PI_2));
        let f = f_matrix_of(g.initial_state());
        assert!(f.is_symmetric());
        assert!(f.f().max_abs_diff(&f.f().transpose()) < 1e-12);
        let n = 2 + (s.next_u64() % 3) as usize;
        let f = f_matrix_of(random_cartan(&mut s, n).initial_state());
        assert!(f.is_symmetric());
    }
}

#[test]
fn cartan_gates_leave_the_product_state_unentangled() {
    let mut s = HaarSampler::new(8);
    for n in 2..=4 {
        let g = random_cartan(&mut s, n);
        let e = entanglement_entropy(g.initial_state()).unwrap();
        assert!(e.abs() < 1e-10);
    }
}

#[test]
fn bell_basis_preset_is_maximally_entangled() {
    for n in 2..=5 {
        let g = GameInstance::from_spec(
            PayoffBimatrix::new(n, vec![0.0; n * n], vec![0.0; n * n]).unwrap(),
            &GateSpec::bell_basis(n).unwrap(),
        )
        .unwrap();
        let d = is_maximally_entangled(g.initial_state(), 1e-8).unwrap();
        assert!(d.maximally_entangled && d.reduced_residual < 1e-12);
        let e = entanglement_entropy(g.initial_state()).unwrap();
        assert!((e - (n as f64).ln()).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_entropies_agree(seed in any::<u64>(), n in 2usize..=3) {
        let mut s = HaarSampler::new(seed);
        let psi = elw_core::game::StateVector::new(
            n,
            s.special_unitary::<f64>(n * n).column(0),
        ).unwrap();
        let a = reduced_entropy(&psi, Subsystem::B).unwrap();
        let b = reduced_entropy(&psi, Subsystem::A).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
        prop_assert!(a >= -1e-12 && a <= (n as f64).ln() + 1e-10);
    }

    #[test]
    fn coefficient_round_trip(seed in any::<u64>(), n in 2usize..=4) {
        let mut s = HaarSampler::new(seed);
        let psi = elw_core::game::StateVector::new(
            n,
            s.special_unitary::<f64>(n * n).column(0),
        ).unwrap();
        let back = f_matrix_of(&psi).to_state().unwrap();
        let diff = back
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        prop_assert!(diff < 1e-14);
    }

    #[test]
    fn outcomes_are_distributions(seed in any::<u64>(), gamma in 0.0f64..FRAC_PI_2) {
        let g = pd(gamma);
        let mut s = HaarSampler::new(seed);
        let (a, b): (UnitaryMatrix<f64>, UnitaryMatrix<f64>) = (s.special_unitary(2), s.special_unitary(2));
        let d = g.outcome(&a, &b).unwrap();
        let total: f64 = d.probs().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(d.probs().iter().all(|&p| p >= 0.0));
    }
}
