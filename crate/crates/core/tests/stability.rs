mod common;

use common::{identity_ftilde_game, pd};
use elw_core::chiral::{
    alice_counterstrategy, counterstrategy, decompose, is_stabilizer, stabilizer_partner,
    StrategyPair,
};
use elw_core::entangle::f_matrix_of;
use elw_core::game::{GameInstance, GateSpec, PayoffBimatrix};
use elw_core::matcore::HaarSampler;
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

fn random_pair(s: &mut HaarSampler, n: usize) -> StrategyPair<f64> {
    StrategyPair::new(s.special_unitary(n), s.special_unitary(n)).unwrap()
}

fn random_table_game(s: &mut HaarSampler, spec: &GateSpec<f64>) -> GameInstance<f64> {
    let n = spec.n();
    let table = |s: &mut HaarSampler| (0..n * n).map(|_| s.uniform(-5.0, 5.0)).collect();
    let payoffs = PayoffBimatrix::new(n, table(s), table(s)).unwrap();
    GameInstance::from_spec(payoffs, spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizers_are_closed_under_composition(seed in any::<u64>(), n in 2usize..=4) {
        let g = identity_ftilde_game(n);
        let psi = g.initial_state();
        let f = f_matrix_of(psi);
        let mut s = HaarSampler::new(seed);
        let (u, v) = (s.special_unitary(n), s.special_unitary(n));
        let p = StrategyPair::new(u.clone(), stabilizer_partner(&u, &f).unwrap()).unwrap();
        let q = StrategyPair::new(v.clone(), stabilizer_partner(&v, &f).unwrap()).unwrap();
        prop_assert!(is_stabilizer(&p, psi, 1e-10).unwrap().is_stabilizer);
        prop_assert!(is_stabilizer(&q, psi, 1e-10).unwrap().is_stabilizer);
        let pq = p.compose(&q).unwrap();
        prop_assert!(is_stabilizer(&pq, psi, 1e-10).unwrap().is_stabilizer);
    }

    #[test]
    fn stabilizer_action_preserves_payoffs(seed in any::<u64>()) {
        let mut s = HaarSampler::new(seed);
        for spec in [GateSpec::N2Gamma(FRAC_PI_2), GateSpec::bell_basis(3).unwrap()] {
            let g = random_table_game(&mut s, &spec);
            let f = f_matrix_of(g.initial_state());
            let n = g.n();
            let u = s.special_unitary(n);
            let stab = StrategyPair::new(u.clone(), stabilizer_partner(&u, &f).unwrap()).unwrap();
            let pair = random_pair(&mut s, n);
            let moved = pair.compose(&stab).unwrap();
            let before = g.payoffs_of(&pair.u_a, &pair.u_b).unwrap();
            let after = g.payoffs_of(&moved.u_a, &moved.u_b).unwrap();
            prop_assert!((before.0 - after.0).abs() < 1e-10);
            prop_assert!((before.1 - after.1).abs() < 1e-10);
        }
    }
}

#[test]
fn counterstrategies_reproduce_target_outcomes() {
    let mut s = HaarSampler::new(99);
    let games = [
        pd(FRAC_PI_2),
        identity_ftilde_game(3),
        GameInstance::from_spec(
            PayoffBimatrix::new(4, vec![0.0; 16], vec![0.0; 16]).unwrap(),
            &GateSpec::householder_max_entangled(4).unwrap(),
        )
        .unwrap(),
    ];
    for g in &games {
        let f = f_matrix_of(g.initial_state());
        let n = g.n();
        for _ in 0..1000 / games.len() + 1 {
            let target = random_pair(&mut s, n);
            let v = s.special_unitary(n);
            let w = counterstrategy(&v, &target, &f).unwrap();
            let reached = g.final_state(&v, &w).unwrap();
            let wanted = g.final_state(&target.u_a, &target.u_b).unwrap();
            assert!(reached.phase_distance(&wanted) < 1e-10);
            let d = g.outcome(&v, &w).unwrap();
            assert!(d.max_abs_diff(&g.outcome(&target.u_a, &target.u_b).unwrap()) < 1e-10);

            let va = alice_counterstrategy(&w, &target, &f).unwrap();
            let reached = g.final_state(&va, &w).unwrap();
            assert!(reached.phase_distance(&wanted) < 1e-10);
        }
    }
}

#[test]
fn decomposition_recomposes_at_identity_coefficients() {
    let g = identity_ftilde_game(3);
    let psi = g.initial_state();
    let f = f_matrix_of(psi);
    assert!(
        f.ftilde()
            .max_abs_diff(&elw_core::matcore::ComplexMatrix::identity(3))
            < 1e-12
    );
    let mut s = HaarSampler::new(3);
    for _ in 0..50 {
        let pair = random_pair(&mut s, 3);
        let v = s.special_unitary(3);
        let dec = decompose(&pair, &v, &f).unwrap();
        assert!(
            is_stabilizer(&dec.stab_pair, psi, 1e-10)
                .unwrap()
                .is_stabilizer
        );
        let back = dec.recompose().unwrap();
        assert!(back.phase_distance(&pair) < 1e-10);
        let a = psi.apply_local(&back.u_a, &back.u_b).unwrap();
        let b = psi.apply_local(&pair.u_a, &pair.u_b).unwrap();
        assert!(a.phase_distance(&b) < 1e-10);
    }
}
