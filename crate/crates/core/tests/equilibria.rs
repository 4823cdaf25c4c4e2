mod common;

use common::pd;
use elw_core::chiral::StrategyPair;
use elw_core::game::{cooperate, defect, GameInstance, GateSpec, PayoffBimatrix, Player};
use elw_core::matcore::{HaarSampler, UnitaryMatrix};
use elw_core::nash::{
    best_response, equilibrium_search, finite_difference_gradient, nonexistence_witness,
    verify_equilibrium, EquilibriumStatus, FullSpecialUnitary, ResponseMethod, SolverConfig,
    StrategyFamily, Termination,
};
use std::f64::consts::FRAC_PI_2;

fn quick(seed: u64) -> SolverConfig {
    SolverConfig {
        restarts: 4,
        probe_count: 32,
        seed,
        ..SolverConfig::default()
    }
}

#[test]
fn analytic_response_dominates_random_deviations() {
    let g = pd(FRAC_PI_2);
    let mut s = HaarSampler::new(17);
    for _ in 0..100 {
        let opp: UnitaryMatrix<f64> = s.special_unitary(2);
        for side in [Player::Alice, Player::Bob] {
            let br = best_response(&g, side, &opp, &quick(0)).unwrap();
            assert_eq!(br.method, ResponseMethod::AnalyticCounterstrategy);
            assert!((br.value - 5.0).abs() < 1e-10);
            for _ in 0..5 {
                let d = s.special_unitary(2);
                let v = match side {
                    Player::Alice => g.payoff_of(side, &d, &opp).unwrap(),
                    Player::Bob => g.payoff_of(side, &opp, &d).unwrap(),
                };
                assert!(v <= br.value + 1e-10);
            }
        }
    }
}

#[test]
fn witnesses_replay_to_their_gain() {
    let g = pd(FRAC_PI_2);
    let mut s = HaarSampler::new(4);
    for _ in 0..50 {
        let cand = StrategyPair::new(s.special_unitary(2), s.special_unitary(2)).unwrap();
        let w = nonexistence_witness(&g, &cand)
            .unwrap()
            .expect("no pure equilibrium");
        assert!((w.replay(&g, &cand).unwrap() - w.gain).abs() < 1e-10);
        let r = verify_equilibrium(&g, &cand, &quick(1)).unwrap();
        assert_eq!(r.status, EquilibriumStatus::Refuted);
        let w = r.witness.unwrap();
        assert!((w.replay(&g, &cand).unwrap() - w.gain).abs() < 1e-10);
    }
}

#[test]
fn refutation_does_not_depend_on_probe_count() {
    let g = pd(FRAC_PI_2);
    let cand = StrategyPair::new(cooperate(), cooperate()).unwrap();
    let mut statuses = Vec::new();
    for probes in [1, 8, 64, 512] {
        let cfg = SolverConfig {
            probe_count: probes,
            ..quick(3)
        };
        statuses.push(verify_equilibrium(&g, &cand, &cfg).unwrap().status);
    }
    assert!(statuses.iter().all(|&st| st == EquilibriumStatus::Refuted));
}

#[test]
fn results_are_deterministic_for_a_seed() {
    let g = pd(0.7);
    let opp = defect::<f64>();
    let a = best_response(&g, Player::Bob, &opp, &quick(9)).unwrap();
    let b = best_response(&g, Player::Bob, &opp, &quick(9)).unwrap();
    assert_eq!(a.strategy.matrix(), b.strategy.matrix());
    assert_eq!(a.value, b.value);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let c = pool.install(|| best_response(&g, Player::Bob, &opp, &quick(9)).unwrap());
    assert_eq!(a.strategy.matrix(), c.strategy.matrix());
}

#[test]
fn finite_difference_steps_agree() {
    let g = pd(0.9);
    let fam = FullSpecialUnitary::<f64>::new(2);
    let opp = cooperate::<f64>();
    let f = |x: &[f64]| g.payoff_of(Player::Bob, &opp, &fam.strategy(x)?);
    let mut s = HaarSampler::new(12);
    let mut checked = 0;
    for _ in 0..50 {
        let x = fam.random_start(&mut s);
        let coarse = finite_difference_gradient(&f, &x, 1e-5).unwrap();
        let fine = finite_difference_gradient(&f, &x, 1e-6).unwrap();
        let norm = coarse.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let diff = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(
            diff / norm < 1e-3,
            "relative gradient mismatch {}",
            diff / norm
        );
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn search_finds_classical_defection() {
    let g = pd(0.0);
    let runs = equilibrium_search(&g, &quick(2)).unwrap();
    assert_eq!(runs.len(), 4);
    let certified: Vec<_> = runs
        .iter()
        .filter(|r| r.report.status == EquilibriumStatus::CertifiedEpsilonEquilibrium)
        .collect();
    assert!(!certified.is_empty());
    for r in certified {
        let (a, b) = r.report.payoffs;
        assert!((a - 1.0).abs() < 1e-6 && (b - 1.0).abs() < 1e-6);
    }
}

#[test]
fn search_certifies_nothing_at_maximal_entanglement() {
    let g = pd(FRAC_PI_2);
    let runs = equilibrium_search(&g, &quick(5)).unwrap();
    assert!(runs
        .iter()
        .all(|r| r.report.status == EquilibriumStatus::Refuted));
}

#[test]
fn zero_game_certifies_every_candidate() {
    let g = GameInstance::from_spec(
        PayoffBimatrix::<f64>::two_by_two(0.0, 0.0, 0.0, 0.0),
        &GateSpec::N2Gamma(FRAC_PI_2),
    )
    .unwrap();
    let runs = equilibrium_search(&g, &quick(6)).unwrap();
    assert!(runs
        .iter()
        .all(|r| r.report.status == EquilibriumStatus::CertifiedEpsilonEquilibrium));
    assert!(nonexistence_witness(&g, &StrategyPair::identity(2))
        .unwrap()
        .is_none());
}

#[test]
fn intermediate_entanglement_dynamics_terminate_in_a_cycle() {
    let g = pd(0.9);
    let cfg = SolverConfig {
        restarts: 1,
        ..quick(1)
    };
    let runs = equilibrium_search(&g, &cfg).unwrap();
    assert_eq!(runs[0].termination, Termination::Cycle);
    assert!(runs[0].rounds < cfg.max_iters);
}
