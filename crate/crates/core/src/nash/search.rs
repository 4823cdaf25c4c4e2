//! Best-response dynamics from random starting pairs.

use rayon::prelude::*;

use super::{best_response, verify_equilibrium, EquilibriumReport, SolverConfig};
use crate::chiral::StrategyPair;
use crate::error::Result;
use crate::game::{GameInstance, Player};
use crate::matcore::{derive_seed, HaarSampler};
use crate::scalar::Real;

/// Pairs closer than this (max norm, modulo phase per member), or with final
/// states this close modulo phase, count as a recurrence.
pub const CYCLE_TOLERANCE: f64 = 1e-6;

const SEARCH_STREAM: u64 = 0x5345_4152;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Neither side could gain more than epsilon.
    FixedPoint,
    /// The dynamics revisited an earlier pair.
    Cycle,
    MaxIterations,
}

/// One run of best-response dynamics and the report on the pair it ended at.
#[derive(Debug, Clone)]
pub struct SearchRun<T: Real> {
    pub restart: usize,
    pub termination: Termination,
    /// Completed rounds (one round = Bob responds, then Alice responds).
    pub rounds: usize,
    pub report: EquilibriumReport<T>,
}

/// Runs `cfg.restarts` independent best-response dynamics and reports on
/// each end point. Output order is the restart order.
pub fn equilibrium_search<T: Real>(
    game: &GameInstance<T>,
    cfg: &SolverConfig,
) -> Result<Vec<SearchRun<T>>> {
    cfg.validate()?;
    let base = derive_seed(cfg.seed, SEARCH_STREAM);
    (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_dynamics(game, cfg, r, derive_seed(base, r as u64)))
        .collect()
}

fn run_dynamics<T: Real>(
    game: &GameInstance<T>,
    cfg: &SolverConfig,
    restart: usize,
    seed: u64,
) -> Result<SearchRun<T>> {
    let n = game.n();
    let eps = T::lit(cfg.epsilon);
    let mut sampler = HaarSampler::new(seed);
    let mut pair = StrategyPair::new(sampler.special_unitary(n), sampler.special_unitary(n))?;
    let mut history = vec![(pair.clone(), game.final_state(&pair.u_a, &pair.u_b)?)];
    let mut termination = Termination::MaxIterations;
    let mut rounds = 0;
    let mut call = 0u64;

    while rounds < cfg.max_iters {
        rounds += 1;
        let mut changed = false;
        for side in [Player::Bob, Player::Alice] {
            let sub = cfg.reseeded(derive_seed(seed, call));
            call += 1;
            let (opponent, current) = match side {
                Player::Bob => (&pair.u_a, game.payoff_of(side, &pair.u_a, &pair.u_b)?),
                Player::Alice => (&pair.u_b, game.payoff_of(side, &pair.u_a, &pair.u_b)?),
            };
            let br = best_response(game, side, opponent, &sub)?;
            if br.value - current > eps {
                match side {
                    Player::Bob => pair.u_b = br.strategy,
                    Player::Alice => pair.u_a = br.strategy,
                }
                changed = true;
            }
        }
        if !changed {
            termination = Termination::FixedPoint;
            break;
        }
        let tol = T::lit(CYCLE_TOLERANCE);
        let state = game.final_state(&pair.u_a, &pair.u_b)?;
        if history
            .iter()
            .any(|(p, s)| p.phase_distance(&pair) < tol || s.phase_distance(&state) < tol)
        {
            termination = Termination::Cycle;
            break;
        }
        history.push((pair.clone(), state));
    }

    let report = verify_equilibrium(game, &pair, &cfg.reseeded(derive_seed(seed, u64::MAX)))?;
    Ok(SearchRun {
        restart,
        termination,
        rounds,
        report,
    })
}
