//! Best responses, equilibrium certification and refutation, and
//! best-response dynamics.
//!
//! At maximal entanglement the best response is analytic: the responder
//! picks the cell of their table with the largest entry, takes a strategy
//! pair steering the game onto that cell, and plays the counterstrategy
//! that reproduces the pair's final state against the fixed opponent. Away
//! from maximal entanglement a multi-start gradient ascent over su(n) is
//! used instead.

mod ascent;
mod search;

pub use ascent::{
    ascend, finite_difference_gradient, multi_start, AscentRun, FullSpecialUnitary, StrategyFamily,
    FD_STEP,
};
pub use search::{equilibrium_search, SearchRun, Termination};

use crate::chiral::{alice_counterstrategy, counterstrategy, StrategyPair};
use crate::entangle::{f_matrix_of, FMatrix};
use crate::error::{Error, Result};
use crate::game::{GameInstance, Player};
use crate::matcore::{derive_seed, HaarSampler, RandomSeed, UnitaryMatrix};
use crate::scalar::Real;

/// Slack on "already at the maximum payoff entry".
pub const TRIVIAL_SLACK: f64 = 1e-9;

const PROBE_STREAM: u64 = 0x5052_4f42;

/// Solver knobs shared by best responses, verification and search.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tolerance: f64,
    /// Epsilon-equilibrium slack.
    pub epsilon: f64,
    pub probe_count: usize,
    pub seed: RandomSeed,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 500,
            step_tolerance: 1e-9,
            epsilon: 1e-6,
            probe_count: 256,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 || self.probe_count == 0 {
            return Err(Error::InvalidParameter(
                "restarts, max_iters and probe_count must be positive".into(),
            ));
        }
        if !(self.step_tolerance > 0.0 && self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(
                "step tolerance and epsilon must be positive".into(),
            ));
        }
        if self.epsilon <= self.step_tolerance {
            return Err(Error::InvalidParameter(
                "epsilon must exceed the step tolerance".into(),
            ));
        }
        Ok(())
    }

    /// Same config with an independent child seed.
    pub fn reseeded(&self, index: u64) -> Self {
        Self {
            seed: derive_seed(self.seed, index),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseMethod {
    AnalyticCounterstrategy,
    NumericAscent,
}

#[derive(Debug, Clone)]
pub struct BestResponseResult<T: Real> {
    pub strategy: UnitaryMatrix<T>,
    pub value: T,
    pub method: ResponseMethod,
    pub iterations: usize,
    pub converged: bool,
    /// Set when the analytic branch applied but no maximal cell was
    /// reachable, so the numeric branch ran instead.
    pub analytic_fallback: bool,
}

fn place<'a, T: Real>(
    side: Player,
    own: &'a UnitaryMatrix<T>,
    opponent: &'a UnitaryMatrix<T>,
) -> (&'a UnitaryMatrix<T>, &'a UnitaryMatrix<T>) {
    match side {
        Player::Alice => (own, opponent),
        Player::Bob => (opponent, own),
    }
}

/// Analytic best response at maximal entanglement; `None` when no cell with
/// the responder's maximal entry is reachable.
pub fn analytic_best_response<T: Real>(
    game: &GameInstance<T>,
    side: Player,
    opponent: &UnitaryMatrix<T>,
    f: &FMatrix<T>,
) -> Result<Option<(UnitaryMatrix<T>, T)>> {
    f.require_maximally_entangled()?;
    let n = game.n();
    let max = game.payoffs().max_entry(side);
    for i in 0..n {
        for j in 0..n {
            if game.payoffs().entry(side, i, j) != max {
                continue;
            }
            let Some((u1, u2)) = game.steering_pair(i, j)? else {
                continue;
            };
            let target = StrategyPair::new(u1, u2)?;
            let strategy = match side {
                Player::Bob => counterstrategy(opponent, &target, f)?,
                Player::Alice => alice_counterstrategy(opponent, &target, f)?,
            };
            let (a, b) = place(side, &strategy, opponent);
            let value = game.payoff_of(side, a, b)?;
            return Ok(Some((strategy, value)));
        }
    }
    Ok(None)
}

/// Numeric best response over an arbitrary strategy family.
pub fn numeric_best_response<T: Real>(
    game: &GameInstance<T>,
    side: Player,
    opponent: &UnitaryMatrix<T>,
    cfg: &SolverConfig,
    family: &dyn StrategyFamily<T>,
) -> Result<BestResponseResult<T>> {
    cfg.validate()?;
    if family.n() != game.n() {
        return Err(Error::Dimension(format!(
            "strategy family for n = {} in a game with n = {}",
            family.n(),
            game.n()
        )));
    }
    let objective = |u: &UnitaryMatrix<T>| {
        let (a, b) = place(side, u, opponent);
        game.payoff_of(side, a, b)
    };
    let (strategy, run, any_converged) = multi_start(family, objective, cfg)?;
    let (a, b) = place(side, &strategy, opponent);
    let value = game.payoff_of(side, a, b)?;
    Ok(BestResponseResult {
        strategy,
        value,
        method: ResponseMethod::NumericAscent,
        iterations: run.iterations,
        converged: any_converged,
        analytic_fallback: false,
    })
}

/// Best response of `side` to the fixed `opponent` strategy.
pub fn best_response<T: Real>(
    game: &GameInstance<T>,
    side: Player,
    opponent: &UnitaryMatrix<T>,
    cfg: &SolverConfig,
) -> Result<BestResponseResult<T>> {
    if opponent.dim() != game.n() {
        return Err(Error::Dimension(format!(
            "opponent strategy of dimension {} for n = {}",
            opponent.dim(),
            game.n()
        )));
    }
    let f = f_matrix_of(game.initial_state());
    if f.is_maximally_entangled() {
        if let Some((strategy, value)) = analytic_best_response(game, side, opponent, &f)? {
            return Ok(BestResponseResult {
                strategy,
                value,
                method: ResponseMethod::AnalyticCounterstrategy,
                iterations: 0,
                converged: true,
                analytic_fallback: false,
            });
        }
        let mut r = numeric_best_response(
            game,
            side,
            opponent,
            cfg,
            &FullSpecialUnitary::new(game.n()),
        )?;
        r.analytic_fallback = true;
        return Ok(r);
    }
    numeric_best_response(
        game,
        side,
        opponent,
        cfg,
        &FullSpecialUnitary::new(game.n()),
    )
}

/// A profitable unilateral deviation.
#[derive(Debug, Clone)]
pub struct Witness<T: Real> {
    pub side: Player,
    pub deviation: UnitaryMatrix<T>,
    pub gain: T,
}

impl<T: Real> Witness<T> {
    /// Recomputes the gain of this deviation against `candidate` through the
    /// game engine.
    pub fn replay(&self, game: &GameInstance<T>, candidate: &StrategyPair<T>) -> Result<T> {
        let before = game.payoff_of(self.side, &candidate.u_a, &candidate.u_b)?;
        let after = match self.side {
            Player::Alice => game.payoff_of(self.side, &self.deviation, &candidate.u_b)?,
            Player::Bob => game.payoff_of(self.side, &candidate.u_a, &self.deviation)?,
        };
        Ok(after - before)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumStatus {
    CertifiedEpsilonEquilibrium,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport<T: Real> {
    pub status: EquilibriumStatus,
    pub candidate: StrategyPair<T>,
    /// Expected payoffs `($_A, $_B)` at the candidate.
    pub payoffs: (T, T),
    pub witness: Option<Witness<T>>,
    pub probes_used: usize,
    pub epsilon: f64,
}

fn current_payoff<T: Real>(payoffs: (T, T), side: Player) -> T {
    match side {
        Player::Alice => payoffs.0,
        Player::Bob => payoffs.1,
    }
}

fn opponent_of<T: Real>(candidate: &StrategyPair<T>, side: Player) -> &UnitaryMatrix<T> {
    match side {
        Player::Alice => &candidate.u_b,
        Player::Bob => &candidate.u_a,
    }
}

/// Certifies or refutes `candidate` as an epsilon-equilibrium.
///
/// Each side's best response is checked first (Bob, then Alice). If neither
/// gains more than epsilon, `probe_count` Haar-random deviations per side and
/// the classical steering strategies are tried as well.
pub fn verify_equilibrium<T: Real>(
    game: &GameInstance<T>,
    candidate: &StrategyPair<T>,
    cfg: &SolverConfig,
) -> Result<EquilibriumReport<T>> {
    cfg.validate()?;
    if candidate.dim() != game.n() {
        return Err(Error::Dimension(format!(
            "candidate of dimension {} for n = {}",
            candidate.dim(),
            game.n()
        )));
    }
    let eps = T::lit(cfg.epsilon);
    let payoffs = game.payoffs_of(&candidate.u_a, &candidate.u_b)?;
    let refuted = |witness: Witness<T>, probes_used| EquilibriumReport {
        status: EquilibriumStatus::Refuted,
        candidate: candidate.clone(),
        payoffs,
        witness: Some(witness),
        probes_used,
        epsilon: cfg.epsilon,
    };

    let mut unconverged = false;
    for side in [Player::Bob, Player::Alice] {
        let br = best_response(game, side, opponent_of(candidate, side), cfg)?;
        let gain = br.value - current_payoff(payoffs, side);
        if gain > eps {
            return Ok(refuted(
                Witness {
                    side,
                    deviation: br.strategy,
                    gain,
                },
                0,
            ));
        }
        if br.method == ResponseMethod::NumericAscent && !br.converged {
            unconverged = true;
        }
    }

    let n = game.n();
    let mut deviations: Vec<UnitaryMatrix<T>> = vec![UnitaryMatrix::identity(n)];
    for i in 0..n {
        for j in 0..n {
            if let Some((a, b)) = game.steering_pair(i, j)? {
                deviations.push(a);
                deviations.push(b);
            }
        }
    }
    let mut sampler = HaarSampler::new(derive_seed(cfg.seed, PROBE_STREAM));
    deviations.extend((0..cfg.probe_count).map(|_| sampler.special_unitary(n)));

    let mut probes_used = 0;
    for side in [Player::Bob, Player::Alice] {
        let before = current_payoff(payoffs, side);
        for d in &deviations {
            probes_used += 1;
            let (a, b) = place(side, d, opponent_of(candidate, side));
            let gain = game.payoff_of(side, a, b)? - before;
            if gain > eps {
                return Ok(refuted(
                    Witness {
                        side,
                        deviation: d.clone(),
                        gain,
                    },
                    probes_used,
                ));
            }
        }
    }

    Ok(EquilibriumReport {
        status: if unconverged {
            EquilibriumStatus::Inconclusive
        } else {
            EquilibriumStatus::CertifiedEpsilonEquilibrium
        },
        candidate: candidate.clone(),
        payoffs,
        witness: None,
        probes_used,
        epsilon: cfg.epsilon,
    })
}

/// Constructive refutation of a pure candidate at maximal entanglement.
///
/// Returns Bob's analytic deviation if it gains, otherwise Alice's; `None`
/// exactly when both already receive the maximum entry of their own table.
pub fn nonexistence_witness<T: Real>(
    game: &GameInstance<T>,
    candidate: &StrategyPair<T>,
) -> Result<Option<Witness<T>>> {
    let f = f_matrix_of(game.initial_state());
    if !f.is_maximally_entangled() {
        return Err(Error::Precondition(format!(
            "initial state is not maximally entangled (residual {:e}); use verify_equilibrium",
            f.residual().to_f64_lossy()
        )));
    }
    let payoffs = game.payoffs_of(&candidate.u_a, &candidate.u_b)?;
    for side in [Player::Bob, Player::Alice] {
        let (deviation, value) =
            analytic_best_response(game, side, opponent_of(candidate, side), &f)?.ok_or_else(
                || {
                    Error::Precondition(format!(
                    "no cell with {side:?}'s maximal payoff is reachable; use verify_equilibrium"
                ))
                },
            )?;
        let gain = value - current_payoff(payoffs, side);
        if gain > T::lit(TRIVIAL_SLACK) {
            return Ok(Some(Witness {
                side,
                deviation,
                gain,
            }));
        }
    }
    Ok(None)
}
