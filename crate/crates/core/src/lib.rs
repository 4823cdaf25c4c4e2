//! Numerical engine for two-player, N-strategy quantum games in the
//! Eisert-Lewenstein-Wilkens scheme.
//!
//! Strategies are special unitaries acting on an entangled initial state
//! `J |C C>`. The crate computes payoffs, diagnoses the entanglement of the
//! initial state, builds the stability subgroup and counterstrategies of a
//! maximally entangled state, and certifies or refutes pure Nash equilibria.
//!
//! Everything is generic over the real scalar ([`Real`]); the aliases at the
//! crate root fix it to `f64`.

pub mod chiral;
pub mod entangle;
mod error;
pub mod game;
pub mod matcore;
pub mod nash;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{cis, Real, C};

pub type ComplexMatrix = matcore::ComplexMatrix<f64>;
pub type UnitaryMatrix = matcore::UnitaryMatrix<f64>;
pub type StateVector = game::StateVector<f64>;
pub type OutcomeDistribution = game::OutcomeDistribution<f64>;
pub type PayoffBimatrix = game::PayoffBimatrix<f64>;
pub type GateSpec = game::GateSpec<f64>;
pub type GateOperator = game::GateOperator<f64>;
pub type GameInstance = game::GameInstance<f64>;
pub type FMatrix = entangle::FMatrix<f64>;
pub type DensityMatrix = entangle::DensityMatrix<f64>;
pub type StrategyPair = chiral::StrategyPair<f64>;
pub type CosetDecomposition = chiral::CosetDecomposition<f64>;
pub type BestResponseResult = nash::BestResponseResult<f64>;
pub type EquilibriumReport = nash::EquilibriumReport<f64>;
pub type Witness = nash::Witness<f64>;
pub type SearchRun = nash::SearchRun<f64>;

/// Engine version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
