//! Serialisable report records and the JSON / CSV writers.

use elw_core::chiral::StrategyPair;
use elw_core::game::Player;
use elw_core::matcore::UnitaryMatrix;
use elw_core::nash::{EquilibriumReport, EquilibriumStatus, Termination, Witness};
use serde::Serialize;

use crate::config::ExperimentConfig;

/// Engine identification embedded in every report.
pub fn engine_version() -> String {
    format!("elw-core {}", elw_core::VERSION)
}

/// Fixed 17-significant-digit rendering used in CSV cells.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a, R: Serialize> {
    pub engine: String,
    pub command: &'a str,
    pub config: &'a ExperimentConfig,
    pub result: &'a R,
}

#[derive(Debug, Serialize)]
pub struct Provenance<'a> {
    pub engine: String,
    pub command: &'a str,
    pub config: &'a ExperimentConfig,
}

/// A CSV table; rows are already rendered.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, csv::Error> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}

pub fn interleaved(u: &UnitaryMatrix<f64>) -> Vec<f64> {
    u.matrix().to_interleaved()
}

pub fn side_name(p: Player) -> &'static str {
    match p {
        Player::Alice => "alice",
        Player::Bob => "bob",
    }
}

pub fn status_name(s: EquilibriumStatus) -> &'static str {
    match s {
        EquilibriumStatus::CertifiedEpsilonEquilibrium => "certified",
        EquilibriumStatus::Refuted => "refuted",
        EquilibriumStatus::Inconclusive => "inconclusive",
    }
}

pub fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::FixedPoint => "fixed_point",
        Termination::Cycle => "cycle",
        Termination::MaxIterations => "max_iterations",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub alice: Vec<f64>,
    pub bob: Vec<f64>,
}

impl From<&StrategyPair<f64>> for PairRecord {
    fn from(p: &StrategyPair<f64>) -> Self {
        Self {
            alice: interleaved(&p.u_a),
            bob: interleaved(&p.u_b),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub side: &'static str,
    pub gain: f64,
    /// Gain recomputed through the game engine.
    pub replay_gain: f64,
    pub deviation: Vec<f64>,
}

impl WitnessRecord {
    pub fn new(w: &Witness<f64>, replay_gain: f64) -> Self {
        Self {
            side: side_name(w.side),
            gain: w.gain,
            replay_gain,
            deviation: interleaved(&w.deviation),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumRecord {
    pub status: &'static str,
    pub candidate: PairRecord,
    pub payoffs: [f64; 2],
    pub witness: Option<WitnessRecord>,
    pub probes_used: usize,
    pub epsilon: f64,
}

impl EquilibriumRecord {
    pub fn new(r: &EquilibriumReport<f64>, replay_gain: Option<f64>) -> Self {
        Self {
            status: status_name(r.status),
            candidate: PairRecord::from(&r.candidate),
            payoffs: [r.payoffs.0, r.payoffs.1],
            witness: r
                .witness
                .as_ref()
                .zip(replay_gain)
                .map(|(w, g)| WitnessRecord::new(w, g)),
            probes_used: r.probes_used,
            epsilon: r.epsilon,
        }
    }

    /// `status, alice_payoff, bob_payoff, witness_side, witness_gain` cells.
    pub fn cells(&self) -> Vec<String> {
        let (side, gain) = match &self.witness {
            Some(w) => (w.side.to_string(), fmt_f64(w.gain)),
            None => (String::new(), String::new()),
        };
        vec![
            self.status.to_string(),
            fmt_f64(self.payoffs[0]),
            fmt_f64(self.payoffs[1]),
            side,
            gain,
        ]
    }
}
