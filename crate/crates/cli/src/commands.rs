//! The experiment commands.

use elw_core::chiral::{counterstrategy, StrategyPair};
use elw_core::entangle::{entanglement_entropy, f_matrix_of};
use elw_core::game::{GameInstance, GateSpec};
use elw_core::matcore::{derive_seed, HaarSampler};
use elw_core::nash::{equilibrium_search, nonexistence_witness, verify_equilibrium};
use serde::Serialize;

use crate::config::{GateConfig, LoadedConfig};
use crate::report::{
    fmt_f64, interleaved, termination_name, EquilibriumRecord, PairRecord, Table, WitnessRecord,
};
use crate::CliError;

const DEMO_STREAM: u64 = 0x4445_4d4f;
/// Largest allowed disagreement between a reported gain and its replay.
const REPLAY_TOLERANCE: f64 = 1e-9;
/// Agreement required of a counterstrategy's outcome distribution.
const COUNTER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Payoffs,
    SweepEntropy,
    Counter,
    Verify,
    Search,
    DemoTheorem,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Payoffs,
        Command::SweepEntropy,
        Command::Counter,
        Command::Verify,
        Command::Search,
        Command::DemoTheorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Payoffs => "payoffs",
            Command::SweepEntropy => "sweep-entropy",
            Command::Counter => "counter",
            Command::Verify => "verify",
            Command::Search => "search",
            Command::DemoTheorem => "demo-theorem",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Payoffs(Vec<PayoffRow>),
    Sweep(SweepResult),
    Counter(CounterResult),
    Verify(Vec<EquilibriumRecord>),
    Search(Vec<SearchRecord>),
    Demo(DemoResult),
}

impl Outcome {
    pub fn table(&self) -> Table {
        match self {
            Outcome::Payoffs(rows) => {
                let cells = rows.first().map_or(0, |r| r.outcome.len());
                let mut head = vec![
                    "index".to_string(),
                    "alice_payoff".into(),
                    "bob_payoff".into(),
                ];
                let n = (cells as f64).sqrt().round() as usize;
                head.extend((0..cells).map(|k| format!("p_{}_{}", k / n.max(1), k % n.max(1))));
                let mut t = Table {
                    header: head,
                    rows: Vec::new(),
                };
                for r in rows {
                    let mut row = vec![
                        r.index.to_string(),
                        fmt_f64(r.payoffs[0]),
                        fmt_f64(r.payoffs[1]),
                    ];
                    row.extend(r.outcome.iter().map(|&p| fmt_f64(p)));
                    t.rows.push(row);
                }
                t
            }
            Outcome::Sweep(s) => {
                let mut t = Table::new(&["gamma", "entropy", "max_ent_residual"]);
                for r in &s.rows {
                    t.rows.push(vec![
                        fmt_f64(r.gamma),
                        fmt_f64(r.entropy),
                        fmt_f64(r.max_ent_residual),
                    ]);
                }
                t
            }
            Outcome::Counter(c) => {
                let mut t = Table::new(&["i", "j", "w_re", "w_im", "p_counter", "p_target"]);
                let n = c.n;
                for k in 0..n * n {
                    t.rows.push(vec![
                        (k / n).to_string(),
                        (k % n).to_string(),
                        fmt_f64(c.w[2 * k]),
                        fmt_f64(c.w[2 * k + 1]),
                        fmt_f64(c.outcome_counter[k]),
                        fmt_f64(c.outcome_target[k]),
                    ]);
                }
                t
            }
            Outcome::Verify(rs) => {
                let mut t = Table::new(&[
                    "index",
                    "status",
                    "alice_payoff",
                    "bob_payoff",
                    "witness_side",
                    "witness_gain",
                ]);
                for (i, r) in rs.iter().enumerate() {
                    let mut row = vec![i.to_string()];
                    row.extend(r.cells());
                    t.rows.push(row);
                }
                t
            }
            Outcome::Search(rs) => {
                let mut t = Table::new(&[
                    "restart",
                    "termination",
                    "rounds",
                    "status",
                    "alice_payoff",
                    "bob_payoff",
                    "witness_side",
                    "witness_gain",
                ]);
                for r in rs {
                    let mut row = vec![
                        r.restart.to_string(),
                        r.termination.to_string(),
                        r.rounds.to_string(),
                    ];
                    row.extend(r.report.cells());
                    t.rows.push(row);
                }
                t
            }
            Outcome::Demo(d) => {
                let mut t = Table::new(&[
                    "index",
                    "kind",
                    "status",
                    "alice_payoff",
                    "bob_payoff",
                    "witness_side",
                    "witness_gain",
                    "replay_gain",
                ]);
                for r in &d.rows {
                    let (side, gain, replay) = match &r.witness {
                        Some(w) => (w.side.to_string(), fmt_f64(w.gain), fmt_f64(w.replay_gain)),
                        None => Default::default(),
                    };
                    t.rows.push(vec![
                        r.index.to_string(),
                        r.kind.clone(),
                        r.status.to_string(),
                        fmt_f64(r.payoffs[0]),
                        fmt_f64(r.payoffs[1]),
                        side,
                        gain,
                        replay,
                    ]);
                }
                t
            }
        }
    }

    /// Human-readable summary for stderr.
    pub fn summary(&self) -> Option<&str> {
        match self {
            Outcome::Demo(d) => Some(&d.summary),
            _ => None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PayoffRow {
    pub index: usize,
    pub pair: PairRecord,
    pub payoffs: [f64; 2],
    /// Outcome probabilities, row-major.
    pub outcome: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub gamma: f64,
    pub entropy: f64,
    pub max_ent_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Row with the smallest maximal-entanglement residual (first on ties).
    pub min_residual_index: usize,
}

#[derive(Debug, Serialize)]
pub struct CounterResult {
    pub n: usize,
    pub w: Vec<f64>,
    pub outcome_counter: Vec<f64>,
    pub outcome_target: Vec<f64>,
    pub max_outcome_diff: f64,
    pub state_distance: f64,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct SearchRecord {
    pub restart: usize,
    pub termination: &'static str,
    pub rounds: usize,
    pub report: EquilibriumRecord,
}

#[derive(Debug, Serialize)]
pub struct DemoRow {
    pub index: usize,
    pub kind: String,
    pub status: &'static str,
    pub candidate: PairRecord,
    pub payoffs: [f64; 2],
    pub witness: Option<WitnessRecord>,
}

#[derive(Debug, Serialize)]
pub struct DemoResult {
    pub candidates: usize,
    pub refuted: usize,
    pub trivially_optimal: usize,
    pub min_witness_gain: Option<f64>,
    pub rows: Vec<DemoRow>,
    pub summary: String,
}

pub fn run(cmd: Command, cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::Payoffs => payoffs(cfg),
        Command::SweepEntropy => sweep(cfg),
        Command::Counter => counter(cfg),
        Command::Verify => verify(cfg),
        Command::Search => search(cfg),
        Command::DemoTheorem => demo(cfg),
    }
}

fn candidate_pairs(cfg: &LoadedConfig) -> Result<Vec<StrategyPair<f64>>, CliError> {
    if cfg.config.strategies.is_empty() {
        return Err(cfg.error_at(&[], "missing strategies block"));
    }
    cfg.config
        .strategies
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let at: Vec<&str> = std::iter::once("strategies")
                .chain(std::iter::repeat_n("{", i + 1))
                .collect();
            let (a, b) = cfg.pair(p, &at)?;
            Ok(StrategyPair::new(a, b)?)
        })
        .collect()
}

fn payoffs(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let pairs = candidate_pairs(cfg)?;
    let rows = pairs
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let dist = game.outcome(&p.u_a, &p.u_b)?;
            let (a, b) = game.payoffs_of(&p.u_a, &p.u_b)?;
            Ok(PayoffRow {
                index,
                pair: PairRecord::from(p),
                payoffs: [a, b],
                outcome: dist.probs().to_vec(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Outcome::Payoffs(rows))
}

fn sweep(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let values = cfg.sweep_values()?;
    let payoffs = cfg.payoffs()?;
    let n = cfg.n();
    let spec_at = |t: f64| -> Result<GateSpec<f64>, CliError> {
        match &cfg.config.game.gate {
            GateConfig::N2Gamma { .. } if n == 2 => Ok(GateSpec::N2Gamma(t)),
            GateConfig::Cartan { gammas } => Ok(GateSpec::CartanParams {
                n,
                gammas: gammas.iter().map(|g| g * t).collect(),
            }),
            _ => Err(cfg.error_at(
                &["game", "gate"],
                "sweep-entropy needs an n2_gamma gate, or a cartan gate whose parameters are scaled by the sweep",
            )),
        }
    };
    let mut rows = Vec::with_capacity(values.len());
    for t in values {
        let game = GameInstance::from_spec(payoffs.clone(), &spec_at(t)?)
            .map_err(|e| cfg.error_at(&["sweep"], e.to_string()))?;
        let psi = game.initial_state();
        rows.push(SweepRow {
            gamma: t,
            entropy: entanglement_entropy(psi)?,
            max_ent_residual: f_matrix_of(psi).residual(),
        });
    }
    let min_residual_index = rows.iter().enumerate().fold(0, |best, (i, r)| {
        if r.max_ent_residual < rows[best].max_ent_residual {
            i
        } else {
            best
        }
    });
    Ok(Outcome::Sweep(SweepResult {
        rows,
        min_residual_index,
    }))
}

fn counter(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let Some(c) = &cfg.config.counter else {
        return Err(cfg.error_at(&[], "missing counter block"));
    };
    let v = cfg.strategy(&c.v, &["counter", "v"])?;
    let (t1, t2) = cfg.pair(&c.target, &["counter", "target"])?;
    let target = StrategyPair::new(t1, t2)?;
    let f = f_matrix_of(game.initial_state());
    f.require_maximally_entangled()?;
    let w = counterstrategy(&v, &target, &f)?;
    let counter = game.outcome(&v, &w)?;
    let wanted = game.outcome(&target.u_a, &target.u_b)?;
    let max_outcome_diff = counter.max_abs_diff(&wanted);
    let state_distance = game
        .final_state(&v, &w)?
        .phase_distance(&game.final_state(&target.u_a, &target.u_b)?);
    Ok(Outcome::Counter(CounterResult {
        n: game.n(),
        w: interleaved(&w),
        outcome_counter: counter.probs().to_vec(),
        outcome_target: wanted.probs().to_vec(),
        max_outcome_diff,
        state_distance,
        verified: max_outcome_diff <= COUNTER_TOLERANCE,
    }))
}

fn record(
    game: &GameInstance<f64>,
    r: &elw_core::nash::EquilibriumReport<f64>,
) -> Result<EquilibriumRecord, CliError> {
    let replay = r
        .witness
        .as_ref()
        .map(|w| w.replay(game, &r.candidate))
        .transpose()?;
    Ok(EquilibriumRecord::new(r, replay))
}

fn verify(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let solver = cfg.solver()?;
    let pairs = candidate_pairs(cfg)?;
    let reports = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let r = verify_equilibrium(&game, p, &solver.reseeded(i as u64))?;
            record(&game, &r)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Outcome::Verify(reports))
}

fn search(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let solver = cfg.solver()?;
    let runs = equilibrium_search(&game, &solver)?;
    let records = runs
        .iter()
        .map(|r| {
            Ok(SearchRecord {
                restart: r.restart,
                termination: termination_name(r.termination),
                rounds: r.rounds,
                report: record(&game, &r.report)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Outcome::Search(records))
}

fn demo(cfg: &LoadedConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let solver = cfg.solver()?;
    let n = game.n();
    let mut candidates: Vec<(String, StrategyPair<f64>)> = Vec::new();
    let mut sampler = HaarSampler::new(derive_seed(solver.seed, DEMO_STREAM));
    for _ in 0..cfg.config.demo.candidates {
        let pair = StrategyPair::new(sampler.special_unitary(n), sampler.special_unitary(n))?;
        candidates.push(("haar".into(), pair));
    }
    if cfg.config.demo.include_steering {
        for i in 0..n {
            for j in 0..n {
                if let Some((a, b)) = game.steering_pair(i, j)? {
                    candidates.push((format!("steer-{i}-{j}"), StrategyPair::new(a, b)?));
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(cfg.error_at(&["demo"], "no candidates to test"));
    }

    let mut rows = Vec::with_capacity(candidates.len());
    for (index, (kind, pair)) in candidates.into_iter().enumerate() {
        let (a, b) = game.payoffs_of(&pair.u_a, &pair.u_b)?;
        let witness = nonexistence_witness(&game, &pair)?;
        let witness = match witness {
            Some(w) => {
                let replay = w.replay(&game, &pair)?;
                if (replay - w.gain).abs() > REPLAY_TOLERANCE || replay <= 0.0 {
                    return Err(CliError::Engine(elw_core::Error::NumericalIntegrity(
                        format!(
                            "candidate {index}: witness gain {} replays as {replay}",
                            w.gain
                        ),
                    )));
                }
                Some(WitnessRecord::new(&w, replay))
            }
            None => None,
        };
        rows.push(DemoRow {
            index,
            kind,
            status: if witness.is_some() {
                "refuted"
            } else {
                "trivially_optimal"
            },
            candidate: PairRecord::from(&pair),
            payoffs: [a, b],
            witness,
        });
    }
    let refuted = rows.iter().filter(|r| r.witness.is_some()).count();
    let trivially_optimal = rows.len() - refuted;
    let min_witness_gain = rows
        .iter()
        .filter_map(|r| r.witness.as_ref().map(|w| w.replay_gain))
        .reduce(f64::min);
    let summary = format!(
        "{refuted}/{} candidates refuted, {trivially_optimal} trivially optimal; minimum witness gain {}",
        rows.len(),
        min_witness_gain.map_or_else(|| "n/a".to_string(), fmt_f64),
    );
    Ok(Outcome::Demo(DemoResult {
        candidates: rows.len(),
        refuted,
        trivially_optimal,
        min_witness_gain,
        rows,
        summary,
    }))
}
