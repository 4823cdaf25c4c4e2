//! Experiment configuration: JSON in, engine objects out.

use std::path::Path;

use elw_core::game::{GameInstance, GateSpec, PayoffBimatrix};
use elw_core::matcore::{ComplexMatrix, UnitaryMatrix};
use elw_core::nash::SolverConfig;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const PD_PRESET: &str = "pd-3-0-5-1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub game: GameConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strategies: Vec<PairConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter: Option<CounterConfig>,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub demo: DemoConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Row-major `n x n` tables, row = Alice's outcome index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alice: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob: Option<Vec<f64>>,
    pub gate: GateConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateConfig {
    N2Gamma {
        gamma: f64,
    },
    Cartan {
        gammas: Vec<f64>,
    },
    /// `n^2 x n^2` matrix, interleaved re/im, row-major.
    Explicit {
        j: Vec<f64>,
    },
    Householder,
    Bell,
}

/// A strategy: `"I"`, `"C"`, `"D"` or `2 n^2` interleaved reals.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StrategyConfig {
    Named(String),
    Matrix(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    pub alice: StrategyConfig,
    pub bob: StrategyConfig,
}

/// Either explicit `values` or an inclusive grid `start..=end` with `steps` points.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterConfig {
    pub v: StrategyConfig,
    pub target: PairConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tolerance: f64,
    pub epsilon: f64,
    pub probe_count: usize,
    pub seed: u64,
}

impl Default for SolverSection {
    fn default() -> Self {
        let d = SolverConfig::default();
        Self {
            restarts: d.restarts,
            max_iters: d.max_iters,
            step_tolerance: d.step_tolerance,
            epsilon: d.epsilon,
            probe_count: d.probe_count,
            seed: d.seed,
        }
    }
}

impl SolverSection {
    pub fn to_solver(&self) -> SolverConfig {
        SolverConfig {
            restarts: self.restarts,
            max_iters: self.max_iters,
            step_tolerance: self.step_tolerance,
            epsilon: self.epsilon,
            probe_count: self.probe_count,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DemoConfig {
    /// Number of Haar-random candidate pairs.
    pub candidates: usize,
    /// Also test the pairs steering onto each basis outcome.
    pub include_steering: bool,
}

impl Default for DemoConfig {
    fn default() -> Self {
        Self {
            candidates: 100,
            include_steering: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// Parsed config plus the source text, kept for error locations.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    source: String,
}

impl LoadedConfig {
    pub fn parse(source: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig =
            serde_json::from_str(source).map_err(|e| CliError::Config {
                line: Some(e.line()).filter(|&l| l > 0),
                message: e.to_string(),
            })?;
        Ok(Self {
            config,
            source: source.to_owned(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let source = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            line: None,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&source)
    }

    /// A config error located at `path`: each key is searched for after the
    /// previous match. A `"{"` element matches the next object opening, so
    /// `["strategies", "{", "{", "bob"]` points into the second pair.
    pub fn error_at(&self, path: &[&str], message: impl Into<String>) -> CliError {
        let mut from = 0;
        let mut found = None;
        for key in path {
            let needle = if *key == "{" {
                "{".to_string()
            } else {
                format!("\"{key}\"")
            };
            match self.source[from..].find(&needle) {
                Some(i) => {
                    found = Some(from + i);
                    from += i + needle.len();
                }
                None => break,
            }
        }
        CliError::Config {
            line: found.map(|at| self.source[..at].matches('\n').count() + 1),
            message: message.into(),
        }
    }

    pub fn n(&self) -> usize {
        self.config.game.n
    }

    pub fn payoffs(&self) -> Result<PayoffBimatrix<f64>, CliError> {
        let g = &self.config.game;
        match (&g.preset, &g.alice, &g.bob) {
            (Some(p), None, None) if p == PD_PRESET => {
                if g.n != 2 {
                    return Err(self.error_at(
                        &["game", "n"],
                        format!("preset {PD_PRESET} needs n = 2, got {}", g.n),
                    ));
                }
                Ok(PayoffBimatrix::prisoners_dilemma())
            }
            (Some(p), None, None) => {
                Err(self.error_at(&["game", "preset"], format!("unknown preset {p:?}")))
            }
            (None, Some(a), Some(b)) => PayoffBimatrix::new(g.n, a.clone(), b.clone())
                .map_err(|e| self.error_at(&["game", "alice"], e.to_string())),
            _ => Err(self.error_at(
                &["game"],
                "give either a preset or both payoff tables (alice, bob)",
            )),
        }
    }

    pub fn gate_spec(&self) -> Result<GateSpec<f64>, CliError> {
        let n = self.n();
        let spec = match &self.config.game.gate {
            GateConfig::N2Gamma { gamma } => {
                if n != 2 {
                    return Err(self.error_at(
                        &["game", "gate"],
                        format!("n2_gamma gate needs n = 2, got {n}"),
                    ));
                }
                Ok(GateSpec::N2Gamma(*gamma))
            }
            GateConfig::Cartan { gammas } => Ok(GateSpec::CartanParams {
                n,
                gammas: gammas.clone(),
            }),
            GateConfig::Explicit { j } => ComplexMatrix::from_interleaved(n * n, n * n, j)
                .and_then(UnitaryMatrix::new)
                .map(|j| GateSpec::ExplicitUnitary { n, j }),
            GateConfig::Householder => GateSpec::householder_max_entangled(n),
            GateConfig::Bell => GateSpec::bell_basis(n),
        };
        spec.map_err(|e| self.error_at(&["game", "gate"], e.to_string()))
    }

    pub fn game(&self) -> Result<GameInstance<f64>, CliError> {
        let payoffs = self.payoffs()?;
        GameInstance::from_spec(payoffs, &self.gate_spec()?)
            .map_err(|e| self.error_at(&["game", "gate"], e.to_string()))
    }

    /// Resolves a strategy, rephased into SU(n).
    pub fn strategy(
        &self,
        s: &StrategyConfig,
        at: &[&str],
    ) -> Result<UnitaryMatrix<f64>, CliError> {
        let n = self.n();
        match s {
            StrategyConfig::Named(name) => match (name.as_str(), n) {
                ("I", _) => Ok(UnitaryMatrix::identity(n)),
                ("C", 2) => Ok(elw_core::game::cooperate()),
                ("D", 2) => Ok(elw_core::game::defect()),
                _ => Err(self.error_at(
                    at,
                    format!("unknown strategy {name:?} for n = {n} (C and D need n = 2)"),
                )),
            },
            StrategyConfig::Matrix(data) => ComplexMatrix::from_interleaved(n, n, data)
                .and_then(UnitaryMatrix::special_from)
                .map_err(|e| self.error_at(at, e.to_string())),
        }
    }

    /// Resolves a pair located under `at` in the source.
    pub fn pair(
        &self,
        p: &PairConfig,
        at: &[&str],
    ) -> Result<(UnitaryMatrix<f64>, UnitaryMatrix<f64>), CliError> {
        let key = |k| [at, &[k]].concat();
        Ok((
            self.strategy(&p.alice, &key("alice"))?,
            self.strategy(&p.bob, &key("bob"))?,
        ))
    }

    pub fn solver(&self) -> Result<SolverConfig, CliError> {
        let s = self.config.solver.to_solver();
        s.validate()
            .map_err(|e| self.error_at(&["solver"], e.to_string()))?;
        Ok(s)
    }

    pub fn sweep_values(&self) -> Result<Vec<f64>, CliError> {
        let Some(s) = &self.config.sweep else {
            return Err(self.error_at(&["sweep"], "missing sweep block"));
        };
        let values = match (&s.values, s.start, s.end, s.steps) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(k)) if k >= 2 => (0..k)
                .map(|i| {
                    if i + 1 == k {
                        b
                    } else {
                        a + (b - a) * i as f64 / (k - 1) as f64
                    }
                })
                .collect(),
            (None, Some(a), Some(_), Some(1)) => vec![a],
            _ => {
                return Err(self.error_at(
                    &["sweep"],
                    "give either values or start, end and steps (steps >= 1)",
                ))
            }
        };
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(self.error_at(&["sweep"], "sweep values must be finite and non-empty"));
        }
        Ok(values)
    }
}
