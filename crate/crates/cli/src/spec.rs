//! JSON schema for channel systems on disk.

use crate::CliError;
use entropy_ray_core::channel::{Channel, StateChannelSystem};
use entropy_ray_core::simplex::Dist;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Row-sum tolerance when loading matrices from JSON; rows inside it are
/// renormalized.
const LOAD_TOL: f64 = 1e-9;

/// On-disk description of a state-channel system. Matrices are row-major;
/// `y_given_xs` is indexed by state, each entry an `|X| × |Y|` matrix. The
/// side channel (and its output alphabet) is optional: sweeps attach the
/// erasure family themselves.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemSpecFile {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_outputs: Option<Vec<String>>,
    pub p_s: Vec<f64>,
    pub y_given_xs: Vec<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Vec<Vec<f64>>>,
}

impl SystemSpecFile {
    /// The reference two-state system with crossover `delta` (no side
    /// channel attached).
    pub fn example(delta: f64) -> Result<Self, CliError> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(CliError::domain(format!(
                "delta = {delta} must lie in (0, 0.5)"
            )));
        }
        Ok(Self {
            states: vec!["0".into(), "1".into()],
            inputs: vec!["0".into(), "1".into()],
            outputs: vec!["0".into(), "1".into()],
            side_outputs: None,
            p_s: vec![1.0 - delta, delta],
            y_given_xs: vec![
                vec![vec![1.0, 0.0], vec![1.0 - delta, delta]],
                vec![vec![1.0 - delta, delta], vec![1.0, 0.0]],
            ],
            side: None,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::domain(format!("cannot parse {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Build the in-memory system, attaching `side` when the file carries
    /// one and `override_side` is not given.
    pub fn to_system(&self, override_side: Option<Channel>) -> Result<StateChannelSystem, CliError> {
        let p_s = Dist::new(self.p_s.clone())
            .map_err(|e| CliError::domain(format!("invalid p_s: {e}")))?;
        if self.y_given_xs.len() != self.states.len() {
            return Err(CliError::domain(format!(
                "y_given_xs has {} entries for {} states",
                self.y_given_xs.len(),
                self.states.len()
            )));
        }
        let y_given_xs = self
            .y_given_xs
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let ch = Channel::with_tolerance(m.clone(), LOAD_TOL)
                    .map_err(|e| CliError::domain(format!("state {s} channel: {e}")))?;
                if ch.n_inputs() != self.inputs.len() || ch.n_outputs() != self.outputs.len() {
                    return Err(CliError::domain(format!(
                        "state {s} channel is {}x{}, expected {}x{}",
                        ch.n_inputs(),
                        ch.n_outputs(),
                        self.inputs.len(),
                        self.outputs.len()
                    )));
                }
                Ok(ch)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let side = match (override_side, &self.side) {
            (Some(ch), _) => ch,
            (None, Some(m)) => Channel::with_tolerance(m.clone(), LOAD_TOL)
                .map_err(|e| CliError::domain(format!("side channel: {e}")))?,
            (None, None) => {
                return Err(CliError::domain(
                    "system file carries no side channel and none was supplied",
                ))
            }
        };
        StateChannelSystem::new(y_given_xs, p_s, side)
            .map_err(|e| CliError::domain(e.to_string()))
    }
}

/// Load a bare row-major matrix, or an object with a `side` key, as a
/// channel (used by `eval gamma`).
pub fn load_matrix(path: &Path) -> Result<Channel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::domain(format!("cannot parse {}: {e}", path.display())))?;
    let matrix = if value.is_array() {
        value
    } else if let Some(side) = value.get("side") {
        side.clone()
    } else {
        return Err(CliError::domain(format!(
            "{} holds neither a matrix nor an object with a 'side' key",
            path.display()
        )));
    };
    let rows: Vec<Vec<f64>> = serde_json::from_value(matrix)
        .map_err(|e| CliError::domain(format!("invalid matrix in {}: {e}", path.display())))?;
    Channel::with_tolerance(rows, LOAD_TOL).map_err(|e| CliError::domain(e.to_string()))
}
