use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::network::{Network, Source};
use super::MlpError;
use crate::tol;

/// Input vectors: one per stimulus, keyed by input id.
#[derive(Clone, Debug, PartialEq)]
pub struct StimulusSet {
    ids: Vec<String>,
    values: Vec<BTreeMap<String, f64>>,
}

#[derive(Serialize, Deserialize)]
struct StimulusJson {
    id: String,
    values: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
struct StimuliJson {
    stimuli: Vec<StimulusJson>,
}

impl StimulusSet {
    pub fn new() -> Self {
        StimulusSet {
            ids: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, values: BTreeMap<String, f64>) {
        self.ids.push(id.into());
        self.values.push(values);
    }

    pub fn with(mut self, id: impl Into<String>, values: &[(&str, f64)]) -> Self {
        self.push(
            id,
            values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        );
        self
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn value(&self, s: usize, input: &str) -> Option<f64> {
        self.values[s].get(input).copied()
    }

    pub fn from_json_str(text: &str) -> Result<Self, MlpError> {
        let raw: StimuliJson = serde_json::from_str(text)?;
        let mut set = StimulusSet::new();
        for s in raw.stimuli {
            set.push(s.id, s.values);
        }
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MlpError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| MlpError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StimuliJson {
            stimuli: self
                .ids
                .iter()
                .zip(&self.values)
                .map(|(id, values)| StimulusJson {
                    id: id.clone(),
                    values: values.clone(),
                })
                .collect(),
        })
        .expect("stimuli serialise")
    }
}

impl Default for StimulusSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Activities of every node (inputs, then units) and local fields of every
/// unit, per stimulus.
#[derive(Clone, Debug, PartialEq)]
pub struct ActivityTable {
    stimuli: Vec<String>,
    inputs: Vec<String>,
    units: Vec<String>,
    // [stimulus][input ++ unit]
    y: Vec<Vec<f64>>,
    // [stimulus][unit]
    u: Vec<Vec<f64>>,
    iterations: usize,
}

impl ActivityTable {
    pub fn stimuli(&self) -> &[String] {
        &self.stimuli
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    /// Node ids in column order: inputs, then units.
    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.inputs.iter().chain(&self.units).map(String::as_str)
    }

    /// Activity of unit `k` on stimulus `s`.
    pub fn y(&self, s: usize, k: usize) -> f64 {
        self.y[s][self.inputs.len() + k]
    }

    /// Clamped value of input `i` on stimulus `s`.
    pub fn input(&self, s: usize, i: usize) -> f64 {
        self.y[s][i]
    }

    /// Local field of unit `k` on stimulus `s`.
    pub fn u(&self, s: usize, k: usize) -> f64 {
        self.u[s][k]
    }

    /// Activities of all nodes on stimulus `s`, in column order.
    pub fn row(&self, s: usize) -> &[f64] {
        &self.y[s]
    }

    /// Column of node `id` over all stimuli.
    pub fn column(&self, id: &str) -> Option<Vec<f64>> {
        let c = self.nodes().position(|n| n == id)?;
        Some(self.y.iter().map(|row| row[c]).collect())
    }

    /// Synchronous update rounds performed (0 for a feedforward pass).
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.stimuli.len())
            .map(|s| {
                let y: serde_json::Map<String, serde_json::Value> = self
                    .nodes()
                    .zip(&self.y[s])
                    .map(|(id, v)| (id.to_string(), (*v).into()))
                    .collect();
                let u: serde_json::Map<String, serde_json::Value> = self
                    .units
                    .iter()
                    .zip(&self.u[s])
                    .map(|(id, v)| (id.clone(), (*v).into()))
                    .collect();
                serde_json::json!({"id": self.stimuli[s], "y": y, "u": u})
            })
            .collect();
        serde_json::json!({"activities": rows, "iterations": self.iterations})
    }
}

/// How unit activities are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Evaluation {
    /// A single pass in topological order for acyclic networks, fixed-point
    /// iteration otherwise.
    #[default]
    Auto,
    /// Synchronous fixed-point iteration from all-zero activities, even on
    /// acyclic networks.
    FixedPoint,
}

fn local_field(net: &Network, k: usize, inputs: &[f64], units: &[f64]) -> f64 {
    let mut u = 0.0;
    u += net.units()[k].bias;
    for &(src, w) in net.sources(k) {
        let y = match src {
            Source::Input(i) => inputs[i],
            Source::Unit(j) => units[j],
        };
        u += w * y;
    }
    u
}

/// Evaluates `net` on every stimulus.
///
/// Input values are clamped to `[0,1]` and the clamped value is what
/// propagates. Each unit computes `u_k = b_k + Σ_j w_kj y_j` and
/// `y_k = φ_k(u_k)`.
pub fn forward(net: &Network, stimuli: &StimulusSet) -> Result<ActivityTable, MlpError> {
    forward_with(net, stimuli, Evaluation::Auto)
}

pub fn forward_with(
    net: &Network,
    stimuli: &StimulusSet,
    mode: Evaluation,
) -> Result<ActivityTable, MlpError> {
    let n_units = net.units().len();
    let mut y_rows = Vec::with_capacity(stimuli.len());
    let mut u_rows = Vec::with_capacity(stimuli.len());
    let mut max_iters = 0;
    for s in 0..stimuli.len() {
        let mut inputs = Vec::with_capacity(net.inputs().len());
        for id in net.inputs() {
            let v = stimuli.value(s, id).ok_or_else(|| MlpError::MissingInput {
                stimulus: stimuli.ids()[s].clone(),
                input: id.clone(),
            })?;
            if !v.is_finite() {
                return Err(MlpError::NonFinite(stimuli.ids()[s].clone()));
            }
            inputs.push(v.clamp(0.0, 1.0));
        }
        let mut ys = vec![0.0; n_units];
        let mut us = vec![0.0; n_units];
        match (mode, net.order()) {
            (Evaluation::Auto, Some(order)) => {
                for &k in order {
                    us[k] = local_field(net, k, &inputs, &ys);
                    ys[k] = net.units()[k].activation.apply(us[k]);
                }
            }
            _ => {
                let mut converged = false;
                for iter in 1..=tol::FIX_MAX_ITERS {
                    let next: Vec<f64> = (0..n_units)
                        .map(|k| net.units()[k].activation.apply(local_field(net, k, &inputs, &ys)))
                        .collect();
                    let delta = ys
                        .iter()
                        .zip(&next)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    ys = next;
                    if delta < tol::FIX {
                        max_iters = max_iters.max(iter);
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(MlpError::NoConvergence {
                        stimulus: stimuli.ids()[s].clone(),
                        iterations: tol::FIX_MAX_ITERS,
                    });
                }
                // fields of the stationary state
                for (k, u) in us.iter_mut().enumerate() {
                    *u = local_field(net, k, &inputs, &ys);
                }
            }
        }
        let mut row = inputs;
        row.extend(ys);
        y_rows.push(row);
        u_rows.push(us);
    }
    Ok(ActivityTable {
        stimuli: stimuli.ids().to_vec(),
        inputs: net.inputs().to_vec(),
        units: net.units().iter().map(|u| u.id.clone()).collect(),
        y: y_rows,
        u: u_rows,
        iterations: max_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlp::{Activation, Unit};

    fn single(activation: Activation, w: (f64, f64), bias: f64) -> Network {
        Network::new(
            vec!["x1".into(), "x2".into()],
            vec![Unit {
                id: "k".into(),
                activation,
                bias,
                incoming: vec![("x1".into(), w.0), ("x2".into(), w.1)],
            }],
            vec!["k".into()],
        )
        .unwrap()
    }

    #[test]
    fn single_unit() {
        let net = single(Activation::Sigmoid, (1.0, -1.0), 0.0);
        let st = StimulusSet::new().with("s1", &[("x1", 1.0), ("x2", 1.0)]);
        let t = forward(&net, &st).unwrap();
        assert_eq!(t.u(0, 0), 0.0);
        assert_eq!(t.y(0, 0), 0.5);
    }

    #[test]
    fn zero_weights_give_half() {
        let net = single(Activation::Sigmoid, (0.0, 0.0), 0.0);
        let st = StimulusSet::new()
            .with("a", &[("x1", 0.3), ("x2", 0.9)])
            .with("b", &[("x1", 1.0), ("x2", 0.0)]);
        let t = forward(&net, &st).unwrap();
        assert!((0..2).all(|s| t.y(s, 0) == 0.5));
    }

    #[test]
    fn step_below_threshold() {
        let net = single(Activation::Step, (-1.0, 0.0), 0.0);
        let st = StimulusSet::new().with("s", &[("x1", 1.0), ("x2", 0.0)]);
        let t = forward(&net, &st).unwrap();
        assert_eq!(t.u(0, 0), -1.0);
        assert_eq!(t.y(0, 0), 0.0);
    }

    #[test]
    fn inputs_are_clamped() {
        let net = single(Activation::LinearClamp, (1.0, 1.0), 0.0);
        let st = StimulusSet::new().with("s", &[("x1", 3.0), ("x2", -2.0)]);
        let t = forward(&net, &st).unwrap();
        assert_eq!(t.input(0, 0), 1.0);
        assert_eq!(t.input(0, 1), 0.0);
        assert_eq!(t.u(0, 0), 1.0);
    }

    #[test]
    fn missing_input() {
        let net = single(Activation::Sigmoid, (1.0, 1.0), 0.0);
        let st = StimulusSet::new().with("s", &[("x1", 1.0)]);
        assert!(matches!(
            forward(&net, &st),
            Err(MlpError::MissingInput { .. })
        ));
    }

    #[test]
    fn recurrent_fixed_point() {
        // y = σ(0.5 y + x): a contraction
        let net = Network::new(
            vec!["x".into()],
            vec![Unit {
                id: "r".into(),
                activation: Activation::Sigmoid,
                bias: 0.0,
                incoming: vec![("x".into(), 1.0), ("r".into(), 0.5)],
            }],
            vec!["r".into()],
        )
        .unwrap();
        assert!(!net.is_feedforward());
        let st = StimulusSet::new().with("s", &[("x", 0.2)]);
        let t = forward(&net, &st).unwrap();
        let y = t.y(0, 0);
        assert!((y - Activation::Sigmoid.apply(0.5 * y + 0.2)).abs() < 1e-9);
        assert_eq!(t.u(0, 0), 0.2 + 0.5 * y);
        assert!(t.iterations() > 1);
    }

    #[test]
    fn oscillation_is_reported() {
        // a step unit fed by its own negation never settles
        let net = Network::new(
            vec![],
            vec![Unit {
                id: "o".into(),
                activation: Activation::Step,
                bias: 0.5,
                incoming: vec![("o".into(), -1.0)],
            }],
            vec![],
        )
        .unwrap();
        let st = StimulusSet::new().with("s", &[]);
        assert!(matches!(
            forward(&net, &st),
            Err(MlpError::NoConvergence { .. })
        ));
    }

    #[test]
    fn stimuli_json_round_trip() {
        let st = StimulusSet::from_json_str(r#"{"stimuli":[{"id":"s1","values":{"x1":1.0,"x2":0.0}}]}"#)
            .unwrap();
        assert_eq!(st.value(0, "x1"), Some(1.0));
        assert_eq!(StimulusSet::from_json_str(&st.to_json().to_string()).unwrap(), st);
    }
}
