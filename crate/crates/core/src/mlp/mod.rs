//! Multilayer perceptrons as multipreference interpretations.
//!
//! A [`Network`] evaluated on a [`StimulusSet`] yields an [`ActivityTable`].
//! Reading every unit as a concept whose degree at a stimulus is the unit's
//! activity gives a fuzzy interpretation over the stimuli; thresholding the
//! activities gives a crisp one, with concept-wise preferences ordered by
//! activity. [`extract_kb`] turns the synapses of the distinguished units
//! into weighted defaults. [`verify_prop1`] and [`verify_prop2`] check that
//! the weights of the extracted KB are the units' local fields and that the
//! resulting model is coherent (respectively weakly coherent).

mod bridge;
mod forward;
mod network;

use thiserror::Error;

pub use bridge::{
    build_cwm_interp, build_fuzzy_interp, cwm_model_from_table, extract_kb, verify_prop1,
    verify_prop2, FieldMismatch, ThresholdMode, VerifyReport,
};
pub use forward::{forward, forward_with, ActivityTable, Evaluation, StimulusSet};
pub use network::{Activation, Network, Unit};

use crate::fuzzy::InterpError;
use crate::preference::PrefError;

#[derive(Debug, Error)]
pub enum MlpError {
    #[error("unknown activation `{0}` (expected sigmoid, softplus01, hard-sigmoid, step or linear-clamp)")]
    UnknownActivation(String),
    #[error("`{0}` is not a valid identifier")]
    BadIdentifier(String),
    #[error("id `{0}` is declared twice")]
    DuplicateId(String),
    #[error("unit `{unit}` has a synapse from undeclared `{origin}`")]
    DanglingSource { unit: String, origin: String },
    #[error("`{0}` is not a unit of the network")]
    UnknownUnit(String),
    #[error("non-finite number at `{0}`")]
    NonFinite(String),
    #[error("stimulus `{stimulus}` has no value for input `{input}`")]
    MissingInput { stimulus: String, input: String },
    #[error("no stationary state for stimulus `{stimulus}` within {iterations} iterations")]
    NoConvergence { stimulus: String, iterations: usize },
    #[error("the stimulus set is empty")]
    EmptyStimuli,
    #[error("unit `{unit}` uses {activation}, which is not {required}")]
    Precondition {
        unit: String,
        activation: Activation,
        required: &'static str,
    },
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Pref(#[from] PrefError),
    #[error("network JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn feedforward_matches_fixed_point() {
        let mut rng = gen::rng(21);
        for _ in 0..20 {
            let net = gen::network(&mut rng, &gen::NetParams::default());
            let st = gen::stimuli(&mut rng, &net, 10);
            let a = forward(&net, &st).unwrap();
            let b = forward_with(&net, &st, Evaluation::FixedPoint).unwrap();
            for s in 0..st.len() {
                for k in 0..net.units().len() {
                    assert!((a.y(s, k) - b.y(s, k)).abs() < 1e-9);
                    assert!((a.u(s, k) - b.u(s, k)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn forward_is_deterministic() {
        let mut rng = gen::rng(4);
        let net = gen::network(&mut rng, &gen::NetParams::default());
        let st = gen::stimuli(&mut rng, &net, 20);
        let a = forward(&net, &st).unwrap();
        let b = forward(&net, &st).unwrap();
        assert_eq!(a, b);
    }
}
