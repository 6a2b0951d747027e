use serde::Serialize;

use super::forward::{forward, ActivityTable, StimulusSet};
use super::network::Network;
use super::MlpError;
use crate::fuzzy::{FuzzyInterpretation, LogicFamily};
use crate::kb::WeightedKb;
use crate::preference::{
    build_preferences, coherence_of, CoherenceReport, ConceptPreference, ModelMode,
    MultiprefModel, Weight, REPORTED_VIOLATIONS,
};
use crate::syntax::Concept;
use crate::tol;

/// Crisp membership rule for network concepts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdMode {
    /// `x ∈ C_k` iff `y_k(x) ≠ 0`.
    #[default]
    Nonzero,
    /// `x ∈ C_k` iff `y_k(x) > 0.5`.
    Half,
}

impl ThresholdMode {
    pub fn member(self, y: f64) -> bool {
        match self {
            ThresholdMode::Nonzero => y != 0.0,
            ThresholdMode::Half => y > 0.5,
        }
    }
}

impl std::str::FromStr for ThresholdMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nonzero" => Ok(ThresholdMode::Nonzero),
            "half" => Ok(ThresholdMode::Half),
            _ => Err(format!("unknown threshold mode `{s}` (expected nonzero or half)")),
        }
    }
}

impl ActivityTable {
    /// The fuzzy interpretation with one concept per node (inputs and
    /// units), `C_k^I(x) = y_k(x)`; stimulus ids double as individuals.
    pub fn to_fuzzy_interp(&self) -> Result<FuzzyInterpretation, MlpError> {
        if self.stimuli().is_empty() {
            return Err(MlpError::EmptyStimuli);
        }
        let mut b = FuzzyInterpretation::builder(self.stimuli().iter().cloned());
        for (c, id) in self.nodes().enumerate() {
            let row = (0..self.stimuli().len()).map(|s| self.row(s)[c]).collect();
            b = b.concept_row(id, row);
        }
        for s in self.stimuli() {
            b = b.individual(s.clone(), s.clone());
        }
        Ok(b.build()?)
    }
}

/// Forward pass followed by [`ActivityTable::to_fuzzy_interp`].
pub fn build_fuzzy_interp(
    net: &Network,
    stimuli: &StimulusSet,
) -> Result<FuzzyInterpretation, MlpError> {
    if stimuli.is_empty() {
        return Err(MlpError::EmptyStimuli);
    }
    forward(net, stimuli)?.to_fuzzy_interp()
}

/// The crisp multipreference model of a network over `table`: membership
/// by `mode`, and for every distinguished unit `x <_{C_k} x'` iff
/// `y_k(x) > y_k(x')` among members, with non-members least preferred.
pub fn cwm_model_from_table(
    net: &Network,
    table: &ActivityTable,
    mode: ThresholdMode,
) -> Result<MultiprefModel, MlpError> {
    if table.stimuli().is_empty() {
        return Err(MlpError::EmptyStimuli);
    }
    let n = table.stimuli().len();
    let mut b = FuzzyInterpretation::builder(table.stimuli().iter().cloned());
    for (c, id) in table.nodes().enumerate() {
        let row = (0..n)
            .map(|s| if mode.member(table.row(s)[c]) { 1.0 } else { 0.0 })
            .collect();
        b = b.concept_row(id, row);
    }
    for s in table.stimuli() {
        b = b.individual(s.clone(), s.clone());
    }
    let interp = b.build()?;
    let prefs = net
        .distinguished()
        .iter()
        .map(|c| {
            let k = net.unit_index(c).expect("validated unit");
            let scores = (0..n)
                .map(|s| {
                    let y = table.y(s, k);
                    if mode.member(y) {
                        Weight::Finite(y)
                    } else {
                        Weight::NegInf
                    }
                })
                .collect();
            ConceptPreference::new(c.clone(), scores)
        })
        .collect();
    Ok(MultiprefModel::from_scores(interp, ModelMode::Crisp, prefs)?)
}

pub fn build_cwm_interp(
    net: &Network,
    stimuli: &StimulusSet,
    mode: ThresholdMode,
) -> Result<MultiprefModel, MlpError> {
    if stimuli.is_empty() {
        return Err(MlpError::EmptyStimuli);
    }
    cwm_model_from_table(net, &forward(net, stimuli)?, mode)
}

/// The weighted KB of a network: for every distinguished unit `k`, a
/// default `T(C_k) ⊑ ⊤` weighted by the bias (when nonzero) followed by one
/// default `T(C_k) ⊑ C_j` per incoming synapse, weighted by `w_kj`.
/// Strict TBox and ABox are empty.
pub fn extract_kb(net: &Network) -> WeightedKb {
    let mut kb = WeightedKb::new(net.distinguished().iter().cloned());
    for c in net.distinguished() {
        let unit = &net.units()[net.unit_index(c).expect("validated unit")];
        if unit.bias != 0.0 {
            kb.add_default(c, Concept::Top, unit.bias);
        }
        for (src, w) in &unit.incoming {
            kb.add_default(c, Concept::name(src.as_str()), *w);
        }
    }
    kb
}

/// A stimulus where the weight of a distinguished unit differs from its
/// local field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldMismatch {
    pub unit: String,
    pub stimulus: String,
    pub weight: Weight,
    pub field: f64,
}

/// Outcome of checking a network against its extracted KB.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub variant: u8,
    pub passed: bool,
    /// Largest `|W_k(x) − u_k(x)|` over members.
    pub max_field_error: f64,
    /// Pairs `(k, x)` with `C_k^I(x) > 0`, where `W_k(x)` is finite.
    pub checked: usize,
    /// Pairs with `C_k^I(x) = 0`, where `W_k(x) = −∞`.
    pub gated: usize,
    pub field_mismatches: Vec<FieldMismatch>,
    pub total_field_mismatches: usize,
    pub coherence: CoherenceReport,
}

fn verify(
    net: &Network,
    stimuli: &StimulusSet,
    variant: u8,
) -> Result<VerifyReport, MlpError> {
    for u in net.units() {
        let ok = match variant {
            1 => u.activation.strictly_increasing() && u.activation.range_in_open_closed_unit(),
            _ => u.activation.monotone_nondecreasing(),
        };
        if !ok {
            return Err(MlpError::Precondition {
                unit: u.id.clone(),
                activation: u.activation,
                required: if variant == 1 {
                    "strictly increasing with values in (0,1]"
                } else {
                    "monotone non-decreasing"
                },
            });
        }
    }
    if stimuli.is_empty() {
        return Err(MlpError::EmptyStimuli);
    }
    let table = forward(net, stimuli)?;
    let interp = table.to_fuzzy_interp()?;
    let kb = extract_kb(net);
    let model = build_preferences(&kb, &interp, ModelMode::Fuzzy(LogicFamily::Zadeh))?;

    let mut mismatches = Vec::new();
    let (mut total, mut checked, mut gated) = (0, 0, 0);
    let mut max_err: f64 = 0.0;
    for pref in model.preferences() {
        let k = net.unit_index(&pref.concept).expect("validated unit");
        for s in 0..table.stimuli().len() {
            let field = table.u(s, k);
            let weight = pref.weights[s];
            match weight {
                Weight::NegInf if table.y(s, k) == 0.0 => {
                    gated += 1;
                    continue;
                }
                Weight::Finite(w) if (w - field).abs() <= tol::NUM => {
                    checked += 1;
                    max_err = max_err.max((w - field).abs());
                    continue;
                }
                Weight::Finite(w) => {
                    checked += 1;
                    max_err = max_err.max((w - field).abs());
                }
                Weight::NegInf => {}
            }
            total += 1;
            if mismatches.len() < REPORTED_VIOLATIONS {
                mismatches.push(FieldMismatch {
                    unit: pref.concept.clone(),
                    stimulus: table.stimuli()[s].clone(),
                    weight,
                    field,
                });
            }
        }
    }
    let coherence = coherence_of(&model)?;
    let order_ok = match variant {
        1 => coherence.coherent,
        _ => coherence.weakly_coherent,
    };
    Ok(VerifyReport {
        variant,
        passed: total == 0 && order_ok,
        max_field_error: max_err,
        checked,
        gated,
        field_mismatches: mismatches,
        total_field_mismatches: total,
        coherence,
    })
}

/// For networks whose units are all strictly increasing with values in
/// `(0,1]`: the weights of the extracted KB equal the local fields, and
/// the fuzzy multipreference model is coherent.
pub fn verify_prop1(net: &Network, stimuli: &StimulusSet) -> Result<VerifyReport, MlpError> {
    verify(net, stimuli, 1)
}

/// For networks whose units are all monotone non-decreasing: the weights
/// equal the local fields on members, and the model is weakly coherent.
pub fn verify_prop2(net: &Network, stimuli: &StimulusSet) -> Result<VerifyReport, MlpError> {
    verify(net, stimuli, 2)
}
