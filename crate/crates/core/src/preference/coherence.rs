use serde::Serialize;

use super::model::{build_preferences, ModelMode, MultiprefModel};
use super::PrefError;
use crate::fuzzy::{FuzzyInterpretation, LogicFamily};
use crate::kb::WeightedKb;
use crate::syntax::Concept;

/// Number of violations kept in a report; the total is always counted.
pub const REPORTED_VIOLATIONS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    /// `x <_{C_i} y` although `C_i^I(x) ≤ C_i^I(y)`.
    Strict,
    /// `C_i^I(x) > C_i^I(y)` although not `x <_{C_i} y`.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub concept: String,
    pub x: String,
    pub y: String,
    pub kind: ViolationKind,
}

/// Agreement between the concept-wise preferences of a model and the
/// membership degrees of the distinguished concepts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub weakly_coherent: bool,
    pub violations: Vec<Violation>,
    pub total_violations: usize,
    pub strict_violations: usize,
    pub weak_violations: usize,
}

/// Checks, for every preference of `model` and every ordered pair
/// `(x, y)`, both directions of `x <_{C_i} y ⟺ C_i^I(x) > C_i^I(y)`.
pub fn coherence_of(model: &MultiprefModel) -> Result<CoherenceReport, PrefError> {
    let interp = model.interpretation();
    let logic = model.mode().logic();
    let mut violations = Vec::new();
    let (mut strict, mut weak) = (0, 0);
    for pref in model.preferences() {
        let deg = interp.extension(logic, &Concept::name(pref.concept.as_str()))?;
        for x in 0..interp.len() {
            for y in 0..interp.len() {
                let by_pref = pref.lt(x, y);
                let by_degree = deg[x] > deg[y];
                let kind = match (by_pref, by_degree) {
                    (true, false) => ViolationKind::Strict,
                    (false, true) => ViolationKind::Weak,
                    _ => continue,
                };
                match kind {
                    ViolationKind::Strict => strict += 1,
                    ViolationKind::Weak => weak += 1,
                }
                if violations.len() < REPORTED_VIOLATIONS {
                    violations.push(Violation {
                        concept: pref.concept.clone(),
                        x: interp.element_id(x).to_string(),
                        y: interp.element_id(y).to_string(),
                        kind,
                    });
                }
            }
        }
    }
    Ok(CoherenceReport {
        coherent: strict + weak == 0,
        weakly_coherent: weak == 0,
        violations,
        total_violations: strict + weak,
        strict_violations: strict,
        weak_violations: weak,
    })
}

/// Coherence of the fuzzy multipreference model of `kb` over `interp`.
pub fn coherence(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
) -> Result<CoherenceReport, PrefError> {
    coherence_of(&build_preferences(kb, interp, ModelMode::Fuzzy(logic))?)
}

/// Weak coherence: only `C_i^I(x) > C_i^I(y) ⟹ x <_{C_i} y`. The returned
/// report is the full one; read `weakly_coherent`.
pub fn weak_coherence(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
) -> Result<CoherenceReport, PrefError> {
    coherence(kb, interp, logic)
}
