use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use super::weight::{weight_rows, Weight};
use super::PrefError;
use crate::fuzzy::{FuzzyInterpretation, LogicFamily, Semantics};
use crate::kb::WeightedKb;
use crate::syntax::{Assertion, Axiom, Concept, Theta};

/// The preference `≤_{C_i}` induced by a weight row: `x ≤ y` iff
/// `W(x) ≥ W(y)`. Lower in the order means more typical.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConceptPreference {
    pub concept: String,
    pub weights: Vec<Weight>,
}

impl ConceptPreference {
    pub fn new(concept: impl Into<String>, weights: Vec<Weight>) -> Self {
        ConceptPreference {
            concept: concept.into(),
            weights,
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.weights[x].cmp_total(self.weights[y]) != Ordering::Less
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.weights[x].cmp_total(self.weights[y]) == Ordering::Greater
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.weights[x].cmp_total(self.weights[y]) == Ordering::Equal
    }

    /// `min_{<_{C_i}}(set)`.
    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        let Some(best) = set
            .iter()
            .map(|&x| self.weights[x])
            .max_by(|a, b| a.cmp_total(*b))
        else {
            return Vec::new();
        };
        set.iter()
            .copied()
            .filter(|&x| self.weights[x].cmp_total(best) == Ordering::Equal)
            .collect()
    }
}

/// Pareto combination of concept-wise preferences: `x < y` iff `x <_{C_i} y`
/// for some `i` and `x ≤_{C_j} y` for every `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalPreference {
    // element-major weight vectors
    vectors: Vec<Vec<Weight>>,
}

impl GlobalPreference {
    pub fn new(prefs: &[ConceptPreference], len: usize) -> Self {
        let vectors = (0..len)
            .map(|x| prefs.iter().map(|p| p.weights[x]).collect())
            .collect();
        GlobalPreference { vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn dominates(a: &[Weight], b: &[Weight]) -> bool {
        let mut strict = false;
        for (wa, wb) in a.iter().zip(b) {
            match wa.cmp_total(*wb) {
                Ordering::Less => return false,
                Ordering::Greater => strict = true,
                Ordering::Equal => {}
            }
        }
        strict
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        Self::dominates(&self.vectors[x], &self.vectors[y])
    }

    /// `min_<(set) = {u ∈ set : no z ∈ set with z < u}`.
    ///
    /// Elements with identical weight vectors are interchangeable, so the
    /// Pareto front is computed over distinct vectors.
    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        let mut classes: Vec<(&[Weight], Vec<usize>)> = Vec::new();
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for &x in set {
            let v = &self.vectors[x];
            let key: Vec<u64> = v
                .iter()
                .map(|w| match w {
                    Weight::NegInf => u64::MAX,
                    Weight::Finite(f) => (f + 0.0).to_bits(),
                })
                .collect();
            match seen.get(&key) {
                Some(&i) => classes[i].1.push(x),
                None => {
                    seen.insert(key, classes.len());
                    classes.push((v.as_slice(), vec![x]));
                }
            }
        }
        let mut out: Vec<usize> = classes
            .iter()
            .filter(|(v, _)| !classes.iter().any(|(u, _)| Self::dominates(u, v)))
            .flat_map(|(_, xs)| xs.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Whether a model is two-valued (with a global preference) or fuzzy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelMode {
    Crisp,
    Fuzzy(LogicFamily),
}

impl ModelMode {
    pub fn logic(self) -> LogicFamily {
        match self {
            ModelMode::Crisp => LogicFamily::Zadeh,
            ModelMode::Fuzzy(l) => l,
        }
    }

    pub fn semantics(self) -> Semantics {
        match self {
            ModelMode::Crisp => Semantics::Crisp,
            ModelMode::Fuzzy(l) => Semantics::Fuzzy(l),
        }
    }
}

/// How a bounded typicality inclusion is read in a fuzzy model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TypFuzzySem {
    /// `inf_x T(C)^I(x) ▷ D^I(x)` compared against the bound, with
    /// `T(C)^I` two-valued.
    #[default]
    Implication,
    /// Every element of the typicality set satisfies `D^I(x) θ n`.
    Containment,
}

impl std::str::FromStr for TypFuzzySem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "implication" => Ok(TypFuzzySem::Implication),
            "containment" => Ok(TypFuzzySem::Containment),
            _ => Err(format!(
                "unknown typicality semantics `{s}` (expected implication or containment)"
            )),
        }
    }
}

/// An interpretation together with one preference per distinguished
/// concept and, in crisp mode, their Pareto combination.
#[derive(Clone, Debug)]
pub struct MultiprefModel {
    interp: FuzzyInterpretation,
    mode: ModelMode,
    prefs: Vec<ConceptPreference>,
    global: Option<GlobalPreference>,
}

impl MultiprefModel {
    /// A model whose preferences come from explicit score rows (higher is
    /// more preferred), one per distinguished concept.
    pub fn from_scores(
        interp: FuzzyInterpretation,
        mode: ModelMode,
        prefs: Vec<ConceptPreference>,
    ) -> Result<Self, PrefError> {
        if mode == ModelMode::Crisp && !interp.is_crisp() {
            return Err(PrefError::NotCrisp);
        }
        for p in &prefs {
            if p.weights.len() != interp.len() {
                return Err(PrefError::ScoreLength {
                    concept: p.concept.clone(),
                    expected: interp.len(),
                    found: p.weights.len(),
                });
            }
        }
        let global = match mode {
            ModelMode::Crisp => Some(GlobalPreference::new(&prefs, interp.len())),
            ModelMode::Fuzzy(_) => None,
        };
        Ok(MultiprefModel {
            interp,
            mode,
            prefs,
            global,
        })
    }

    pub fn interpretation(&self) -> &FuzzyInterpretation {
        &self.interp
    }

    pub fn mode(&self) -> ModelMode {
        self.mode
    }

    pub fn preferences(&self) -> &[ConceptPreference] {
        &self.prefs
    }

    pub fn preference(&self, concept: &str) -> Option<&ConceptPreference> {
        self.prefs.iter().find(|p| p.concept == concept)
    }

    pub fn global(&self) -> Option<&GlobalPreference> {
        self.global.as_ref()
    }

    /// Preferences as JSON: per concept, the weight of every element.
    pub fn preferences_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for p in &self.prefs {
            let row: serde_json::Map<String, serde_json::Value> = self
                .interp
                .domain()
                .iter()
                .zip(&p.weights)
                .map(|(id, w)| (id.clone(), serde_json::to_value(w).expect("weight")))
                .collect();
            map.insert(p.concept.clone(), row.into());
        }
        map.into()
    }
}

/// Weights and preferences of `kb` over `interp`.
///
/// In crisp mode `interp` must be two-valued and the global preference is
/// built; in fuzzy mode weights follow the degree-weighted sum.
pub fn build_preferences(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    mode: ModelMode,
) -> Result<MultiprefModel, PrefError> {
    if mode == ModelMode::Crisp && !interp.is_crisp() {
        return Err(PrefError::NotCrisp);
    }
    let rows = weight_rows(kb, interp, mode.logic(), mode == ModelMode::Crisp)?;
    let prefs = kb
        .distinguished
        .iter()
        .zip(rows)
        .map(|(c, row)| ConceptPreference::new(c.clone(), row))
        .collect();
    MultiprefModel::from_scores(interp.clone(), mode, prefs)
}

fn plain(c: &Concept) -> Result<&Concept, PrefError> {
    if c.contains_typ() {
        Err(PrefError::NestedTypicality(c.to_string()))
    } else {
        Ok(c)
    }
}

/// `(T(C))^I = min_<(C^I)` in a crisp model.
pub fn typicality_global(model: &MultiprefModel, c: &Concept) -> Result<Vec<usize>, PrefError> {
    let global = model.global.as_ref().ok_or(PrefError::NoGlobalPreference)?;
    let ext = model.interp.extension(LogicFamily::Zadeh, plain(c)?)?;
    let members: Vec<usize> = (0..ext.len()).filter(|&x| ext[x] == 1.0).collect();
    Ok(global.minimal(&members))
}

/// The elements attaining the maximal positive degree of `C`; empty when
/// `C^I` is identically 0.
pub fn typicality_induced(
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    c: &Concept,
) -> Result<Vec<usize>, PrefError> {
    let ext = interp.extension(logic, plain(c)?)?;
    let max = ext.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(Vec::new());
    }
    Ok((0..ext.len()).filter(|&x| ext[x] == max).collect())
}

/// `T(C) ⊑ D`, optionally with a degree bound `θ n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypicalityQuery {
    pub concept: Concept,
    pub consequent: Concept,
    pub bound: Option<(Theta, f64)>,
}

impl TypicalityQuery {
    pub fn new(concept: Concept, consequent: Concept) -> Self {
        TypicalityQuery {
            concept,
            consequent,
            bound: None,
        }
    }

    pub fn with_bound(mut self, theta: Theta, n: f64) -> Self {
        self.bound = Some((theta, n));
        self
    }

    /// The query form of an inclusion whose left side is `T(C)`.
    pub fn from_axiom(ax: &Axiom) -> Option<Self> {
        match ax {
            Axiom::Strict(inc) => match &inc.sub {
                Concept::Typ(c) => Some(TypicalityQuery::new((**c).clone(), inc.sup.clone())),
                _ => None,
            },
            Axiom::Fuzzy {
                inclusion,
                theta,
                degree,
            } => match &inclusion.sub {
                Concept::Typ(c) => Some(
                    TypicalityQuery::new((**c).clone(), inclusion.sup.clone())
                        .with_bound(*theta, *degree),
                ),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn concepts(&self) -> [&Concept; 2] {
        [&self.concept, &self.consequent]
    }
}

impl std::fmt::Display for TypicalityQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T({}) [= {}", self.concept, self.consequent)?;
        if let Some((theta, n)) = self.bound {
            write!(f, " {theta} {n}")?;
        }
        Ok(())
    }
}

/// Outcome of a typicality check, with the typical elements and, for
/// bounded queries, the evaluated degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypicalityVerdict {
    pub holds: bool,
    pub typical: Vec<String>,
    pub degree: Option<f64>,
}

/// Model-checks `T(C) ⊑ D (θ n)?`.
///
/// Crisp models use the global preference; unbounded queries require every
/// typical element to be in `D^I` and bounded ones compare
/// `min over typical x of 1 ▷ D^I(x)` (vacuously 1). Fuzzy models use the
/// degree-induced typicality set and read an unbounded query as `≥ 1`.
pub fn check_typicality_axiom(
    model: &MultiprefModel,
    query: &TypicalityQuery,
    sem: TypFuzzySem,
) -> Result<TypicalityVerdict, PrefError> {
    let logic = model.mode.logic();
    let typical = match model.mode {
        ModelMode::Crisp => typicality_global(model, &query.concept)?,
        ModelMode::Fuzzy(l) => typicality_induced(&model.interp, l, &query.concept)?,
    };
    let ext = model.interp.extension(logic, plain(&query.consequent)?)?;
    let names = typical
        .iter()
        .map(|&x| model.interp.element_id(x).to_string())
        .collect();
    let inf = typical
        .iter()
        .map(|&x| logic.implication(1.0, ext[x]))
        .fold(1.0, f64::min);
    let (holds, degree) = match (model.mode, query.bound) {
        (ModelMode::Crisp, None) => (typical.iter().all(|&x| ext[x] == 1.0), None),
        (ModelMode::Crisp, Some((theta, n))) => (theta.holds(inf, n), Some(inf)),
        (ModelMode::Fuzzy(_), bound) => {
            let (theta, n) = bound.unwrap_or((Theta::Geq, 1.0));
            match sem {
                TypFuzzySem::Implication => (theta.holds(inf, n), Some(inf)),
                TypFuzzySem::Containment => {
                    (typical.iter().all(|&x| theta.holds(ext[x], n)), Some(inf))
                }
            }
        }
    };
    Ok(TypicalityVerdict {
        holds,
        typical: names,
        degree,
    })
}

fn model_conditions(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    sem: Semantics,
) -> Result<bool, PrefError> {
    for inc in &kb.strict {
        if !interp.satisfies(sem, &Axiom::Strict(inc.clone()))? {
            return Ok(false);
        }
    }
    for a in &kb.abox {
        if !interp.satisfies(sem, &Axiom::Assertion(a.clone()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `interp` satisfies the strict inclusions and ABox of `kb`, read
/// two-valued.
pub fn is_cwm_model(kb: &WeightedKb, interp: &FuzzyInterpretation) -> Result<bool, PrefError> {
    if !interp.is_crisp() {
        return Err(PrefError::NotCrisp);
    }
    model_conditions(kb, interp, Semantics::Crisp)
}

/// Whether `interp` satisfies the strict inclusions (as `≥ 1`) and ABox
/// (crisp assertions as `≥ 1`) of `kb` under `logic`.
pub fn is_fm_model(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
) -> Result<bool, PrefError> {
    model_conditions(kb, interp, Semantics::Fuzzy(logic))
}

/// Individuals named by ABox assertions that `interp` leaves unmapped.
pub fn unmapped_individuals(kb: &WeightedKb, interp: &FuzzyInterpretation) -> Vec<String> {
    let mut out = Vec::new();
    for a in &kb.abox {
        let names: Vec<&String> = match a {
            Assertion::Concept { individual, .. } => vec![individual],
            Assertion::Role {
                subject, object, ..
            } => vec![subject, object],
        };
        for n in names {
            if interp.individual(n).is_none() && !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    out
}
