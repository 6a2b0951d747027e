//! Probabilities of fuzzy events over finite domains.
//!
//! Under Zadeh's logic a fuzzy concept `C` is an event whose probability
//! under a distribution `μ` on the domain is the expected membership
//! `Σ_d C^I(d) μ(d)`. Conditional constraints `(C | D)[l, u]` hold when
//! `μ((C ⊓ D)^I) / μ(D^I)` lies in `[l, u]`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{EvalError, FuzzyInterpretation, LogicFamily};
use crate::mlp::{forward, MlpError, Network, StimulusSet};
use crate::syntax::{Concept, ConditionalConstraint, ProbAssertion, Theta};
use crate::tol;

#[derive(Debug, Error)]
pub enum ProbError {
    #[error("probabilities are defined for the Zadeh family only, not {0}")]
    NotZadeh(LogicFamily),
    #[error("probability of `{element}` is {value}, outside [0,1]")]
    BadProbability { element: String, value: f64 },
    #[error("probabilities sum to {0}, not 1")]
    NotNormalised(f64),
    #[error("distribution mentions `{0}`, which is not a domain element")]
    UnknownElement(String),
    #[error("conditional is undefined: μ(`{0}`) = 0")]
    UndefinedConditional(String),
    #[error("subsethood is undefined: M(`{0}`) = 0")]
    UndefinedSubsethood(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Mlp(#[from] MlpError),
    #[error("distribution JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A discrete probability distribution over domain element ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionJson", into = "DistributionJson")]
pub struct Distribution {
    mu: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    mu: BTreeMap<String, f64>,
}

impl TryFrom<DistributionJson> for Distribution {
    type Error = ProbError;

    fn try_from(raw: DistributionJson) -> Result<Self, ProbError> {
        Distribution::new(raw.mu)
    }
}

impl From<Distribution> for DistributionJson {
    fn from(d: Distribution) -> Self {
        DistributionJson { mu: d.mu }
    }
}

impl Distribution {
    /// Rejects negative or non-finite entries and sums off 1 by more than
    /// [`tol::PROB`]. Elements not listed have probability 0.
    pub fn new(mu: BTreeMap<String, f64>) -> Result<Self, ProbError> {
        for (e, &p) in &mu {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(ProbError::BadProbability {
                    element: e.clone(),
                    value: p,
                });
            }
        }
        let sum: f64 = mu.values().sum();
        if (sum - 1.0).abs() > tol::PROB {
            return Err(ProbError::NotNormalised(sum));
        }
        Ok(Distribution { mu })
    }

    pub fn uniform<I, S>(elements: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids: Vec<String> = elements.into_iter().map(Into::into).collect();
        let p = 1.0 / ids.len() as f64;
        Distribution {
            mu: ids.into_iter().map(|id| (id, p)).collect(),
        }
    }

    pub fn get(&self, element: &str) -> f64 {
        self.mu.get(element).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.mu.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn from_json_str(text: &str) -> Result<Self, ProbError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ProbError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ProbError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("distribution serialises")
    }
}

/// A fuzzy interpretation paired with a distribution over its domain.
#[derive(Clone, Debug)]
pub struct FuzzyProbInterp {
    interp: FuzzyInterpretation,
    mu: Vec<f64>,
}

/// A conditional probability and whether it meets its bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConditionalVerdict {
    pub probability: f64,
    pub holds: bool,
}

/// `P(C | {a})` computed as a ratio of event probabilities, next to the
/// membership degree `C^I(a)` it reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NominalConditional {
    pub ratio: f64,
    pub direct: f64,
}

impl NominalConditional {
    pub fn agrees(&self) -> bool {
        (self.ratio - self.direct).abs() <= tol::NUM
    }
}

impl FuzzyProbInterp {
    pub fn new(
        interp: FuzzyInterpretation,
        logic: LogicFamily,
        dist: &Distribution,
    ) -> Result<Self, ProbError> {
        if logic != LogicFamily::Zadeh {
            return Err(ProbError::NotZadeh(logic));
        }
        if let Some((e, _)) = dist.iter().find(|(e, _)| interp.element_index(e).is_none()) {
            return Err(ProbError::UnknownElement(e.to_string()));
        }
        let mu = interp.domain().iter().map(|d| dist.get(d)).collect();
        Ok(FuzzyProbInterp { interp, mu })
    }

    pub fn interpretation(&self) -> &FuzzyInterpretation {
        &self.interp
    }

    /// `μ(x)` in domain order.
    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// `Σ_d C^I(d) μ(d)`.
    pub fn event_prob(&self, c: &Concept) -> Result<f64, ProbError> {
        let ext = self.interp.extension(LogicFamily::Zadeh, c)?;
        Ok(ext.iter().zip(&self.mu).map(|(d, m)| d * m).sum())
    }

    /// `μ((C ⊓ D)^I) / μ(D^I)`.
    pub fn conditional_prob(&self, c: &Concept, d: &Concept) -> Result<f64, ProbError> {
        let den = self.event_prob(d)?;
        if den == 0.0 {
            return Err(ProbError::UndefinedConditional(d.to_string()));
        }
        Ok(self.event_prob(&Concept::and(c.clone(), d.clone()))? / den)
    }

    pub fn check_conditional(
        &self,
        cc: &ConditionalConstraint,
    ) -> Result<ConditionalVerdict, ProbError> {
        let p = self.conditional_prob(&cc.conclusion, &cc.condition)?;
        Ok(ConditionalVerdict {
            probability: p,
            holds: Theta::Geq.holds(p, cc.lower) && Theta::Leq.holds(p, cc.upper),
        })
    }

    pub fn nominal_conditional(
        &self,
        c: &Concept,
        individual: &str,
    ) -> Result<NominalConditional, ProbError> {
        let x = self
            .interp
            .individual(individual)
            .ok_or_else(|| EvalError::UnknownIndividual(individual.to_string()))?;
        let ratio = self.conditional_prob(c, &Concept::nominal(individual))?;
        let direct = self.interp.degree(LogicFamily::Zadeh, c, x)?;
        Ok(NominalConditional { ratio, direct })
    }

    /// Whether `P(C(a))[p]` matches `C^I(a)` within [`tol::NUM`].
    pub fn satisfies_assertion(&self, pa: &ProbAssertion) -> Result<bool, ProbError> {
        let nc = self.nominal_conditional(&pa.concept, &pa.individual)?;
        Ok((nc.ratio - pa.probability).abs() <= tol::NUM)
    }
}

/// Probability of `C` under `μ` (Zadeh only).
pub fn fuzzy_event_prob(fpi: &FuzzyProbInterp, c: &Concept) -> Result<f64, ProbError> {
    fpi.event_prob(c)
}

pub fn check_conditional(
    fpi: &FuzzyProbInterp,
    cc: &ConditionalConstraint,
) -> Result<ConditionalVerdict, ProbError> {
    fpi.check_conditional(cc)
}

pub fn nominal_conditional(
    fpi: &FuzzyProbInterp,
    c: &Concept,
    individual: &str,
) -> Result<NominalConditional, ProbError> {
    fpi.nominal_conditional(c, individual)
}

/// `M(C) = Σ_x C^I(x)`.
pub fn fuzzy_cardinality(interp: &FuzzyInterpretation, c: &Concept) -> Result<f64, ProbError> {
    Ok(interp.extension(LogicFamily::Zadeh, c)?.iter().sum())
}

/// `S(A, B) = M(A ⊓ B) / M(A)`.
pub fn subsethood(
    interp: &FuzzyInterpretation,
    a: &Concept,
    b: &Concept,
) -> Result<f64, ProbError> {
    let m = fuzzy_cardinality(interp, a)?;
    if m == 0.0 {
        return Err(ProbError::UndefinedSubsethood(a.to_string()));
    }
    Ok(fuzzy_cardinality(interp, &Concept::and(a.clone(), b.clone()))? / m)
}

/// `P(C_k(x))[y_k(x)]` for every unit `k` and stimulus `x`, stimulus-major.
pub fn network_prob_abox(
    net: &Network,
    stimuli: &StimulusSet,
) -> Result<Vec<ProbAssertion>, ProbError> {
    let table = forward(net, stimuli)?;
    let mut out = Vec::with_capacity(stimuli.len() * net.units().len());
    for (s, id) in stimuli.ids().iter().enumerate() {
        for (k, u) in net.units().iter().enumerate() {
            out.push(ProbAssertion {
                concept: Concept::name(u.id.as_str()),
                individual: id.clone(),
                probability: table.y(s, k),
            });
        }
    }
    Ok(out)
}
