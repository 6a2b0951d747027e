use thiserror::Error;

use super::{FuzzyInterpretation, LogicFamily};
use crate::syntax::{Assertion, Axiom, Concept, Theta};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("concept name `{0}` is not interpreted")]
    UnknownConcept(String),
    #[error("individual `{0}` is not interpreted")]
    UnknownIndividual(String),
    #[error("typicality `{0}` cannot be evaluated without a preference model")]
    Typicality(String),
    #[error("{0} axioms are not checked by a plain interpretation")]
    Unsupported(&'static str),
    #[error("crisp semantics requested on an interpretation with non-crisp degrees")]
    NotCrisp,
}

/// How axioms are read against an interpretation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Two-valued satisfaction; the interpretation must be crisp.
    Crisp,
    /// Degree-valued satisfaction under a combination-function family.
    Fuzzy(LogicFamily),
}

impl FuzzyInterpretation {
    /// `C^I(x)`.
    pub fn degree(&self, logic: LogicFamily, c: &Concept, x: usize) -> Result<f64, EvalError> {
        Ok(match c {
            Concept::Top => 1.0,
            Concept::Bottom => 0.0,
            Concept::Name(n) => self
                .concept(n)
                .ok_or_else(|| EvalError::UnknownConcept(n.clone()))?[x],
            Concept::Nominal(a) => {
                let ax = self
                    .individual(a)
                    .ok_or_else(|| EvalError::UnknownIndividual(a.clone()))?;
                if ax == x {
                    1.0
                } else {
                    0.0
                }
            }
            Concept::Not(inner) => logic.negation(self.degree(logic, inner, x)?),
            Concept::And(l, r) => {
                logic.tnorm(self.degree(logic, l, x)?, self.degree(logic, r, x)?)
            }
            Concept::Or(l, r) => {
                logic.snorm(self.degree(logic, l, x)?, self.degree(logic, r, x)?)
            }
            Concept::Exists(role, inner) => {
                let mut best: f64 = 0.0;
                for &(y, d) in self.successors(role, x) {
                    best = best.max(logic.tnorm(d, self.degree(logic, inner, y)?));
                }
                if self.successors(role, x).is_empty() {
                    self.check_names(inner)?;
                }
                best
            }
            Concept::Forall(role, inner) => {
                let mut worst: f64 = 1.0;
                for &(y, d) in self.successors(role, x) {
                    worst = worst.min(logic.implication(d, self.degree(logic, inner, y)?));
                }
                if self.successors(role, x).is_empty() {
                    self.check_names(inner)?;
                }
                worst
            }
            Concept::Typ(_) => return Err(EvalError::Typicality(c.to_string())),
        })
    }

    /// `C^I` over the whole domain, in domain order.
    pub fn extension(&self, logic: LogicFamily, c: &Concept) -> Result<Vec<f64>, EvalError> {
        let n = self.len();
        Ok(match c {
            Concept::Top => vec![1.0; n],
            Concept::Bottom => vec![0.0; n],
            Concept::Name(name) => self
                .concept(name)
                .ok_or_else(|| EvalError::UnknownConcept(name.clone()))?
                .to_vec(),
            Concept::Nominal(a) => {
                let ax = self
                    .individual(a)
                    .ok_or_else(|| EvalError::UnknownIndividual(a.clone()))?;
                (0..n).map(|x| if x == ax { 1.0 } else { 0.0 }).collect()
            }
            Concept::Not(inner) => self
                .extension(logic, inner)?
                .into_iter()
                .map(|a| logic.negation(a))
                .collect(),
            Concept::And(l, r) => {
                let (l, r) = (self.extension(logic, l)?, self.extension(logic, r)?);
                l.iter().zip(&r).map(|(&a, &b)| logic.tnorm(a, b)).collect()
            }
            Concept::Or(l, r) => {
                let (l, r) = (self.extension(logic, l)?, self.extension(logic, r)?);
                l.iter().zip(&r).map(|(&a, &b)| logic.snorm(a, b)).collect()
            }
            Concept::Exists(role, inner) => {
                let ext = self.extension(logic, inner)?;
                (0..n)
                    .map(|x| {
                        self.successors(role, x)
                            .iter()
                            .map(|&(y, d)| logic.tnorm(d, ext[y]))
                            .fold(0.0, f64::max)
                    })
                    .collect()
            }
            Concept::Forall(role, inner) => {
                let ext = self.extension(logic, inner)?;
                (0..n)
                    .map(|x| {
                        self.successors(role, x)
                            .iter()
                            .map(|&(y, d)| logic.implication(d, ext[y]))
                            .fold(1.0, f64::min)
                    })
                    .collect()
            }
            Concept::Typ(_) => return Err(EvalError::Typicality(c.to_string())),
        })
    }

    /// `(C ⊑ D)^I = min over Δ of C^I(x) ▷ D^I(x)`.
    pub fn inclusion_degree(
        &self,
        logic: LogicFamily,
        sub: &Concept,
        sup: &Concept,
    ) -> Result<f64, EvalError> {
        let l = self.extension(logic, sub)?;
        let r = self.extension(logic, sup)?;
        Ok(l
            .iter()
            .zip(&r)
            .map(|(&a, &b)| logic.implication(a, b))
            .fold(1.0, f64::min))
    }

    fn check_names(&self, c: &Concept) -> Result<(), EvalError> {
        let mut err = None;
        c.walk(&mut |sub| {
            if err.is_some() {
                return;
            }
            match sub {
                Concept::Name(n) if self.concept(n).is_none() => {
                    err = Some(EvalError::UnknownConcept(n.clone()))
                }
                Concept::Nominal(a) if self.individual(a).is_none() => {
                    err = Some(EvalError::UnknownIndividual(a.clone()))
                }
                Concept::Typ(_) => err = Some(EvalError::Typicality(sub.to_string())),
                _ => {}
            }
        });
        err.map_or(Ok(()), Err)
    }

    fn individual_or_err(&self, a: &str) -> Result<usize, EvalError> {
        self.individual(a)
            .ok_or_else(|| EvalError::UnknownIndividual(a.to_string()))
    }

    /// Truth of `ax` in this interpretation.
    ///
    /// Strict inclusions are subset tests in crisp mode and `≥ 1` inclusions
    /// in fuzzy mode; crisp assertions `C(a)` are read as `C(a) ≥ 1` in
    /// fuzzy mode.
    pub fn satisfies(&self, semantics: Semantics, ax: &Axiom) -> Result<bool, EvalError> {
        let logic = match semantics {
            Semantics::Crisp => {
                if !self.is_crisp() {
                    return Err(EvalError::NotCrisp);
                }
                LogicFamily::Zadeh
            }
            Semantics::Fuzzy(l) => l,
        };
        match ax {
            Axiom::Strict(inc) => match semantics {
                Semantics::Crisp => {
                    let l = self.extension(logic, &inc.sub)?;
                    let r = self.extension(logic, &inc.sup)?;
                    Ok(l.iter().zip(&r).all(|(&a, &b)| a == 0.0 || b == 1.0))
                }
                Semantics::Fuzzy(_) => Ok(Theta::Geq.holds(
                    self.inclusion_degree(logic, &inc.sub, &inc.sup)?,
                    1.0,
                )),
            },
            Axiom::Fuzzy {
                inclusion,
                theta,
                degree,
            } => Ok(theta.holds(
                self.inclusion_degree(logic, &inclusion.sub, &inclusion.sup)?,
                *degree,
            )),
            Axiom::Assertion(Assertion::Concept {
                concept,
                individual,
            }) => {
                let x = self.individual_or_err(individual)?;
                Ok(Theta::Geq.holds(self.degree(logic, concept, x)?, 1.0))
            }
            Axiom::Assertion(Assertion::Role {
                role,
                subject,
                object,
            }) => {
                let x = self.individual_or_err(subject)?;
                let y = self.individual_or_err(object)?;
                Ok(Theta::Geq.holds(self.role_degree(role, x, y), 1.0))
            }
            Axiom::FuzzyAssertion {
                concept,
                individual,
                theta,
                degree,
            } => {
                let x = self.individual_or_err(individual)?;
                Ok(theta.holds(self.degree(logic, concept, x)?, *degree))
            }
            Axiom::Typicality(_) => Err(EvalError::Unsupported("typicality")),
            Axiom::Conditional(_) => Err(EvalError::Unsupported("conditional-constraint")),
            Axiom::Probabilistic(_) => Err(EvalError::Unsupported("probabilistic")),
        }
    }
}

/// `C^I(x)` under `logic`.
pub fn eval_concept(
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    c: &Concept,
    x: usize,
) -> Result<f64, EvalError> {
    interp.degree(logic, c, x)
}

/// `(C ⊑ D)^I` under `logic`.
pub fn eval_inclusion(
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    sub: &Concept,
    sup: &Concept,
) -> Result<f64, EvalError> {
    interp.inclusion_degree(logic, sub, sup)
}

/// Fuzzy-mode satisfaction of `ax` under `logic`.
pub fn check_axiom(
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    ax: &Axiom,
) -> Result<bool, EvalError> {
    interp.satisfies(Semantics::Fuzzy(logic), ax)
}
