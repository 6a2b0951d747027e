//! Concept and axiom syntax.
//!
//! Concepts are ALC concepts extended with the typicality operator `T(..)`
//! and nominals `{a}`. The concrete syntax is ASCII:
//!
//! ```text
//! concept := or
//! or      := and ("or" and)*
//! and     := unary ("and" unary)*
//! unary   := "not" unary | ("exists" | "forall") ROLE "." unary | atom
//! atom    := "Top" | "Bottom" | NAME | "T" "(" concept ")" | "{" IND "}" | "(" concept ")"
//! ```
//!
//! Axioms use `[=` for inclusion, `@ w` for weights and `>=, <=, >, <` for
//! degree bounds. The `.wkb` knowledge-base format built on top of this is
//! described in [`crate::kb`].

mod lexer;
mod parser;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use lexer::{Token, TokenKind};
pub use parser::{
    parse_axiom, parse_concept, parse_concept_unchecked, parse_statement, Namespace, ParseError,
    ParseErrorKind, Statement,
};

/// An ALC concept with typicality and nominals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Name(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Exists(String, Box<Concept>),
    Forall(String, Box<Concept>),
    Typ(Box<Concept>),
    Nominal(String),
}

impl Concept {
    pub fn name(name: impl Into<String>) -> Self {
        Concept::Name(name.into())
    }

    pub fn nominal(individual: impl Into<String>) -> Self {
        Concept::Nominal(individual.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn and(l: Concept, r: Concept) -> Self {
        Concept::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Concept, r: Concept) -> Self {
        Concept::Or(Box::new(l), Box::new(r))
    }

    pub fn exists(role: impl Into<String>, c: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(c))
    }

    pub fn forall(role: impl Into<String>, c: Concept) -> Self {
        Concept::Forall(role.into(), Box::new(c))
    }

    pub fn typ(c: Concept) -> Self {
        Concept::Typ(Box::new(c))
    }

    /// Concept names occurring anywhere in the expression.
    pub fn collect_names(&self, out: &mut BTreeSet<String>) {
        self.walk(&mut |c| {
            if let Concept::Name(n) = c {
                out.insert(n.clone());
            }
        });
    }

    pub fn collect_roles(&self, out: &mut BTreeSet<String>) {
        self.walk(&mut |c| match c {
            Concept::Exists(r, _) | Concept::Forall(r, _) => {
                out.insert(r.clone());
            }
            _ => {}
        });
    }

    pub fn collect_individuals(&self, out: &mut BTreeSet<String>) {
        self.walk(&mut |c| {
            if let Concept::Nominal(a) = c {
                out.insert(a.clone());
            }
        });
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    /// Pre-order traversal.
    pub fn walk(&self, f: &mut impl FnMut(&Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) | Concept::Nominal(_) => {}
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) | Concept::Typ(c) => {
                c.walk(f)
            }
            Concept::And(l, r) | Concept::Or(l, r) => {
                l.walk(f);
                r.walk(f);
            }
        }
    }

    fn any(&self, pred: impl Fn(&Concept) -> bool) -> bool {
        let mut found = false;
        self.walk(&mut |c| found |= pred(c));
        found
    }

    pub fn contains_typ(&self) -> bool {
        self.any(|c| matches!(c, Concept::Typ(_)))
    }

    /// True when some `T(..)` occurs inside another `T(..)`.
    pub fn has_nested_typ(&self) -> bool {
        let mut nested = false;
        self.walk(&mut |c| {
            if let Concept::Typ(inner) = c {
                nested |= inner.contains_typ();
            }
        });
        nested
    }

    /// Only `Top`, names, conjunction and existential restriction.
    pub fn is_el(&self) -> bool {
        !self.any(|c| {
            !matches!(
                c,
                Concept::Top | Concept::Name(_) | Concept::And(..) | Concept::Exists(..)
            )
        })
    }

    /// No quantifiers and no nominals.
    pub fn is_role_free(&self) -> bool {
        !self.any(|c| matches!(c, Concept::Exists(..) | Concept::Forall(..) | Concept::Nominal(_)))
    }
}

/// Degree comparison operator of fuzzy axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theta {
    Geq,
    Leq,
    Gt,
    Lt,
}

impl Theta {
    /// `value θ threshold`, with [`crate::tol::CMP`] slack on the non-strict
    /// variants and exact comparison on the strict ones.
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Theta::Geq => value >= threshold - crate::tol::CMP,
            Theta::Leq => value <= threshold + crate::tol::CMP,
            Theta::Gt => value > threshold,
            Theta::Lt => value < threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Theta::Geq => ">=",
            Theta::Leq => "<=",
            Theta::Gt => ">",
            Theta::Lt => "<",
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `sub ⊑ sup`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inclusion {
    pub sub: Concept,
    pub sup: Concept,
}

impl Inclusion {
    pub fn new(sub: Concept, sup: Concept) -> Self {
        Inclusion { sub, sup }
    }
}

/// `T(subject) ⊑ consequent` with a real weight.
#[derive(Clone, Debug, PartialEq)]
pub struct DefeasibleInclusion {
    pub subject: String,
    pub consequent: Concept,
    pub weight: f64,
}

/// A crisp ABox assertion.
#[derive(Clone, Debug, PartialEq)]
pub enum Assertion {
    Concept { concept: Concept, individual: String },
    Role { role: String, subject: String, object: String },
}

/// `(conclusion | condition)[lower, upper]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalConstraint {
    pub conclusion: Concept,
    pub condition: Concept,
    pub lower: f64,
    pub upper: f64,
}

/// `P(concept(individual))[probability]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbAssertion {
    pub concept: Concept,
    pub individual: String,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Axiom {
    Strict(Inclusion),
    Typicality(DefeasibleInclusion),
    Fuzzy {
        inclusion: Inclusion,
        theta: Theta,
        degree: f64,
    },
    Assertion(Assertion),
    FuzzyAssertion {
        concept: Concept,
        individual: String,
        theta: Theta,
        degree: f64,
    },
    Conditional(ConditionalConstraint),
    Probabilistic(ProbAssertion),
}

impl Axiom {
    /// Every concept expression mentioned by the axiom.
    pub fn concepts(&self) -> Vec<&Concept> {
        match self {
            Axiom::Strict(inc) | Axiom::Fuzzy { inclusion: inc, .. } => vec![&inc.sub, &inc.sup],
            Axiom::Typicality(d) => vec![&d.consequent],
            Axiom::Assertion(Assertion::Concept { concept, .. })
            | Axiom::FuzzyAssertion { concept, .. }
            | Axiom::Probabilistic(ProbAssertion { concept, .. }) => vec![concept],
            Axiom::Assertion(Assertion::Role { .. }) => vec![],
            Axiom::Conditional(cc) => vec![&cc.conclusion, &cc.condition],
        }
    }

    /// Contribution of this axiom to a signature.
    pub fn extend_signature(&self, sig: &mut Signature) {
        for c in self.concepts() {
            sig.add_concept_expr(c);
        }
        match self {
            Axiom::Typicality(d) => {
                sig.concepts.insert(d.subject.clone());
            }
            Axiom::Assertion(Assertion::Concept { individual, .. })
            | Axiom::FuzzyAssertion { individual, .. }
            | Axiom::Probabilistic(ProbAssertion { individual, .. }) => {
                sig.individuals.insert(individual.clone());
            }
            Axiom::Assertion(Assertion::Role {
                role,
                subject,
                object,
            }) => {
                sig.roles.insert(role.clone());
                sig.individuals.insert(subject.clone());
                sig.individuals.insert(object.clone());
            }
            _ => {}
        }
    }
}

/// Declared names, one set per namespace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_concepts<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.concepts.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn with_roles<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.roles.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn with_individuals<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.individuals.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn add_concept_expr(&mut self, c: &Concept) {
        c.collect_names(&mut self.concepts);
        c.collect_roles(&mut self.roles);
        c.collect_individuals(&mut self.individuals);
    }

    /// Names used in more than one namespace.
    pub fn overlaps(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        for n in &self.concepts {
            if self.roles.contains(n) || self.individuals.contains(n) {
                out.insert(n.clone());
            }
        }
        for n in &self.roles {
            if self.individuals.contains(n) {
                out.insert(n.clone());
            }
        }
        out.into_iter().collect()
    }
}

/// Syntactic fragment of a set of concepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fragment {
    El,
    Boolean,
    Alc,
}

impl Fragment {
    /// `EL` when every concept is EL and there are no role assertions
    /// outside it, `Boolean` when no roles, quantifiers or nominals occur,
    /// `ALC` otherwise.
    pub fn classify<'a>(concepts: impl IntoIterator<Item = &'a Concept>, uses_roles: bool) -> Self {
        let mut el = true;
        let mut boolean = !uses_roles;
        for c in concepts {
            el &= c.is_el();
            boolean &= c.is_role_free();
        }
        if el {
            Fragment::El
        } else if boolean {
            Fragment::Boolean
        } else {
            Fragment::Alc
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::El => "EL",
            Fragment::Boolean => "boolean",
            Fragment::Alc => "ALC",
        })
    }
}

/// Identifiers: `[A-Za-z_][A-Za-z0-9_]*`, excluding keywords.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !lexer::is_keyword(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn el_membership() {
        let c = Concept::and(Concept::name("A"), Concept::exists("r", Concept::name("B")));
        assert!(c.is_el());
        assert!(!Concept::not(Concept::name("A")).is_el());
        assert!(!Concept::Bottom.is_el());
    }

    #[test]
    fn fragment_of_concept_sets() {
        let el = [Concept::and(Concept::name("A"), Concept::exists("r", Concept::name("B")))];
        assert_eq!(Fragment::classify(&el, false), Fragment::El);
        let boolean = [Concept::not(Concept::name("A"))];
        assert_eq!(Fragment::classify(&boolean, false), Fragment::Boolean);
        let alc = [Concept::forall("r", Concept::name("A"))];
        assert_eq!(Fragment::classify(&alc, false), Fragment::Alc);
        assert_eq!(Fragment::classify(&boolean, true), Fragment::Alc);
    }

    #[test]
    fn theta_boundaries() {
        assert!(!Theta::Gt.holds(0.5, 0.5));
        assert!(Theta::Geq.holds(0.5 - 1e-12, 0.5));
        assert!(!Theta::Geq.holds(0.5 - 1e-6, 0.5));
        assert!(Theta::Leq.holds(0.3, 0.3));
        assert!(!Theta::Lt.holds(0.3, 0.3));
    }

    #[test]
    fn nested_typicality_detection() {
        let ok = Concept::and(Concept::typ(Concept::name("A")), Concept::name("B"));
        assert!(!ok.has_nested_typ());
        let bad = Concept::typ(Concept::not(Concept::typ(Concept::name("A"))));
        assert!(bad.has_nested_typ());
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("has_boss"));
        assert!(is_identifier("_x1"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier("and"));
        assert!(!is_identifier("Top"));
        assert!(!is_identifier("a-b"));
    }
}
