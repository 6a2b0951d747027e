//! Weighted knowledge bases `⟨T_strict, T_C1, …, T_Ck, A⟩`.
//!
//! A [`WeightedKb`] holds strict inclusions, one weighted defeasible TBox per
//! distinguished concept, a crisp ABox, and any other axioms found in the
//! source file (fuzzy axioms, conditional constraints, probabilistic
//! assertions), kept in `extra` for query files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{
    parse_statement, Assertion, Axiom, Concept, DefeasibleInclusion, Fragment, Inclusion,
    ParseError, ParseErrorKind, Signature, Statement,
};

#[derive(Debug, Error)]
pub enum KbError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedKb {
    /// Distinguished concepts, in declaration order.
    pub distinguished: Vec<String>,
    pub strict: Vec<Inclusion>,
    /// Defeasible inclusions per distinguished concept, in textual order.
    pub defeasible: BTreeMap<String, Vec<DefeasibleInclusion>>,
    pub abox: Vec<Assertion>,
    pub extra: Vec<Axiom>,
}

impl WeightedKb {
    /// An empty KB over the given distinguished concepts.
    pub fn new<I, S>(distinguished: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut kb = WeightedKb::default();
        for c in distinguished {
            kb.declare(c);
        }
        kb
    }

    /// Declares `c` distinguished (no-op when already declared).
    pub fn declare(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.defeasible.contains_key(&c) {
            self.defeasible.insert(c.clone(), Vec::new());
            self.distinguished.push(c);
        }
    }

    pub fn is_distinguished(&self, c: &str) -> bool {
        self.distinguished.iter().any(|d| d == c)
    }

    /// Appends `T(subject) ⊑ consequent` with `weight`, declaring `subject`.
    pub fn add_default(&mut self, subject: &str, consequent: Concept, weight: f64) -> &mut Self {
        self.declare(subject);
        self.defeasible
            .get_mut(subject)
            .expect("declared")
            .push(DefeasibleInclusion {
                subject: subject.to_string(),
                consequent,
                weight,
            });
        self
    }

    pub fn add_strict(&mut self, sub: Concept, sup: Concept) -> &mut Self {
        self.strict.push(Inclusion::new(sub, sup));
        self
    }

    /// The defeasible inclusions of `c`; empty for unknown concepts.
    pub fn defaults(&self, c: &str) -> &[DefeasibleInclusion] {
        self.defeasible.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every concept expression of the KB.
    pub fn concepts(&self) -> Vec<&Concept> {
        let mut out = Vec::new();
        for inc in &self.strict {
            out.push(&inc.sub);
            out.push(&inc.sup);
        }
        for ds in self.defeasible.values() {
            out.extend(ds.iter().map(|d| &d.consequent));
        }
        for a in &self.abox {
            if let Assertion::Concept { concept, .. } = a {
                out.push(concept);
            }
        }
        for ax in &self.extra {
            out.extend(ax.concepts());
        }
        out
    }

    /// Names used by the KB, one set per namespace.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        sig.concepts.extend(self.distinguished.iter().cloned());
        for ax in self.axioms() {
            ax.extend_signature(&mut sig);
        }
        sig
    }

    /// Every axiom of the KB, owned, in canonical order.
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = self.strict.iter().cloned().map(Axiom::Strict).collect();
        for c in &self.distinguished {
            out.extend(self.defaults(c).iter().cloned().map(Axiom::Typicality));
        }
        for (c, ds) in &self.defeasible {
            if !self.is_distinguished(c) {
                out.extend(ds.iter().cloned().map(Axiom::Typicality));
            }
        }
        out.extend(self.abox.iter().cloned().map(Axiom::Assertion));
        out.extend(self.extra.iter().cloned());
        out
    }

    pub fn has_role_assertions(&self) -> bool {
        self.abox.iter().any(|a| matches!(a, Assertion::Role { .. }))
    }

    /// `EL` when all concepts use only `Top`, names, `and`, `exists`;
    /// `boolean` when no roles, quantifiers or nominals occur; `ALC`
    /// otherwise. Typicality on a left side is looked through.
    pub fn classify_fragment(&self) -> Fragment {
        let concepts: Vec<&Concept> = self
            .concepts()
            .into_iter()
            .map(|c| match c {
                Concept::Typ(inner) => inner.as_ref(),
                other => other,
            })
            .collect();
        Fragment::classify(concepts, self.has_role_assertions())
    }

    /// Checks the KB invariants. Errors make the KB unusable; warnings flag
    /// defeasible consequents outside EL.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.distinguished {
            if !seen.insert(c) {
                out.push(Diagnostic::error(format!(
                    "concept `{c}` is declared distinguished more than once"
                )));
            }
            if !self.defeasible.contains_key(c) {
                out.push(Diagnostic::error(format!(
                    "distinguished concept `{c}` has no defeasible TBox entry"
                )));
            }
        }
        for (c, ds) in &self.defeasible {
            if !self.is_distinguished(c) {
                out.push(Diagnostic::error(format!(
                    "defeasible inclusions for `{c}`, which is not declared distinguished"
                )));
            }
            for d in ds {
                if d.subject != *c {
                    out.push(Diagnostic::error(format!(
                        "defeasible inclusion with subject `{}` filed under `{c}`",
                        d.subject
                    )));
                }
                if !d.weight.is_finite() {
                    out.push(Diagnostic::error(format!(
                        "non-finite weight {} on T({c}) [= {}",
                        d.weight, d.consequent
                    )));
                }
                if d.consequent.contains_typ() {
                    out.push(Diagnostic::error(format!(
                        "typicality inside the consequent of T({c}) [= {}",
                        d.consequent
                    )));
                } else if !d.consequent.is_el() {
                    out.push(Diagnostic::warning(format!(
                        "consequent `{}` of T({c}) is outside EL",
                        d.consequent
                    )));
                }
            }
        }
        for inc in &self.strict {
            if inc.sub.contains_typ() || inc.sup.contains_typ() {
                out.push(Diagnostic::error(format!(
                    "typicality in strict inclusion {} [= {}",
                    inc.sub, inc.sup
                )));
            }
        }
        for a in &self.abox {
            if let Assertion::Concept { concept, .. } = a {
                if concept.contains_typ() {
                    out.push(Diagnostic::error(format!(
                        "typicality in assertion on `{concept}`"
                    )));
                }
            }
        }
        for ax in &self.extra {
            if ax.concepts().iter().any(|c| c.has_nested_typ()) {
                out.push(Diagnostic::error(format!("nested typicality in `{ax}`")));
            }
        }
        for name in self.signature().overlaps() {
            out.push(Diagnostic::error(format!(
                "identifier `{name}` is used in more than one namespace"
            )));
        }
        out
    }

    /// The `.wkb` text of the KB.
    pub fn to_wkb_string(&self) -> String {
        let mut s = String::new();
        if !self.distinguished.is_empty() {
            writeln!(
                s,
                "{}",
                Statement::Distinguished(self.distinguished.clone())
            )
            .unwrap();
        }
        for ax in self.axioms() {
            writeln!(s, "{ax}").unwrap();
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, KbError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| KbError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(parse_kb(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), KbError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_wkb_string()).map_err(|source| KbError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

impl fmt::Display for WeightedKb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_wkb_string())
    }
}

/// Parses a `.wkb` document.
///
/// Statements may appear in any order; a `def(C)` line is accepted as long as
/// `C` is declared distinguished somewhere in the document.
pub fn parse_kb(text: &str) -> Result<WeightedKb, ParseError> {
    let mut kb = WeightedKb::default();
    let mut pending: Vec<(usize, DefeasibleInclusion)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let Some(stmt) = parse_statement(line, line_no)? else {
            continue;
        };
        match stmt {
            Statement::Distinguished(names) => {
                for name in names {
                    if kb.is_distinguished(&name) {
                        let column = line.find(name.as_str()).map_or(1, |c| c + 1);
                        return Err(ParseError {
                            line: line_no,
                            column,
                            kind: ParseErrorKind::DuplicateDeclaration(name),
                        });
                    }
                    kb.declare(name);
                }
            }
            Statement::Axiom(Axiom::Strict(inc)) => kb.strict.push(inc),
            Statement::Axiom(Axiom::Typicality(d)) => pending.push((line_no, d)),
            Statement::Axiom(Axiom::Assertion(a)) => kb.abox.push(a),
            Statement::Axiom(other) => kb.extra.push(other),
        }
    }
    for (line_no, d) in pending {
        if !kb.is_distinguished(&d.subject) {
            let line = text.lines().nth(line_no - 1).unwrap_or("");
            let column = line.find(d.subject.as_str()).map_or(1, |c| c + 1);
            return Err(ParseError {
                line: line_no,
                column,
                kind: ParseErrorKind::UndeclaredSubject(d.subject),
            });
        }
        kb.defeasible
            .get_mut(&d.subject)
            .expect("declared")
            .push(d);
    }
    Ok(kb)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message,
        }
    }

    pub fn warning(message: String) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}
