use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("the domain must be nonempty")]
    EmptyDomain,
    #[error("domain element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("degree {degree} for `{name}` at `{element}` is outside [0,1]")]
    DegreeOutOfRange {
        name: String,
        element: String,
        degree: f64,
    },
    #[error("degree {degree} for `{name}` at `{element}` is not crisp (expected 0 or 1)")]
    NotCrisp {
        name: String,
        element: String,
        degree: f64,
    },
    #[error("interpretation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A finite fuzzy interpretation.
///
/// Concept names map every domain element to a degree in `[0,1]`; roles are
/// stored sparsely as successor lists, with absent pairs at degree 0.
/// Individuals map to domain elements. Built through
/// [`InterpretationBuilder`] and immutable afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyInterpretation {
    domain: Vec<String>,
    index: HashMap<String, usize>,
    concepts: BTreeMap<String, Vec<f64>>,
    roles: BTreeMap<String, Vec<Vec<(usize, f64)>>>,
    individuals: BTreeMap<String, usize>,
}

impl FuzzyInterpretation {
    pub fn builder<I, S>(domain: I) -> InterpretationBuilder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        InterpretationBuilder::new(domain.into_iter().map(Into::into).collect())
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn element_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn element_id(&self, x: usize) -> &str {
        &self.domain[x]
    }

    /// Membership row of a concept name.
    pub fn concept(&self, name: &str) -> Option<&[f64]> {
        self.concepts.get(name).map(Vec::as_slice)
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &str> {
        self.concepts.keys().map(String::as_str)
    }

    pub fn role_names(&self) -> impl Iterator<Item = &str> {
        self.roles.keys().map(String::as_str)
    }

    /// Explicit successors of `x` under `role`; an unknown role has none.
    pub fn successors(&self, role: &str, x: usize) -> &[(usize, f64)] {
        self.roles
            .get(role)
            .map(|rows| rows[x].as_slice())
            .unwrap_or(&[])
    }

    pub fn role_degree(&self, role: &str, x: usize, y: usize) -> f64 {
        self.successors(role, x)
            .iter()
            .filter(|(z, _)| *z == y)
            .map(|(_, d)| *d)
            .fold(0.0, f64::max)
    }

    pub fn individual(&self, name: &str) -> Option<usize> {
        self.individuals.get(name).copied()
    }

    pub fn individuals(&self) -> impl Iterator<Item = (&str, usize)> {
        self.individuals.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_crisp(&self) -> bool {
        let crisp = |d: f64| d == 0.0 || d == 1.0;
        self.concepts.values().flatten().all(|&d| crisp(d))
            && self
                .roles
                .values()
                .flatten()
                .flatten()
                .all(|&(_, d)| crisp(d))
    }

    /// A copy of this interpretation with one more element, `new_id`, whose
    /// concept memberships and role edges (in both directions) mirror `x`.
    pub fn with_duplicate(&self, x: usize, new_id: &str) -> Result<Self, InterpError> {
        if self.index.contains_key(new_id) {
            return Err(InterpError::DuplicateElement(new_id.to_string()));
        }
        let mut out = self.clone();
        let copy = out.domain.len();
        out.domain.push(new_id.to_string());
        out.index.insert(new_id.to_string(), copy);
        for row in out.concepts.values_mut() {
            let d = row[x];
            row.push(d);
        }
        for rows in out.roles.values_mut() {
            let mut out_edges = rows[x].clone();
            for row in rows.iter_mut() {
                let incoming: Vec<_> = row.iter().filter(|(y, _)| *y == x).copied().collect();
                row.extend(incoming.into_iter().map(|(_, d)| (copy, d)));
            }
            if let Some(self_loop) = rows[x].iter().find(|(y, _)| *y == copy).copied() {
                out_edges.push(self_loop);
            }
            rows.push(out_edges);
        }
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self, InterpError> {
        let raw: InterpretationJson = serde_json::from_str(text)?;
        raw.into_interpretation()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InterpError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| InterpError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = InterpretationJson {
            domain: self.domain.clone(),
            concepts: self
                .concepts
                .iter()
                .map(|(name, row)| {
                    let entries = row
                        .iter()
                        .enumerate()
                        .filter(|(_, d)| **d != 0.0)
                        .map(|(x, d)| (self.domain[x].clone(), *d))
                        .collect();
                    (name.clone(), entries)
                })
                .collect(),
            roles: self
                .roles
                .iter()
                .map(|(name, rows)| {
                    let edges = rows
                        .iter()
                        .enumerate()
                        .flat_map(|(x, succ)| {
                            succ.iter().map(move |&(y, d)| (x, y, d))
                        })
                        .map(|(x, y, d)| (self.domain[x].clone(), self.domain[y].clone(), d))
                        .collect();
                    (name.clone(), edges)
                })
                .collect(),
            individuals: self
                .individuals
                .iter()
                .map(|(a, &x)| (a.clone(), self.domain[x].clone()))
                .collect(),
        };
        serde_json::to_value(raw).expect("interpretation serialises")
    }
}

/// Incremental construction with validation at [`build`](Self::build).
#[derive(Clone, Debug)]
pub struct InterpretationBuilder {
    domain: Vec<String>,
    concepts: BTreeMap<String, Vec<f64>>,
    roles: BTreeMap<String, Vec<(String, String, f64)>>,
    individuals: BTreeMap<String, String>,
    element_entries: Vec<(String, String, f64)>,
}

impl InterpretationBuilder {
    fn new(domain: Vec<String>) -> Self {
        InterpretationBuilder {
            domain,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
            individuals: BTreeMap::new(),
            element_entries: Vec::new(),
        }
    }

    /// Declares a concept name with a full membership row (domain order).
    pub fn concept_row(mut self, name: impl Into<String>, row: Vec<f64>) -> Self {
        self.concepts.insert(name.into(), row);
        self
    }

    /// Declares a concept name with every element at degree 0.
    pub fn declare_concept(mut self, name: impl Into<String>) -> Self {
        let n = self.domain.len();
        self.concepts.entry(name.into()).or_insert_with(|| vec![0.0; n]);
        self
    }

    /// Sets one membership degree, declaring the concept if needed.
    pub fn degree(
        mut self,
        name: impl Into<String>,
        element: impl Into<String>,
        degree: f64,
    ) -> Self {
        self.element_entries
            .push((name.into(), element.into(), degree));
        self
    }

    /// Declares a role name even if it has no edges.
    pub fn declare_role(mut self, role: impl Into<String>) -> Self {
        self.roles.entry(role.into()).or_default();
        self
    }

    pub fn role_edge(
        mut self,
        role: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        degree: f64,
    ) -> Self {
        self.roles
            .entry(role.into())
            .or_default()
            .push((from.into(), to.into(), degree));
        self
    }

    pub fn individual(mut self, name: impl Into<String>, element: impl Into<String>) -> Self {
        self.individuals.insert(name.into(), element.into());
        self
    }

    pub fn build(self) -> Result<FuzzyInterpretation, InterpError> {
        if self.domain.is_empty() {
            return Err(InterpError::EmptyDomain);
        }
        let mut index = HashMap::with_capacity(self.domain.len());
        for (i, id) in self.domain.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(InterpError::DuplicateElement(id.clone()));
            }
        }
        let n = self.domain.len();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| InterpError::UnknownElement(id.to_string()))
        };
        let check = |name: &str, x: usize, d: f64| {
            if (0.0..=1.0).contains(&d) {
                Ok(())
            } else {
                Err(InterpError::DegreeOutOfRange {
                    name: name.to_string(),
                    element: self.domain[x].clone(),
                    degree: d,
                })
            }
        };

        let mut concepts = BTreeMap::new();
        for (name, mut row) in self.concepts {
            row.resize(n, 0.0);
            for (x, &d) in row.iter().enumerate() {
                check(&name, x, d)?;
            }
            concepts.insert(name, row);
        }
        for (name, element, d) in &self.element_entries {
            let x = lookup(element)?;
            check(name, x, *d)?;
            concepts.entry(name.clone()).or_insert_with(|| vec![0.0; n])[x] = *d;
        }

        let mut roles = BTreeMap::new();
        for (name, edges) in self.roles {
            let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
            for (from, to, d) in edges {
                let x = lookup(&from)?;
                let y = lookup(&to)?;
                check(&name, x, d)?;
                if let Some(slot) = rows[x].iter_mut().find(|(z, _)| *z == y) {
                    slot.1 = d;
                } else {
                    rows[x].push((y, d));
                }
            }
            roles.insert(name, rows);
        }

        let mut individuals = BTreeMap::new();
        for (a, element) in self.individuals {
            individuals.insert(a, lookup(&element)?);
        }

        Ok(FuzzyInterpretation {
            domain: self.domain,
            index,
            concepts,
            roles,
            individuals,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct InterpretationJson {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String, f64)>>,
    #[serde(default)]
    individuals: BTreeMap<String, String>,
}

impl InterpretationJson {
    fn into_interpretation(self) -> Result<FuzzyInterpretation, InterpError> {
        let mut b = FuzzyInterpretation::builder(self.domain);
        for (name, entries) in self.concepts {
            b = b.declare_concept(name.clone());
            for (element, d) in entries {
                b = b.degree(name.clone(), element, d);
            }
        }
        for (role, edges) in self.roles {
            b = b.declare_role(role.clone());
            for (from, to, d) in edges {
                b = b.role_edge(role.clone(), from, to, d);
            }
        }
        for (a, element) in self.individuals {
            b = b.individual(a, element);
        }
        b.build()
    }
}

/// A fuzzy interpretation whose every degree is 0 or 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CrispInterpretation(FuzzyInterpretation);

impl CrispInterpretation {
    pub fn new(interp: FuzzyInterpretation) -> Result<Self, InterpError> {
        for (name, row) in &interp.concepts {
            if let Some((x, &d)) = row.iter().enumerate().find(|(_, &d)| d != 0.0 && d != 1.0) {
                return Err(InterpError::NotCrisp {
                    name: name.clone(),
                    element: interp.domain[x].clone(),
                    degree: d,
                });
            }
        }
        for (name, rows) in &interp.roles {
            for (x, succ) in rows.iter().enumerate() {
                if let Some(&(_, d)) = succ.iter().find(|(_, d)| *d != 0.0 && *d != 1.0) {
                    return Err(InterpError::NotCrisp {
                        name: name.clone(),
                        element: interp.domain[x].clone(),
                        degree: d,
                    });
                }
            }
        }
        Ok(CrispInterpretation(interp))
    }

    pub fn as_fuzzy(&self) -> &FuzzyInterpretation {
        &self.0
    }

    pub fn into_fuzzy(self) -> FuzzyInterpretation {
        self.0
    }

    pub fn with_duplicate(&self, x: usize, new_id: &str) -> Result<Self, InterpError> {
        Ok(CrispInterpretation(self.0.with_duplicate(x, new_id)?))
    }
}

impl std::ops::Deref for CrispInterpretation {
    type Target = FuzzyInterpretation;

    fn deref(&self) -> &FuzzyInterpretation {
        &self.0
    }
}

impl TryFrom<FuzzyInterpretation> for CrispInterpretation {
    type Error = InterpError;

    fn try_from(value: FuzzyInterpretation) -> Result<Self, Self::Error> {
        CrispInterpretation::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"domain":["d1","d2"],
        "concepts":{"C":{"d1":0.7},"D":{}},
        "roles":{"r":[["d1","d2",1.0]]},
        "individuals":{"a":"d1"}}"#;

    #[test]
    fn json_defaults_missing_entries_to_zero() {
        let i = FuzzyInterpretation::from_json_str(SAMPLE).unwrap();
        assert_eq!(i.concept("C").unwrap(), &[0.7, 0.0]);
        assert_eq!(i.concept("D").unwrap(), &[0.0, 0.0]);
        assert_eq!(i.role_degree("r", 0, 1), 1.0);
        assert_eq!(i.role_degree("r", 1, 0), 0.0);
        assert_eq!(i.role_degree("missing", 0, 1), 0.0);
        assert_eq!(i.individual("a"), Some(0));
    }

    #[test]
    fn json_round_trip() {
        let i = FuzzyInterpretation::from_json_str(SAMPLE).unwrap();
        let back = FuzzyInterpretation::from_json_str(&i.to_json().to_string()).unwrap();
        assert_eq!(i, back);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            FuzzyInterpretation::builder(Vec::<String>::new()).build(),
            Err(InterpError::EmptyDomain)
        ));
        assert!(matches!(
            FuzzyInterpretation::builder(["a", "a"]).build(),
            Err(InterpError::DuplicateElement(_))
        ));
        assert!(matches!(
            FuzzyInterpretation::builder(["a"]).degree("C", "a", 1.5).build(),
            Err(InterpError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            FuzzyInterpretation::builder(["a"]).degree("C", "b", 0.5).build(),
            Err(InterpError::UnknownElement(_))
        ));
        assert!(matches!(
            FuzzyInterpretation::builder(["a"]).degree("C", "a", f64::NAN).build(),
            Err(InterpError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn crisp_check() {
        let i = FuzzyInterpretation::from_json_str(SAMPLE).unwrap();
        assert!(!i.is_crisp());
        assert!(CrispInterpretation::new(i).is_err());
        let c = FuzzyInterpretation::builder(["x", "y"])
            .degree("A", "x", 1.0)
            .build()
            .unwrap();
        assert!(CrispInterpretation::new(c).is_ok());
    }

    #[test]
    fn duplicate_copies_rows_and_edges() {
        let i = FuzzyInterpretation::from_json_str(SAMPLE).unwrap();
        let j = i.with_duplicate(1, "d3").unwrap();
        assert_eq!(j.concept("C").unwrap(), &[0.7, 0.0, 0.0]);
        assert_eq!(j.role_degree("r", 0, 2), 1.0);
        let k = i.with_duplicate(0, "d3").unwrap();
        assert_eq!(k.concept("C").unwrap(), &[0.7, 0.0, 0.7]);
        assert_eq!(k.role_degree("r", 2, 1), 1.0);
        assert!(i.with_duplicate(0, "d1").is_err());
    }
}
