use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MlpError;
use crate::syntax::is_identifier;

/// Activation functions with values in `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Activation {
    /// `1 / (1 + e^{-u})`.
    Sigmoid,
    /// `s / (1 + s)` with `s = ln(1 + e^u)`.
    Softplus01,
    /// `clamp(0.2 u + 0.5, 0, 1)`.
    HardSigmoid,
    /// `1` for `u ≥ 0`, else `0`.
    Step,
    /// `clamp(u, 0, 1)`.
    LinearClamp,
}

impl Activation {
    pub const ALL: [Activation; 5] = [
        Activation::Sigmoid,
        Activation::Softplus01,
        Activation::HardSigmoid,
        Activation::Step,
        Activation::LinearClamp,
    ];

    pub fn apply(self, u: f64) -> f64 {
        match self {
            Activation::Sigmoid => {
                if u >= 0.0 {
                    1.0 / (1.0 + (-u).exp())
                } else {
                    let e = u.exp();
                    e / (1.0 + e)
                }
            }
            Activation::Softplus01 => {
                // ln(1 + e^u) without overflow
                let s = if u > 0.0 {
                    u + (-u).exp().ln_1p()
                } else {
                    u.exp().ln_1p()
                };
                s / (1.0 + s)
            }
            Activation::HardSigmoid => (0.2 * u + 0.5).clamp(0.0, 1.0),
            Activation::Step => {
                if u >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::LinearClamp => u.clamp(0.0, 1.0),
        }
    }

    pub fn strictly_increasing(self) -> bool {
        matches!(self, Activation::Sigmoid | Activation::Softplus01)
    }

    /// Every value lies in `(0,1]`.
    pub fn range_in_open_closed_unit(self) -> bool {
        matches!(self, Activation::Sigmoid | Activation::Softplus01)
    }

    pub fn monotone_nondecreasing(self) -> bool {
        true
    }

    pub fn tag(self) -> &'static str {
        match self {
            Activation::Sigmoid => "sigmoid",
            Activation::Softplus01 => "softplus01",
            Activation::HardSigmoid => "hard-sigmoid",
            Activation::Step => "step",
            Activation::LinearClamp => "linear-clamp",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Activation {
    type Err = MlpError;

    fn from_str(s: &str) -> Result<Self, MlpError> {
        Activation::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| MlpError::UnknownActivation(s.to_string()))
    }
}

impl Serialize for Activation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Activation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Unit {
    pub id: String,
    pub activation: Activation,
    #[serde(default)]
    pub bias: f64,
    /// Incoming synapses `(source, weight)`; sources are inputs or units.
    #[serde(rename = "in", default)]
    pub incoming: Vec<(String, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Source {
    Input(usize),
    Unit(usize),
}

/// A network of units over named inputs, with designated units that act
/// as distinguished concepts.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    inputs: Vec<String>,
    units: Vec<Unit>,
    distinguished: Vec<String>,
    sources: Vec<Vec<(Source, f64)>>,
    order: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    inputs: Vec<String>,
    units: Vec<Unit>,
    #[serde(rename = "C", default)]
    distinguished: Vec<String>,
}

impl Network {
    pub fn new(
        inputs: Vec<String>,
        units: Vec<Unit>,
        distinguished: Vec<String>,
    ) -> Result<Self, MlpError> {
        let mut index: HashMap<&str, Source> = HashMap::new();
        for (i, id) in inputs.iter().enumerate() {
            if !is_identifier(id) {
                return Err(MlpError::BadIdentifier(id.clone()));
            }
            if index.insert(id, Source::Input(i)).is_some() {
                return Err(MlpError::DuplicateId(id.clone()));
            }
        }
        for (k, u) in units.iter().enumerate() {
            if !is_identifier(&u.id) {
                return Err(MlpError::BadIdentifier(u.id.clone()));
            }
            if index.insert(&u.id, Source::Unit(k)).is_some() {
                return Err(MlpError::DuplicateId(u.id.clone()));
            }
            if !u.bias.is_finite() {
                return Err(MlpError::NonFinite(u.id.clone()));
            }
        }
        let mut sources = Vec::with_capacity(units.len());
        for u in &units {
            let mut row = Vec::with_capacity(u.incoming.len());
            for (src, w) in &u.incoming {
                let s = *index.get(src.as_str()).ok_or_else(|| MlpError::DanglingSource {
                    unit: u.id.clone(),
                    origin: src.clone(),
                })?;
                if !w.is_finite() {
                    return Err(MlpError::NonFinite(u.id.clone()));
                }
                row.push((s, *w));
            }
            sources.push(row);
        }
        for c in &distinguished {
            match index.get(c.as_str()) {
                Some(Source::Unit(_)) => {}
                _ => return Err(MlpError::UnknownUnit(c.clone())),
            }
        }
        let order = topological_order(&sources);
        Ok(Network {
            inputs,
            units,
            distinguished,
            sources,
            order,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    /// Unit ids designated as distinguished concepts.
    pub fn distinguished(&self) -> &[String] {
        &self.distinguished
    }

    pub fn unit_index(&self, id: &str) -> Option<usize> {
        self.units.iter().position(|u| u.id == id)
    }

    pub fn is_feedforward(&self) -> bool {
        self.order.is_some()
    }

    pub(crate) fn sources(&self, k: usize) -> &[(Source, f64)] {
        &self.sources[k]
    }

    pub(crate) fn order(&self) -> Option<&[usize]> {
        self.order.as_deref()
    }

    pub fn from_json_str(text: &str) -> Result<Self, MlpError> {
        let raw: NetworkJson = serde_json::from_str(text)?;
        Network::new(raw.inputs, raw.units, raw.distinguished)
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
        serde_json::to_value(NetworkJson {
            inputs: self.inputs.clone(),
            units: self.units.clone(),
            distinguished: self.distinguished.clone(),
        })
        .expect("network serialises")
    }
}

// Kahn's algorithm, smallest index first; None on a cycle
fn topological_order(sources: &[Vec<(Source, f64)>]) -> Option<Vec<usize>> {
    let n = sources.len();
    let mut indegree = vec![0usize; n];
    let mut out_edges = vec![Vec::new(); n];
    for (k, row) in sources.iter().enumerate() {
        for (s, _) in row {
            if let Source::Unit(j) = s {
                indegree[k] += 1;
                out_edges[*j].push(k);
            }
        }
    }
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(k) = ready.pop_first() {
        order.push(k);
        for &m in &out_edges[k] {
            indegree[m] -= 1;
            if indegree[m] == 0 {
                ready.insert(m);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn activation_values() {
        assert_eq!(Activation::Sigmoid.apply(0.0), 0.5);
        assert!((Activation::Sigmoid.apply(2.0) - 1.0 / (1.0 + (-2.0f64).exp())).abs() < 1e-15);
        assert_eq!(Activation::Step.apply(-1.0), 0.0);
        assert_eq!(Activation::Step.apply(0.0), 1.0);
        assert_eq!(Activation::HardSigmoid.apply(0.0), 0.5);
        assert_eq!(Activation::HardSigmoid.apply(10.0), 1.0);
        assert_eq!(Activation::HardSigmoid.apply(-10.0), 0.0);
        assert_eq!(Activation::LinearClamp.apply(0.25), 0.25);
        let s = 2f64.ln();
        assert!((Activation::Softplus01.apply(0.0) - s / (1.0 + s)).abs() < 1e-15);
        assert!(Activation::Softplus01.apply(800.0) <= 1.0);
        assert!(Activation::Softplus01.apply(-30.0) > 0.0);
    }

    // the flags must describe the functions on a sample of points
    #[test]
    fn flags_are_truthful() {
        let grid: Vec<f64> = (-400..=400).map(|i| i as f64 / 20.0).collect();
        for a in Activation::ALL {
            let ys: Vec<f64> = grid.iter().map(|&u| a.apply(u)).collect();
            let nondecreasing = ys.windows(2).all(|w| w[0] <= w[1]);
            let increasing = ys.windows(2).all(|w| w[0] < w[1]);
            let open_closed = ys.iter().all(|&y| y > 0.0 && y <= 1.0);
            assert!(ys.iter().all(|&y| (0.0..=1.0).contains(&y)), "{a}");
            assert_eq!(a.monotone_nondecreasing(), nondecreasing, "{a}");
            assert_eq!(a.strictly_increasing(), increasing, "{a}");
            assert_eq!(a.range_in_open_closed_unit(), open_closed, "{a}");
        }
    }

    #[test]
    fn tags_round_trip() {
        for a in Activation::ALL {
            assert_eq!(a.tag().parse::<Activation>().unwrap(), a);
        }
        assert!("tanh".parse::<Activation>().is_err());
    }

    #[test]
    fn json_and_validation() {
        let text = r#"{"inputs":["x1","x2"],"units":[{"id":"h1","activation":"sigmoid","bias":0.0,"in":[["x1",0.5],["x2",-0.3]]}],"C":["h1"]}"#;
        let net = Network::from_json_str(text).unwrap();
        assert!(net.is_feedforward());
        assert_eq!(Network::from_json_str(&net.to_json().to_string()).unwrap(), net);

        let dangling = r#"{"inputs":["x1"],"units":[{"id":"h1","activation":"step","in":[["x9",1.0]]}]}"#;
        assert!(matches!(
            Network::from_json_str(dangling),
            Err(MlpError::DanglingSource { .. })
        ));
        let cyclic = r#"{"inputs":[],"units":[
            {"id":"a","activation":"sigmoid","in":[["b",1.0]]},
            {"id":"b","activation":"sigmoid","in":[["a",1.0]]}]}"#;
        assert!(!Network::from_json_str(cyclic).unwrap().is_feedforward());
        let bad_c = r#"{"inputs":["x"],"units":[],"C":["x"]}"#;
        assert!(matches!(
            Network::from_json_str(bad_c),
            Err(MlpError::UnknownUnit(_))
        ));
    }
}
