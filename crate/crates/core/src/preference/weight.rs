use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::PrefError;
use crate::fuzzy::{CrispInterpretation, FuzzyInterpretation, LogicFamily};
use crate::kb::WeightedKb;
use crate::syntax::Concept;

/// A value of `ℝ ∪ {−∞}`, with `−∞` below every real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    NegInf,
    Finite(f64),
}

impl Weight {
    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Weight::Finite(v) => Some(v),
            Weight::NegInf => None,
        }
    }

    /// Total comparison; weights are never NaN.
    pub fn cmp_total(self, other: Weight) -> Ordering {
        match (self, other) {
            (Weight::NegInf, Weight::NegInf) => Ordering::Equal,
            (Weight::NegInf, Weight::Finite(_)) => Ordering::Less,
            (Weight::Finite(_), Weight::NegInf) => Ordering::Greater,
            (Weight::Finite(a), Weight::Finite(b)) => a.total_cmp(&b),
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.partial_cmp(b),
            _ => Some(self.cmp_total(*other)),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::NegInf => f.write_str("-inf"),
            Weight::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Weight::NegInf => s.serialize_str("-inf"),
            Weight::Finite(v) => s.serialize_f64(*v),
        }
    }
}

impl From<f64> for Weight {
    fn from(v: f64) -> Self {
        Weight::Finite(v)
    }
}

fn defaults_of<'a>(
    kb: &'a WeightedKb,
    ci: &str,
) -> Result<&'a [crate::syntax::DefeasibleInclusion], PrefError> {
    if !kb.is_distinguished(ci) {
        return Err(PrefError::UnknownDistinguished(ci.to_string()));
    }
    Ok(kb.defaults(ci))
}

/// `W_i(x)` in a crisp interpretation: `−∞` when `x ∉ C_i`, otherwise the
/// sum of the weights of the defaults of `C_i` whose consequent contains
/// `x`, accumulated in textual order.
pub fn crisp_weight(
    kb: &WeightedKb,
    interp: &CrispInterpretation,
    ci: &str,
    x: usize,
) -> Result<Weight, PrefError> {
    let defaults = defaults_of(kb, ci)?;
    let logic = LogicFamily::Zadeh;
    if interp.degree(logic, &Concept::name(ci), x)? != 1.0 {
        return Ok(Weight::NegInf);
    }
    let mut sum = 0.0;
    for d in defaults {
        if interp.degree(logic, &d.consequent, x)? == 1.0 {
            sum += d.weight;
        }
    }
    Ok(Weight::Finite(sum))
}

/// `W_i(x)` in a fuzzy interpretation: `−∞` when `C_i^I(x) = 0`, otherwise
/// `Σ_h w_h · D_h^I(x)` accumulated in textual order.
pub fn fuzzy_weight(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    ci: &str,
    x: usize,
) -> Result<Weight, PrefError> {
    let defaults = defaults_of(kb, ci)?;
    if interp.degree(logic, &Concept::name(ci), x)? == 0.0 {
        return Ok(Weight::NegInf);
    }
    let mut sum = 0.0;
    for d in defaults {
        sum += d.weight * interp.degree(logic, &d.consequent, x)?;
    }
    Ok(Weight::Finite(sum))
}

/// `W_i` for every distinguished concept and element, computed with
/// whole-domain extensions.
pub(crate) fn weight_rows(
    kb: &WeightedKb,
    interp: &FuzzyInterpretation,
    logic: LogicFamily,
    crisp: bool,
) -> Result<Vec<Vec<Weight>>, PrefError> {
    let mut rows = Vec::with_capacity(kb.distinguished.len());
    for ci in &kb.distinguished {
        let gate = interp.extension(logic, &Concept::name(ci.as_str()))?;
        let exts = kb
            .defaults(ci)
            .iter()
            .map(|d| Ok((d.weight, interp.extension(logic, &d.consequent)?)))
            .collect::<Result<Vec<_>, PrefError>>()?;
        let row = (0..interp.len())
            .map(|x| {
                let member = if crisp { gate[x] == 1.0 } else { gate[x] > 0.0 };
                if !member {
                    return Weight::NegInf;
                }
                let mut sum = 0.0;
                for (w, ext) in &exts {
                    if crisp {
                        if ext[x] == 1.0 {
                            sum += *w;
                        }
                    } else {
                        sum += *w * ext[x];
                    }
                }
                Weight::Finite(sum)
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    #[test]
    fn ordering() {
        assert!(Weight::NegInf < Weight::Finite(-1e300));
        assert_eq!(Weight::NegInf, Weight::NegInf);
        assert!(Weight::Finite(2.0) > Weight::Finite(1.0));
        assert_eq!(Weight::NegInf.cmp_total(Weight::NegInf), Ordering::Equal);
        assert_eq!(serde_json::to_string(&Weight::NegInf).unwrap(), "\"-inf\"");
    }

    #[test]
    fn fuzzy_weight_examples() {
        let kb = parse_kb("distinguished: C\ndef(C): T(C) [= D @ 2.0").unwrap();
        let i = FuzzyInterpretation::builder(["x"])
            .degree("C", "x", 0.3)
            .degree("D", "x", 0.5)
            .build()
            .unwrap();
        let w = fuzzy_weight(&kb, &i, LogicFamily::Zadeh, "C", 0).unwrap();
        assert_eq!(w, Weight::Finite(2.0 * 0.5));

        let zero = FuzzyInterpretation::builder(["x"])
            .degree("C", "x", 0.3)
            .declare_concept("D")
            .build()
            .unwrap();
        assert_eq!(
            fuzzy_weight(&kb, &zero, LogicFamily::Zadeh, "C", 0).unwrap(),
            Weight::Finite(0.0)
        );
        let outside = FuzzyInterpretation::builder(["x"])
            .declare_concept("C")
            .degree("D", "x", 1.0)
            .build()
            .unwrap();
        assert_eq!(
            fuzzy_weight(&kb, &outside, LogicFamily::Zadeh, "C", 0).unwrap(),
            Weight::NegInf
        );
        assert!(matches!(
            fuzzy_weight(&kb, &i, LogicFamily::Zadeh, "D", 0),
            Err(PrefError::UnknownDistinguished(_))
        ));
    }

    #[test]
    fn row_computation_matches_pointwise() {
        let kb = parse_kb(
            "distinguished: A\ndef(A): T(A) [= B @ 1.5\ndef(A): T(A) [= not B or C @ -0.25",
        )
        .unwrap();
        let i = FuzzyInterpretation::builder(["p", "q", "r"])
            .concept_row("A", vec![0.0, 0.4, 1.0])
            .concept_row("B", vec![0.9, 0.3, 0.6])
            .concept_row("C", vec![0.1, 0.2, 0.8])
            .build()
            .unwrap();
        for fam in LogicFamily::ALL {
            let rows = weight_rows(&kb, &i, fam, false).unwrap();
            for (x, w) in rows[0].iter().enumerate() {
                assert_eq!(*w, fuzzy_weight(&kb, &i, fam, "A", x).unwrap());
            }
        }
    }
}
