use std::fmt;
use std::str::FromStr;

/// A fixed set of combination functions: t-norm, s-norm, implication and
/// negation.
///
/// | family      | a ⊗ b           | a ⊕ b          | ⊖a             | a ▷ b               |
/// |-------------|-----------------|----------------|----------------|---------------------|
/// | Zadeh       | min             | max            | 1 − a          | max(1 − a, b)       |
/// | Goedel      | min             | max            | a = 0 ? 1 : 0  | a ≤ b ? 1 : b       |
/// | Lukasiewicz | max(0, a+b−1)   | min(1, a+b)    | 1 − a          | min(1, 1 − a + b)   |
/// | Product     | a·b             | a + b − a·b    | a = 0 ? 1 : 0  | a ≤ b ? 1 : b / a   |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LogicFamily {
    #[default]
    Zadeh,
    Goedel,
    Lukasiewicz,
    Product,
}

impl LogicFamily {
    pub const ALL: [LogicFamily; 4] = [
        LogicFamily::Zadeh,
        LogicFamily::Goedel,
        LogicFamily::Lukasiewicz,
        LogicFamily::Product,
    ];

    pub fn tnorm(self, a: f64, b: f64) -> f64 {
        match self {
            LogicFamily::Zadeh | LogicFamily::Goedel => a.min(b),
            LogicFamily::Lukasiewicz => (a + b - 1.0).max(0.0),
            LogicFamily::Product => a * b,
        }
    }

    pub fn snorm(self, a: f64, b: f64) -> f64 {
        match self {
            LogicFamily::Zadeh | LogicFamily::Goedel => a.max(b),
            LogicFamily::Lukasiewicz => (a + b).min(1.0),
            LogicFamily::Product => a + b - a * b,
        }
    }

    pub fn negation(self, a: f64) -> f64 {
        match self {
            LogicFamily::Zadeh | LogicFamily::Lukasiewicz => 1.0 - a,
            LogicFamily::Goedel | LogicFamily::Product => {
                if a == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn implication(self, a: f64, b: f64) -> f64 {
        match self {
            LogicFamily::Zadeh => (1.0 - a).max(b),
            LogicFamily::Goedel => {
                if a <= b {
                    1.0
                } else {
                    b
                }
            }
            LogicFamily::Lukasiewicz => (1.0 - a + b).min(1.0),
            LogicFamily::Product => {
                if a <= b {
                    1.0
                } else {
                    b / a
                }
            }
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LogicFamily::Zadeh => "zadeh",
            LogicFamily::Goedel => "goedel",
            LogicFamily::Lukasiewicz => "lukasiewicz",
            LogicFamily::Product => "product",
        }
    }
}

impl fmt::Display for LogicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown logic family `{0}` (expected zadeh, goedel, lukasiewicz or product)")]
pub struct UnknownFamily(pub String);

impl FromStr for LogicFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zadeh" => Ok(LogicFamily::Zadeh),
            "goedel" | "godel" | "gödel" => Ok(LogicFamily::Goedel),
            "lukasiewicz" => Ok(LogicFamily::Lukasiewicz),
            "product" => Ok(LogicFamily::Product),
            _ => Err(UnknownFamily(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (0..=20).map(|i| i as f64 / 20.0).collect()
    }

    const EPS: f64 = 1e-12;

    #[test]
    fn tnorm_axioms_on_grid() {
        let g = grid();
        for fam in LogicFamily::ALL {
            for &a in &g {
                assert!((fam.tnorm(a, 1.0) - a).abs() < EPS, "{fam} unit");
                assert!((fam.snorm(a, 0.0) - a).abs() < EPS, "{fam} s-unit");
                for &b in &g {
                    assert!((fam.tnorm(a, b) - fam.tnorm(b, a)).abs() < EPS);
                    assert!((fam.snorm(a, b) - fam.snorm(b, a)).abs() < EPS);
                    for &c in &g {
                        let l = fam.tnorm(fam.tnorm(a, b), c);
                        let r = fam.tnorm(a, fam.tnorm(b, c));
                        assert!((l - r).abs() < EPS, "{fam} assoc {a} {b} {c}");
                        let l = fam.snorm(fam.snorm(a, b), c);
                        let r = fam.snorm(a, fam.snorm(b, c));
                        assert!((l - r).abs() < EPS, "{fam} s-assoc {a} {b} {c}");
                        if b <= c {
                            assert!(fam.tnorm(a, b) <= fam.tnorm(a, c) + EPS);
                            assert!(fam.snorm(a, b) <= fam.snorm(a, c) + EPS);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn negation_endpoints() {
        for fam in LogicFamily::ALL {
            assert_eq!(fam.negation(0.0), 1.0);
            assert_eq!(fam.negation(1.0), 0.0);
        }
    }

    #[test]
    fn conjunction_examples() {
        assert_eq!(LogicFamily::Zadeh.tnorm(0.7, 0.6), 0.6);
        let l = LogicFamily::Lukasiewicz.tnorm(0.7, 0.6);
        assert!((l - 0.3).abs() < 1e-12);
    }

    #[test]
    fn residuated_implications() {
        for fam in [LogicFamily::Goedel, LogicFamily::Lukasiewicz, LogicFamily::Product] {
            for a in grid() {
                assert_eq!(fam.implication(a, a), 1.0);
                assert_eq!(fam.implication(0.0, a), 1.0);
            }
        }
        assert_eq!(LogicFamily::Goedel.implication(1.0, 0.4), 0.4);
        for fam in LogicFamily::ALL {
            for b in grid() {
                assert!((fam.implication(1.0, b) - b).abs() < EPS);
            }
        }
    }

    #[test]
    fn tags_parse() {
        for fam in LogicFamily::ALL {
            assert_eq!(fam.tag().parse::<LogicFamily>().unwrap(), fam);
        }
        assert!("kleene".parse::<LogicFamily>().is_err());
    }
}
