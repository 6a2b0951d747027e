use std::collections::BTreeSet;

use super::model::{build_preferences, check_typicality_axiom, ModelMode, TypFuzzySem, TypicalityQuery};
use super::PrefError;
use crate::fuzzy::{FuzzyInterpretation, LogicFamily};
use crate::kb::WeightedKb;
use crate::syntax::Concept;

/// Largest number of concept names enumerated by [`canonical_model`].
pub const MAX_CANONICAL_NAMES: usize = 20;

fn element_id(bits: usize, width: usize) -> String {
    let mut s = String::with_capacity(width + 1);
    s.push('v');
    for i in 0..width {
        s.push(if bits >> i & 1 == 1 { '1' } else { '0' });
    }
    s
}

fn check_fragment(kb: &WeightedKb, query: &TypicalityQuery) -> Result<(), PrefError> {
    if !kb.abox.is_empty() {
        return Err(PrefError::NonEmptyAbox);
    }
    let concepts = kb.concepts().into_iter().chain(query.concepts());
    for c in concepts {
        if !c.is_role_free() {
            return Err(PrefError::NotRoleFree(c.to_string()));
        }
        if c.contains_typ() {
            return Err(PrefError::NestedTypicality(c.to_string()));
        }
    }
    Ok(())
}

/// The canonical crisp interpretation of a role-free KB for a query: one
/// element per valuation of the concept names of `kb` and `query` that
/// satisfies every strict inclusion. `None` when no valuation does.
pub fn canonical_model(
    kb: &WeightedKb,
    query: &TypicalityQuery,
) -> Result<Option<FuzzyInterpretation>, PrefError> {
    check_fragment(kb, query)?;
    let mut names: BTreeSet<String> = kb.distinguished.iter().cloned().collect();
    for c in kb.concepts().into_iter().chain(query.concepts()) {
        c.collect_names(&mut names);
    }
    if names.len() > MAX_CANONICAL_NAMES {
        return Err(PrefError::TooManyNames {
            found: names.len(),
            limit: MAX_CANONICAL_NAMES,
        });
    }
    let names: Vec<String> = names.into_iter().collect();
    let width = names.len();
    let size = 1usize << width;
    let build = |valuations: &[usize]| {
        let mut b = FuzzyInterpretation::builder(valuations.iter().map(|&v| element_id(v, width)));
        for (i, name) in names.iter().enumerate() {
            let row = valuations
                .iter()
                .map(|&v| if v >> i & 1 == 1 { 1.0 } else { 0.0 })
                .collect();
            b = b.concept_row(name.clone(), row);
        }
        b.build().expect("valuation interpretation is well formed")
    };
    let all: Vec<usize> = (0..size).collect();
    let full = build(&all);
    let mut keep = vec![true; size];
    for inc in &kb.strict {
        let sub = full.extension(LogicFamily::Zadeh, &inc.sub)?;
        let sup = full.extension(LogicFamily::Zadeh, &inc.sup)?;
        for v in 0..size {
            if sub[v] == 1.0 && sup[v] != 1.0 {
                keep[v] = false;
            }
        }
    }
    let survivors: Vec<usize> = all.into_iter().filter(|&v| keep[v]).collect();
    if survivors.is_empty() {
        return Ok(None);
    }
    if survivors.len() == size {
        return Ok(Some(full));
    }
    Ok(Some(build(&survivors)))
}

/// Whether `T(C) ⊑ D` holds in the canonical cw^m-model of a role-free KB
/// with empty ABox. Vacuously true when the strict TBox has no model.
pub fn cwm_entails_rolefree(kb: &WeightedKb, query: &TypicalityQuery) -> Result<bool, PrefError> {
    Ok(cwm_entailment(kb, query)?.entailed)
}

/// Entailment verdict with the size of the canonical domain.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Entailment {
    pub entailed: bool,
    pub domain_size: usize,
    pub typical: Vec<String>,
}

pub fn cwm_entailment(kb: &WeightedKb, query: &TypicalityQuery) -> Result<Entailment, PrefError> {
    let Some(interp) = canonical_model(kb, query)? else {
        return Ok(Entailment {
            entailed: true,
            domain_size: 0,
            typical: Vec::new(),
        });
    };
    let model = build_preferences(kb, &interp, ModelMode::Crisp)?;
    let verdict = check_typicality_axiom(&model, query, TypFuzzySem::default())?;
    Ok(Entailment {
        entailed: verdict.holds,
        domain_size: interp.len(),
        typical: verdict.typical,
    })
}

/// `C |~ D` in the canonical model of `kb`.
pub fn entails(kb: &WeightedKb, c: &Concept, d: &Concept) -> Result<bool, PrefError> {
    cwm_entails_rolefree(kb, &TypicalityQuery::new(c.clone(), d.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;
    use crate::syntax::parse_concept_unchecked;

    fn c(s: &str) -> Concept {
        parse_concept_unchecked(s).unwrap()
    }

    #[test]
    fn single_default() {
        let kb = parse_kb("distinguished: A\ndef(A): T(A) [= B @ 1").unwrap();
        assert!(entails(&kb, &c("A"), &c("B")).unwrap());
        assert!(!entails(&kb, &c("A"), &c("not B")).unwrap());
        let e = cwm_entailment(&kb, &TypicalityQuery::new(c("A"), c("B"))).unwrap();
        assert_eq!(e.domain_size, 4);
        assert_eq!(e.typical, ["v11"]);
    }

    #[test]
    fn strict_tbox_prunes_valuations() {
        let kb = parse_kb("strict: A [= B\nstrict: B [= C").unwrap();
        let q = TypicalityQuery::new(c("A"), c("C"));
        let m = canonical_model(&kb, &q).unwrap().unwrap();
        assert_eq!(m.len(), 4);
        assert!(cwm_entails_rolefree(&kb, &q).unwrap());
    }

    #[test]
    fn unsatisfiable_is_vacuous() {
        let kb = parse_kb("strict: A [= not A").unwrap();
        assert!(entails(&kb, &c("A"), &c("Bottom")).unwrap());
        let kb = parse_kb("strict: Top [= Bottom").unwrap();
        assert!(canonical_model(&kb, &TypicalityQuery::new(c("A"), c("A")))
            .unwrap()
            .is_none());
        assert!(entails(&kb, &c("A"), &c("Bottom")).unwrap());
    }

    #[test]
    fn guards() {
        let kb = parse_kb("strict: A [= exists r.B").unwrap();
        assert!(matches!(
            entails(&kb, &c("A"), &c("A")),
            Err(PrefError::NotRoleFree(_))
        ));
        let kb = parse_kb("assert: A(a)").unwrap();
        assert!(matches!(
            entails(&kb, &c("A"), &c("A")),
            Err(PrefError::NonEmptyAbox)
        ));
        let names: Vec<String> = (0..21).map(|i| format!("N{i}")).collect();
        let big = names.join(" and ");
        assert!(matches!(
            entails(&WeightedKb::default(), &c(&big), &c("N0")),
            Err(PrefError::TooManyNames { found: 21, .. })
        ));
    }
}
