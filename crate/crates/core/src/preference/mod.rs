//! Weights, concept-wise preferences, typicality and coherence.
//!
//! For every distinguished concept `C_i` of a [`WeightedKb`](crate::kb::WeightedKb)
//! and element `x`, the weight `W_i(x)` sums the weights of the defaults of
//! `C_i` that `x` satisfies (degree-weighted in fuzzy interpretations), and is
//! `−∞` outside `C_i`. Higher weight means more typical: `x ≤_{C_i} y` iff
//! `W_i(x) ≥ W_i(y)`. Crisp models combine the concept-wise orders into a
//! Pareto global preference whose minimal elements interpret `T(C)`; fuzzy
//! models read `T(C)` off the membership degrees of `C`.

mod coherence;
mod entail;
mod model;
mod weight;

use thiserror::Error;

pub use coherence::{
    coherence, coherence_of, weak_coherence, CoherenceReport, Violation, ViolationKind,
    REPORTED_VIOLATIONS,
};
pub use entail::{
    canonical_model, cwm_entailment, cwm_entails_rolefree, entails, Entailment,
    MAX_CANONICAL_NAMES,
};
pub use model::{
    build_preferences, check_typicality_axiom, is_cwm_model, is_fm_model, typicality_global,
    typicality_induced, unmapped_individuals, ConceptPreference, GlobalPreference, ModelMode,
    MultiprefModel, TypFuzzySem, TypicalityQuery, TypicalityVerdict,
};
pub use weight::{crisp_weight, fuzzy_weight, Weight};

use crate::fuzzy::EvalError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrefError {
    #[error("`{0}` is not a distinguished concept")]
    UnknownDistinguished(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("crisp mode requires an interpretation with degrees in {{0,1}}")]
    NotCrisp,
    #[error("score row for `{concept}` has {found} entries, expected {expected}")]
    ScoreLength {
        concept: String,
        expected: usize,
        found: usize,
    },
    #[error("typicality may not occur inside `{0}`")]
    NestedTypicality(String),
    #[error("fuzzy models have no global preference; use the induced typicality")]
    NoGlobalPreference,
    #[error("entailment over canonical models requires an empty ABox")]
    NonEmptyAbox,
    #[error("`{0}` uses roles, quantifiers or nominals; entailment is limited to the boolean fragment")]
    NotRoleFree(String),
    #[error("{found} concept names exceed the enumeration limit of {limit}")]
    TooManyNames { found: usize, limit: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{CrispInterpretation, FuzzyInterpretation, LogicFamily};
    use crate::gen;
    use crate::kb::{parse_kb, WeightedKb};
    use crate::syntax::Concept;

    const EMPLOYEE: &str = include_str!("../../fixtures/employee.wkb");

    fn employee_interp(bob_young: bool) -> FuzzyInterpretation {
        let b = |v: bool| if v { 1.0 } else { 0.0 };
        FuzzyInterpretation::builder(["tom", "bob", "ann"])
            .concept_row("Employee", vec![1.0, 1.0, 1.0])
            .concept_row("Adult", vec![1.0, 1.0, 1.0])
            .concept_row("Student", vec![0.0, 0.0, 0.0])
            .concept_row("PhdStudent", vec![0.0, 0.0, 0.0])
            .concept_row("Young", vec![0.0, b(bob_young), 0.0])
            .role_edge("has_boss", "bob", "ann", 1.0)
            .role_edge("has_classes", "tom", "ann", 1.0)
            .declare_role("hasScholarship")
            .role_edge("has_SSN", "tom", "tom", 1.0)
            .role_edge("has_SSN", "bob", "bob", 1.0)
            .role_edge("has_SSN", "ann", "ann", 1.0)
            .individual("tom", "tom")
            .individual("bob", "bob")
            .build()
            .unwrap()
    }

    #[test]
    fn employee_weights() {
        let kb = parse_kb(EMPLOYEE).unwrap();
        let crisp = CrispInterpretation::new(employee_interp(false)).unwrap();
        assert_eq!(crisp_weight(&kb, &crisp, "Employee", 0).unwrap(), Weight::Finite(-70.0));
        assert_eq!(crisp_weight(&kb, &crisp, "Employee", 1).unwrap(), Weight::Finite(100.0));
        assert_eq!(crisp_weight(&kb, &crisp, "Student", 0).unwrap(), Weight::NegInf);
        let m = build_preferences(&kb, &crisp, ModelMode::Crisp).unwrap();
        assert!(m.preference("Employee").unwrap().lt(1, 0));
        assert!(m.preference("Student").unwrap().equiv(0, 1));
        assert!(is_cwm_model(&kb, &crisp).unwrap());
    }

    #[test]
    fn members_precede_non_members() {
        let kb = parse_kb("distinguished: C\ndef(C): T(C) [= D @ -5").unwrap();
        let i = FuzzyInterpretation::builder(["in", "out"])
            .concept_row("C", vec![1.0, 0.0])
            .concept_row("D", vec![1.0, 0.0])
            .build()
            .unwrap();
        let m = build_preferences(&kb, &i, ModelMode::Crisp).unwrap();
        assert!(m.preference("C").unwrap().lt(0, 1));
    }

    fn check_orders(m: &MultiprefModel) {
        let n = m.interpretation().len();
        for p in m.preferences() {
            for x in 0..n {
                assert!(!p.lt(x, x));
                for y in 0..n {
                    assert!(p.leq(x, y) || p.leq(y, x), "totality");
                    if p.weights[x] == Weight::NegInf {
                        assert!(p.leq(y, x));
                    }
                    for z in 0..n {
                        if p.leq(x, y) && p.leq(y, z) {
                            assert!(p.leq(x, z), "transitivity");
                        }
                        if p.lt(x, y) {
                            assert!(p.lt(x, z) || p.lt(z, y), "modularity");
                        }
                    }
                }
            }
        }
        if let Some(g) = m.global() {
            for x in 0..n {
                assert!(!g.lt(x, x));
                for y in 0..n {
                    if g.lt(x, y) {
                        assert!(!g.lt(y, x));
                    }
                    for z in 0..n {
                        if g.lt(x, y) && g.lt(y, z) {
                            assert!(g.lt(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_order_invariants() {
        let mut rng = gen::rng(7);
        for _ in 0..40 {
            let kb = gen::rolefree_kb(&mut rng, &gen::KbParams::default());
            let names = gen::kb_names(&kb);
            let crisp = gen::crisp_interp(&mut rng, &names, 6);
            check_orders(&build_preferences(&kb, &crisp, ModelMode::Crisp).unwrap());
            let fuzzy = gen::fuzzy_interp(&mut rng, &names, 6);
            check_orders(
                &build_preferences(&kb, &fuzzy, ModelMode::Fuzzy(LogicFamily::Product)).unwrap(),
            );
        }
    }

    #[test]
    fn scaling_weights_keeps_order() {
        let mut rng = gen::rng(11);
        for _ in 0..40 {
            let kb = gen::rolefree_kb(&mut rng, &gen::KbParams::default());
            let names = gen::kb_names(&kb);
            let i = gen::crisp_interp(&mut rng, &names, 8);
            let mut scaled: WeightedKb = kb.clone();
            let target = kb.distinguished[0].clone();
            for d in scaled.defeasible.get_mut(&target).unwrap() {
                d.weight *= 4.0;
            }
            let a = build_preferences(&kb, &i, ModelMode::Crisp).unwrap();
            let b = build_preferences(&scaled, &i, ModelMode::Crisp).unwrap();
            let (pa, pb) = (a.preference(&target).unwrap(), b.preference(&target).unwrap());
            for x in 0..i.len() {
                for y in 0..i.len() {
                    assert_eq!(pa.lt(x, y), pb.lt(x, y));
                }
            }
        }
    }

    #[test]
    fn fuzzy_weight_equals_crisp_weight_on_crisp() {
        let mut rng = gen::rng(3);
        for _ in 0..40 {
            let kb = gen::rolefree_kb(&mut rng, &gen::KbParams::default());
            let names = gen::kb_names(&kb);
            let i = CrispInterpretation::new(gen::crisp_interp(&mut rng, &names, 5)).unwrap();
            for c in &kb.distinguished {
                for x in 0..i.len() {
                    for fam in LogicFamily::ALL {
                        assert_eq!(
                            fuzzy_weight(&kb, &i, fam, c, x).unwrap(),
                            crisp_weight(&kb, &i, c, x).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duplicate_elements_do_not_change_verdicts() {
        let mut rng = gen::rng(5);
        for _ in 0..30 {
            let kb = gen::rolefree_kb(&mut rng, &gen::KbParams::default());
            let names = gen::kb_names(&kb);
            let i = gen::crisp_interp(&mut rng, &names, 5);
            let j = i.with_duplicate(2, "copy").unwrap();
            let ma = build_preferences(&kb, &i, ModelMode::Crisp).unwrap();
            let mb = build_preferences(&kb, &j, ModelMode::Crisp).unwrap();
            for _ in 0..5 {
                let q = TypicalityQuery::new(
                    gen::rolefree_concept(&mut rng, &names, 2),
                    gen::rolefree_concept(&mut rng, &names, 2),
                );
                let va = check_typicality_axiom(&ma, &q, TypFuzzySem::default()).unwrap();
                let vb = check_typicality_axiom(&mb, &q, TypFuzzySem::default()).unwrap();
                assert_eq!(va.holds, vb.holds, "{q}");
            }
        }
    }

    #[test]
    fn minimal_nonempty_on_nonempty_sets() {
        let mut rng = gen::rng(9);
        for _ in 0..30 {
            let kb = gen::rolefree_kb(&mut rng, &gen::KbParams::default());
            let names = gen::kb_names(&kb);
            let i = gen::crisp_interp(&mut rng, &names, 7);
            let m = build_preferences(&kb, &i, ModelMode::Crisp).unwrap();
            let g = m.global().unwrap();
            for mask in 1u32..(1 << 7) {
                let set: Vec<usize> = (0..7).filter(|b| mask >> b & 1 == 1).collect();
                assert!(!g.minimal(&set).is_empty());
            }
        }
    }

    #[test]
    fn typicality_set_inside_concept() {
        let kb = parse_kb(EMPLOYEE).unwrap();
        let m = build_preferences(&kb, &employee_interp(true), ModelMode::Crisp).unwrap();
        let typ = typicality_global(&m, &Concept::name("Employee")).unwrap();
        assert_eq!(typ, vec![1]);
    }
}
