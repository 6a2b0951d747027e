//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use prefnet::fuzzy::CrispInterpretation;
use prefnet::gen::{self, GenRng, KbParams, NetParams};
use prefnet::kb::{parse_kb, WeightedKb};
use prefnet::mlp::{verify_prop1, verify_prop2, Activation, Network, StimulusSet, Unit};
use prefnet::preference::{
    build_preferences, check_typicality_axiom, crisp_weight, entails, fuzzy_weight,
    MultiprefModel, ModelMode, TypFuzzySem, TypicalityQuery, Weight,
};
use prefnet::prob::{fuzzy_cardinality, Distribution, FuzzyProbInterp};
use prefnet::{Concept, FuzzyInterpretation, LogicFamily};

const EMPLOYEE: &str = include_str!("../fixtures/employee.wkb");

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn employee(crisp_bob: [bool; 5]) -> FuzzyInterpretation {
    let [young, classes, student, scholarship, boss_is_employee] = crisp_bob;
    let b = |v: bool| if v { 1.0 } else { 0.0 };
    let mut builder = FuzzyInterpretation::builder(["tom", "bob", "boss"])
        .concept_row("Employee", vec![1.0, 1.0, b(boss_is_employee)])
        .concept_row("Adult", vec![1.0, 1.0, 1.0])
        .concept_row("Student", vec![0.0, b(student), 0.0])
        .concept_row("PhdStudent", vec![0.0, 0.0, 0.0])
        .concept_row("Young", vec![0.0, b(young), 0.0])
        .role_edge("has_classes", "tom", "boss", 1.0)
        .role_edge("has_boss", "bob", "boss", 1.0)
        .declare_role("hasScholarship")
        .role_edge("has_SSN", "tom", "tom", 1.0)
        .role_edge("has_SSN", "bob", "bob", 1.0)
        .role_edge("has_SSN", "boss", "boss", 1.0)
        .individual("tom", "tom")
        .individual("bob", "bob");
    if classes {
        builder = builder.role_edge("has_classes", "bob", "boss", 1.0);
    }
    if scholarship {
        builder = builder.role_edge("hasScholarship", "bob", "boss", 1.0);
    }
    builder.build().expect("employee interpretation")
}

fn employee_example() -> Outcome {
    let kb = parse_kb(EMPLOYEE).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for mask in 0u8..16 {
        let bit = |i: u8| mask >> i & 1 == 1;
        // bob has a boss who is an employee; everything else about bob varies
        let i = employee([bit(0), bit(1), bit(2), bit(3), true]);
        let crisp = CrispInterpretation::new(i.clone()).map_err(|e| e.to_string())?;
        let tom = crisp_weight(&kb, &crisp, "Employee", 0).map_err(|e| e.to_string())?;
        ensure(tom == Weight::Finite(-70.0), || format!("W(tom) = {tom}"))?;
        let m = build_preferences(&kb, &i, ModelMode::Crisp).map_err(|e| e.to_string())?;
        ensure(m.preference("Employee").unwrap().lt(1, 0), || {
            format!("bob not preferred to tom for row {mask:04b}")
        })?;
        rows += 1;
    }
    Ok(format!("W(tom) = -70, bob <_Employee tom on {rows} bob rows"))
}

fn prop1_suite() -> Outcome {
    let mut rng = gen::rng(1001);
    let params = NetParams::default();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for n in 0..200 {
        let net = gen::network(&mut rng, &params);
        let st = gen::stimuli(&mut rng, &net, 50);
        let r = verify_prop1(&net, &st).map_err(|e| format!("network {n}: {e}"))?;
        ensure(r.total_field_mismatches == 0 && r.max_field_error <= 1e-9, || {
            format!("network {n}: W != u ({:?})", r.field_mismatches.first())
        })?;
        ensure(r.coherence.coherent, || {
            format!("network {n}: incoherent ({:?})", r.coherence.violations.first())
        })?;
        ensure(r.passed, || format!("network {n}: report failed"))?;
        worst = worst.max(r.max_field_error);
        pairs += r.checked;
    }
    Ok(format!("200 networks, {pairs} (unit, stimulus) pairs, max |W-u| = {worst:e}"))
}

fn step_counterexample() -> Result<(), String> {
    let net = Network::new(
        vec!["x".into()],
        vec![Unit {
            id: "k".into(),
            activation: Activation::Step,
            bias: 1.0,
            incoming: vec![("x".into(), 1.0)],
        }],
        vec!["k".into()],
    )
    .map_err(|e| e.to_string())?;
    let st = StimulusSet::new().with("a", &[("x", 0.0)]).with("b", &[("x", 1.0)]);
    let r = verify_prop2(&net, &st).map_err(|e| e.to_string())?;
    ensure(r.passed && !r.coherence.coherent, || {
        "engineered step network is strictly coherent".into()
    })
}

fn prop2_suite() -> Outcome {
    let mut rng = gen::rng(2002);
    let mixed = NetParams::with_activations(&[Activation::HardSigmoid, Activation::Step]);
    let hard = NetParams::with_activations(&[Activation::HardSigmoid]);
    let step = NetParams::with_activations(&[Activation::Step]);
    let mut strict_failures = 0;
    for n in 0..200 {
        let params = match n % 3 {
            0 => &mixed,
            1 => &hard,
            _ => &step,
        };
        let net = gen::network(&mut rng, params);
        let st = gen::stimuli(&mut rng, &net, 50);
        let r = verify_prop2(&net, &st).map_err(|e| format!("network {n}: {e}"))?;
        ensure(r.total_field_mismatches == 0, || {
            format!("network {n}: W != u ({:?})", r.field_mismatches.first())
        })?;
        ensure(r.coherence.weakly_coherent, || {
            format!("network {n}: not weakly coherent ({:?})", r.coherence.violations.first())
        })?;
        if n % 3 == 2 && !r.coherence.coherent {
            strict_failures += 1;
        }
    }
    ensure(strict_failures > 0, || "no generated step network broke strict coherence".into())?;
    step_counterexample()?;
    Ok(format!(
        "200 networks weakly coherent; {strict_failures} seeded step networks and the engineered one fail strict coherence"
    ))
}

fn equivalent(rng: &mut GenRng, c: &Concept) -> Concept {
    use rand::Rng;
    match rng.gen_range(0..4) {
        0 => Concept::not(Concept::not(c.clone())),
        1 => Concept::and(c.clone(), c.clone()),
        2 => Concept::or(c.clone(), Concept::Bottom),
        _ => Concept::and(Concept::Top, c.clone()),
    }
}

#[derive(Default)]
struct KlmCounts {
    lle: usize,
    rw: usize,
    and: usize,
    or: usize,
    cm: usize,
}

fn klm_suite() -> Outcome {
    let mut rng = gen::rng(3003);
    let params = KbParams::default();
    let mut n = KlmCounts::default();
    for k in 0..500 {
        let kb: WeightedKb = gen::rolefree_kb(&mut rng, &params);
        let names = gen::kb_names(&kb);
        let ent = |c: &Concept, d: &Concept| entails(&kb, c, d).map_err(|e| format!("kb {k}: {e}"));
        for _ in 0..3 {
            let a = gen::rolefree_concept(&mut rng, &names, 2);
            let b = gen::rolefree_concept(&mut rng, &names, 2);
            let c = gen::rolefree_concept(&mut rng, &names, 2);
            let fail = |law: &str| format!("kb {k}: {law} fails for A={a} B={b} C={c}\n{kb}");

            ensure(ent(&a, &a)?, || fail("reflexivity"))?;

            let a2 = equivalent(&mut rng, &a);
            ensure(ent(&a, &b)? == ent(&a2, &b)?, || fail("left logical equivalence"))?;
            n.lle += 1;

            let ab = ent(&a, &b)?;
            let ac = ent(&a, &c)?;
            if ab {
                ensure(ent(&a, &Concept::or(b.clone(), c.clone()))?, || fail("right weakening"))?;
                n.rw += 1;
            }
            if ab && ac {
                ensure(ent(&a, &Concept::and(b.clone(), c.clone()))?, || fail("and"))?;
                ensure(ent(&Concept::and(a.clone(), b.clone()), &c)?, || {
                    fail("cautious monotonicity")
                })?;
                n.and += 1;
                n.cm += 1;
            }
            if ac && ent(&b, &c)? {
                ensure(ent(&Concept::or(a.clone(), b.clone()), &c)?, || fail("or"))?;
                n.or += 1;
            }
        }
    }
    Ok(format!(
        "500 KBs; reflexivity 1500, LLE {}, RW {}, And {}, Or {}, CM {}",
        n.lle, n.rw, n.and, n.or, n.cm
    ))
}

fn probability_suite() -> Outcome {
    let mut rng = gen::rng(4004);
    let names: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
    let (mut nominal, mut uniform) = (0, 0);
    for n in 0..200 {
        let size = 2 + n % 7;
        let interp = gen::fuzzy_interp(&mut rng, &names, size);
        let dist = gen::distribution(&mut rng, interp.domain());
        let f = FuzzyProbInterp::new(interp.clone(), LogicFamily::Zadeh, &dist)
            .map_err(|e| e.to_string())?;
        let u = FuzzyProbInterp::new(
            interp.clone(),
            LogicFamily::Zadeh,
            &Distribution::uniform(interp.domain().iter().cloned()),
        )
        .map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let c = gen::rolefree_concept(&mut rng, &names, 2);
            let d = gen::rolefree_concept(&mut rng, &names, 2);
            for (a, x) in interp.individuals() {
                if f.mu()[x] > 0.0 {
                    let nc = f.nominal_conditional(&c, a).map_err(|e| e.to_string())?;
                    ensure((nc.ratio - nc.direct).abs() <= 1e-9, || {
                        format!("interp {n}: P({c} | {{{a}}}) = {} but {c}({a}) = {}", nc.ratio, nc.direct)
                    })?;
                    nominal += 1;
                }
            }
            let md = fuzzy_cardinality(&interp, &d).map_err(|e| e.to_string())?;
            if md > 0.0 {
                let ratio = u.conditional_prob(&c, &d).map_err(|e| e.to_string())?;
                let card = fuzzy_cardinality(&interp, &Concept::and(c.clone(), d.clone()))
                    .map_err(|e| e.to_string())?
                    / md;
                ensure((ratio - card).abs() <= 1e-9, || {
                    format!("interp {n}: uniform ratio {ratio} vs cardinality ratio {card}")
                })?;
                uniform += 1;
            }
            let p = f.event_prob(&c).map_err(|e| e.to_string())?;
            let q = f.event_prob(&Concept::not(c.clone())).map_err(|e| e.to_string())?;
            ensure((p + q - 1.0).abs() <= 1e-9, || {
                format!("interp {n}: P({c}) + P(not {c}) = {}", p + q)
            })?;
        }
    }
    Ok(format!(
        "200 interpretations; {nominal} nominal conditionals, {uniform} uniform ratios, 1000 complements"
    ))
}

fn check_orders(m: &MultiprefModel) -> Result<(), String> {
    let n = m.interpretation().len();
    for p in m.preferences() {
        for x in 0..n {
            for y in 0..n {
                ensure(p.leq(x, y) || p.leq(y, x), || format!("<=_{} not total", p.concept))?;
                for z in 0..n {
                    if p.leq(x, y) && p.leq(y, z) {
                        ensure(p.leq(x, z), || format!("<=_{} not transitive", p.concept))?;
                    }
                    if p.lt(x, y) {
                        ensure(p.lt(x, z) || p.lt(z, y), || format!("<_{} not modular", p.concept))?;
                    }
                }
            }
        }
    }
    let g = m.global().ok_or("crisp model without global preference")?;
    for x in 0..n {
        ensure(!g.lt(x, x), || "global < not irreflexive".into())?;
        for y in 0..n {
            for z in 0..n {
                if g.lt(x, y) && g.lt(y, z) {
                    ensure(g.lt(x, z), || "global < not transitive".into())?;
                }
            }
        }
    }
    Ok(())
}

fn structural_suite() -> Outcome {
    let mut rng = gen::rng(5005);
    let params = KbParams::default();
    let mut queries = 0;
    for n in 0..200 {
        let kb = gen::rolefree_kb(&mut rng, &params);
        let names = gen::kb_names(&kb);
        let i = gen::crisp_interp(&mut rng, &names, 3 + n % 6);
        let m = build_preferences(&kb, &i, ModelMode::Crisp).map_err(|e| e.to_string())?;
        check_orders(&m).map_err(|e| format!("pair {n}: {e}"))?;

        let j = i.with_duplicate(n % i.len(), "dup").map_err(|e| e.to_string())?;
        let mj = build_preferences(&kb, &j, ModelMode::Crisp).map_err(|e| e.to_string())?;
        check_orders(&mj).map_err(|e| format!("pair {n} duplicated: {e}"))?;
        for _ in 0..5 {
            let q = TypicalityQuery::new(
                gen::rolefree_concept(&mut rng, &names, 2),
                gen::rolefree_concept(&mut rng, &names, 2),
            );
            let a = check_typicality_axiom(&m, &q, TypFuzzySem::default()).map_err(|e| e.to_string())?;
            let b = check_typicality_axiom(&mj, &q, TypFuzzySem::default()).map_err(|e| e.to_string())?;
            ensure(a.holds == b.holds, || format!("pair {n}: duplicate changes {q}"))?;
            queries += 1;
        }
    }
    Ok(format!("200 pairs ordered correctly; {queries} verdicts stable under duplication"))
}

fn agreement_suite() -> Outcome {
    let mut rng = gen::rng(6006);
    let params = KbParams::default();
    let mut checks = 0;
    for n in 0..200 {
        let kb = gen::rolefree_kb(&mut rng, &params);
        let names = gen::kb_names(&kb);
        let i = CrispInterpretation::new(gen::crisp_interp(&mut rng, &names, 2 + n % 7))
            .map_err(|e| e.to_string())?;
        for c in &kb.distinguished {
            for x in 0..i.len() {
                let cw = crisp_weight(&kb, &i, c, x).map_err(|e| e.to_string())?;
                for fam in LogicFamily::ALL {
                    let fw = fuzzy_weight(&kb, &i, fam, c, x).map_err(|e| e.to_string())?;
                    ensure(fw == cw, || format!("interp {n}: {fam} weight {fw} vs crisp {cw}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("200 crisp interpretations, {checks} exact weight comparisons"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 employee example", Duration::from_secs(1), employee_example),
        ("2 strictly increasing activations", Duration::from_secs(30), prop1_suite),
        ("3 monotone activations", Duration::from_secs(30), prop2_suite),
        ("4 KLM postulates", Duration::from_secs(60), klm_suite),
        ("5 probability identities", Duration::from_secs(10), probability_suite),
        ("6 structural order properties", Duration::from_secs(30), structural_suite),
        ("7 crisp/fuzzy weight agreement", Duration::from_secs(30), agreement_suite),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget of {budget:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {name} ({:.2?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            took
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
