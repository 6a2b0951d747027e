//! Weights, preferences and typicality on the employees-and-students KB.

use prefnet::kb::parse_kb;
use prefnet::preference::{
    build_preferences, check_typicality_axiom, typicality_global, ModelMode, TypFuzzySem,
    TypicalityQuery,
};
use prefnet::syntax::parse_concept_unchecked;
use prefnet::{Concept, FuzzyInterpretation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../fixtures/employee.wkb"))?;
    let interp = FuzzyInterpretation::from_json_str(include_str!("../fixtures/employee_interp.json"))?;
    let model = build_preferences(&kb, &interp, ModelMode::Crisp)?;

    for p in model.preferences() {
        println!("{}:", p.concept);
        for (x, w) in p.weights.iter().enumerate() {
            println!("  W({}) = {w}", interp.element_id(x));
        }
    }

    let typical: Vec<&str> = typicality_global(&model, &Concept::name("Employee"))?
        .into_iter()
        .map(|x| interp.element_id(x))
        .collect();
    println!("T(Employee) = {typical:?}");

    for (c, d) in [
        ("Employee", "exists has_boss.Employee"),
        ("Student", "exists hasScholarship.Top"),
        ("PhdStudent", "Bottom"),
    ] {
        let q = TypicalityQuery::new(parse_concept_unchecked(c)?, parse_concept_unchecked(d)?);
        let v = check_typicality_axiom(&model, &q, TypFuzzySem::default())?;
        println!("{q}: {}", v.holds);
    }
    Ok(())
}
