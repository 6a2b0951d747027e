//! Probabilities of fuzzy events, conditionals and nominals.

use prefnet::prob::{fuzzy_cardinality, subsethood, Distribution, FuzzyProbInterp};
use prefnet::syntax::{parse_axiom, parse_concept_unchecked, Axiom};
use prefnet::{FuzzyInterpretation, LogicFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let interp = FuzzyInterpretation::from_json_str(include_str!("../fixtures/fuzzy_interp.json"))?;
    let dist = Distribution::from_json_str(include_str!("../fixtures/distribution.json"))?;
    let f = FuzzyProbInterp::new(interp.clone(), LogicFamily::Zadeh, &dist)?;

    let bird = parse_concept_unchecked("Bird")?;
    let flies = parse_concept_unchecked("Flies")?;
    println!("P(Bird) = {:.4}", f.event_prob(&bird)?);
    println!("P(not Bird) = {:.4}", f.event_prob(&parse_concept_unchecked("not Bird")?)?);

    if let Axiom::Conditional(cc) = parse_axiom("cc: (Flies | Bird)[0.5,1]", None)? {
        let v = f.check_conditional(&cc)?;
        println!("P(Flies | Bird) = {:.4}, within bounds: {}", v.probability, v.holds);
    }
    let nc = f.nominal_conditional(&flies, "tweety")?;
    println!("P(Flies | {{tweety}}) = {} (membership {})", nc.ratio, nc.direct);

    println!("M(Bird) = {:.2}", fuzzy_cardinality(&interp, &bird)?);
    println!("S(Bird, Flies) = {:.4}", subsethood(&interp, &bird, &flies)?);
    Ok(())
}
