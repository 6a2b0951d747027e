//! Entailment over the canonical model of a role-free KB.

use prefnet::kb::parse_kb;
use prefnet::preference::{cwm_entailment, TypicalityQuery};
use prefnet::syntax::parse_concept_unchecked;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../fixtures/birds.wkb"))?;
    for (c, d) in [
        ("Bird", "Flies"),
        ("Bird", "Flies and HasWings"),
        ("Bird and HasWings", "Flies"),
        ("Bird and not Penguin", "Flies"),
        ("Penguin", "Bird"),
        ("Penguin", "not Flies"),
    ] {
        let q = TypicalityQuery::new(parse_concept_unchecked(c)?, parse_concept_unchecked(d)?);
        let e = cwm_entailment(&kb, &q)?;
        println!("{q:<36} {:<5} typical: {:?}", e.entailed, e.typical);
    }
    Ok(())
}
