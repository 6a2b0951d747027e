//! Crisp and fuzzy interpretations induced by a network.

use prefnet::mlp::{build_cwm_interp, build_fuzzy_interp, forward, Network, StimulusSet, ThresholdMode};
use prefnet::preference::typicality_global;
use prefnet::Concept;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::from_json_str(include_str!("../fixtures/sigmoid_net.json"))?;
    let stimuli = StimulusSet::from_json_str(include_str!("../fixtures/stimuli.json"))?;

    let table = forward(&net, &stimuli)?;
    for (s, id) in table.stimuli().iter().enumerate() {
        let row: Vec<String> = table.row(s).iter().map(|y| format!("{y:.3}")).collect();
        println!("{id}: {}", row.join(" "));
    }

    let fuzzy = build_fuzzy_interp(&net, &stimuli)?;
    println!("o1 degrees: {:?}", fuzzy.concept("o1").unwrap());

    for mode in [ThresholdMode::Nonzero, ThresholdMode::Half] {
        let m = build_cwm_interp(&net, &stimuli, mode)?;
        let typ: Vec<&str> = typicality_global(&m, &Concept::name("o1"))?
            .into_iter()
            .map(|x| m.interpretation().element_id(x))
            .collect();
        println!("{mode:?}: T(o1) = {typ:?}");
    }
    Ok(())
}
